#include "rao/oracle.hpp"

#include <sstream>

#include "rao/parallel.hpp"
#include "rao/risk.hpp"

namespace rao {

namespace {

void check_grid(std::size_t grid_n) {
  if (grid_n < 1000) {
    std::ostringstream os;
    os << "quantile grid of " << grid_n << " points is below the minimum of 1000";
    throw ConfigError(os.str());
  }
}

}  // namespace

std::vector<double> quantile_grid(const NoiseSequence& noise, std::size_t t, std::size_t grid_n) {
  check_grid(grid_n);
  const StepDistribution dist = noise.at(t);
  std::vector<double> xi(grid_n);
  const double n = static_cast<double>(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) xi[i] = dist.quantile((static_cast<double>(i) + 0.5) / n);
  return xi;
}

double cvar_on_grid(const CostModel& cost, std::span<const double> xi_grid, const DecisionVector& x,
                    double alpha, std::vector<double>& scratch) {
  scratch.resize(xi_grid.size());
  for (std::size_t i = 0; i < xi_grid.size(); ++i) scratch[i] = cost(x, xi_grid[i]);
  return cvar_discrete_inplace(scratch, alpha);
}

double true_cvar(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                 const DecisionVector& x, double alpha, std::size_t grid_n) {
  const auto xi = quantile_grid(noise, t, grid_n);
  std::vector<double> scratch;
  return cvar_on_grid(cost, xi, x, alpha, scratch);
}

std::vector<double> action_grid(const AdmissibleSet& set, std::size_t k, GridPlacement placement) {
  if (set.dim() != 1) {
    throw ConfigError("oracle grid search supports 1-D decisions only");
  }
  if (k < 2) throw ConfigError("oracle grid needs at least 2 candidate points");
  const double lo = set.lower()[0];
  const double hi = set.upper()[0];
  std::vector<double> pts(k);
  const double kk = static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double s = static_cast<double>(i);
    pts[i] = placement == GridPlacement::centers ? lo + (s + 0.5) * (hi - lo) / kk
                                                 : lo + s * (hi - lo) / (kk - 1.0);
  }
  if (placement == GridPlacement::endpoints) pts.back() = hi;
  return pts;
}

OptimalAction optimal_action_grid(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                                  const AdmissibleSet& set, double alpha, const OracleSettings& settings) {
  const auto pts = action_grid(set, settings.candidates, settings.placement);
  const auto xi = quantile_grid(noise, t, settings.quantile_grid);
  std::vector<double> scratch;
  OptimalAction best{DecisionVector{pts.front()}, cvar_on_grid(cost, xi, DecisionVector{pts.front()}, alpha, scratch)};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const DecisionVector x{pts[i]};
    const double v = cvar_on_grid(cost, xi, x, alpha, scratch);
    if (v < best.value) best = {x, v};
  }
  return best;
}

std::vector<OptimalAction> optimal_actions(const CostModel& cost, const NoiseSequence& noise,
                                           std::size_t horizon, const AdmissibleSet& set, double alpha,
                                           const OracleSettings& settings, std::size_t jobs) {
  std::vector<OptimalAction> out(horizon);
  parallel_for(horizon, jobs, [&](std::size_t i) {
    out[i] = optimal_action_grid(cost, noise, i + 1, set, alpha, settings);
  });
  return out;
}

RegretReport dynamic_regret(std::span<const IterationRecord> trajectory, const CostModel& cost,
                            const NoiseSequence& noise, double alpha, std::size_t grid_n,
                            std::span<const OptimalAction> optima) {
  const std::size_t horizon = trajectory.size();
  if (optima.size() < horizon) throw ConfigError("optimal-action table shorter than the trajectory");
  RegretReport rep;
  rep.played.reserve(horizon);
  rep.optimal.reserve(horizon);
  rep.regret.reserve(horizon);
  rep.accumulated.reserve(horizon);
  rep.x_star.reserve(horizon);
  double dr = 0.0;
  double acc = 0.0;
  std::vector<double> scratch;
  for (std::size_t i = 0; i < horizon; ++i) {
    const IterationRecord& rec = trajectory[i];
    if (rec.t != i + 1) throw ConfigError("trajectory must cover steps 1..T in order");
    const auto xi = quantile_grid(noise, rec.t, grid_n);
    const double played = cvar_on_grid(cost, xi, rec.x_hat, alpha, scratch);
    dr += played - optima[i].value;
    acc += played;
    rep.played.push_back(played);
    rep.optimal.push_back(optima[i].value);
    rep.regret.push_back(dr);
    rep.accumulated.push_back(acc);
    rep.x_star.push_back(optima[i].x);
  }
  return rep;
}

RegretReport dynamic_regret(std::span<const IterationRecord> trajectory, const CostModel& cost,
                            const NoiseSequence& noise, const AdmissibleSet& set, double alpha,
                            const OracleSettings& settings) {
  const auto optima = optimal_actions(cost, noise, trajectory.size(), set, alpha, settings);
  return dynamic_regret(trajectory, cost, noise, alpha, settings.quantile_grid, optima);
}

std::vector<double> accumulated_loss(std::span<const IterationRecord> trajectory, const CostModel& cost,
                                     const NoiseSequence& noise, double alpha, std::size_t grid_n) {
  std::vector<double> out;
  out.reserve(trajectory.size());
  double acc = 0.0;
  std::vector<double> scratch;
  for (const IterationRecord& rec : trajectory) {
    const auto xi = quantile_grid(noise, rec.t, grid_n);
    acc += cvar_on_grid(cost, xi, rec.x_hat, alpha, scratch);
    out.push_back(acc);
  }
  return out;
}

BatchOptimum batch_optimal_actions(const CostModel& cost, const NoiseSequence& noise, std::size_t first,
                                   std::size_t last, const AdmissibleSet& set, double alpha,
                                   const OracleSettings& settings) {
  if (first < 1 || last < first) throw ConfigError("batch must be a nonempty range of steps");
  const auto pts = action_grid(set, settings.candidates, settings.placement);
  std::vector<double> totals(pts.size(), 0.0);
  std::vector<double> scratch;
  for (std::size_t t = first; t <= last; ++t) {
    const auto xi = quantile_grid(noise, t, settings.quantile_grid);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      totals[i] += cvar_on_grid(cost, xi, DecisionVector{pts[i]}, alpha, scratch);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (totals[i] < totals[best]) best = i;
  }
  return {DecisionVector{pts[best]}, totals[best]};
}

}  // namespace rao
