#include "rao/smoothing.hpp"

#include <cmath>
#include <sstream>

#include "rao/oracle.hpp"

namespace rao {

std::vector<double> sample_unit_sphere(std::size_t d, Rng& rng) {
  if (d < 1) throw ConfigError("sphere dimension must be >= 1");
  if (d == 1) return {(rng() >> 63) != 0 ? 1.0 : -1.0};
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : u) {
      c = gauss(rng);
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& c : u) c /= norm;
  return u;
}

DecisionVector perturb(const DecisionVector& x, double delta, std::span<const double> u) {
  if (u.size() != x.dim()) throw ConfigError("direction and decision dimensions differ");
  std::vector<double> y(x.dim());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + delta * u[i];
  return DecisionVector(std::move(y));
}

std::vector<double> gradient_estimate(double cvar_value, std::span<const double> u, std::size_t d,
                                      double delta) {
  if (!(delta > 0.0)) throw InvalidSmoothingRadius("gradient estimate needs delta > 0");
  if (u.size() != d) throw ConfigError("direction dimension differs from d");
  const double scale = static_cast<double>(d) / delta * cvar_value;
  std::vector<double> g(d);
  for (std::size_t i = 0; i < d; ++i) g[i] = scale * u[i];
  return g;
}

double smoothed_cvar_mc(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                        const DecisionVector& x, const AdmissibleSet& set, double delta,
                        double alpha, std::size_t n_dirs, std::size_t n_noise, Rng& rng) {
  const AdmissibleSet inner = shrunk_set(set, delta);
  if (!inner.contains(x)) {
    std::ostringstream os;
    os << "smoothed CVaR requested at a point outside the delta-shrunk set (delta = " << delta << ")";
    throw DomainError(os.str());
  }
  if (delta == 0.0) return true_cvar(cost, noise, t, x, alpha, n_noise);
  if (x.dim() == 1) {
    const double up = true_cvar(cost, noise, t, DecisionVector{x[0] + delta}, alpha, n_noise);
    const double down = true_cvar(cost, noise, t, DecisionVector{x[0] - delta}, alpha, n_noise);
    return 0.5 * (up + down);
  }
  if (n_dirs < 1) throw ConfigError("smoothed CVaR needs at least one direction");
  double sum = 0.0;
  for (std::size_t k = 0; k < n_dirs; ++k) {
    const auto u = sample_unit_sphere(x.dim(), rng);
    sum += true_cvar(cost, noise, t, perturb(x, delta, u), alpha, n_noise);
  }
  return sum / static_cast<double>(n_dirs);
}

}  // namespace rao
