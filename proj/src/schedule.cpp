#include "rao/schedule.hpp"

#include <cmath>
#include <sstream>

#include "rao/errors.hpp"

namespace rao {

namespace {

void check_batch_size(std::size_t batch_size) {
  if (batch_size < 2) {
    std::ostringstream os;
    os << "batch size " << batch_size << " must be >= 2";
    throw InvalidBatchSize(os.str());
  }
}

void check_theorem_inputs(std::size_t horizon, double budget, double a) {
  if (horizon < 2) throw ConfigError("horizon T must be >= 2");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("tuning parameter a must be positive");
  if (!(budget > 0.0)) throw ConfigError("variation budget V_D must be positive");
  if (!(budget < static_cast<double>(horizon))) {
    std::ostringstream os;
    os << "variation budget " << budget << " must be below the horizon " << horizon;
    throw BudgetExceedsHorizon(os.str());
  }
}

}  // namespace

BatchIndex batch_epoch(std::size_t t, std::size_t batch_size) {
  check_batch_size(batch_size);
  if (t < 1) throw ConfigError("iteration index t must be >= 1");
  const std::size_t j = (t + batch_size - 1) / batch_size;
  return {j, t - (j - 1) * batch_size};
}

std::size_t sampling_count_poly(std::size_t tau, std::size_t batch_size, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("polynomial sampling needs a > 0 and b > 0");
  if (tau < 1 || tau > batch_size) throw ConfigError("epoch tau outside [1, batch size]");
  const double raw = b * std::pow(static_cast<double>(batch_size - tau + 1), a);
  // pow can land one ulp above an exact integer; snap before taking the ceiling.
  const double nearest = std::round(raw);
  const double snapped = std::abs(raw - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : raw;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(snapped)));
}

SamplingStrategy SamplingStrategy::constant(std::size_t n) {
  if (n < 1) throw ConfigError("constant sampling count must be >= 1");
  return SamplingStrategy(Constant{n});
}

SamplingStrategy SamplingStrategy::polynomial(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("polynomial sampling needs a > 0 and b > 0");
  return SamplingStrategy(Polynomial{a, b});
}

std::size_t SamplingStrategy::count(std::size_t tau, std::size_t batch_size) const {
  if (const auto* c = std::get_if<Constant>(&rule_)) return c->n;
  const auto& p = std::get<Polynomial>(rule_);
  return sampling_count_poly(tau, batch_size, p.a, p.b);
}

SamplingCheck check_sampling_requirement(const SamplingStrategy& strategy, std::size_t batch_size,
                                         double a, double c) {
  check_batch_size(batch_size);
  SamplingCheck out;
  for (std::size_t tau = 1; tau <= batch_size; ++tau) {
    out.lhs += 1.0 / std::sqrt(static_cast<double>(strategy.count(tau, batch_size)));
  }
  out.rhs = c * std::pow(static_cast<double>(batch_size), 1.0 - a / 2.0);
  out.satisfied = out.lhs <= out.rhs;
  return out;
}

LearningRateSchedule LearningRateSchedule::constant(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("constant learning rate must be positive");
  return LearningRateSchedule(Constant{eta});
}

LearningRateSchedule LearningRateSchedule::inverse_strong(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("strong-convexity modulus m must be positive");
  return LearningRateSchedule(InverseStrong{m});
}

double LearningRateSchedule::rate(std::size_t tau) const {
  if (tau < 1) throw ConfigError("epoch tau must be >= 1");
  if (const auto* c = std::get_if<Constant>(&rule_)) return c->eta;
  return 1.0 / (std::get<InverseStrong>(rule_).m * static_cast<double>(tau));
}

double learning_rate(const LearningRateSchedule& schedule, std::size_t tau) {
  return schedule.rate(tau);
}

std::size_t round_batch_size(double raw) {
  const double rounded = std::floor(raw + 0.5);
  return rounded < 2.0 ? 2 : static_cast<std::size_t>(rounded);
}

ConvexParams theorem1_params(std::size_t horizon, double budget, double a, ParamScales scales) {
  check_theorem_inputs(horizon, budget, a);
  const double ratio = budget / static_cast<double>(horizon);
  double e_delta = 0.2, e_eta = 0.6, e_batch = 0.8;
  if (a <= 1.0) {
    e_delta = a / (4.0 + a);
    e_eta = 3.0 * a / (4.0 + a);
    e_batch = 4.0 / (4.0 + a);
  }
  return {scales.delta * std::pow(ratio, e_delta), scales.eta * std::pow(ratio, e_eta),
          round_batch_size(scales.batch * std::pow(static_cast<double>(horizon) / budget, e_batch))};
}

StronglyConvexParams theorem2_params(std::size_t horizon, double budget, double a, double m,
                                     ParamScales scales) {
  check_theorem_inputs(horizon, budget, a);
  if (!(m > 0.0)) throw ConfigError("strong-convexity modulus m must be positive");
  const double ratio = budget / static_cast<double>(horizon);
  double e_delta = 0.25, e_batch = 0.75;
  if (a <= 4.0 / 3.0) {
    e_delta = a / (4.0 + a);
    e_batch = 4.0 / (4.0 + a);
  }
  return {scales.delta * std::pow(ratio, e_delta),
          round_batch_size(scales.batch * std::pow(static_cast<double>(horizon) / budget, e_batch)),
          LearningRateSchedule::inverse_strong(m)};
}

}  // namespace rao
