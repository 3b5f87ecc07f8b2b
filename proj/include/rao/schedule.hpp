#pragma once

// Batch/epoch bookkeeping for the restarting procedure, per-epoch sampling counts
// and learning rates, and the parameter selections that come with the regret bounds.

#include <cstddef>
#include <variant>

namespace rao {

struct BatchIndex {
  std::size_t batch = 1;  // j
  std::size_t epoch = 1;  // tau, 1-based position inside the batch
  friend bool operator==(const BatchIndex&, const BatchIndex&) = default;
};

/// j = ceil(t / batch_size), tau = t - (j - 1) batch_size. Requires t >= 1, batch_size >= 2.
BatchIndex batch_epoch(std::size_t t, std::size_t batch_size);

/// ceil(b (batch_size - tau + 1)^a).
std::size_t sampling_count_poly(std::size_t tau, std::size_t batch_size, double a, double b);

class SamplingStrategy {
 public:
  struct Constant {
    std::size_t n;
  };
  struct Polynomial {
    double a;
    double b;
  };

  static SamplingStrategy constant(std::size_t n);
  static SamplingStrategy polynomial(double a, double b);

  /// phi(tau) for an epoch inside a batch of length batch_size.
  std::size_t count(std::size_t tau, std::size_t batch_size) const;

  bool is_constant() const noexcept { return std::holds_alternative<Constant>(rule_); }
  const std::variant<Constant, Polynomial>& rule() const noexcept { return rule_; }

 private:
  explicit SamplingStrategy(std::variant<Constant, Polynomial> r) : rule_(r) {}
  std::variant<Constant, Polynomial> rule_;
};

struct SamplingCheck {
  bool satisfied = false;
  double lhs = 0.0;  // sum over the batch of 1 / sqrt(phi(tau))
  double rhs = 0.0;  // c * batch_size^(1 - a / 2)
};

/// Tests sum_{tau=1}^{batch} phi(tau)^(-1/2) <= c * batch^(1 - a/2).
SamplingCheck check_sampling_requirement(const SamplingStrategy& strategy, std::size_t batch_size,
                                         double a, double c);

class LearningRateSchedule {
 public:
  struct Constant {
    double eta;
  };
  struct InverseStrong {
    double m;
  };

  static LearningRateSchedule constant(double eta);
  /// 1 / (m tau).
  static LearningRateSchedule inverse_strong(double m);

  double rate(std::size_t tau) const;

  const std::variant<Constant, InverseStrong>& rule() const noexcept { return rule_; }

 private:
  explicit LearningRateSchedule(std::variant<Constant, InverseStrong> r) : rule_(r) {}
  std::variant<Constant, InverseStrong> rule_;
};

double learning_rate(const LearningRateSchedule& schedule, std::size_t tau);

/// Multipliers on the unit-constant parameter formulas.
struct ParamScales {
  double delta = 1.0;
  double eta = 1.0;
  double batch = 1.0;
};

struct ConvexParams {
  double delta;
  double eta;
  std::size_t batch_size;
};

struct StronglyConvexParams {
  double delta;
  std::size_t batch_size;
  LearningRateSchedule rate;
};

/// Convex case. a in (0, 1]: delta = (V/T)^(a/(4+a)), eta = (V/T)^(3a/(4+a)),
/// batch = (T/V)^(4/(4+a)); a > 1 uses exponents 1/5, 3/5, 4/5.
ConvexParams theorem1_params(std::size_t horizon, double budget, double a, ParamScales scales = {});

/// Strongly convex case with eta_tau = 1/(m tau). a in (0, 4/3]: delta = (V/T)^(a/(4+a)),
/// batch = (T/V)^(4/(4+a)); a > 4/3: delta = (V/T)^(1/4), batch = (T/V)^(3/4).
StronglyConvexParams theorem2_params(std::size_t horizon, double budget, double a, double m,
                                     ParamScales scales = {});

/// Half-up rounding clamped to at least 2.
std::size_t round_batch_size(double raw);

}  // namespace rao
