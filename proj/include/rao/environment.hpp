#pragma once

// Concrete noise sequences, 1-D Wasserstein-1 distances and variation budgets.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rao/core.hpp"

namespace rao {

/// D_t = Uniform[lo(t), hi(t)]. Steps with hi(t) <= lo(t) become a point mass at lo(t).
class UniformSeq : public NoiseSequence {
 public:
  using Endpoint = std::function<double(std::size_t t)>;

  UniformSeq(Endpoint lo, Endpoint hi, std::size_t horizon, std::string name = "uniform");

  std::size_t horizon() const override { return horizon_; }
  StepDistribution at(std::size_t t) const override;
  std::string name() const override { return name_; }

  /// Steps whose interval was empty or a single point.
  std::size_t degenerate_steps() const noexcept { return degenerate_; }

 private:
  Endpoint lo_;
  Endpoint hi_;
  std::size_t horizon_;
  std::string name_;
  std::size_t degenerate_ = 0;
};

/// Mass diffusion from the origin: D_t = N(0, 2 D t).
class BrownianSeq : public NoiseSequence {
 public:
  BrownianSeq(double diffusivity, std::size_t horizon);

  std::size_t horizon() const override { return horizon_; }
  StepDistribution at(std::size_t t) const override;
  std::string name() const override { return "brownian"; }
  double diffusivity() const noexcept { return diffusivity_; }

 private:
  double diffusivity_;
  std::size_t horizon_;
};

class StaticSeq : public NoiseSequence {
 public:
  StaticSeq(StepDistribution dist, std::size_t horizon);

  std::size_t horizon() const override { return horizon_; }
  StepDistribution at(std::size_t t) const override;
  std::string name() const override { return "static"; }

 private:
  StepDistribution dist_;
  std::size_t horizon_;
};

/// Step t uses steps[t - 1].
class ExplicitSeq : public NoiseSequence {
 public:
  explicit ExplicitSeq(std::vector<StepDistribution> steps);

  std::size_t horizon() const override { return steps_.size(); }
  StepDistribution at(std::size_t t) const override;
  std::string name() const override { return "explicit"; }

 private:
  std::vector<StepDistribution> steps_;
};

/// Occupancy-noise range of the parking study:
///   t <  T/2: [0.85, 1.15 - 0.5 t^-0.5]
///   t >= T/2: [0.85 + 0.5 t^-0.1, 1.1]
/// The first branch is empty for t <= 2 and is returned as-is (hi < lo).
std::pair<double, double> parking_range(std::size_t t, std::size_t horizon);

UniformSeq parking_sequence(std::size_t horizon);

/// Uniform range moving linearly from [lo0, hi0] at t = 1 to [lo1, hi1] at t = T.
UniformSeq drifting_uniform(double lo0, double hi0, double lo1, double hi1, std::size_t horizon);

/// Closed-form W1 between Uniform[a1, b1] and Uniform[a2, b2] (a == b is a point mass).
double w1_uniform(double a1, double b1, double a2, double b2);

/// Closed-form W1 between N(m1, s1^2) and N(m2, s2^2): E|(m1 - m2) + (s1 - s2) Z|.
double w1_gaussian(double m1, double s1, double m2, double s2);

/// Trapezoidal quadrature of |F1 - F2| over [lo, hi] with `grid` intervals (>= 1000).
/// A non-finite support is a ConfigError.
double w1_numeric(const std::function<double(double)>& cdf1, const std::function<double(double)>& cdf2,
                  double lo, double hi, std::size_t grid);

/// W1 between two step distributions: closed form for uniform/point pairs and
/// Gaussian pairs, quadrature (Gaussian tails cut at 10 sigma) otherwise.
double w1_between(const StepDistribution& p, const StepDistribution& q);

/// W1(D_{t-1}, D_t) for t = 2..T, indexed from 0.
std::vector<double> variation_terms(const NoiseSequence& noise, std::size_t horizon);

/// sum_{t=2}^T W1(D_{t-1}, D_t).
double variation_budget(const NoiseSequence& noise, std::size_t horizon);

}  // namespace rao
