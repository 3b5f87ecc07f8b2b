#pragma once

// Problem-definition types shared by the learner, the oracle and the harness:
// decision vectors, admissible sets, cost models and noise sequences.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rao/errors.hpp"

namespace rao {

using Rng = std::mt19937_64;

inline constexpr double kMembershipTol = 1e-12;

class DecisionVector {
 public:
  DecisionVector(std::initializer_list<double> coords);
  explicit DecisionVector(std::vector<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  double norm() const noexcept;

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;

 private:
  std::vector<double> coords_;
};

double distance(const DecisionVector& a, const DecisionVector& b);

/// Convex feasible region. Only boxes and Euclidean balls are supported.
class AdmissibleSet {
 public:
  enum class Kind { box, ball };

  static AdmissibleSet box(std::vector<double> lower, std::vector<double> upper);
  static AdmissibleSet ball(std::vector<double> center, double radius);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return center_.size(); }

  // Box bounds; for a ball these are the bounding box.
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::span<const double> center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  /// Radius of the largest ball centered at center() contained in the set.
  double inradius() const noexcept;

  bool contains(const DecisionVector& x, double tol = kMembershipTol) const;

 private:
  AdmissibleSet() = default;

  Kind kind_ = Kind::box;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> center_;
  double radius_ = 0.0;
};

/// Euclidean projection onto the set. Points already inside are returned unchanged.
DecisionVector project(const AdmissibleSet& set, const DecisionVector& x);

/// The set scaled by (1 - delta / r) about its center, r the inradius. Every
/// point of the result stays inside `set` after a perturbation of length delta.
AdmissibleSet shrunk_set(const AdmissibleSet& set, double delta);

double set_diameter(const AdmissibleSet& set);

/// Bounded, Lipschitz cost J(x, xi) with scalar noise.
struct CostModel {
  using Fn = std::function<double(std::span<const double> x, double xi)>;

  Fn evaluate;
  double bound = 0.0;       // U: |J| <= U on the admissible set and noise support
  double lipschitz = 0.0;   // L0 in x
  double strong_convexity = 0.0;  // m, 0 if merely convex
  std::string name;

  double operator()(const DecisionVector& x, double xi) const { return evaluate(x.coords(), xi); }
  double operator()(std::span<const double> x, double xi) const { return evaluate(x, xi); }
};

/// Validates the metadata and spot-checks |J| <= U on `samples` random points of
/// set x [noise_lo, noise_hi]. Returns the largest |J| observed.
double check_cost_bound(const CostModel& cost, const AdmissibleSet& set, double noise_lo,
                        double noise_hi, std::size_t samples, Rng& rng);

/// One step's noise distribution: a point mass, a uniform interval or a Gaussian.
class StepDistribution {
 public:
  enum class Kind { point, uniform, gaussian };

  static StepDistribution point(double at);
  static StepDistribution uniform(double lo, double hi);
  static StepDistribution gaussian(double mean, double stddev);

  Kind kind() const noexcept { return kind_; }
  // Meaning by kind: point -> (at, at); uniform -> (lo, hi); gaussian -> (mean, stddev).
  double first() const noexcept { return a_; }
  double second() const noexcept { return b_; }

  double mean() const noexcept;
  /// Closed support; infinite bounds for a Gaussian.
  double support_lo() const noexcept;
  double support_hi() const noexcept;

  double sample(Rng& rng) const;
  double cdf(double y) const;
  /// Generalized inverse inf{y : F(y) >= q} for q in [0, 1].
  double quantile(double q) const;

  friend bool operator==(const StepDistribution&, const StepDistribution&) = default;

 private:
  StepDistribution(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

/// Time-indexed family D_1..D_T of scalar noise distributions.
class NoiseSequence {
 public:
  virtual ~NoiseSequence() = default;

  virtual std::size_t horizon() const = 0;
  /// Distribution at step t, 1 <= t <= horizon().
  virtual StepDistribution at(std::size_t t) const = 0;
  virtual std::string name() const = 0;

  double sample(std::size_t t, Rng& rng) const { return at(t).sample(rng); }
  double cdf(std::size_t t, double y) const { return at(t).cdf(y); }
  double quantile(std::size_t t, double q) const { return at(t).quantile(q); }

 protected:
  void check_step(std::size_t t) const;
};

/// Uniform draw in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

}  // namespace rao
