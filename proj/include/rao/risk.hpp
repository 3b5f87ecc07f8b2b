#pragma once

// Empirical distribution functions and the discrete CVaR used by the learner.
//
// CVaR convention: the mean of the worst (largest) alpha-fraction of outcomes,
// i.e. the minimum over v of the Rockafellar-Uryasev functional
//
//   L(v) = v + 1/(alpha n) * sum_i (J_i - v)_+ .
//
// With J(1) >= ... >= J(n) and k = ceil(alpha n) the minimum has the closed form
//
//   CVaR = 1/(alpha n) * [ J(1) + ... + J(k-1) + (alpha n - k + 1) J(k) ] ,
//
// attained at v = J(k). alpha = 1 gives the sample mean.

#include <cstddef>
#include <span>
#include <vector>

namespace rao {

class EmpiricalCdf {
 public:
  /// Sorted copy of `values`; throws EmptySample on empty input, ConfigError on non-finite values.
  explicit EmpiricalCdf(std::span<const double> values);

  std::size_t size() const noexcept { return sorted_.size(); }
  /// Ascending samples, duplicates retained.
  std::span<const double> samples() const noexcept { return sorted_; }

  /// Fraction of samples <= y.
  double operator()(double y) const;
  /// Fraction of samples < y (left limit).
  double left_limit(double y) const;

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf build_ecdf(std::span<const double> values);
double ecdf_eval(const EmpiricalCdf& ecdf, double y);

void check_risk_level(double alpha);

double cvar_discrete(const EmpiricalCdf& ecdf, double alpha);

/// Same quantity as cvar_discrete computed by partial selection; reorders `values`.
double cvar_discrete_inplace(std::span<double> values, double alpha);

/// J(k), k = ceil(alpha n): the empirical upper quantile where the RU functional is minimal.
double value_at_risk(const EmpiricalCdf& ecdf, double alpha);

double ru_functional(const EmpiricalCdf& ecdf, double alpha, double v);

/// Exact Kolmogorov distance sup_y |F(y) - G(y)| between two step functions.
double sup_cdf_distance(const EmpiricalCdf& f, const EmpiricalCdf& g);

/// DKW radius sqrt(ln(2 / confidence) / (2 n)); confidence in (0, 2].
double dkw_epsilon(std::size_t n, double confidence);

/// (U / alpha) * kolmogorov.
double cvar_error_bound(double bound, double alpha, double kolmogorov);

}  // namespace rao
