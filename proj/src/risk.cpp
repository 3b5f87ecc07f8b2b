#include "rao/risk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rao/errors.hpp"

namespace rao {

namespace {

// Number of order statistics carrying weight, clamped to [1, n]. The closed form is
// continuous in alpha n, so rounding noise in the product does not matter.
std::size_t tail_count(double alpha_n, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::ceil(alpha_n));
  return std::clamp<std::size_t>(k, 1, n);
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::span<const double> values) : sorted_(values.begin(), values.end()) {
  if (sorted_.empty()) throw EmptySample("empirical distribution needs at least one sample");
  for (double v : sorted_) {
    if (!std::isfinite(v)) throw ConfigError("empirical distribution sample is not finite");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double y) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), y);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double y) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), y);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf build_ecdf(std::span<const double> values) { return EmpiricalCdf(values); }

double ecdf_eval(const EmpiricalCdf& ecdf, double y) { return ecdf(y); }

void check_risk_level(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "risk level alpha = " << alpha << " outside (0, 1]";
    throw InvalidRiskLevel(os.str());
  }
}

double cvar_discrete(const EmpiricalCdf& ecdf, double alpha) {
  check_risk_level(alpha);
  const auto s = ecdf.samples();
  const std::size_t n = s.size();
  const double alpha_n = alpha * static_cast<double>(n);
  const std::size_t k = tail_count(alpha_n, n);
  // s is ascending: the i-th largest is s[n - i].
  // VaR plus the scaled excess of the k - 1 larger samples; equals the closed form and is
  // exact when the tail is flat.
  const double var = s[n - k];
  double excess = 0.0;
  for (std::size_t i = 1; i < k; ++i) excess += s[n - i] - var;
  return var + excess / alpha_n;
}

double cvar_discrete_inplace(std::span<double> values, double alpha) {
  check_risk_level(alpha);
  const std::size_t n = values.size();
  if (n == 0) throw EmptySample("CVaR of an empty sample");
  const double alpha_n = alpha * static_cast<double>(n);
  const std::size_t k = tail_count(alpha_n, n);
  const auto pivot = values.begin() + static_cast<std::ptrdiff_t>(n - k);
  std::nth_element(values.begin(), pivot, values.end());
  const double var = *pivot;
  double excess = 0.0;
  for (auto it = pivot + 1; it != values.end(); ++it) excess += *it - var;
  return var + excess / alpha_n;
}

double value_at_risk(const EmpiricalCdf& ecdf, double alpha) {
  check_risk_level(alpha);
  const auto s = ecdf.samples();
  const std::size_t k = tail_count(alpha * static_cast<double>(s.size()), s.size());
  return s[s.size() - k];
}

double ru_functional(const EmpiricalCdf& ecdf, double alpha, double v) {
  check_risk_level(alpha);
  double excess = 0.0;
  for (double j : ecdf.samples()) excess += std::max(j - v, 0.0);
  return v + excess / (alpha * static_cast<double>(ecdf.size()));
}

double sup_cdf_distance(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  // Both functions are constant between consecutive jump points, so the supremum
  // is attained at a jump (right value) or just below one (left limit).
  double best = 0.0;
  auto visit = [&](double y) {
    best = std::max(best, std::abs(f(y) - g(y)));
    best = std::max(best, std::abs(f.left_limit(y) - g.left_limit(y)));
  };
  for (double y : f.samples()) visit(y);
  for (double y : g.samples()) visit(y);
  return best;
}

double dkw_epsilon(std::size_t n, double confidence) {
  if (n == 0) throw ConfigError("DKW radius needs n >= 1");
  if (!(confidence > 0.0 && confidence <= 2.0)) {
    std::ostringstream os;
    os << "DKW confidence parameter " << confidence << " outside (0, 2]";
    throw InvalidConfidence(os.str());
  }
  return std::sqrt(std::log(2.0 / confidence) / (2.0 * static_cast<double>(n)));
}

double cvar_error_bound(double bound, double alpha, double kolmogorov) {
  return bound / alpha * kolmogorov;
}

}  // namespace rao
