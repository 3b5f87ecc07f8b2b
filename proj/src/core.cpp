#include "rao/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

namespace rao {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double c : v) {
    if (!std::isfinite(c)) throw ConfigError(std::string(what) + ": non-finite coordinate");
  }
}

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    std::ostringstream os;
    os << "dimension mismatch: set has d=" << expected << ", point has d=" << got;
    throw ConfigError(os.str());
  }
}

}  // namespace

DecisionVector::DecisionVector(std::initializer_list<double> coords)
    : DecisionVector(std::vector<double>(coords)) {}

DecisionVector::DecisionVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ConfigError("decision vector must have d >= 1");
  require_finite(coords_, "decision vector");
}

double DecisionVector::norm() const noexcept {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return std::sqrt(s);
}

double distance(const DecisionVector& a, const DecisionVector& b) {
  require_dim(a.dim(), b.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

AdmissibleSet AdmissibleSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw ConfigError("box bounds must be nonempty and of equal dimension");
  }
  require_finite(lower, "box lower bound");
  require_finite(upper, "box upper bound");
  AdmissibleSet s;
  s.kind_ = Kind::box;
  s.center_.resize(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      std::ostringstream os;
      os << "box requires lower < upper in every coordinate (coordinate " << i << ")";
      throw ConfigError(os.str());
    }
    s.center_[i] = 0.5 * (lower[i] + upper[i]);
  }
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

AdmissibleSet AdmissibleSet::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw ConfigError("ball center must have d >= 1");
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("ball radius must be positive");
  AdmissibleSet s;
  s.kind_ = Kind::ball;
  s.radius_ = radius;
  s.lower_.resize(center.size());
  s.upper_.resize(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    s.lower_[i] = center[i] - radius;
    s.upper_[i] = center[i] + radius;
  }
  s.center_ = std::move(center);
  return s;
}

double AdmissibleSet::inradius() const noexcept {
  if (kind_ == Kind::ball) return radius_;
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lower_.size(); ++i) r = std::min(r, 0.5 * (upper_[i] - lower_[i]));
  return r;
}

bool AdmissibleSet::contains(const DecisionVector& x, double tol) const {
  require_dim(dim(), x.dim());
  if (kind_ == Kind::box) {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
    }
    return true;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += (x[i] - center_[i]) * (x[i] - center_[i]);
  return std::sqrt(s) <= radius_ + tol;
}

DecisionVector project(const AdmissibleSet& set, const DecisionVector& x) {
  require_dim(set.dim(), x.dim());
  std::vector<double> y(x.coords().begin(), x.coords().end());
  if (set.kind() == AdmissibleSet::Kind::box) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], set.lower()[i], set.upper()[i]);
    return DecisionVector(std::move(y));
  }
  const auto c = set.center();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - c[i]) * (y[i] - c[i]);
  const double dist = std::sqrt(s);
  if (dist <= set.radius()) return x;
  // Rounding can leave c + scale (y - c) an ulp outside; nudge the scale down until it is
  // inside so that projecting twice changes nothing.
  const std::vector<double> from = y;
  for (double scale = set.radius() / dist;; scale = std::nextafter(scale, 0.0)) {
    double t = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = c[i] + scale * (from[i] - c[i]);
      t += (y[i] - c[i]) * (y[i] - c[i]);
    }
    if (std::sqrt(t) <= set.radius()) break;
  }
  return DecisionVector(std::move(y));
}

AdmissibleSet shrunk_set(const AdmissibleSet& set, double delta) {
  const double r = set.inradius();
  if (!(delta >= 0.0) || !(delta < r)) {
    std::ostringstream os;
    os << "smoothing radius " << delta << " must satisfy 0 <= delta < inradius " << r;
    throw InvalidSmoothingRadius(os.str());
  }
  if (delta == 0.0) return set;
  const double factor = 1.0 - delta / r;
  const auto c = set.center();
  if (set.kind() == AdmissibleSet::Kind::ball) {
    return AdmissibleSet::ball({c.begin(), c.end()}, factor * set.radius());
  }
  std::vector<double> lo(set.dim()), hi(set.dim());
  for (std::size_t i = 0; i < set.dim(); ++i) {
    lo[i] = c[i] - factor * (c[i] - set.lower()[i]);
    hi[i] = c[i] + factor * (set.upper()[i] - c[i]);
  }
  return AdmissibleSet::box(std::move(lo), std::move(hi));
}

double set_diameter(const AdmissibleSet& set) {
  if (set.kind() == AdmissibleSet::Kind::ball) return 2.0 * set.radius();
  double s = 0.0;
  for (std::size_t i = 0; i < set.dim(); ++i) {
    const double w = set.upper()[i] - set.lower()[i];
    s += w * w;
  }
  return std::sqrt(s);
}

double check_cost_bound(const CostModel& cost, const AdmissibleSet& set, double noise_lo,
                        double noise_hi, std::size_t samples, Rng& rng) {
  if (!cost.evaluate) throw ConfigError("cost model has no evaluation rule");
  if (!(cost.bound > 0.0)) throw ConfigError("cost bound U must be positive");
  if (!(cost.lipschitz >= 0.0)) throw ConfigError("Lipschitz constant must be nonnegative");
  if (!(cost.strong_convexity >= 0.0)) throw ConfigError("strong-convexity modulus must be >= 0");
  if (!(noise_lo <= noise_hi)) throw ConfigError("noise support must satisfy lo <= hi");

  double worst = 0.0;
  std::vector<double> x(set.dim());
  for (std::size_t s = 0; s < samples; ++s) {
    do {
      for (std::size_t i = 0; i < set.dim(); ++i) {
        x[i] = set.lower()[i] + (set.upper()[i] - set.lower()[i]) * uniform01(rng);
      }
    } while (!set.contains(DecisionVector(x)));
    const double xi = noise_lo + (noise_hi - noise_lo) * uniform01(rng);
    worst = std::max(worst, std::abs(cost(x, xi)));
  }
  if (worst > cost.bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "cost '" << cost.name << "' reaches |J| = " << worst << " above declared U = " << cost.bound;
    throw ConfigError(os.str());
  }
  return worst;
}

StepDistribution StepDistribution::point(double at) {
  if (!std::isfinite(at)) throw EnvironmentError("point mass location must be finite");
  return {Kind::point, at, at};
}

StepDistribution StepDistribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
    throw EnvironmentError("uniform distribution requires finite lo <= hi");
  }
  if (lo == hi) return point(lo);
  return {Kind::uniform, lo, hi};
}

StepDistribution StepDistribution::gaussian(double mean, double stddev) {
  if (!std::isfinite(mean) || !std::isfinite(stddev) || !(stddev >= 0.0)) {
    throw EnvironmentError("Gaussian requires finite mean and stddev >= 0");
  }
  if (stddev == 0.0) return point(mean);
  return {Kind::gaussian, mean, stddev};
}

double StepDistribution::mean() const noexcept {
  return kind_ == Kind::uniform ? 0.5 * (a_ + b_) : a_;
}

double StepDistribution::support_lo() const noexcept {
  return kind_ == Kind::gaussian ? -std::numeric_limits<double>::infinity() : a_;
}

double StepDistribution::support_hi() const noexcept {
  return kind_ == Kind::gaussian ? std::numeric_limits<double>::infinity() : b_;
}

double StepDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::point:
      return a_;
    case Kind::uniform:
      return a_ + (b_ - a_) * uniform01(rng);
    case Kind::gaussian:
      return std::normal_distribution<double>(a_, b_)(rng);
  }
  return a_;
}

double StepDistribution::cdf(double y) const {
  switch (kind_) {
    case Kind::point:
      return y >= a_ ? 1.0 : 0.0;
    case Kind::uniform:
      if (y < a_) return 0.0;
      if (y >= b_) return 1.0;
      return (y - a_) / (b_ - a_);
    case Kind::gaussian:
      return 0.5 * std::erfc(-(y - a_) / (b_ * std::sqrt(2.0)));
  }
  return 0.0;
}

double StepDistribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw EnvironmentError("quantile level must lie in [0, 1]");
  switch (kind_) {
    case Kind::point:
      return a_;
    case Kind::uniform:
      return a_ + (b_ - a_) * q;
    case Kind::gaussian:
      if (q == 0.0) return -std::numeric_limits<double>::infinity();
      if (q == 1.0) return std::numeric_limits<double>::infinity();
      return a_ - b_ * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * q);
  }
  return a_;
}

void NoiseSequence::check_step(std::size_t t) const {
  if (t < 1 || t > horizon()) {
    std::ostringstream os;
    os << "step " << t << " outside [1, " << horizon() << "] for sequence '" << name() << "'";
    throw EnvironmentError(os.str());
  }
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace rao
