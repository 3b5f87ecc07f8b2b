#include "rao/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rao/log.hpp"

namespace rao {

UniformSeq::UniformSeq(Endpoint lo, Endpoint hi, std::size_t horizon, std::string name)
    : lo_(std::move(lo)), hi_(std::move(hi)), horizon_(horizon), name_(std::move(name)) {
  if (horizon_ < 1) throw ConfigError("noise sequence horizon must be >= 1");
  for (std::size_t t = 1; t <= horizon_; ++t) {
    if (hi_(t) <= lo_(t)) ++degenerate_;
  }
  if (degenerate_ > 0) {
    std::ostringstream os;
    os << name_ << ": " << degenerate_ << " step(s) have an empty range; using a point mass at the lower end";
    log::warn(os.str());
  }
}

StepDistribution UniformSeq::at(std::size_t t) const {
  check_step(t);
  const double lo = lo_(t);
  const double hi = hi_(t);
  if (hi <= lo) return StepDistribution::point(lo);
  return StepDistribution::uniform(lo, hi);
}

BrownianSeq::BrownianSeq(double diffusivity, std::size_t horizon)
    : diffusivity_(diffusivity), horizon_(horizon) {
  if (!(diffusivity_ > 0.0)) throw ConfigError("diffusivity must be positive");
  if (horizon_ < 1) throw ConfigError("noise sequence horizon must be >= 1");
}

StepDistribution BrownianSeq::at(std::size_t t) const {
  check_step(t);
  return StepDistribution::gaussian(0.0, std::sqrt(2.0 * diffusivity_ * static_cast<double>(t)));
}

StaticSeq::StaticSeq(StepDistribution dist, std::size_t horizon) : dist_(dist), horizon_(horizon) {
  if (horizon_ < 1) throw ConfigError("noise sequence horizon must be >= 1");
}

StepDistribution StaticSeq::at(std::size_t t) const {
  check_step(t);
  return dist_;
}

ExplicitSeq::ExplicitSeq(std::vector<StepDistribution> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw ConfigError("explicit sequence needs at least one step");
}

StepDistribution ExplicitSeq::at(std::size_t t) const {
  check_step(t);
  return steps_[t - 1];
}

std::pair<double, double> parking_range(std::size_t t, std::size_t horizon) {
  const double tt = static_cast<double>(t);
  if (2 * t < horizon) return {0.85, 1.15 - 0.5 * std::pow(tt, -0.5)};
  return {0.85 + 0.5 * std::pow(tt, -0.1), 1.1};
}

UniformSeq parking_sequence(std::size_t horizon) {
  return UniformSeq([horizon](std::size_t t) { return parking_range(t, horizon).first; },
                    [horizon](std::size_t t) { return parking_range(t, horizon).second; }, horizon,
                    "parking");
}

UniformSeq drifting_uniform(double lo0, double hi0, double lo1, double hi1, std::size_t horizon) {
  auto lerp = [horizon](double a, double b) {
    return [=](std::size_t t) {
      if (horizon < 2) return a;
      const double s = static_cast<double>(t - 1) / static_cast<double>(horizon - 1);
      return a + (b - a) * s;
    };
  };
  return UniformSeq(lerp(lo0, lo1), lerp(hi0, hi1), horizon, "drifting-uniform");
}

double w1_uniform(double a1, double b1, double a2, double b2) {
  // Quantile difference g(q) = (a1 - a2) + ((b1 - a1) - (b2 - a2)) q is linear on [0, 1].
  const double g0 = a1 - a2;
  const double g1 = b1 - b2;
  if ((g0 >= 0.0 && g1 >= 0.0) || (g0 <= 0.0 && g1 <= 0.0)) return 0.5 * std::abs(g0 + g1);
  const double root = g0 / (g0 - g1);
  return 0.5 * (std::abs(g0) * root + std::abs(g1) * (1.0 - root));
}

double w1_gaussian(double m1, double s1, double m2, double s2) {
  const double dm = m1 - m2;
  const double ds = std::abs(s1 - s2);
  if (ds == 0.0) return std::abs(dm);
  // Mean of a folded normal with location dm and scale ds.
  const double z = dm / ds;
  return ds * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * z * z) + dm * std::erf(z / std::sqrt(2.0));
}

double w1_numeric(const std::function<double(double)>& cdf1, const std::function<double(double)>& cdf2,
                  double lo, double hi, std::size_t grid) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError("numeric W1 needs a finite (explicitly truncated) support");
  }
  if (!(lo <= hi)) throw ConfigError("numeric W1 support must satisfy lo <= hi");
  if (grid < 1000) throw ConfigError("numeric W1 needs a grid of at least 1000 intervals");
  if (lo == hi) return 0.0;
  const double h = (hi - lo) / static_cast<double>(grid);
  auto f = [&](std::size_t i) {
    const double y = i == grid ? hi : lo + h * static_cast<double>(i);
    return std::abs(cdf1(y) - cdf2(y));
  };
  double sum = 0.5 * (f(0) + f(grid));
  for (std::size_t i = 1; i < grid; ++i) sum += f(i);
  return sum * h;
}

double w1_between(const StepDistribution& p, const StepDistribution& q) {
  using K = StepDistribution::Kind;
  const bool p_gauss = p.kind() == K::gaussian;
  const bool q_gauss = q.kind() == K::gaussian;
  if (!p_gauss && !q_gauss) return w1_uniform(p.first(), p.second(), q.first(), q.second());
  if (p_gauss && q_gauss) return w1_gaussian(p.first(), p.second(), q.first(), q.second());
  auto lo_of = [](const StepDistribution& s) {
    return s.kind() == K::gaussian ? s.first() - 10.0 * s.second() : s.support_lo();
  };
  auto hi_of = [](const StepDistribution& s) {
    return s.kind() == K::gaussian ? s.first() + 10.0 * s.second() : s.support_hi();
  };
  const double lo = std::min(lo_of(p), lo_of(q));
  const double hi = std::max(hi_of(p), hi_of(q));
  return w1_numeric([&](double y) { return p.cdf(y); }, [&](double y) { return q.cdf(y); }, lo, hi,
                    100000);
}

std::vector<double> variation_terms(const NoiseSequence& noise, std::size_t horizon) {
  if (horizon < 2) throw ConfigError("variation budget needs T >= 2");
  if (horizon > noise.horizon()) throw ConfigError("variation horizon exceeds the sequence horizon");
  std::vector<double> terms;
  terms.reserve(horizon - 1);
  StepDistribution prev = noise.at(1);
  for (std::size_t t = 2; t <= horizon; ++t) {
    StepDistribution cur = noise.at(t);
    terms.push_back(w1_between(prev, cur));
    prev = cur;
  }
  return terms;
}

double variation_budget(const NoiseSequence& noise, std::size_t horizon) {
  double sum = 0.0;
  for (double w : variation_terms(noise, horizon)) sum += w;
  return sum;
}

}  // namespace rao
