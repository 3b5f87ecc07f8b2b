#include "rao/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace rao {

namespace {

void require_interval(const AdmissibleSet& set) {
  if (set.dim() != 1 || set.kind() != AdmissibleSet::Kind::box) {
    throw ConfigError("scenario costs are defined on a 1-D interval");
  }
}

}  // namespace

CostModel parking_cost(const ParkingParams& params, const AdmissibleSet& set, double noise_lo,
                       double noise_hi) {
  require_interval(set);
  if (!(noise_lo <= noise_hi)) throw ConfigError("noise support must satisfy lo <= hi");
  const double a = params.elasticity;
  const double target = params.target;
  const double nu = params.regularization;
  if (!(nu >= 0.0)) throw ConfigError("regularization must be nonnegative");

  CostModel cost;
  cost.name = "parking";
  cost.evaluate = [a, target, nu](std::span<const double> x, double xi) {
    const double gap = xi + a * x[0] - target;
    return gap * gap + 0.5 * nu * x[0] * x[0];
  };
  const double xs[] = {set.lower()[0], set.upper()[0]};
  const double ns[] = {noise_lo, noise_hi};
  for (double x : xs) {
    for (double xi : ns) {
      const double gap = xi + a * x - target;
      cost.bound = std::max(cost.bound, gap * gap + 0.5 * nu * x * x);
      cost.lipschitz = std::max(cost.lipschitz, std::abs(2.0 * a * gap + nu * x));
    }
  }
  cost.strong_convexity = 2.0 * a * a + nu;
  return cost;
}

CostModel tracking_cost(const AdmissibleSet& set) {
  require_interval(set);
  const double lo = set.lower()[0];
  const double hi = set.upper()[0];
  const double width = hi - lo;
  CostModel cost;
  cost.name = "tracking";
  cost.evaluate = [lo, hi](std::span<const double> x, double xi) {
    const double d = x[0] - std::clamp(xi, lo, hi);
    return d * d;
  };
  cost.bound = width * width;
  cost.lipschitz = 2.0 * width;
  cost.strong_convexity = 2.0;
  return cost;
}

}  // namespace rao
