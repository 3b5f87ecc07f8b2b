#include "rao/learner.hpp"

#include <sstream>

#include "rao/log.hpp"
#include "rao/risk.hpp"
#include "rao/smoothing.hpp"

namespace rao {

void validate(const LearnerConfig& config, const AdmissibleSet& set, const NoiseSequence& noise) {
  if (config.horizon < 1) throw ConfigError("horizon T must be >= 1");
  if (config.horizon > noise.horizon()) {
    std::ostringstream os;
    os << "horizon " << config.horizon << " exceeds noise sequence horizon " << noise.horizon();
    throw ConfigError(os.str());
  }
  if (config.batch_size < 2) throw InvalidBatchSize("batch size must be >= 2");
  if (!(config.delta > 0.0)) throw InvalidSmoothingRadius("smoothing radius delta must be positive");
  if (!(config.delta < set.inradius())) {
    std::ostringstream os;
    os << "smoothing radius " << config.delta << " must be below the set inradius " << set.inradius();
    throw InvalidSmoothingRadius(os.str());
  }
  check_risk_level(config.alpha);
  if (config.x0.size() != set.dim()) throw ConfigError("initial decision has the wrong dimension");
}

std::vector<IterationRecord> run(const LearnerConfig& config, const CostModel& cost,
                                 const NoiseSequence& noise, const AdmissibleSet& set, Rng& rng) {
  validate(config, set, noise);
  const AdmissibleSet inner = shrunk_set(set, config.delta);
  const std::size_t d = set.dim();

  DecisionVector x(config.x0);
  if (!inner.contains(x, 0.0)) {
    log::warn("initial decision lies outside the delta-shrunk set; projecting it in");
    x = project(inner, x);
  }

  std::vector<IterationRecord> out;
  out.reserve(config.horizon);
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    IterationRecord rec;
    rec.t = t;
    const BatchIndex idx = batch_epoch(t, config.batch_size);
    rec.batch = idx.batch;
    rec.epoch = idx.epoch;
    rec.n_samples = config.sampling.count(idx.epoch, config.batch_size);
    rec.eta = config.rate.rate(idx.epoch);

    rec.direction = sample_unit_sphere(d, rng);
    rec.x = x;
    rec.x_hat = perturb(x, config.delta, rec.direction);

    const StepDistribution dist = noise.at(t);
    rec.costs.resize(rec.n_samples);
    for (double& c : rec.costs) c = cost(rec.x_hat, dist.sample(rng));

    rec.cvar_estimate = cvar_discrete(build_ecdf(rec.costs), config.alpha);
    rec.gradient = gradient_estimate(rec.cvar_estimate, rec.direction, d, config.delta);

    std::vector<double> next(d);
    for (std::size_t i = 0; i < d; ++i) next[i] = x[i] - rec.eta * rec.gradient[i];
    x = project(inner, DecisionVector(std::move(next)));
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<IterationRecord> run(const LearnerConfig& config, const CostModel& cost,
                                 const NoiseSequence& noise, const AdmissibleSet& set) {
  Rng rng(config.seed);
  return run(config, cost, noise, set, rng);
}

}  // namespace rao
