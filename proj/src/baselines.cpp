#include "splitedge/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "splitedge/cma_es.hpp"
#include "splitedge/direct.hpp"
#include "splitedge/rng.hpp"

namespace splitedge {

namespace {

constexpr std::array<BaselineKind, 8> kAllKinds = {
    BaselineKind::bayes,  BaselineKind::basic_bo, BaselineKind::exhaustive,
    BaselineKind::direct, BaselineKind::cma_es,   BaselineKind::random,
    BaselineKind::transmit_first, BaselineKind::compute_first};

}  // namespace

const std::string& baseline_name(BaselineKind kind) {
  static const std::array<std::string, 8> names = {
      "bayes",  "basic-bo", "exhaustive",     "direct",
      "cma-es", "random",   "transmit-first", "compute-first"};
  return names[static_cast<std::size_t>(kind)];
}

BaselineKind baseline_from_name(const std::string& name) {
  for (const BaselineKind kind : kAllKinds) {
    if (baseline_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

double power_level(const DecisionSpace& space, int index, int levels) {
  if (levels <= 1) return space.p_min_w;
  const double t = static_cast<double>(index) / (levels - 1);
  return space.p_min_w + t * (space.p_max_w - space.p_min_w);
}

RunRecord exhaustive(TaskEvaluator& evaluator, int power_levels) {
  RunRecord record;
  record.algorithm = "exhaustive";
  const DecisionSpace space = evaluator.space();
  for (int layer = 1; layer <= space.layers; ++layer) {
    for (int pi = 0; pi < power_levels; ++pi) {
      log_evaluation(record, evaluator, {layer, power_level(space, pi, power_levels)});
    }
  }
  return record;
}

RunRecord basic_bo(const RunConfig& config, TaskEvaluator& evaluator) {
  RunConfig unconstrained = config;
  unconstrained.acq.weights.grad_start = 0.0;
  unconstrained.acq.weights.grad_end = 0.0;
  unconstrained.acq.weights.penalty = 0.0;
  RunRecord record = run_bayes(unconstrained, evaluator);
  record.algorithm = "basic-bo";
  return record;
}

namespace {

/// Objective shared by the unconstrained baselines: negative utility, with
/// infeasible configurations scored as zero accuracy.
double negated_scored_utility(TaskEvaluator& evaluator, RunRecord& record,
                              const NormalizedInput& x) {
  const SplitConfig config = evaluator.space().denormalize(x);
  const IterationLog& log = log_evaluation(record, evaluator, config);
  return -(log.feasible ? log.utility : 0.0);
}

}  // namespace

RunRecord direct_search(TaskEvaluator& evaluator, int max_evals, int stall_evals) {
  RunRecord record;
  record.algorithm = "direct";
  DirectOptions options;
  options.max_evals = static_cast<int>(std::min<long>(max_evals, evaluator.ledger().remaining()));
  options.stall_evals = stall_evals;
  direct_minimize(
      [&](const Eigen::VectorXd& x) {
        return negated_scored_utility(evaluator, record, {x[0], x[1]});
      },
      2, options);
  return record;
}

RunRecord cma_es(TaskEvaluator& evaluator, int population, int max_evals, int stall_evals,
                 std::uint64_t seed) {
  RunRecord record;
  record.algorithm = "cma-es";
  record.seed = seed;
  CmaOptions options;
  options.population = population;
  options.max_evals = static_cast<int>(std::min<long>(max_evals, evaluator.ledger().remaining()));
  options.stall_evals = stall_evals;
  options.seed = seed;
  cma_minimize(
      [&](const Eigen::VectorXd& x) {
        return negated_scored_utility(evaluator, record, {x[0], x[1]});
      },
      2, options);
  return record;
}

RunRecord random_search(TaskEvaluator& evaluator, int samples, std::uint64_t seed,
                        int power_levels) {
  RunRecord record;
  record.algorithm = "random";
  record.seed = seed;
  Xoshiro256StarStar rng(seed);
  const DecisionSpace space = evaluator.space();
  for (int i = 0; i < samples; ++i) {
    SplitConfig config;
    if (power_levels > 0) {
      config.layer = static_cast<int>(rng.below(static_cast<std::uint64_t>(space.layers))) + 1;
      config.power_w =
          power_level(space, static_cast<int>(rng.below(static_cast<std::uint64_t>(power_levels))),
                      power_levels);
    } else {
      config = space.denormalize({rng.uniform(), rng.uniform()});
    }
    log_evaluation(record, evaluator, config);
  }
  return record;
}

RunRecord transmit_first(TaskEvaluator& evaluator, int power_levels) {
  RunRecord record;
  record.algorithm = "transmit-first";
  const DecisionSpace space = evaluator.space();
  for (int pi = power_levels - 1; pi >= 0; --pi) {
    const double power = power_level(space, pi, power_levels);
    for (int layer = space.layers; layer >= 1; --layer) {
      const SplitConfig config{layer, power};
      if (evaluator.cost_at(config).feasible) {
        log_evaluation(record, evaluator, config);
        return record;
      }
    }
  }
  return record;  // outcome stays no_feasible_point
}

RunRecord compute_first(TaskEvaluator& evaluator, int power_levels) {
  RunRecord record;
  record.algorithm = "compute-first";
  const DecisionSpace space = evaluator.space();
  for (int layer = space.layers; layer >= 1; --layer) {
    for (int pi = power_levels - 1; pi >= 0; --pi) {
      const SplitConfig config{layer, power_level(space, pi, power_levels)};
      if (evaluator.cost_at(config).feasible) {
        log_evaluation(record, evaluator, config);
        return record;
      }
    }
  }
  return record;
}

}  // namespace splitedge
