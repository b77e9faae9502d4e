#include "splitedge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace splitedge {

std::pair<int, int> grid_factorization(int n) {
  int best_small = 1;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d == 0) best_small = d;
  }
  return {n / best_small, best_small};  // (layer points, power points)
}

const IterationLog& log_evaluation(RunRecord& record, TaskEvaluator& evaluator,
                                   const SplitConfig& config) {
  const Evaluation eval = evaluator.evaluate(config);
  IterationLog log;
  log.iteration = static_cast<int>(evaluator.calls());
  log.config = eval.config;
  log.utility = eval.utility;
  log.feasible = eval.cost.feasible;
  log.cost = eval.cost;

  const bool improves = eval.cost.feasible && (record.outcome == RunOutcome::no_feasible_point ||
                                               eval.utility > record.best_utility);
  if (improves) {
    record.outcome = RunOutcome::ok;
    record.best_utility = eval.utility;
    record.best_config = eval.config;
  }
  log.best_so_far = record.outcome == RunOutcome::ok ? record.best_utility : 0.0;
  record.iterations.push_back(log);
  record.evaluations = evaluator.calls();
  return record.iterations.back();
}

GpDataset initialize(const RunConfig& config, TaskEvaluator& evaluator, RunRecord& record) {
  const DecisionSpace space = evaluator.space();
  const auto [n_layer, n_power] = grid_factorization(config.n_init);

  GpDataset dataset;
  for (int li = 0; li < n_layer; ++li) {
    const double l_norm = n_layer == 1 ? 0.5 : static_cast<double>(li) / (n_layer - 1);
    for (int pi = 0; pi < n_power; ++pi) {
      const double p_norm = n_power == 1 ? 0.5 : static_cast<double>(pi) / (n_power - 1);
      const NormalizedInput x{p_norm, l_norm};
      const IterationLog& log = log_evaluation(record, evaluator, space.denormalize(x));
      // Model the utility at the exact grid point; rounding to integer
      // layers happens only on the physical side.
      dataset.add(x, log.utility);
    }
  }
  return dataset;
}

RunRecord run_bayes(const RunConfig& config, TaskEvaluator& evaluator) {
  if (config.n_init < 1 || config.budget < config.n_init || config.early_stop < 1) {
    throw std::invalid_argument("run config: need n_init >= 1, budget >= n_init, early_stop >= 1");
  }
  RunRecord record;
  record.algorithm = "bayes";
  record.seed = config.seed;

  GpDataset dataset = initialize(config, evaluator, record);

  RepeatMonitor monitor(config.early_stop);
  const DecisionSpace space = evaluator.space();

  for (long n = evaluator.calls() + 1; n <= config.budget; ++n) {
    const GpModel model = fit(dataset);
    const ScheduledWeights sched =
        schedule_weights(config.acq.weights, static_cast<int>(n), config.budget, config.n_init);

    // Best observed utility among feasible points; if none is feasible yet,
    // fall back to the unconstrained best so EI stays finite and the
    // penalty term alone steers the search toward feasibility.
    double best_feasible = record.outcome == RunOutcome::ok
                               ? record.best_utility
                               : *std::max_element(dataset.targets.begin(), dataset.targets.end());

    const CostFn cost_fn = [&](const SplitConfig& c) { return evaluator.cost_at(c); };
    const NormalizedInput next =
        maximize_acquisition(model, sched, config.acq, space, evaluator.bundle().budget, cost_fn,
                             best_feasible);

    const SplitConfig selection = space.denormalize(next);
    const IterationLog& log = log_evaluation(record, evaluator, selection);
    dataset.add(next, log.utility);

    if (monitor.observe(selection)) break;
  }
  return record;
}

}  // namespace splitedge
