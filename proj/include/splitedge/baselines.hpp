#ifndef SPLITEDGE_BASELINES_HPP
#define SPLITEDGE_BASELINES_HPP

#include <cstdint>
#include <string>

#include "splitedge/optimizer.hpp"
#include "splitedge/problem.hpp"

namespace splitedge {

enum class BaselineKind {
  bayes,
  basic_bo,
  exhaustive,
  direct,
  cma_es,
  random,
  transmit_first,
  compute_first,
};

/// Maps a CLI name like "basic-bo" to its kind; throws invalid_argument on
/// unknown names.
BaselineKind baseline_from_name(const std::string& name);
const std::string& baseline_name(BaselineKind kind);

/// Evenly spaced power grid over [p_min, p_max] with `levels` points.
double power_level(const DecisionSpace& space, int index, int levels);

/// Evaluates every (layer, power-level) pair once; exactly L*levels oracle
/// calls. This is the ground-truth optimum for everything else.
RunRecord exhaustive(TaskEvaluator& evaluator, int power_levels);

/// The constrained optimizer with gradient and penalty terms disabled:
/// plain EI + UCB over the same GP pipeline, blind to feasibility.
RunRecord basic_bo(const RunConfig& config, TaskEvaluator& evaluator);

/// DIRECT on the normalized square, maximizing utility with infeasible
/// configurations scored as zero accuracy.
RunRecord direct_search(TaskEvaluator& evaluator, int max_evals = 100, int stall_evals = 20);

/// CMA-ES on the normalized square; same zero-accuracy scoring rule.
RunRecord cma_es(TaskEvaluator& evaluator, int population = 10, int max_evals = 300,
                 int stall_evals = 20, std::uint64_t seed = 0);

/// Uniform sampling. power_levels = 0 samples power continuously;
/// otherwise both coordinates are drawn from the discrete grid.
RunRecord random_search(TaskEvaluator& evaluator, int samples = 300, std::uint64_t seed = 0,
                        int power_levels = 0);

/// Greedy: pin power at P_max and walk layers deep-to-shallow for the first
/// analytically feasible split, backing power off one grid step when a
/// sweep finds none. Spends a single oracle call on the chosen config.
RunRecord transmit_first(TaskEvaluator& evaluator, int power_levels);

/// Greedy mirror image: walk layers deep-to-shallow, at each layer look for
/// the maximum analytically feasible power. One oracle call.
RunRecord compute_first(TaskEvaluator& evaluator, int power_levels);

}  // namespace splitedge

#endif
