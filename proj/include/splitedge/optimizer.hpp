#ifndef SPLITEDGE_OPTIMIZER_HPP
#define SPLITEDGE_OPTIMIZER_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitedge/acquisition.hpp"
#include "splitedge/problem.hpp"

namespace splitedge {

struct RunConfig {
  int n_init = 5;        // uniform-grid warmup evaluations
  int budget = 20;       // total oracle calls, warmup included
  int early_stop = 3;    // stop after this many consecutive re-selections
  AcquisitionConfig acq;
  ChannelMode channel_mode = ChannelMode::frozen;
  std::uint64_t seed = 0;
};

struct IterationLog {
  int iteration = 0;  // 1-based oracle call index
  SplitConfig config;
  double utility = 0.0;
  bool feasible = false;
  CostBreakdown cost;
  double best_so_far = 0.0;  // best feasible utility observed so far
};

enum class RunOutcome { ok, no_feasible_point };

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<IterationLog> iterations;
  RunOutcome outcome = RunOutcome::no_feasible_point;
  SplitConfig best_config;
  double best_utility = 0.0;
  long evaluations = 0;  // ledger delta, not a self-reported count
};

/// Near-square factorization of n: layer axis gets the larger factor.
std::pair<int, int> grid_factorization(int n);

/// Early-stop counter: consecutive re-selections of the previous choice.
/// A new (distinct) selection resets the count; `observe` returns true when
/// the threshold is reached. Powers within 1e-6 W count as the same choice,
/// since refinement can wiggle a converged power at floating-point scale.
class RepeatMonitor {
 public:
  explicit RepeatMonitor(int threshold) : threshold_(threshold) {}

  bool observe(const SplitConfig& selection) {
    if (last_ && selection.layer == last_->layer &&
        std::abs(selection.power_w - last_->power_w) <= 1e-6) {
      return ++repeats_ >= threshold_;
    }
    last_ = selection;
    repeats_ = 0;
    return false;
  }

  int repeats() const { return repeats_; }

 private:
  int threshold_;
  int repeats_ = 0;
  std::optional<SplitConfig> last_;
};

/// Warmup grid over [0,1]^2, row-major over (layer, power), each point
/// evaluated through the (charged) oracle and logged.
GpDataset initialize(const RunConfig& config, TaskEvaluator& evaluator, RunRecord& record);

/// The constrained Bayesian optimizer loop: refit GP, maximize the hybrid
/// acquisition, evaluate, early-stop on repeated selections. Returns the
/// best feasible configuration observed (outcome no_feasible_point if the
/// run never saw one).
RunRecord run_bayes(const RunConfig& config, TaskEvaluator& evaluator);

/// Convenience: append a charged evaluation to a record, maintaining the
/// feasible incumbent. Shared by every algorithm so accounting is uniform.
const IterationLog& log_evaluation(RunRecord& record, TaskEvaluator& evaluator,
                                   const SplitConfig& config);

}  // namespace splitedge

#endif
