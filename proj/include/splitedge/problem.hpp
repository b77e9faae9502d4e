#ifndef SPLITEDGE_PROBLEM_HPP
#define SPLITEDGE_PROBLEM_HPP

#include <algorithm>
#include <cmath>

#include "splitedge/channel.hpp"
#include "splitedge/gp.hpp"
#include "splitedge/system_model.hpp"
#include "splitedge/utility_oracle.hpp"

namespace splitedge {

/// Maps the normalized square [0,1]^2 onto the physical decision space.
/// The layer coordinate is relaxed to a continuous value and rounded
/// half-up at denormalization time.
struct DecisionSpace {
  int layers = 1;
  double p_min_w = 0.1;
  double p_max_w = 0.5;

  SplitConfig denormalize(const NormalizedInput& x) const {
    const int layer = layers == 1
                          ? 1
                          : static_cast<int>(std::floor(1.0 + x.l * (layers - 1) + 0.5));
    return {std::clamp(layer, 1, layers), p_min_w + x.p * (p_max_w - p_min_w)};
  }

  NormalizedInput normalize(const SplitConfig& config) const {
    NormalizedInput x;
    x.p = (config.power_w - p_min_w) / (p_max_w - p_min_w);
    x.l = layers == 1 ? 0.0 : static_cast<double>(config.layer - 1) / (layers - 1);
    return x;
  }
};

/// How trace frames map to oracle evaluations. `frozen` pins the whole run
/// to frame 0 (a single channel realization); `advance` steps one frame per
/// evaluation, wrapping cyclically.
enum class ChannelMode { frozen, advance };

/// Everything a search algorithm needs: the analytic cost model inputs, the
/// utility surface, and the channel.
struct ProblemBundle {
  LayerProfile profile;
  DeviceSpec device;
  ServerSpec server;
  RadioSpec radio;
  Budget budget;
  UtilitySurface surface;
  ChannelTrace trace;

  DecisionSpace space() const { return {profile.layers(), device.p_min_w, device.p_max_w}; }
};

struct Evaluation {
  SplitConfig config;
  CostBreakdown cost;
  double utility = 0.0;
};

/// Front door to the black box. Cost queries are analytic and free; only
/// `evaluate` charges the ledger. One evaluator == one optimization run.
class TaskEvaluator {
 public:
  TaskEvaluator(const ProblemBundle& bundle, long eval_cap,
                ChannelMode mode = ChannelMode::frozen)
      : bundle_(bundle), mode_(mode) {
    ledger_.cap = eval_cap;
  }

  /// Gain the next evaluation will see.
  double current_gain() const {
    const std::size_t frame =
        mode_ == ChannelMode::frozen ? 0 : static_cast<std::size_t>(ledger_.count);
    return gain_at(bundle_.trace, frame);
  }

  /// Analytic cost at a candidate, not charged to the ledger. The penalty
  /// term of the acquisition function and the greedy heuristics use this;
  /// the constraints are known deterministic functions.
  CostBreakdown cost_at(const SplitConfig& config) const {
    return evaluate_cost(config, current_gain(), bundle_.profile, bundle_.device, bundle_.server,
                         bundle_.radio, bundle_.budget);
  }

  /// One charged oracle call. Throws BudgetExhaustedError at the cap.
  Evaluation evaluate(const SplitConfig& config) {
    Evaluation eval;
    eval.config = config;
    eval.cost = cost_at(config);
    eval.utility = utility(config, eval.cost, bundle_.surface, bundle_.budget, ledger_);
    return eval;
  }

  const ProblemBundle& bundle() const { return bundle_; }
  const EvalLedger& ledger() const { return ledger_; }
  long calls() const { return ledger_.count; }
  bool exhausted() const { return ledger_.count >= ledger_.cap; }
  DecisionSpace space() const { return bundle_.space(); }

 private:
  const ProblemBundle& bundle_;
  ChannelMode mode_;
  EvalLedger ledger_;
};

}  // namespace splitedge

#endif
