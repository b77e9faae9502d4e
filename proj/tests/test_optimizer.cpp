#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splitedge/errors.hpp"
#include "splitedge/optimizer.hpp"
#include "test_support.hpp"

using namespace splitedge;
using doctest::Approx;

namespace {

/// Toy bundle with caps so loose that every configuration is feasible and a
/// flat surface, so the utility landscape carries no information at all.
ProblemBundle flat_bundle() {
  ProblemBundle bundle = splitedge::testing::toy_bundle();
  bundle.budget = Budget{1e6, 1e6};
  Eigen::VectorXd base(5);
  base << 0.5, 0.5, 0.5, 0.5, 0.5;
  bundle.surface = make_utility_surface(base, 0.05, 0.2);
  return bundle;
}

}  // namespace

TEST_CASE("grid factorization is near-square, layer-major") {
  CHECK(grid_factorization(1) == std::pair{1, 1});
  CHECK(grid_factorization(4) == std::pair{2, 2});
  CHECK(grid_factorization(5) == std::pair{5, 1});
  CHECK(grid_factorization(6) == std::pair{3, 2});
  CHECK(grid_factorization(12) == std::pair{4, 3});
}

TEST_CASE("initialization covers the corners for n_init = 4") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 10);
  RunConfig config;
  config.n_init = 4;
  RunRecord record;
  const GpDataset dataset = initialize(config, evaluator, record);

  REQUIRE(dataset.size() == 4);
  REQUIRE(record.iterations.size() == 4);
  // Corners of [0,1]^2 denormalize to extreme layers and powers.
  CHECK(record.iterations[0].config.layer == 1);
  CHECK(record.iterations[0].config.power_w == Approx(0.1));
  CHECK(record.iterations[1].config.layer == 1);
  CHECK(record.iterations[1].config.power_w == Approx(0.4));
  CHECK(record.iterations[2].config.layer == 5);
  CHECK(record.iterations[2].config.power_w == Approx(0.1));
  CHECK(record.iterations[3].config.layer == 5);
  CHECK(record.iterations[3].config.power_w == Approx(0.4));

  // Feasibility flags agree with a direct cost re-evaluation.
  for (const IterationLog& log : record.iterations) {
    const CostBreakdown cost = evaluate_cost(log.config, gain_at(bundle.trace, 0), bundle.profile,
                                             bundle.device, bundle.server, bundle.radio,
                                             bundle.budget);
    CHECK(log.feasible == cost.feasible);
  }
  CHECK(evaluator.calls() == 4);
}

TEST_CASE("six warmup points form a 3x2 grid") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 10);
  RunConfig config;
  config.n_init = 6;
  RunRecord record;
  const GpDataset dataset = initialize(config, evaluator, record);
  REQUIRE(dataset.size() == 6);
  // Layers {1, 3, 5} each at powers {0.1, 0.4}, row-major.
  CHECK(record.iterations[0].config.layer == 1);
  CHECK(record.iterations[2].config.layer == 3);
  CHECK(record.iterations[4].config.layer == 5);
  CHECK(record.iterations[2].config.power_w == Approx(0.1));
  CHECK(record.iterations[3].config.power_w == Approx(0.4));
}

TEST_CASE("repeat counter stops after N_max re-selections") {
  // Hand trace of the counter logic: when the maximizer keeps returning one
  // configuration, the first pick is new and exactly N_max repeats follow,
  // so an optimizer that has locked in spends N_max + 1 adaptive calls
  // (N0 + N_max + 1 total).
  RepeatMonitor monitor(3);
  const SplitConfig locked{7, 0.38};
  CHECK(!monitor.observe(locked));  // new selection
  CHECK(!monitor.observe(locked));  // repeat 1
  CHECK(!monitor.observe(locked));  // repeat 2
  CHECK(monitor.observe(locked));   // repeat 3: stop

  // A distinct selection resets the count.
  RepeatMonitor reset_monitor(2);
  CHECK(!reset_monitor.observe({3, 0.2}));
  CHECK(!reset_monitor.observe({3, 0.2}));  // repeat 1
  CHECK(!reset_monitor.observe({4, 0.2}));  // new: reset
  CHECK(reset_monitor.repeats() == 0);
  CHECK(!reset_monitor.observe({4, 0.2}));
  CHECK(reset_monitor.observe({4, 0.2}));

  // Sub-microwatt wiggle from power refinement is the same choice.
  RepeatMonitor tolerance_monitor(1);
  CHECK(!tolerance_monitor.observe({5, 0.300000000}));
  CHECK(tolerance_monitor.observe({5, 0.300000001}));
}

TEST_CASE("flat all-feasible landscape still terminates and is deterministic") {
  const ProblemBundle bundle = flat_bundle();
  RunConfig config;
  config.n_init = 5;
  config.budget = 60;
  config.early_stop = 3;

  TaskEvaluator evaluator(bundle, 60);
  const RunRecord record = run_bayes(config, evaluator);
  CHECK(record.outcome == RunOutcome::ok);
  CHECK(record.best_utility == 0.5);
  CHECK(record.evaluations <= 60);
  CHECK(record.evaluations == static_cast<long>(record.iterations.size()));

  TaskEvaluator again(bundle, 60);
  const RunRecord rerun = run_bayes(config, again);
  CHECK(rerun.evaluations == record.evaluations);
}

TEST_CASE("budget equal to warmup returns the best of initialization") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 5);
  RunConfig config;
  config.n_init = 5;
  config.budget = 5;
  const RunRecord record = run_bayes(config, evaluator);
  CHECK(record.evaluations == 5);
  CHECK(record.outcome == RunOutcome::ok);
  // Warmup at power 0.25 hits layers {1..5}; best feasible base is layer 3.
  CHECK(record.best_utility == Approx(0.8));
  CHECK(record.best_config.layer == 3);
}

TEST_CASE("run never exceeds the oracle cap and respects the ledger") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  TaskEvaluator evaluator(bundle, 20);
  RunConfig config;
  const RunRecord record = run_bayes(config, evaluator);
  CHECK(record.evaluations <= 20);
  CHECK(record.evaluations == evaluator.calls());
  CHECK(record.iterations.size() == static_cast<std::size_t>(record.evaluations));
}

TEST_CASE("returned best is feasible whenever any feasible point was seen") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 15);
  RunConfig config;
  config.budget = 15;
  const RunRecord record = run_bayes(config, evaluator);
  REQUIRE(record.outcome == RunOutcome::ok);
  const CostBreakdown cost = evaluate_cost(record.best_config, gain_at(bundle.trace, 0),
                                           bundle.profile, bundle.device, bundle.server,
                                           bundle.radio, bundle.budget);
  CHECK(cost.feasible);

  // best_so_far is nondecreasing.
  double previous = 0.0;
  for (const IterationLog& log : record.iterations) {
    CHECK(log.best_so_far >= previous);
    previous = log.best_so_far;
  }
}

TEST_CASE("no feasible point is an outcome, not a crash") {
  ProblemBundle bundle = splitedge::testing::toy_bundle();
  bundle.budget = Budget{1e-9, 1e-9};  // nothing fits
  TaskEvaluator evaluator(bundle, 12);
  RunConfig config;
  config.budget = 12;
  const RunRecord record = run_bayes(config, evaluator);
  CHECK(record.outcome == RunOutcome::no_feasible_point);
  CHECK(record.evaluations <= 12);
  for (const IterationLog& log : record.iterations) CHECK(!log.feasible);
}

TEST_CASE("identical config and bundle reproduce the run exactly") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  RunConfig config;
  config.seed = 3;

  TaskEvaluator first_eval(bundle, 20);
  const RunRecord first = run_bayes(config, first_eval);
  TaskEvaluator second_eval(bundle, 20);
  const RunRecord second = run_bayes(config, second_eval);

  REQUIRE(first.iterations.size() == second.iterations.size());
  for (std::size_t i = 0; i < first.iterations.size(); ++i) {
    CHECK(first.iterations[i].config.layer == second.iterations[i].config.layer);
    CHECK(first.iterations[i].config.power_w == second.iterations[i].config.power_w);
    CHECK(first.iterations[i].utility == second.iterations[i].utility);
  }
  CHECK(first.best_utility == second.best_utility);
}

TEST_CASE("advance channel mode steps one trace frame per evaluation") {
  ProblemBundle bundle = splitedge::testing::toy_bundle();
  bundle.trace.gains_db = {-60.0, -75.0, -60.0, -90.0};

  TaskEvaluator evaluator(bundle, 10, ChannelMode::advance);
  CHECK(evaluator.current_gain() == Approx(db_to_linear(-60.0)));
  const Evaluation first = evaluator.evaluate({3, 0.3});
  CHECK(evaluator.current_gain() == Approx(db_to_linear(-75.0)));
  const Evaluation second = evaluator.evaluate({3, 0.3});
  // Same configuration, different frame: the weaker channel is slower.
  CHECK(second.cost.tau_transmit_s > first.cost.tau_transmit_s);
  const Evaluation third = evaluator.evaluate({3, 0.3});
  CHECK(third.cost.tau_transmit_s == Approx(first.cost.tau_transmit_s));
  // Frame index wraps cyclically with the ledger.
  for (int i = 0; i < 5; ++i) evaluator.evaluate({3, 0.3});
  CHECK(evaluator.current_gain() == Approx(db_to_linear(-60.0)));

  // Frozen mode pins every evaluation to frame 0.
  TaskEvaluator frozen(bundle, 10, ChannelMode::frozen);
  frozen.evaluate({3, 0.3});
  CHECK(frozen.current_gain() == Approx(db_to_linear(-60.0)));

  // An advance-mode optimizer run is still deterministic.
  RunConfig config;
  config.budget = 10;
  config.channel_mode = ChannelMode::advance;
  TaskEvaluator run_a(bundle, 10, ChannelMode::advance);
  TaskEvaluator run_b(bundle, 10, ChannelMode::advance);
  const RunRecord a = run_bayes(config, run_a);
  const RunRecord b = run_bayes(config, run_b);
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(a.iterations[i].utility == b.iterations[i].utility);
  }
}

TEST_CASE("invalid run configurations are rejected") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 30);
  RunConfig config;
  config.n_init = 0;
  CHECK_THROWS_AS(run_bayes(config, evaluator), std::invalid_argument);
  config.n_init = 5;
  config.budget = 4;
  CHECK_THROWS_AS(run_bayes(config, evaluator), std::invalid_argument);
  config.budget = 20;
  config.early_stop = 0;
  CHECK_THROWS_AS(run_bayes(config, evaluator), std::invalid_argument);
}

TEST_CASE("warmup larger than the cap propagates budget exhaustion") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 3);
  RunConfig config;
  config.n_init = 5;
  CHECK_THROWS_AS(run_bayes(config, evaluator), BudgetExhaustedError);
}
