#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "splitedge/baselines.hpp"
#include "splitedge/cma_es.hpp"
#include "splitedge/direct.hpp"
#include "splitedge/rng.hpp"
#include "test_support.hpp"

using namespace splitedge;
using doctest::Approx;

TEST_CASE("exhaustive search enumerates exactly L x |P| configurations") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 20);
  const RunRecord record = exhaustive(evaluator, 4);
  CHECK(record.evaluations == 20);
  CHECK(evaluator.calls() == 20);

  // Hand enumeration of the toy: best feasible base accuracy is layer 3.
  CHECK(record.outcome == RunOutcome::ok);
  CHECK(record.best_config.layer == 3);
  CHECK(record.best_utility == Approx(0.8));

  // Feasible count matches the hand map: 20 minus layer-1 row (4) minus
  // (2, 0.1) and (2, 0.2).
  int feasible = 0;
  for (const IterationLog& log : record.iterations) feasible += log.feasible ? 1 : 0;
  CHECK(feasible == 14);
}

TEST_CASE("exhaustive finds the bundled optimum at layer 7") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  TaskEvaluator evaluator(bundle, 37L * 91L);
  const RunRecord record = exhaustive(evaluator, 91);
  CHECK(record.evaluations == 37 * 91);
  CHECK(record.best_config.layer == 7);
  CHECK(record.best_utility == 0.875);
  // First feasible grid power at layer 7, from the independent enumeration.
  CHECK(record.best_config.power_w == Approx(0.148888888888889).epsilon(1e-9));
}

TEST_CASE("basic_bo equals the constrained run when constraints never bind") {
  ProblemBundle bundle = splitedge::testing::toy_bundle();
  bundle.budget = Budget{1e6, 1e6};  // constraint-free problem

  RunConfig config;
  config.budget = 12;
  // Disable the gradient term so the two scorers agree term by term; the
  // base weight scales EI+UCB identically on both sides.
  config.acq.weights.grad_start = 0.0;
  config.acq.weights.grad_end = 0.0;

  TaskEvaluator hybrid_eval(bundle, 12);
  RunConfig hybrid_config = config;
  hybrid_config.acq.weights.penalty = 0.0;
  const RunRecord hybrid = run_bayes(hybrid_config, hybrid_eval);

  TaskEvaluator basic_eval(bundle, 12);
  const RunRecord basic = basic_bo(config, basic_eval);

  REQUIRE(hybrid.iterations.size() == basic.iterations.size());
  for (std::size_t i = 0; i < hybrid.iterations.size(); ++i) {
    CHECK(hybrid.iterations[i].config.layer == basic.iterations[i].config.layer);
    CHECK(hybrid.iterations[i].config.power_w ==
          Approx(basic.iterations[i].config.power_w).epsilon(1e-12));
  }
}

TEST_CASE("basic_bo with a one-step budget takes exactly one adaptive step") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator evaluator(bundle, 6);
  RunConfig config;
  config.n_init = 5;
  config.budget = 6;
  const RunRecord record = basic_bo(config, evaluator);
  CHECK(record.evaluations == 6);
  CHECK(record.algorithm == "basic-bo");
}

TEST_CASE("DIRECT core: first evaluation is the domain center") {
  int calls = 0;
  Eigen::VectorXd first;
  DirectOptions options;
  options.max_evals = 9;
  direct_minimize(
      [&](const Eigen::VectorXd& x) {
        if (calls++ == 0) first = x;
        return x.squaredNorm();
      },
      2, options);
  REQUIRE(first.size() == 2);
  CHECK(first[0] == 0.5);
  CHECK(first[1] == 0.5);
}

TEST_CASE("DIRECT locates a unimodal optimum within 1e-2 in 100 evals") {
  // Separable bowl with its minimum at (1/3, 2/3), representable on the
  // trisection lattice.
  const Eigen::Vector2d target(1.0 / 3.0, 2.0 / 3.0);
  DirectOptions options;
  options.max_evals = 100;
  options.stall_evals = 0;
  const DirectResult result = direct_minimize(
      [&](const Eigen::VectorXd& x) { return (x - target).squaredNorm(); }, 2, options);
  CHECK(result.evaluations <= 100);
  CHECK((result.best_x - target).norm() <= 1e-2);
}

TEST_CASE("DIRECT baseline reaches the bundled optimum within its cap") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  TaskEvaluator evaluator(bundle, 100);
  const RunRecord record = direct_search(evaluator, 100, 20);
  CHECK(record.evaluations <= 100);
  CHECK(record.outcome == RunOutcome::ok);
  CHECK(record.best_utility == 0.875);
  CHECK(record.best_config.layer == 7);
  // First probe is the center of the normalized square: layer 19, 0.3 W.
  CHECK(record.iterations[0].config.layer == 19);
  CHECK(record.iterations[0].config.power_w == Approx(0.3));
}

TEST_CASE("CMA-ES core solves the sphere to 1e-2 within 300 evals") {
  CmaOptions options;
  options.max_evals = 300;
  options.stall_evals = 0;
  options.seed = 9;
  const CmaResult result =
      cma_minimize([](const Eigen::VectorXd& x) { return x.squaredNorm(); }, 2, options);
  CHECK(result.evaluations <= 300);
  CHECK(result.best_x.norm() <= 1e-2);
}

TEST_CASE("CMA-ES baseline is deterministic per seed and stays in bounds") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();

  TaskEvaluator eval_a(bundle, 300);
  const RunRecord a = cma_es(eval_a, 10, 300, 20, 77);
  TaskEvaluator eval_b(bundle, 300);
  const RunRecord b = cma_es(eval_b, 10, 300, 20, 77);

  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(a.iterations[i].config.layer == b.iterations[i].config.layer);
    CHECK(a.iterations[i].config.power_w == b.iterations[i].config.power_w);
  }

  for (const IterationLog& log : a.iterations) {
    CHECK(log.config.layer >= 1);
    CHECK(log.config.layer <= 37);
    CHECK(log.config.power_w >= bundle.device.p_min_w - 1e-12);
    CHECK(log.config.power_w <= bundle.device.p_max_w + 1e-12);
  }

  TaskEvaluator eval_c(bundle, 300);
  const RunRecord c = cma_es(eval_c, 10, 300, 20, 78);
  bool differs = c.iterations.size() != a.iterations.size();
  for (std::size_t i = 0; !differs && i < std::min(a.iterations.size(), c.iterations.size()); ++i) {
    differs |= a.iterations[i].config.power_w != c.iterations[i].config.power_w;
  }
  CHECK(differs);
}

TEST_CASE("random search basics") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();

  // n = 1: outcome depends on that single draw's feasibility.
  TaskEvaluator single(bundle, 1);
  const RunRecord one = random_search(single, 1, 5);
  REQUIRE(one.iterations.size() == 1);
  CHECK((one.outcome == RunOutcome::ok) == one.iterations[0].feasible);

  // Seed determinism.
  TaskEvaluator eval_a(bundle, 50);
  TaskEvaluator eval_b(bundle, 50);
  const RunRecord a = random_search(eval_a, 50, 123);
  const RunRecord b = random_search(eval_b, 50, 123);
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(a.iterations[i].config.power_w == b.iterations[i].config.power_w);
    CHECK(a.iterations[i].config.layer == b.iterations[i].config.layer);
  }
}

TEST_CASE("random search mean best matches the exact grid expectation") {
  // Discrete sampling mode on the bundled benchmark: the expected best
  // feasible utility of n uniform draws has a closed form over the finite
  // grid; the simulated mean over many seeds must agree within 2%.
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  const int levels = 13;
  const int draws = 25;
  const DecisionSpace space = bundle.space();

  // Exact E[max] = sum_u u * (F(u)^n - F(u-)^n) over the utility
  // distribution of a single uniform draw (infeasible cells contribute the
  // lowest atom, never selected as best when any feasible draw exists).
  std::map<double, double> cell_probability;  // feasible utility -> P(draw)
  double infeasible_mass = 0.0;
  const double cell = 1.0 / (37.0 * levels);
  for (int layer = 1; layer <= 37; ++layer) {
    for (int pi = 0; pi < levels; ++pi) {
      const SplitConfig config{layer, power_level(space, pi, levels)};
      const CostBreakdown cost =
          evaluate_cost(config, gain_at(bundle.trace, 0), bundle.profile, bundle.device,
                        bundle.server, bundle.radio, bundle.budget);
      if (cost.feasible) {
        cell_probability[bundle.surface.base_accuracy[layer - 1]] += cell;
      } else {
        infeasible_mass += cell;
      }
    }
  }
  double expected_best = 0.0;
  double cdf = infeasible_mass;  // below every feasible utility
  double previous_pow = std::pow(cdf, draws);
  for (const auto& [value, probability] : cell_probability) {
    cdf += probability;
    const double current_pow = std::pow(cdf, draws);
    expected_best += value * (current_pow - previous_pow);
    previous_pow = current_pow;
  }
  // Runs with zero feasible draws return no value; condition on >= 1.
  const double p_none = std::pow(infeasible_mass, draws);

  double sum = 0.0;
  int counted = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    TaskEvaluator evaluator(bundle, draws);
    const RunRecord record = random_search(evaluator, draws, seed, levels);
    if (record.outcome == RunOutcome::ok) {
      sum += record.best_utility;
      ++counted;
    }
  }
  REQUIRE(counted > 950);  // p_none is tiny on this bundle
  const double simulated = sum / counted;
  const double conditional_expected = expected_best / (1.0 - p_none);
  CHECK(std::abs(simulated - conditional_expected) / conditional_expected < 0.02);
}

TEST_CASE("greedy heuristics on the toy bundle") {
  ProblemBundle everything = splitedge::testing::toy_bundle();
  everything.budget = Budget{1e6, 1e6};
  TaskEvaluator all_feasible(everything, 1);
  const RunRecord deep = transmit_first(all_feasible, 4);
  CHECK(deep.outcome == RunOutcome::ok);
  CHECK(deep.best_config.layer == 5);  // deepest layer at P_max
  CHECK(deep.best_config.power_w == Approx(0.4));
  CHECK(deep.evaluations == 1);

  ProblemBundle nothing = splitedge::testing::toy_bundle();
  nothing.budget = Budget{1e-9, 1e-9};
  TaskEvaluator none(nothing, 1);
  CHECK(transmit_first(none, 4).outcome == RunOutcome::no_feasible_point);
  TaskEvaluator none2(nothing, 1);
  CHECK(compute_first(none2, 4).outcome == RunOutcome::no_feasible_point);
}

TEST_CASE("greedy heuristics match the hand walk on the bundled benchmark") {
  // Layers 24..37 are compute-bound infeasible at every power; the deepest
  // feasible layer is 23, reachable only near P_max. Both scans settle on
  // (23, 0.5) and spend exactly one oracle call.
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();

  TaskEvaluator tf_eval(bundle, 1);
  const RunRecord tf = transmit_first(tf_eval, 91);
  CHECK(tf.outcome == RunOutcome::ok);
  CHECK(tf.best_config.layer == 23);
  CHECK(tf.best_config.power_w == Approx(0.5));
  CHECK(tf.evaluations == 1);
  CHECK(tf.best_utility == 0.84375);  // plateau accuracy away from the peak

  TaskEvaluator cf_eval(bundle, 1);
  const RunRecord cf = compute_first(cf_eval, 91);
  CHECK(cf.outcome == RunOutcome::ok);
  CHECK(cf.best_config.layer == 23);
  CHECK(cf.best_config.power_w == Approx(0.5));
  CHECK(cf.evaluations == 1);
}

TEST_CASE("DIRECT and exhaustive are deterministic") {
  const ProblemBundle bundle = splitedge::testing::bundled_benchmark();
  TaskEvaluator eval_a(bundle, 100);
  TaskEvaluator eval_b(bundle, 100);
  const RunRecord a = direct_search(eval_a, 100, 20);
  const RunRecord b = direct_search(eval_b, 100, 20);
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(a.iterations[i].config.layer == b.iterations[i].config.layer);
    CHECK(a.iterations[i].config.power_w == b.iterations[i].config.power_w);
  }

  TaskEvaluator exh_a(bundle, 37L * 91L);
  TaskEvaluator exh_b(bundle, 37L * 91L);
  CHECK(exhaustive(exh_a, 91).best_config.power_w ==
        exhaustive(exh_b, 91).best_config.power_w);
}

TEST_CASE("baseline kinds round-trip through their names") {
  for (const std::string& name :
       {"bayes", "basic-bo", "exhaustive", "direct", "cma-es", "random", "transmit-first",
        "compute-first"}) {
    CHECK(baseline_name(baseline_from_name(name)) == name);
  }
  CHECK_THROWS_AS(baseline_from_name("simulated-annealing"), std::invalid_argument);
}

TEST_CASE("no baseline beats the exhaustive ground truth") {
  const ProblemBundle bundle = splitedge::testing::toy_bundle();
  TaskEvaluator truth_eval(bundle, 20);
  const double optimum = exhaustive(truth_eval, 4).best_utility;

  TaskEvaluator r_eval(bundle, 100);
  CHECK(random_search(r_eval, 100, 3).best_utility <= optimum);
  TaskEvaluator d_eval(bundle, 100);
  CHECK(direct_search(d_eval, 100, 20).best_utility <= optimum);
  TaskEvaluator c_eval(bundle, 200);
  CHECK(cma_es(c_eval, 10, 200, 20, 3).best_utility <= optimum);
  TaskEvaluator t_eval(bundle, 1);
  CHECK(transmit_first(t_eval, 4).best_utility <= optimum);
}
