#ifndef SPLITEDGE_HARNESS_HPP
#define SPLITEDGE_HARNESS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "splitedge/baselines.hpp"
#include "splitedge/optimizer.hpp"
#include "splitedge/problem.hpp"
#include "splitedge/regret.hpp"

namespace splitedge {

/// Per-algorithm knobs, shared across seeds of one experiment.
struct AlgoParams {
  RunConfig bayes;                    // budget 20 by default
  RunConfig basic;                    // budget 48 by default
  int exhaustive_power_levels = 91;
  int direct_max_evals = 100;
  int direct_stall_evals = 20;
  int cma_population = 10;
  int cma_max_evals = 300;
  int cma_stall_evals = 20;
  int random_samples = 300;
  int greedy_power_levels = 91;

  AlgoParams() {
    // The reference BO runs its whole budget; the repeat early stop is a
    // feature of the constrained loop only.
    basic.budget = 48;
    basic.early_stop = 48;
  }
};

struct ExperimentSpec {
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_dir;
};

const std::vector<std::string>& known_algorithms();

/// Oracle-call cap for one run of `algorithm`, from its parameters.
long eval_cap_for(const std::string& algorithm, const AlgoParams& params,
                  const ProblemBundle& bundle);

/// Runs one algorithm against a fresh evaluator (fresh ledger).
RunRecord dispatch_algorithm(const std::string& algorithm, const ProblemBundle& bundle,
                             const AlgoParams& params, std::uint64_t seed);

/// Summary row in comparison-table column order.
struct SummaryRow {
  std::string algorithm;
  std::uint64_t seed = 0;
  long max_iterations = 0;  // ledger delta
  int split_layer = 0;
  double power_w = 0.0;
  double utility = 0.0;
  double energy_j = 0.0;
  double delay_s = 0.0;
  bool feasible_found = false;
};

SummaryRow summarize(const RunRecord& record);

/// Per-layer cost statistics across every trace frame at a fixed power.
struct ProfileRow {
  int layer = 0;
  double tau_device_s = 0.0;
  double tau_server_s = 0.0;
  double e_compute_j = 0.0;
  double tau_transmit_mean_s = 0.0;
  double tau_transmit_min_s = 0.0;
  double tau_transmit_max_s = 0.0;
  double e_transmit_mean_j = 0.0;
  double e_transmit_min_j = 0.0;
  double e_transmit_max_j = 0.0;
};

std::vector<ProfileRow> profile_sweep(const ProblemBundle& bundle, double power_w);

/// Runs every (algorithm, seed) job in a bounded worker pool (size from
/// SPLITEDGE_THREADS, default hardware concurrency), writing one run CSV per
/// job, regret CSVs for the BO variants, and a summary CSV. Output is
/// byte-deterministic: jobs write disjoint files and the summary preserves
/// the requested (algorithm, seed) order regardless of scheduling.
std::vector<SummaryRow> run_experiment(const ExperimentSpec& spec, const ProblemBundle& bundle,
                                       const AlgoParams& params);

// --- CSV emission / ingestion -------------------------------------------

std::string record_to_csv(const RunRecord& record);
RunRecord load_run_record(const std::filesystem::path& path);

std::string regret_to_csv(const RegretCurve& curve);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::string profile_table_to_csv(const std::vector<ProfileRow>& rows);

}  // namespace splitedge

#endif
