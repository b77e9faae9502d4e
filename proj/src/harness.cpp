#include "splitedge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "splitedge/csv.hpp"
#include "splitedge/errors.hpp"

namespace splitedge {

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> all;
    for (int kind = 0; kind <= static_cast<int>(BaselineKind::compute_first); ++kind) {
      all.push_back(baseline_name(static_cast<BaselineKind>(kind)));
    }
    return all;
  }();
  return names;
}

namespace {

long checked_cap(long cap, const std::string& algorithm) {
  if (cap <= 0) throw std::invalid_argument(algorithm + ": evaluation cap must be positive");
  return cap;
}

}  // namespace

long eval_cap_for(const std::string& algorithm, const AlgoParams& params,
                  const ProblemBundle& bundle) {
  switch (baseline_from_name(algorithm)) {
    case BaselineKind::bayes:
      return checked_cap(params.bayes.budget, algorithm);
    case BaselineKind::basic_bo:
      return checked_cap(params.basic.budget, algorithm);
    case BaselineKind::exhaustive:
      return checked_cap(
          static_cast<long>(bundle.profile.layers()) * params.exhaustive_power_levels, algorithm);
    case BaselineKind::direct:
      return checked_cap(params.direct_max_evals, algorithm);
    case BaselineKind::cma_es:
      return checked_cap(params.cma_max_evals, algorithm);
    case BaselineKind::random:
      return checked_cap(params.random_samples, algorithm);
    case BaselineKind::transmit_first:
    case BaselineKind::compute_first:
      return 1;
  }
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

namespace {

RunRecord dispatch_with_fresh_ledger(const std::string& algorithm, const ProblemBundle& bundle,
                                     const AlgoParams& params, std::uint64_t seed) {
  TaskEvaluator evaluator(bundle, eval_cap_for(algorithm, params, bundle),
                          params.bayes.channel_mode);
  switch (baseline_from_name(algorithm)) {
    case BaselineKind::bayes: {
      RunConfig config = params.bayes;
      config.seed = seed;
      return run_bayes(config, evaluator);
    }
    case BaselineKind::basic_bo: {
      RunConfig config = params.basic;
      config.seed = seed;
      return basic_bo(config, evaluator);
    }
    case BaselineKind::exhaustive:
      return exhaustive(evaluator, params.exhaustive_power_levels);
    case BaselineKind::direct:
      return direct_search(evaluator, params.direct_max_evals, params.direct_stall_evals);
    case BaselineKind::cma_es:
      return cma_es(evaluator, params.cma_population, params.cma_max_evals,
                    params.cma_stall_evals, seed);
    case BaselineKind::random:
      return random_search(evaluator, params.random_samples, seed);
    case BaselineKind::transmit_first:
      return transmit_first(evaluator, params.greedy_power_levels);
    case BaselineKind::compute_first:
      return compute_first(evaluator, params.greedy_power_levels);
  }
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

}  // namespace

RunRecord dispatch_algorithm(const std::string& algorithm, const ProblemBundle& bundle,
                             const AlgoParams& params, std::uint64_t seed) {
  RunRecord record = dispatch_with_fresh_ledger(algorithm, bundle, params, seed);
  // Deterministic algorithms ignore the seed; still tag the record so
  // summary rows line up with the requested sweep.
  record.seed = seed;
  return record;
}

SummaryRow summarize(const RunRecord& record) {
  SummaryRow row;
  row.algorithm = record.algorithm;
  row.seed = record.seed;
  row.max_iterations = record.evaluations;
  row.feasible_found = record.outcome == RunOutcome::ok;
  if (!row.feasible_found) return row;

  row.split_layer = record.best_config.layer;
  row.power_w = record.best_config.power_w;
  row.utility = record.best_utility;
  // Report the costs actually observed when the best configuration was
  // evaluated, not a recomputation under a possibly different frame.
  for (const IterationLog& log : record.iterations) {
    if (log.feasible && log.utility == record.best_utility &&
        log.config.layer == record.best_config.layer &&
        log.config.power_w == record.best_config.power_w) {
      row.energy_j = log.cost.total_energy_j();
      row.delay_s = log.cost.total_delay_s();
      break;
    }
  }
  return row;
}

std::vector<ProfileRow> profile_sweep(const ProblemBundle& bundle, double power_w) {
  std::vector<ProfileRow> rows;
  rows.reserve(static_cast<std::size_t>(bundle.profile.layers()));
  for (int layer = 1; layer <= bundle.profile.layers(); ++layer) {
    const SplitConfig config{layer, power_w};
    ProfileRow row;
    row.layer = layer;
    const auto [tau_device, tau_server] =
        compute_delays(config, bundle.profile, bundle.device, bundle.server);
    row.tau_device_s = tau_device;
    row.tau_server_s = tau_server;
    row.e_compute_j = local_compute_energy(config, bundle.profile, bundle.device);

    double tau_sum = 0.0, e_sum = 0.0;
    row.tau_transmit_min_s = std::numeric_limits<double>::infinity();
    row.e_transmit_min_j = std::numeric_limits<double>::infinity();
    row.tau_transmit_max_s = -std::numeric_limits<double>::infinity();
    row.e_transmit_max_j = -std::numeric_limits<double>::infinity();
    const std::size_t frames = bundle.trace.size();
    for (std::size_t f = 0; f < frames; ++f) {
      const CostBreakdown cost = evaluate_cost(config, gain_at(bundle.trace, f), bundle.profile,
                                               bundle.device, bundle.server, bundle.radio,
                                               bundle.budget);
      tau_sum += cost.tau_transmit_s;
      e_sum += cost.e_transmit_j;
      row.tau_transmit_min_s = std::min(row.tau_transmit_min_s, cost.tau_transmit_s);
      row.tau_transmit_max_s = std::max(row.tau_transmit_max_s, cost.tau_transmit_s);
      row.e_transmit_min_j = std::min(row.e_transmit_min_j, cost.e_transmit_j);
      row.e_transmit_max_j = std::max(row.e_transmit_max_j, cost.e_transmit_j);
    }
    row.tau_transmit_mean_s = tau_sum / static_cast<double>(frames);
    row.e_transmit_mean_j = e_sum / static_cast<double>(frames);
    rows.push_back(row);
  }
  return rows;
}

namespace {

bool is_bo_variant(const std::string& algorithm) {
  return algorithm == "bayes" || algorithm == "basic-bo";
}

int worker_pool_size() {
  if (const char* env = std::getenv("SPLITEDGE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string run_file_name(const std::string& algorithm, std::uint64_t seed) {
  return algorithm + "_seed" + std::to_string(seed) + ".csv";
}

}  // namespace

std::vector<SummaryRow> run_experiment(const ExperimentSpec& spec, const ProblemBundle& bundle,
                                       const AlgoParams& params) {
  if (spec.algorithms.empty()) throw std::invalid_argument("experiment: no algorithms");
  if (spec.seeds.empty()) throw std::invalid_argument("experiment: no seeds");
  for (const auto& name : spec.algorithms) {
    if (std::find(known_algorithms().begin(), known_algorithms().end(), name) ==
        known_algorithms().end()) {
      throw std::invalid_argument("unknown algorithm: " + name);
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir / "runs", ec);
  if (ec) throw IoError("cannot create output directory " + (spec.out_dir / "runs").string());

  const bool any_bo = std::any_of(spec.algorithms.begin(), spec.algorithms.end(), is_bo_variant);
  double optimum = 0.0;
  if (any_bo) {
    std::filesystem::create_directories(spec.out_dir / "regret", ec);
    // Ground truth for regret curves: a private exhaustive pass on its own
    // ledger, never charged to any compared run.
    TaskEvaluator truth(bundle, eval_cap_for("exhaustive", params, bundle),
                        params.bayes.channel_mode);
    optimum = exhaustive(truth, params.exhaustive_power_levels).best_utility;
  }

  struct Job {
    std::string algorithm;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& algorithm : spec.algorithms) {
    for (const auto seed : spec.seeds) jobs.push_back({algorithm, seed});
  }

  std::vector<SummaryRow> rows(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next_job{0};

  const auto worker = [&] {
    while (true) {
      const std::size_t index = next_job.fetch_add(1);
      if (index >= jobs.size()) return;
      const Job& job = jobs[index];
      try {
        const RunRecord record = dispatch_algorithm(job.algorithm, bundle, params, job.seed);
        rows[index] = summarize(record);
        csv::write_file(spec.out_dir / "runs" / run_file_name(job.algorithm, job.seed),
                        record_to_csv(record));
        if (is_bo_variant(job.algorithm)) {
          const int n_init =
              job.algorithm == "bayes" ? params.bayes.n_init : params.basic.n_init;
          const RegretCurve curve = compute_regret(record, optimum, n_init);
          csv::write_file(spec.out_dir / "regret" / run_file_name(job.algorithm, job.seed),
                          regret_to_csv(curve));
        }
      } catch (...) {
        failures[index] = std::current_exception();
      }
    }
  };

  const int pool = std::min<int>(worker_pool_size(), static_cast<int>(jobs.size()));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(pool));
  for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
  for (auto& thread : threads) thread.join();

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  csv::write_file(spec.out_dir / "summary.csv", summary_to_csv(rows));
  return rows;
}

std::string record_to_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "iter,power_w,layer,utility,feasible,energy_j,delay_s,best_so_far\n";
  for (const IterationLog& log : record.iterations) {
    out << log.iteration << ',' << csv::format_double(log.config.power_w) << ','
        << log.config.layer << ',' << csv::format_double(log.utility) << ','
        << (log.feasible ? 1 : 0) << ',' << csv::format_double(log.cost.total_energy_j()) << ','
        << csv::format_double(log.cost.total_delay_s()) << ','
        << csv::format_double(log.best_so_far) << '\n';
  }
  return out.str();
}

RunRecord load_run_record(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].size() != 8 || rows[0][0] != "iter") {
    throw ParseError("run record " + path.string() + ": unexpected header");
  }
  RunRecord record;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string context = "run record " + path.string() + " row " + std::to_string(i);
    if (row.size() != 8) throw ParseError(context + ": expected 8 fields");
    IterationLog log;
    log.iteration = static_cast<int>(csv::to_long(row[0], context));
    log.config.power_w = csv::to_double(row[1], context);
    log.config.layer = static_cast<int>(csv::to_long(row[2], context));
    log.utility = csv::to_double(row[3], context);
    log.feasible = csv::to_long(row[4], context) != 0;
    // The schema stores totals only; park them so the totals (and thus a
    // re-emitted CSV) reproduce exactly.
    log.cost.e_compute_j = csv::to_double(row[5], context);
    log.cost.tau_device_s = csv::to_double(row[6], context);
    log.cost.feasible = log.feasible;
    log.best_so_far = csv::to_double(row[7], context);
    record.iterations.push_back(log);

    if (log.feasible &&
        (record.outcome == RunOutcome::no_feasible_point || log.utility > record.best_utility)) {
      record.outcome = RunOutcome::ok;
      record.best_utility = log.utility;
      record.best_config = log.config;
    }
  }
  record.evaluations = static_cast<long>(record.iterations.size());
  return record;
}

std::string regret_to_csv(const RegretCurve& curve) {
  std::ostringstream out;
  out << "iter,simple_regret,cumulative_regret,mean_cumulative_regret\n";
  for (std::size_t i = 0; i < curve.simple.size(); ++i) {
    out << (i + 1) << ',' << csv::format_double(curve.simple[i]) << ','
        << csv::format_double(curve.cumulative[i]) << ','
        << csv::format_double(curve.mean_cumulative[i]) << '\n';
  }
  out << "# decay_exponent," << csv::format_double(curve.decay_exponent) << '\n';
  return out.str();
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "algorithm,seed,max_iterations,split_layer,power_w,utility,energy_j,delay_s\n";
  for (const SummaryRow& row : rows) {
    out << row.algorithm << ',' << row.seed << ',' << row.max_iterations << ',';
    if (row.feasible_found) {
      out << row.split_layer << ',' << csv::format_double(row.power_w) << ','
          << csv::format_double(row.utility) << ',' << csv::format_double(row.energy_j) << ','
          << csv::format_double(row.delay_s);
    } else {
      out << "none,nan,nan,nan,nan";
    }
    out << '\n';
  }
  return out.str();
}

std::string profile_table_to_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream out;
  out << "layer,tau_device_s,tau_server_s,e_compute_j,tau_transmit_mean_s,tau_transmit_min_s,"
         "tau_transmit_max_s,e_transmit_mean_j,e_transmit_min_j,e_transmit_max_j\n";
  for (const ProfileRow& row : rows) {
    out << row.layer << ',' << csv::format_double(row.tau_device_s) << ','
        << csv::format_double(row.tau_server_s) << ',' << csv::format_double(row.e_compute_j)
        << ',' << csv::format_double(row.tau_transmit_mean_s) << ','
        << csv::format_double(row.tau_transmit_min_s) << ','
        << csv::format_double(row.tau_transmit_max_s) << ','
        << csv::format_double(row.e_transmit_mean_j) << ','
        << csv::format_double(row.e_transmit_min_j) << ','
        << csv::format_double(row.e_transmit_max_j) << '\n';
  }
  return out.str();
}

}  // namespace splitedge
