// splitedge: constrained split-inference planning over (layer, power).
//
// Subcommands:
//   run      one algorithm, one seed -> per-iteration CSV
//   profile  per-layer delay/energy breakdown across the channel trace
//   compare  algorithm x seed sweep -> runs/, regret/, summary.csv
//   regret   regret curve for a stored run CSV

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "splitedge/channel.hpp"
#include "splitedge/csv.hpp"
#include "splitedge/errors.hpp"
#include "splitedge/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

#ifndef SPLITEDGE_REPO_ROOT
#define SPLITEDGE_REPO_ROOT "."
#endif

struct BundleOptions {
  fs::path profile_path = fs::path(SPLITEDGE_REPO_ROOT) / "profiles/vgg19_synthetic.csv";
  fs::path surface_path = fs::path(SPLITEDGE_REPO_ROOT) / "surfaces/vgg19_synthetic.csv";
  fs::path trace_path = fs::path(SPLITEDGE_REPO_ROOT) / "traces/outdoor_blockage.csv";
  std::optional<std::string> synth_channel;  // n,mean_db,fading_db,block_prob,extra_db,seed

  splitedge::DeviceSpec device;
  splitedge::ServerSpec server;
  splitedge::RadioSpec radio;
  splitedge::Budget budget;
  double truncation_penalty = 0.002;
  double floor = 0.0;
};

void merge_config_file(const fs::path& path, BundleOptions& bundle, splitedge::AlgoParams& algos) {
  std::ifstream in(path);
  if (!in) throw splitedge::IoError("cannot open config " + path.string());
  json config = json::parse(in);

  const auto get = [](const json& node, const char* key, auto fallback) {
    using T = decltype(fallback);
    return node.contains(key) ? node.at(key).get<T>() : fallback;
  };

  if (config.contains("device")) {
    const auto& node = config["device"];
    bundle.device.freq_hz = get(node, "freq_hz", bundle.device.freq_hz);
    bundle.device.kappa = get(node, "kappa", bundle.device.kappa);
    bundle.device.eta = get(node, "eta", bundle.device.eta);
    bundle.device.p_min_w = get(node, "p_min_w", bundle.device.p_min_w);
    bundle.device.p_max_w = get(node, "p_max_w", bundle.device.p_max_w);
  }
  if (config.contains("server")) {
    const auto& node = config["server"];
    bundle.server.freq_hz = get(node, "freq_hz", bundle.server.freq_hz);
    bundle.server.eta = get(node, "eta", bundle.server.eta);
  }
  if (config.contains("radio")) {
    const auto& node = config["radio"];
    bundle.radio.bandwidth_hz = get(node, "bandwidth_hz", bundle.radio.bandwidth_hz);
    bundle.radio.noise_psd_dbm_hz = get(node, "noise_psd_dbm_hz", bundle.radio.noise_psd_dbm_hz);
  }
  if (config.contains("budget")) {
    const auto& node = config["budget"];
    bundle.budget.e_max_j = get(node, "e_max_j", bundle.budget.e_max_j);
    bundle.budget.tau_max_s = get(node, "tau_max_s", bundle.budget.tau_max_s);
  }
  if (config.contains("surface")) {
    const auto& node = config["surface"];
    bundle.truncation_penalty =
        get(node, "truncation_penalty_per_layer", bundle.truncation_penalty);
    bundle.floor = get(node, "floor", bundle.floor);
  }

  const auto merge_run = [&](const char* key, splitedge::RunConfig& run) {
    if (!config.contains(key)) return;
    const auto& node = config[key];
    run.n_init = get(node, "n_init", run.n_init);
    run.budget = get(node, "budget", run.budget);
    run.early_stop = get(node, "early_stop", run.early_stop);
    if (node.contains("channel_mode")) {
      const std::string mode = node["channel_mode"].get<std::string>();
      if (mode == "frozen") {
        run.channel_mode = splitedge::ChannelMode::frozen;
      } else if (mode == "advance") {
        run.channel_mode = splitedge::ChannelMode::advance;
      } else {
        throw splitedge::ParseError("config: channel_mode must be 'frozen' or 'advance'");
      }
    }
    if (node.contains("ei_form")) {
      const std::string form = node["ei_form"].get<std::string>();
      if (form == "standard") {
        run.acq.ei_form = splitedge::EiForm::standard;
      } else if (form == "mean_hinge") {
        run.acq.ei_form = splitedge::EiForm::mean_hinge;
      } else {
        throw splitedge::ParseError("config: ei_form must be 'standard' or 'mean_hinge'");
      }
    }
    run.acq.power_grid_points = get(node, "power_grid_points", run.acq.power_grid_points);
    run.acq.power_refine_steps = get(node, "power_refine_steps", run.acq.power_refine_steps);
    if (node.contains("weights")) {
      const auto& w = node["weights"];
      auto& weights = run.acq.weights;
      weights.base_start = get(w, "base_start", weights.base_start);
      weights.base_end = get(w, "base_end", weights.base_end);
      weights.grad_start = get(w, "grad_start", weights.grad_start);
      weights.grad_end = get(w, "grad_end", weights.grad_end);
      weights.penalty = get(w, "penalty", weights.penalty);
      weights.ucb_beta = get(w, "ucb_beta", weights.ucb_beta);
    }
  };
  merge_run("run", algos.bayes);
  algos.basic = algos.bayes;
  algos.basic.budget = 48;
  algos.basic.early_stop = 48;
  merge_run("basic_bo", algos.basic);

  if (config.contains("exhaustive")) {
    algos.exhaustive_power_levels =
        get(config["exhaustive"], "power_levels", algos.exhaustive_power_levels);
  }
  if (config.contains("direct")) {
    algos.direct_max_evals = get(config["direct"], "max_evals", algos.direct_max_evals);
    algos.direct_stall_evals = get(config["direct"], "stall_evals", algos.direct_stall_evals);
  }
  if (config.contains("cma_es")) {
    algos.cma_population = get(config["cma_es"], "population", algos.cma_population);
    algos.cma_max_evals = get(config["cma_es"], "max_evals", algos.cma_max_evals);
    algos.cma_stall_evals = get(config["cma_es"], "stall_evals", algos.cma_stall_evals);
  }
  if (config.contains("random")) {
    algos.random_samples = get(config["random"], "samples", algos.random_samples);
  }
  if (config.contains("greedy")) {
    algos.greedy_power_levels = get(config["greedy"], "power_levels", algos.greedy_power_levels);
  }
}

splitedge::ChannelTrace make_trace(const BundleOptions& options) {
  if (options.synth_channel) {
    const auto fields = splitedge::csv::split_line(*options.synth_channel);
    if (fields.size() != 6) {
      throw splitedge::ParseError(
          "--synth-channel expects n,mean_db,fading_db,blockage_prob,blockage_extra_db,seed");
    }
    return splitedge::synth_trace(
        static_cast<int>(splitedge::csv::to_long(fields[0], "synth-channel n")),
        splitedge::csv::to_double(fields[1], "synth-channel mean_db"),
        splitedge::csv::to_double(fields[2], "synth-channel fading_db"),
        splitedge::csv::to_double(fields[3], "synth-channel blockage_prob"),
        splitedge::csv::to_double(fields[4], "synth-channel blockage_extra_db"),
        static_cast<std::uint64_t>(splitedge::csv::to_long(fields[5], "synth-channel seed")));
  }
  return splitedge::load_trace(options.trace_path);
}

splitedge::ProblemBundle make_bundle(const BundleOptions& options) {
  splitedge::ProblemBundle bundle;
  bundle.profile = splitedge::load_profile(options.profile_path);
  bundle.surface =
      splitedge::load_surface(options.surface_path, options.truncation_penalty, options.floor);
  bundle.trace = make_trace(options);
  bundle.device = options.device;
  bundle.server = options.server;
  bundle.radio = options.radio;
  bundle.budget = options.budget;
  splitedge::validate(bundle.device);
  splitedge::validate(bundle.server);
  splitedge::validate(bundle.radio);
  splitedge::validate(bundle.budget);
  if (bundle.surface.layers() != bundle.profile.layers()) {
    throw splitedge::ParseError("surface and profile disagree on layer count");
  }
  return bundle;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    const long lo = splitedge::csv::to_long(text.substr(0, range_pos), "seeds");
    const long hi = splitedge::csv::to_long(text.substr(range_pos + 2), "seeds");
    for (long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    for (const auto& field : splitedge::csv::split_line(text)) {
      seeds.push_back(static_cast<std::uint64_t>(splitedge::csv::to_long(field, "seeds")));
    }
  }
  if (seeds.empty()) throw splitedge::ParseError("no seeds given");
  return seeds;
}

std::vector<std::string> parse_algorithms(const std::string& text) {
  if (text == "all") return splitedge::known_algorithms();
  return splitedge::csv::split_line(text);
}

void emit(const std::optional<fs::path>& out, const std::string& contents) {
  if (out) {
    splitedge::csv::write_file(*out, contents);
  } else {
    std::cout << contents;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained split-inference planner and benchmark harness"};
  app.require_subcommand(1);

  BundleOptions bundle_options;
  splitedge::AlgoParams algos;
  std::optional<fs::path> config_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--profile", bundle_options.profile_path, "layer profile CSV");
    cmd->add_option("--surface", bundle_options.surface_path, "utility surface CSV");
    cmd->add_option("--trace", bundle_options.trace_path, "channel trace CSV");
    cmd->add_option("--synth-channel", bundle_options.synth_channel,
                    "synthesize the channel: n,mean_db,fading_db,blockage_prob,extra_db,seed");
  };

  // run
  auto* run_cmd = app.add_subcommand("run", "run one algorithm");
  std::string run_algo = "bayes";
  std::uint64_t run_seed = 1;
  std::optional<fs::path> run_out;
  add_common(run_cmd);
  run_cmd->add_option("--algo", run_algo, "algorithm name")->required();
  run_cmd->add_option("--seed", run_seed, "random seed");
  run_cmd->add_option("--out", run_out, "output CSV (default: stdout)");

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "per-layer cost breakdown");
  double profile_power = 0.38;
  std::optional<fs::path> profile_out;
  add_common(profile_cmd);
  profile_cmd->add_option("--power", profile_power, "transmit power in watts");
  profile_cmd->add_option("--out", profile_out, "output CSV (default: stdout)");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "algorithm x seed sweep");
  std::string compare_algos = "all";
  std::string compare_seeds = "1..10";
  fs::path compare_out = "out";
  add_common(compare_cmd);
  compare_cmd->add_option("--algo", compare_algos, "comma list of algorithms, or 'all'");
  compare_cmd->add_option("--seeds", compare_seeds, "seed list 'a,b,c' or range 'a..b'");
  compare_cmd->add_option("--out", compare_out, "output directory")->required();

  // regret
  auto* regret_cmd = app.add_subcommand("regret", "regret curve for a stored run");
  fs::path regret_record;
  std::optional<double> regret_optimum;
  int regret_n_init = 5;
  std::optional<fs::path> regret_out;
  add_common(regret_cmd);
  regret_cmd->add_option("--record", regret_record, "run CSV produced by 'run'/'compare'")
      ->required();
  regret_cmd->add_option("--optimum", regret_optimum,
                         "optimum utility (default: exhaustive search on the bundle)");
  regret_cmd->add_option("--n-init", regret_n_init, "warmup length excluded from the exponent fit");
  regret_cmd->add_option("--out", regret_out, "output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_path) merge_config_file(*config_path, bundle_options, algos);

    if (run_cmd->parsed()) {
      const splitedge::ProblemBundle bundle = make_bundle(bundle_options);
      const splitedge::RunRecord record =
          splitedge::dispatch_algorithm(run_algo, bundle, algos, run_seed);
      emit(run_out, splitedge::record_to_csv(record));
      const splitedge::SummaryRow row = splitedge::summarize(record);
      if (record.outcome == splitedge::RunOutcome::no_feasible_point) {
        std::cerr << run_algo << ": no feasible configuration found in " << record.evaluations
                  << " evaluations\n";
        return 2;
      }
      std::cerr << run_algo << ": best layer=" << row.split_layer << " power_w=" << row.power_w
                << " utility=" << row.utility << " evals=" << row.max_iterations << "\n";
      return 0;
    }

    if (profile_cmd->parsed()) {
      const splitedge::ProblemBundle bundle = make_bundle(bundle_options);
      emit(profile_out, splitedge::profile_table_to_csv(
                            splitedge::profile_sweep(bundle, profile_power)));
      return 0;
    }

    if (compare_cmd->parsed()) {
      const splitedge::ProblemBundle bundle = make_bundle(bundle_options);
      splitedge::ExperimentSpec spec;
      spec.algorithms = parse_algorithms(compare_algos);
      spec.seeds = parse_seeds(compare_seeds);
      spec.out_dir = compare_out;
      const auto rows = splitedge::run_experiment(spec, bundle, algos);
      bool any_infeasible = false;
      for (const auto& row : rows) any_infeasible |= !row.feasible_found;
      std::cerr << "wrote " << rows.size() << " runs under " << compare_out.string() << "\n";
      return any_infeasible ? 2 : 0;
    }

    if (regret_cmd->parsed()) {
      const splitedge::RunRecord record = splitedge::load_run_record(regret_record);
      double optimum;
      if (regret_optimum) {
        optimum = *regret_optimum;
      } else {
        const splitedge::ProblemBundle bundle = make_bundle(bundle_options);
        splitedge::TaskEvaluator truth(bundle,
                                       splitedge::eval_cap_for("exhaustive", algos, bundle));
        optimum = splitedge::exhaustive(truth, algos.exhaustive_power_levels).best_utility;
      }
      emit(regret_out,
           splitedge::regret_to_csv(splitedge::compute_regret(record, optimum, regret_n_init)));
      return 0;
    }
  } catch (const splitedge::BudgetExhaustedError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 1;
}
