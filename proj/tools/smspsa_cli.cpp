#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smspsa/harness.hpp"
#include "smspsa/heuristics.hpp"
#include "smspsa/manifest.hpp"
#include "smspsa/matrix_io.hpp"
#include "smspsa/optimizer.hpp"
#include "smspsa/oracle.hpp"
#include "smspsa/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smspsa;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

void emit_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

// `--config FILE` holds one `key = value` per line ('#' comments); each key
// names a long flag of the subcommand. Entries are spliced in ahead of the
// real arguments so the command line wins.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      config = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      config = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (rest.empty()) return rest;
  out.push_back(rest.front());  // subcommand name
  if (config) {
    std::ifstream in(*config);
    if (!in) throw InputError("cannot open config file '" + *config + "'");
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected key = value in '" + *config + "'", number);
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError("empty key in '" + *config + "'", number);
      out.push_back("--" + key + "=" + value);
    }
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

struct OptimizerFlags {
  double epsilon = 0.1;
  std::size_t iterations = 0;
  std::uint64_t seed = 1;
  std::string init = "as-is";
  std::optional<double> gamma;
  std::size_t record_stride = 100;
  bool stop = false;
  std::optional<double> stop_omega;
  std::optional<std::size_t> stop_window;

  void add(CLI::App* app, std::size_t default_iterations, const std::string& default_init) {
    iterations = default_iterations;
    init = default_init;
    app->add_option("--epsilon", epsilon, "Fixed gain size")->capture_default_str();
    app->add_option("--iterations", iterations, "Number of iterations I")->capture_default_str();
    app->add_option("--seed", seed, "Perturbation seed")->capture_default_str();
    app->add_option("--init", init, "Start matrix: as-is or centered-mass")
        ->check(CLI::IsMember({"as-is", "centered-mass"}))
        ->capture_default_str();
    app->add_option("--gamma", gamma, "Clipping constant of the inverse transform");
    app->add_option("--record-stride", record_stride, "Record every k-th iteration")->capture_default_str();
    app->add_flag("--stop", stop, "Enable the Theta stopping rule with default omega and window");
    app->add_option("--stop-omega", stop_omega, "Stopping-rule tolerance omega");
    app->add_option("--stop-window", stop_window, "Stopping-rule window R");
  }

  OptimizerConfig config() const {
    OptimizerConfig cfg;
    cfg.epsilon = epsilon;
    cfg.iterations = iterations;
    cfg.seed = seed;
    cfg.record_stride = record_stride;
    cfg.gamma = gamma;
    return cfg;
  }

  std::optional<StoppingRule> stopping(std::size_t adjustable) const {
    if (!stop && !stop_omega && !stop_window) return std::nullopt;
    auto rule = StoppingRule::defaults(adjustable);
    if (stop_omega) rule.omega = *stop_omega;
    if (stop_window) rule.window = *stop_window;
    return rule;
  }
};

struct ObjectiveFlags {
  std::string kind;
  std::optional<Index> target;
  std::string weights;
  std::string cost_curve = "advertising";

  void add(CLI::App* app) {
    app->add_option("--objective", kind, "Objective kind: single-node, linear or webrank")
        ->check(CLI::IsMember({"single-node", "linear", "webrank"}));
    app->add_option("--target", target, "Target node of single-node and webrank objectives");
    app->add_option("--weights", weights, "Weight vector file (CSV row or JSON) for the linear objective");
    app->add_option("--cost-curve", cost_curve, "Cost curve of the webrank objective: advertising or zero")
        ->capture_default_str();
  }

  // Falls back to `fallback` (from a manifest) when no kind was given.
  Objective resolve(const std::optional<Objective>& fallback) const {
    if (kind.empty()) {
      if (fallback) {
        if (target && fallback->kind() == ObjectiveKind::single_node) return Objective::single_node(*target);
        if (target && fallback->kind() == ObjectiveKind::webrank) {
          return Objective::webrank(*target, fallback->cost_curve());
        }
        return *fallback;
      }
      throw InputError("no objective given; use --objective or an instance manifest");
    }
    if (kind == "linear") {
      if (weights.empty()) throw InputError("--objective linear needs --weights FILE");
      const auto w = io::read_dense(weights);
      if (w.rows() != 1 && w.cols() != 1) throw StructuralError("weights file must hold a single row or column");
      return Objective::linear(w.reshaped().transpose());
    }
    if (!target) throw InputError("--objective " + kind + " needs --target");
    if (kind == "single-node") return Objective::single_node(*target);
    return Objective::webrank(*target, cost_curve_by_id(cost_curve));
  }
};

// --instance FILE, or --matrix FILE with --mask FILE.
struct InstanceFlags {
  std::string instance;
  std::string matrix;
  std::string mask;

  void add(CLI::App* app) {
    app->add_option("--instance", instance, "Instance manifest (instance.json)");
    app->add_option("--matrix", matrix, "Start matrix P0 (CSV or JSON)");
    app->add_option("--mask", mask, "Adjustment mask C (CSV or JSON, 0/1 entries)");
  }

  struct Loaded {
    StochasticMatrix matrix;
    AdjustmentMask mask;
    std::optional<Objective> objective;
    std::optional<InstanceManifest> manifest;
  };

  Loaded load() const {
    if (!instance.empty()) {
      if (!matrix.empty() || !mask.empty()) throw InputError("--instance excludes --matrix and --mask");
      auto m = InstanceManifest::load(instance);
      return {m.matrix, m.mask, m.objective, m};
    }
    if (matrix.empty() || mask.empty()) throw InputError("give --instance FILE or both --matrix and --mask");
    auto p = io::load_matrix(matrix);
    auto c = io::load_mask(mask);
    return {std::move(p), std::move(c), std::nullopt, std::nullopt};
  }
};

void write_json(const fs::path& path, const json& doc) { io::write_text(path, doc.dump(2) + "\n"); }

fs::path prepare_out(const std::string& out) {
  if (out.empty()) throw InputError("--out DIR is required");
  fs::create_directories(out);
  return fs::path(out);
}

void write_trajectory(const fs::path& dir, const std::string& stem, const OptimizerConfig& cfg, InitMode init,
                      const std::optional<StoppingRule>& stop, const RunResult& result, const Objective& objective) {
  io::write_text(dir / (stem + ".csv"), result.trajectory.to_csv());
  write_json(dir / (stem + ".meta.json"), run_metadata(cfg, init, stop, result, objective));
}

// ---- subcommands ----

struct OptimizeCmd {
  InstanceFlags input;
  ObjectiveFlags objective;
  OptimizerFlags opt;
  InflictionThresholds thresholds;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("optimize", "Run SM-SPSA on one instance");
    input.add(sub);
    objective.add(sub);
    opt.add(sub, 100000, "as-is");
    sub->add_option("--plateau-tol", thresholds.plateau_tol, "Infliction plateau tolerance")->capture_default_str();
    sub->add_option("--min-plateau", thresholds.min_plateau, "Infliction plateau length in recorded points");
    sub->add_option("--jump-tol", thresholds.jump_tol, "Infliction jump tolerance")->capture_default_str();
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    auto loaded = input.load();
    const auto obj = objective.resolve(loaded.objective);
    const auto cfg = opt.config();
    const auto init = parse_init_mode(opt.init);
    const auto stop = opt.stopping(loaded.mask.count());
    const auto dir = prepare_out(out);

    InstanceManifest manifest = loaded.manifest.value_or(InstanceManifest{loaded.matrix, loaded.mask, obj});
    manifest.objective = obj;
    manifest.save(dir / "instance.json");

    const auto result = run(loaded.matrix, loaded.mask, obj, cfg, stop, init);
    write_trajectory(dir, "trajectory", cfg, init, stop, result, obj);
    io::write_dense(dir / "final_matrix.csv", result.final_matrix.entries());
    const auto inflictions = detect_inflictions(result.trajectory, thresholds);
    json report = {{"version", kVersion},
                   {"command", "optimize"},
                   {"objective", objective_to_json(obj)},
                   {"init", to_string(init)},
                   {"initial_objective", result.trajectory.points().front().objective},
                   {"final_objective", result.trajectory.back().objective},
                   {"iterations_run", result.iterations_run},
                   {"stopped_at", result.stopped_at ? json(*result.stopped_at) : json(nullptr)},
                   {"final_matrix", io::to_json(result.final_matrix.entries())},
                   {"run", run_metadata(cfg, init, stop, result, obj)},
                   {"inflictions", to_json(inflictions)}};
    write_json(dir / "report.json", report);
  }
};

struct SampleCmd {
  SamplerConfig cfg;
  std::optional<std::size_t> max_free;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sample", "Sample a random network instance");
    cfg.seed = 1;
    sub->add_option("--n", cfg.n, "Node count")->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "Weight of the Erdos-Renyi part")->capture_default_str();
    sub->add_option("--p-er", cfg.p_er, "Erdos-Renyi edge probability")->capture_default_str();
    sub->add_option("--mask-probability", cfg.mask_probability, "Chance an off-diagonal entry is adjustable")
        ->capture_default_str();
    sub->add_option("--max-free-dimensions", max_free, "Redraw the mask until it has at most this many");
    sub->add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    cfg.max_free_dimensions = max_free;
    const auto net = sample_network(cfg);
    const auto dir = prepare_out(out);
    InstanceManifest m{net.matrix, net.mask, Objective::single_node(net.target), cfg.seed};
    m.params = {{"sampler", "erdos-renyi blend"},
                {"n", cfg.n},
                {"alpha", cfg.alpha},
                {"p_er", cfg.p_er},
                {"mask_probability", cfg.mask_probability},
                {"max_free_dimensions", max_free ? json(*max_free) : json(nullptr)},
                {"resampled_rows", net.resampled_rows},
                {"mask_draws", net.mask_draws}};
    m.save(dir / "instance.json");
    io::write_dense(dir / "matrix.csv", net.matrix.entries());
    io::write_dense(dir / "mask.csv", net.mask.as_matrix<double>());
  }
};

struct IngestCmd {
  std::string edges;
  std::optional<std::size_t> synthetic;
  double mean_degree = 3.0;
  std::size_t size_cap = 100;
  bool no_cap = false;
  Index target = 0;
  double self_loop_max = 0.9;
  std::uint64_t seed = 1;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("ingest-scc", "Extract a strongly connected subgraph and build a webrank instance");
    auto* e = sub->add_option("--edges", edges, "Edge-list file (source target [weight] per line)");
    auto* s = sub->add_option("--synthetic", synthetic, "Sample a directed G(n, p) edge list of this many nodes");
    e->excludes(s);
    sub->add_option("--mean-degree", mean_degree, "Mean out-degree of the synthetic graph")->capture_default_str();
    sub->add_option("--size-cap", size_cap, "Node count of the extracted subgraph")->capture_default_str();
    sub->add_flag("--no-cap", no_cap, "Keep the whole largest component");
    sub->add_option("--target", target, "Target node index inside the extracted subgraph")->capture_default_str();
    sub->add_option("--self-loop-max", self_loop_max, "Upper bound of the uniform self-loop mass")
        ->capture_default_str();
    sub->add_option("--seed", seed, "Seed for synthetic graph and mass assignment")->capture_default_str();
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    if (edges.empty() && !synthetic) throw InputError("give --edges FILE or --synthetic N");
    const auto graph = edges.empty() ? sample_edge_list(*synthetic, mean_degree, derive_seed(seed, 0))
                                     : load_edge_list(edges);
    const auto scc = largest_scc(graph, no_cap ? std::nullopt : std::optional<std::size_t>(size_cap));
    const auto inst = build_webrank_instance(scc, target, self_loop_max, derive_seed(seed, 1));
    const auto dir = prepare_out(out);
    InstanceManifest m{inst.matrix, inst.mask, inst.objective, seed};
    m.labels = scc.labels;
    m.params = {{"source", edges.empty() ? json{{"synthetic", *synthetic}, {"mean_degree", mean_degree}}
                                         : json{{"edges", edges}}},
                {"input_nodes", graph.node_count()},
                {"input_edges", graph.edge_count()},
                {"size_cap", no_cap ? json(nullptr) : json(size_cap)},
                {"scc_nodes", scc.node_count()},
                {"scc_edges", scc.edge_count()},
                {"self_loop_max", self_loop_max},
                {"target_label", scc.labels[static_cast<std::size_t>(target)]},
                {"mass_split", "dirichlet(1) over out-edges"}};
    m.save(dir / "instance.json");
    io::write_text(dir / "scc.edges", to_edge_list(scc));
    io::write_dense(dir / "matrix.csv", inst.matrix.entries());
    io::write_dense(dir / "mask.csv", inst.mask.as_matrix<double>());
  }
};

struct MetastudyCmd {
  std::string problem = "small";
  bool allow_large = false;
  std::optional<Index> nodes;
  std::optional<std::size_t> instances;
  std::optional<std::size_t> iterations;
  std::size_t checkpoint = 1000;
  double level = 0.05;
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("metastudy", "Paired as-is vs centered-mass runs with proportion tests");
    sub->add_option("--class", problem, "Problem class: small, medium or large")
        ->check(CLI::IsMember({"small", "medium", "large"}))
        ->capture_default_str();
    sub->add_flag("--allow-large", allow_large, "Permit the large class");
    sub->add_option("--nodes", nodes, "Override the node count");
    sub->add_option("--instances", instances, "Override the instance count");
    sub->add_option("--iterations", iterations, "Override the iteration count I");
    sub->add_option("--checkpoint", checkpoint, "Checkpoint spacing")->capture_default_str();
    sub->add_option("--level", level, "Significance level")->capture_default_str();
    sub->add_option("--epsilon", epsilon, "Fixed gain size")->capture_default_str();
    sub->add_option("--seed", seed, "Study seed")->capture_default_str();
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    if (problem == "large" && !allow_large) throw InputError("the large class is off by default; pass --allow-large");
    auto plan = problem_class(problem);
    if (nodes) plan.nodes = *nodes;
    if (instances) plan.instances = *instances;
    if (iterations) plan.iterations = *iterations;
    plan.checkpoint_every = checkpoint;
    plan.level = level;
    plan.epsilon = epsilon;
    plan.seed = seed;
    const auto dir = prepare_out(out);
    const auto report = heuristic_metastudy(plan);
    auto doc = report.to_json();
    doc["class"] = problem;
    write_json(dir / "report.json", doc);
    std::string csv = "t,successes,instances,p_value,reject_h0,mean_relative_difference_percent,ci95_lower,ci95_upper\n";
    for (const auto& c : report.checkpoints) {
      csv += std::to_string(c.t) + "," + std::to_string(c.test.successes) + "," + std::to_string(c.test.trials) + "," +
             io::format_double(c.test.p_value) + "," + (c.test.reject ? "1" : "0") + "," +
             io::format_double(c.relative_difference.mean) + "," + io::format_double(c.relative_difference.lower) +
             "," + io::format_double(c.relative_difference.upper) + "\n";
    }
    io::write_text(dir / "checkpoints.csv", csv);
  }
};

struct GapCmd {
  GapStudyConfig cfg;
  std::optional<std::size_t> iterations;
  std::string init = "centered-mass";
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("gap-study", "Optimizer vs exhaustive grid oracle on small instances");
    sub->add_option("--n-min", cfg.n_min, "Smallest node count")->capture_default_str();
    sub->add_option("--n-max", cfg.n_max, "Largest node count")->capture_default_str();
    sub->add_option("--count", cfg.count, "Number of instances")->capture_default_str();
    sub->add_option("--max-free-dimensions", cfg.max_free_dimensions, "Free simplex dimensions per instance")
        ->capture_default_str();
    sub->add_option("--grid-points", cfg.grid.points, "Lattice points per free dimension")->capture_default_str();
    sub->add_option("--grid-gamma", cfg.grid.gamma, "Lower bound of adjustable entries on the grid")
        ->capture_default_str();
    sub->add_option("--budget", cfg.grid.budget, "Maximum grid evaluations per instance")->capture_default_str();
    sub->add_option("--iterations", iterations, "Optimizer iterations (default 750 N^2)");
    sub->add_option("--epsilon", cfg.epsilon, "Fixed gain size")->capture_default_str();
    sub->add_option("--init", init, "Start matrix: as-is or centered-mass")
        ->check(CLI::IsMember({"as-is", "centered-mass"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Study seed")->capture_default_str();
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    cfg.iterations = iterations;
    cfg.init = parse_init_mode(init);
    const auto dir = prepare_out(out);
    const auto report = gap_study(cfg);
    write_json(dir / "report.json", report.to_json());
    io::write_text(dir / "gaps.csv", report.to_csv());
  }
};

struct WebrankCmd {
  std::string instance;
  std::string cost_curve;
  OptimizerFlags opt;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("webrank", "Compare optimization with and without advertising costs");
    sub->add_option("--instance", instance, "Webrank instance manifest from ingest-scc")->required();
    sub->add_option("--cost-curve", cost_curve, "Override the cost curve: advertising or zero");
    opt.record_stride = 1000;
    opt.add(sub, 500000, "centered-mass");
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    const auto m = InstanceManifest::load(instance);
    if (m.objective.kind() != ObjectiveKind::webrank) throw InputError("instance objective is not webrank");
    if (opt.stop || opt.stop_omega || opt.stop_window) throw InputError("webrank runs do not take a stopping rule");
    WebrankInstance inst{m.matrix, m.mask, m.objective, m.objective.target()};
    if (!cost_curve.empty()) inst.objective = Objective::webrank(inst.target, cost_curve_by_id(cost_curve));
    WebrankStudyConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.iterations = opt.iterations;
    cfg.seed = opt.seed;
    cfg.init = parse_init_mode(opt.init);
    cfg.record_stride = opt.record_stride;
    cfg.gamma = opt.gamma;
    const auto dir = prepare_out(out);
    InstanceManifest copy = m;
    copy.objective = inst.objective;
    copy.save(dir / "instance.json");
    const auto report = webrank_case_study(inst, cfg);
    auto oc = opt.config();
    write_trajectory(dir, "trajectory_including_costs", oc, cfg.init, std::nullopt, report.with_costs_run,
                     inst.objective);
    write_trajectory(dir, "trajectory_excluding_costs", oc, cfg.init, std::nullopt, report.without_costs_run,
                     Objective::single_node(inst.target));
    io::write_dense(dir / "final_matrix_including_costs.csv", report.with_costs_run.final_matrix.entries());
    io::write_dense(dir / "final_matrix_excluding_costs.csv", report.without_costs_run.final_matrix.entries());
    write_json(dir / "report.json", report.to_json());
  }
};

struct ExportCmd {
  InstanceFlags input;
  ObjectiveFlags objective;
  std::optional<double> gamma;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("export-model", "Write the exact program as a text model");
    input.add(sub);
    objective.add(sub);
    sub->add_option("--gamma", gamma, "Lower bound of adjustable entries (default 1e-8)");
    sub->add_option("--out", out, "Run directory")->required();
    sub->callback([this] { execute(); });
  }

  void execute() {
    auto loaded = input.load();
    const auto obj = objective.resolve(loaded.objective);
    const double g = gamma.value_or(1e-8);
    const auto text = model_text(loaded.matrix, loaded.mask, obj, g);
    const auto dir = prepare_out(out);
    io::write_text(dir / "model.txt", text);
  }
};

struct DetectCmd {
  std::string trajectory;
  InflictionThresholds thresholds;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("detect-inflictions", "Scan a trajectory CSV for plateau-then-jump events");
    sub->add_option("--trajectory", trajectory, "Trajectory CSV")->required();
    sub->add_option("--plateau-tol", thresholds.plateau_tol, "Largest step inside a plateau")->capture_default_str();
    sub->add_option("--min-plateau", thresholds.min_plateau, "Plateau length in recorded points (default 5%)");
    sub->add_option("--jump-tol", thresholds.jump_tol, "Smallest departure counted as a jump")->capture_default_str();
    sub->add_option("--out", out, "Run directory (stdout when omitted)");
    sub->callback([this] { execute(); });
  }

  void execute() {
    const auto traj = Trajectory::from_csv(io::read_text(trajectory));
    auto doc = to_json(detect_inflictions(traj, thresholds));
    doc["trajectory"] = trajectory;
    if (out.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      write_json(prepare_out(out) / "inflictions.json", doc);
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary-distribution optimization with SM-SPSA", "smspsa"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  OptimizeCmd optimize;
  SampleCmd sample;
  IngestCmd ingest;
  MetastudyCmd metastudy;
  GapCmd gap;
  WebrankCmd webrank;
  ExportCmd export_model_cmd;
  DetectCmd detect;
  optimize.add(app);
  sample.add(app);
  ingest.add(app);
  metastudy.add(app);
  gap.add(app);
  webrank.add(app);
  export_model_cmd.add(app);
  detect.add(app);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return kExitUsage;
  } catch (const smspsa::Error& e) {
    emit_error(e.kind(), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitFailure;
  }
  return EXIT_SUCCESS;
}
