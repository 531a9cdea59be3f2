#include "smspsa/harness.hpp"

#include <cmath>

#include "smspsa/matrix_io.hpp"
#include "smspsa/parallel.hpp"
#include "smspsa/rng.hpp"
#include "smspsa/version.hpp"

namespace smspsa {

std::vector<std::size_t> ExperimentPlan::checkpoints() const {
  if (checkpoint_every == 0) throw InputError("checkpoint interval must be positive");
  std::vector<std::size_t> out;
  for (std::size_t t = checkpoint_every; t <= iterations; t += checkpoint_every) out.push_back(t);
  if (out.empty() || out.back() != iterations) out.push_back(iterations);
  return out;
}

nlohmann::json ExperimentPlan::to_json() const {
  return {{"nodes", nodes},       {"instances", instances}, {"iterations", iterations},
          {"checkpoint_every", checkpoint_every}, {"level", level}, {"epsilon", epsilon},
          {"alpha", alpha},       {"p_er", p_er},           {"seed", seed}};
}

ExperimentPlan problem_class(const std::string& name) {
  ExperimentPlan plan;
  if (name == "small") {
    plan.nodes = 10;
    plan.instances = 50;
    plan.iterations = 100000;
  } else if (name == "medium") {
    plan.nodes = 50;
    plan.instances = 5;
    plan.iterations = 750000;
  } else if (name == "large") {
    plan.nodes = 100;
    plan.instances = 10;
    plan.iterations = 750000;
  } else {
    throw InputError("unknown problem class '" + name + "' (expected small, medium or large)");
  }
  return plan;
}

namespace {

std::vector<double> objectives_at(const Trajectory& traj, const std::vector<std::size_t>& checkpoints) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  std::size_t k = 0;
  for (const auto& pt : traj.points()) {
    if (k < checkpoints.size() && pt.iteration == checkpoints[k]) {
      out.push_back(pt.objective);
      ++k;
    }
  }
  if (out.size() != checkpoints.size()) throw StructuralError("trajectory is missing checkpoint records");
  return out;
}

}  // namespace

MetastudyReport heuristic_metastudy(const ExperimentPlan& plan) {
  if (plan.instances < 2) throw InputError("metastudy needs at least 2 instances for a meaningful test");
  const auto checkpoints = plan.checkpoints();

  MetastudyReport report;
  report.plan = plan;
  report.as_is.resize(plan.instances);
  report.centered.resize(plan.instances);

  parallel_for(plan.instances, [&](std::size_t k) {
    SamplerConfig sc;
    sc.n = plan.nodes;
    sc.alpha = plan.alpha;
    sc.p_er = plan.p_er;
    sc.seed = derive_seed(plan.seed, 2 * k);
    const auto net = sample_network(sc);
    const auto objective = Objective::single_node(net.target);

    OptimizerConfig oc;
    oc.epsilon = plan.epsilon;
    oc.iterations = plan.iterations;
    oc.seed = derive_seed(plan.seed, 2 * k + 1);
    oc.record_stride = plan.checkpoint_every;
    const auto plain = run(net.matrix, net.mask, objective, oc, std::nullopt, InitMode::as_is);
    const auto centered = run(net.matrix, net.mask, objective, oc, std::nullopt, InitMode::centered_mass);
    report.as_is[k] = objectives_at(plain.trajectory, checkpoints);
    report.centered[k] = objectives_at(centered.trajectory, checkpoints);
  });

  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    std::size_t wins = 0;
    std::vector<double> rel(plan.instances);
    for (std::size_t k = 0; k < plan.instances; ++k) {
      const double a = report.as_is[k][c];
      const double b = report.centered[k][c];
      if (b > a) ++wins;
      rel[k] = (b - a) / a * 100.0;
    }
    CheckpointResult cr;
    cr.t = checkpoints[c];
    cr.test = stats::proportion_test(wins, plan.instances, plan.level);
    cr.relative_difference = stats::mean_confidence_interval(rel, 0.95);
    report.checkpoints.push_back(cr);
  }
  return report;
}

nlohmann::json MetastudyReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : checkpoints) {
    rows.push_back({{"t", c.t},
                    {"successes", c.test.successes},
                    {"instances", c.test.trials},
                    {"p_value", c.test.p_value},
                    {"test", c.test.exact ? "exact binomial" : "normal approximation"},
                    {"reject_h0", c.test.reject},
                    {"mean_relative_difference_percent", c.relative_difference.mean},
                    {"ci95_lower", c.relative_difference.lower},
                    {"ci95_upper", c.relative_difference.upper}});
  }
  std::optional<std::size_t> first_reject;
  for (std::size_t c = checkpoints.size(); c-- > 0;) {
    if (!checkpoints[c].test.reject) break;
    first_reject = checkpoints[c].t;
  }
  return {{"version", kVersion},
          {"study", "centered-mass metastudy"},
          {"hypothesis", "H0(t): p_t <= 1/2 vs H1(t): p_t > 1/2, one-sided"},
          {"interval", "t-distribution, instances - 1 degrees of freedom"},
          {"instance_seed", "derive_seed(seed, 2k)"},
          {"optimizer_seed", "derive_seed(seed, 2k + 1)"},
          {"plan", plan.to_json()},
          {"rejected_from", first_reject ? nlohmann::json(*first_reject) : nlohmann::json(nullptr)},
          {"checkpoints", std::move(rows)},
          {"objective_as_is", as_is},
          {"objective_centered_mass", centered}};
}

nlohmann::json GapStudyConfig::to_json() const {
  return {{"n_min", n_min},
          {"n_max", n_max},
          {"count", count},
          {"max_free_dimensions", max_free_dimensions},
          {"epsilon", epsilon},
          {"iterations", iterations ? nlohmann::json(*iterations) : nlohmann::json("750*N^2")},
          {"init", to_string(init)},
          {"grid_points", grid.points},
          {"grid_gamma", grid.gamma},
          {"grid_budget", grid.budget},
          {"seed", seed}};
}

GapReport gap_study(const GapStudyConfig& config) {
  if (config.n_min < 2 || config.n_max < config.n_min) throw InputError("invalid node range");
  if (config.count == 0) throw InputError("gap study needs at least one instance");
  GapReport report;
  report.config = config;
  report.entries.resize(config.count);
  const auto span = static_cast<std::size_t>(config.n_max - config.n_min + 1);

  parallel_for(config.count, [&](std::size_t k) {
    SamplerConfig sc;
    sc.n = config.n_min + static_cast<Index>(k % span);
    sc.seed = derive_seed(config.seed, 2 * k);
    sc.max_free_dimensions = config.max_free_dimensions;
    const auto net = sample_network(sc);
    const auto objective = Objective::single_node(net.target);

    GapEntry& e = report.entries[k];
    e.id = k;
    e.n = sc.n;
    e.target = net.target;
    e.free_dimensions = net.mask.free_dimensions();
    try {
      e.oracle = brute_force_max(net.matrix, net.mask, objective, config.grid).objective;
    } catch (const BudgetError& err) {
      throw BudgetError("instance " + std::to_string(k) + ": " + err.what(), err.required());
    }

    OptimizerConfig oc;
    oc.epsilon = config.epsilon;
    oc.iterations = config.iterations.value_or(750 * static_cast<std::size_t>(sc.n * sc.n));
    oc.seed = derive_seed(config.seed, 2 * k + 1);
    oc.record_stride = std::max<std::size_t>(1, oc.iterations);
    const auto result = run(net.matrix, net.mask, objective, oc, std::nullopt, config.init);
    e.iterations = oc.iterations;
    e.optimizer = result.trajectory.back().objective;
    e.gap_percent = e.oracle > 0.0 ? (e.oracle - e.optimizer) / e.oracle * 100.0 : 0.0;
  });

  double sum = 0.0;
  for (const auto& e : report.entries) sum += e.gap_percent;
  report.mean_gap_percent = sum / static_cast<double>(report.entries.size());
  return report;
}

nlohmann::json GapReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    rows.push_back({{"id", e.id},
                    {"n", e.n},
                    {"target", e.target},
                    {"free_dimensions", e.free_dimensions},
                    {"iterations", e.iterations},
                    {"oracle", e.oracle},
                    {"optimizer", e.optimizer},
                    {"gap_percent", e.gap_percent}});
  }
  return {{"version", kVersion},
          {"study", "optimizer vs grid oracle gap"},
          {"instance_seed", "derive_seed(seed, 2k)"},
          {"optimizer_seed", "derive_seed(seed, 2k + 1)"},
          {"config", config.to_json()},
          {"mean_gap_percent", mean_gap_percent},
          {"instances", std::move(rows)}};
}

std::string GapReport::to_csv() const {
  std::string out = "id,n,target,free_dimensions,iterations,oracle,optimizer,gap_percent\n";
  for (const auto& e : entries) {
    out += std::to_string(e.id) + "," + std::to_string(e.n) + "," + std::to_string(e.target) + "," +
           std::to_string(e.free_dimensions) + "," + std::to_string(e.iterations) + "," + io::format_double(e.oracle) +
           "," + io::format_double(e.optimizer) + "," + io::format_double(e.gap_percent) + "\n";
  }
  return out;
}

nlohmann::json WebrankStudyConfig::to_json() const {
  return {{"epsilon", epsilon},
          {"iterations", iterations},
          {"seed", seed},
          {"init", to_string(init)},
          {"record_stride", record_stride},
          {"gamma", gamma ? nlohmann::json(*gamma) : nlohmann::json(nullptr)}};
}

WebrankSummary summarize_webrank(const WebrankInstance& instance, const StochasticMatrix& p) {
  const auto pi = stationary(p);
  WebrankSummary s;
  s.pi_target = pi[instance.target];
  s.cost = instance.objective.total_cost(pi.probabilities(), p.entries());
  s.objective = s.pi_target - s.cost;
  return s;
}

WebrankReport webrank_case_study(const WebrankInstance& instance, const WebrankStudyConfig& config) {
  OptimizerConfig oc;
  oc.epsilon = config.epsilon;
  oc.iterations = config.iterations;
  oc.seed = config.seed;
  oc.record_stride = config.record_stride;
  oc.gamma = config.gamma;

  WebrankReport report;
  report.config = config;
  report.initial = summarize_webrank(instance, instance.matrix);
  const Objective with_costs = instance.objective;
  const Objective without_costs = Objective::single_node(instance.target);
  parallel_for(2, [&](std::size_t k) {
    if (k == 0) {
      report.with_costs_run = run(instance.matrix, instance.mask, with_costs, oc, std::nullopt, config.init);
    } else {
      report.without_costs_run = run(instance.matrix, instance.mask, without_costs, oc, std::nullopt, config.init);
    }
  });
  report.with_costs = summarize_webrank(instance, report.with_costs_run.final_matrix);
  report.without_costs = summarize_webrank(instance, report.without_costs_run.final_matrix);
  return report;
}

nlohmann::json WebrankReport::to_json() const {
  auto summary = [](const WebrankSummary& s) {
    return nlohmann::json{{"pi_target", s.pi_target}, {"cost", s.cost}, {"objective", s.objective}};
  };
  return {{"version", kVersion},
          {"study", "webrank with vs without costs"},
          {"config", config.to_json()},
          {"initial", summary(initial)},
          {"including_costs", summary(with_costs)},
          {"excluding_costs", summary(without_costs)}};
}

}  // namespace smspsa
