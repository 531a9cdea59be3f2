#pragma once

// Experiment drivers: centered-mass metastudy with proportion tests,
// optimizer-versus-grid gap study, and the webrank cost comparison.
// Reports embed every seed and setting needed to re-run them exactly.

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "smspsa/instances.hpp"
#include "smspsa/optimizer.hpp"
#include "smspsa/oracle.hpp"
#include "smspsa/stats.hpp"

namespace smspsa {

struct ExperimentPlan {
  Index nodes = 10;
  std::size_t instances = 50;
  std::size_t iterations = 100000;
  std::size_t checkpoint_every = 1000;
  double level = 0.05;
  double epsilon = 0.1;
  double alpha = 0.9;
  double p_er = 0.2;
  std::uint64_t seed = 1;

  // t = checkpoint_every, 2 checkpoint_every, ..., iterations.
  std::vector<std::size_t> checkpoints() const;
  nlohmann::json to_json() const;
};

// Desk-scale problem classes: small = 10 nodes / 50 instances / 100k
// iterations, medium = 50 nodes / 5 instances / 750k, large = 100 nodes / 10 / 750k.
ExperimentPlan problem_class(const std::string& name);

struct CheckpointResult {
  std::size_t t = 0;
  stats::ProportionTest test;
  stats::MeanInterval relative_difference;  // percent, centered mass vs as-is
};

struct MetastudyReport {
  ExperimentPlan plan;
  std::vector<CheckpointResult> checkpoints;
  // [instance][checkpoint] objective values of the paired runs.
  std::vector<std::vector<double>> as_is;
  std::vector<std::vector<double>> centered;

  nlohmann::json to_json() const;
};

// Paired runs per instance share P0, mask, target and perturbation seed.
MetastudyReport heuristic_metastudy(const ExperimentPlan& plan);

struct GapStudyConfig {
  Index n_min = 4;
  Index n_max = 4;
  std::size_t count = 20;
  std::size_t max_free_dimensions = 4;
  double epsilon = 0.1;
  // Optimizer iterations; empty means 750 N^2.
  std::optional<std::size_t> iterations;
  InitMode init = InitMode::centered_mass;
  GridSpec grid{51, 1e-8, 1e7};
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

struct GapEntry {
  std::size_t id = 0;
  Index n = 0;
  Index target = 0;
  std::size_t free_dimensions = 0;
  std::size_t iterations = 0;
  double oracle = 0.0;
  double optimizer = 0.0;
  double gap_percent = 0.0;  // (oracle - optimizer) / oracle * 100
};

struct GapReport {
  GapStudyConfig config;
  std::vector<GapEntry> entries;
  double mean_gap_percent = 0.0;

  nlohmann::json to_json() const;
  // id,n,target,free_dimensions,iterations,oracle,optimizer,gap_percent
  std::string to_csv() const;
};

GapReport gap_study(const GapStudyConfig& config);

struct WebrankStudyConfig {
  double epsilon = 0.1;
  std::size_t iterations = 500000;
  std::uint64_t seed = 1;
  InitMode init = InitMode::centered_mass;
  std::size_t record_stride = 1000;
  std::optional<double> gamma;

  nlohmann::json to_json() const;
};

struct WebrankSummary {
  double pi_target = 0.0;
  double cost = 0.0;
  double objective = 0.0;  // pi_target - cost
};

struct WebrankReport {
  WebrankStudyConfig config;
  WebrankSummary initial;
  WebrankSummary with_costs;     // optimized for the webrank objective
  WebrankSummary without_costs;  // optimized for pi_target alone, scored with costs
  RunResult with_costs_run;
  RunResult without_costs_run;

  nlohmann::json to_json() const;
};

// Evaluates pi_target, cost and the full objective of P under the instance's cost curve.
WebrankSummary summarize_webrank(const WebrankInstance& instance, const StochasticMatrix& p);

WebrankReport webrank_case_study(const WebrankInstance& instance, const WebrankStudyConfig& config);

}  // namespace smspsa
