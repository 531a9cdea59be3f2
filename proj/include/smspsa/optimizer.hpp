#pragma once

// Stochastic-matrix SPSA: fixed-gain ascent in Theta space with masked
// Rademacher perturbations scaled by eta_i and the two-sided estimate
//
//   G_mn = C_mn (f+ - f-) / (2 eta_i Delta_mn),
//   f+-  = f_pi(T(Theta +- eta_i (Delta . C))).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "smspsa/markov.hpp"
#include "smspsa/objectives.hpp"
#include "smspsa/rng.hpp"
#include "smspsa/trajectory.hpp"
#include "smspsa/transform.hpp"

namespace smspsa {

enum class InitMode { as_is, centered_mass };

std::string to_string(InitMode mode);
InitMode parse_init_mode(const std::string& text);

struct OptimizerConfig {
  double epsilon = 0.1;
  std::size_t iterations = 0;
  // Perturbation scale per iteration; empty means 1 / (i + 1).
  std::function<double(std::size_t)> eta;
  // Lower bound applied to every eta_i.
  double eta_floor = 1e-9;
  std::uint64_t seed = 0;
  std::size_t record_stride = 100;
  // Clipping constant of the inverse transform; empty means the default
  // of `default_gamma` on the start matrix.
  std::optional<double> gamma;

  double eta_at(std::size_t i) const;
  // Throws DomainError on epsilon <= 0, stride == 0, or eta_floor <= 0.
  void check() const;
};

// Theta-space rule: stop at iteration i >= window when
// ||Theta^(i) - Theta^(i-j)||_F <= omega for every 1 <= j <= window, with
// the norm taken over adjustable entries.
struct StoppingRule {
  double omega = 1e-6;
  std::size_t window = 1000;

  static StoppingRule defaults(std::size_t adjustable_count);
};

// Rademacher draws for the adjustable entries; masked-off entries hold +1
// and are never read.
class PerturbationMatrix {
 public:
  explicit PerturbationMatrix(MatrixX<double> entries);

  static PerturbationMatrix draw(Rng& rng, const AdjustmentMask& mask);

  const MatrixX<double>& entries() const noexcept { return entries_; }

 private:
  MatrixX<double> entries_;
};

// Evaluates f_pi(T(Theta)) for a fixed (P0, C, f) with reusable buffers.
// One instance per run; not shared between threads.
class ObjectiveOracle {
 public:
  ObjectiveOracle(const StochasticMatrix& p0, const AdjustmentMask& mask, Objective objective);

  double operator()(const MatrixX<double>& theta);

  const Transform<double>& transform() const noexcept { return transform_; }
  const Objective& objective() const noexcept { return objective_; }
  const MatrixX<double>& last_matrix() const noexcept { return p_; }
  const RowVectorX<double>& last_distribution() const noexcept { return pi_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  Transform<double> transform_;
  Objective objective_;
  StationarySolver<double> solver_;
  MatrixX<double> p_;
  RowVectorX<double> pi_;
  std::size_t evaluations_ = 0;
};

// Exactly two objective evaluations. Zeros at masked-off positions.
MatrixX<double> gradient_proxy(const ThetaMatrix& theta, const StochasticMatrix& p0, const AdjustmentMask& mask,
                               const Objective& objective, double eta, const PerturbationMatrix& delta);

struct RunResult {
  StochasticMatrix start_matrix;  // P0 after the init mode was applied
  StochasticMatrix final_matrix;  // T(Theta^(final))
  ThetaMatrix final_theta;
  Trajectory trajectory;
  std::size_t iterations_run = 0;
  std::size_t objective_evaluations = 0;
  double gamma = 0.0;
  std::optional<std::size_t> stopped_at;
};

RunResult run(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
              const OptimizerConfig& config, std::optional<StoppingRule> stop = std::nullopt,
              InitMode init = InitMode::as_is);

// Sidecar metadata describing a run for exact re-execution.
nlohmann::json run_metadata(const OptimizerConfig& config, InitMode init, const std::optional<StoppingRule>& stop,
                            const RunResult& result, const Objective& objective);

}  // namespace smspsa
