#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "smspsa/markov.hpp"
#include "smspsa/trajectory.hpp"

namespace smspsa {

// Spreads each row's adjustable mass (1 - fixed mass) evenly over its
// adjustable entries. Fixed entries and rows without adjustable entries
// are left untouched.
StochasticMatrix centered_mass(const StochasticMatrix& p0, const AdjustmentMask& mask);

struct InflictionThresholds {
  double plateau_tol = 1e-4;
  // Defaults to 5% of the recorded points (at least 2).
  std::optional<std::size_t> min_plateau;
  double jump_tol = 5e-3;

  std::size_t plateau_points(std::size_t recorded) const;
};

struct InflictionEvent {
  std::size_t index = 0;            // recorded point where the plateau breaks
  std::size_t iteration = 0;        // optimizer iteration of that point
  double jump = 0.0;                // signed largest departure from the plateau level
  std::size_t plateau_iterations = 0;
  std::size_t plateau_points = 0;
};

struct InflictionReport {
  std::vector<InflictionEvent> events;
  double plateau_tol = 0.0;
  std::size_t min_plateau = 0;
  double jump_tol = 0.0;

  bool empty() const noexcept { return events.empty(); }
};

// Plateau-then-jump detector over a recorded objective path. An event is
// emitted at recorded index t when the points before t form a run of at
// least `min_plateau` points whose successive changes are all <=
// plateau_tol, the step into t exceeds plateau_tol, and within the next `min_plateau` points the
// objective departs from the plateau mean by more than jump_tol.
// Returns an empty report for paths shorter than min_plateau.
InflictionReport detect_inflictions(std::span<const std::size_t> iterations, std::span<const double> objective,
                                    double plateau_tol, std::size_t min_plateau, double jump_tol);

InflictionReport detect_inflictions(const Trajectory& trajectory, const InflictionThresholds& thresholds = {});

nlohmann::json to_json(const InflictionReport& report);

}  // namespace smspsa
