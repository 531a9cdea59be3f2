#include "smspsa/heuristics.hpp"

#include <algorithm>
#include <cmath>

#include "smspsa/transform.hpp"

namespace smspsa {

StochasticMatrix centered_mass(const StochasticMatrix& p0, const AdjustmentMask& mask) {
  if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
  const auto fixed = fixed_row_mass(p0, mask);
  MatrixX<double> out = p0.entries();
  for (Index m = 0; m < p0.size(); ++m) {
    const auto& cols = mask.row(m);
    if (cols.empty()) continue;
    const double available = 1.0 - fixed[static_cast<std::size_t>(m)];
    if (!(available > 0.0)) {
      throw DomainError("row " + std::to_string(m) + " has adjustable entries but no free mass", m);
    }
    const double share = available / static_cast<double>(cols.size());
    for (Index n : cols) out(m, n) = share;
  }
  return StochasticMatrix(std::move(out));
}

std::size_t InflictionThresholds::plateau_points(std::size_t recorded) const {
  if (min_plateau) return *min_plateau;
  return std::max<std::size_t>(2, recorded / 20);
}

InflictionReport detect_inflictions(std::span<const std::size_t> iterations, std::span<const double> objective,
                                    double plateau_tol, std::size_t min_plateau, double jump_tol) {
  if (iterations.size() != objective.size()) throw StructuralError("iteration and objective lengths differ");
  InflictionReport report;
  report.plateau_tol = plateau_tol;
  report.min_plateau = min_plateau;
  report.jump_tol = jump_tol;
  const std::size_t count = objective.size();
  if (min_plateau == 0 || count < min_plateau) return report;

  // Plateau: maximal run of consecutive points whose successive changes
  // are all <= plateau_tol.
  std::size_t start = 0;
  for (std::size_t j = 1; j < count; ++j) {
    if (std::abs(objective[j] - objective[j - 1]) <= plateau_tol) continue;
    const std::size_t length = j - start;
    if (length >= min_plateau) {
      double level = 0.0;
      for (std::size_t k = start; k < j; ++k) level += objective[k];
      level /= static_cast<double>(length);
      const std::size_t end = std::min(count, j + min_plateau);
      double jump = 0.0;
      for (std::size_t k = j; k < end; ++k) {
        const double d = objective[k] - level;
        if (std::abs(d) > std::abs(jump)) jump = d;
      }
      if (std::abs(jump) > jump_tol) {
        report.events.push_back({j, iterations[j], jump, iterations[j - 1] - iterations[start], length});
      }
    }
    start = j;
  }
  return report;
}

InflictionReport detect_inflictions(const Trajectory& trajectory, const InflictionThresholds& thresholds) {
  const auto iters = trajectory.iterations();
  const auto values = trajectory.objectives();
  return detect_inflictions(iters, values, thresholds.plateau_tol, thresholds.plateau_points(values.size()),
                            thresholds.jump_tol);
}

nlohmann::json to_json(const InflictionReport& report) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : report.events) {
    events.push_back({{"index", e.index},
                      {"iteration", e.iteration},
                      {"jump", e.jump},
                      {"plateau_iterations", e.plateau_iterations},
                      {"plateau_points", e.plateau_points}});
  }
  return {{"detector", "plateau-then-jump (one formalization of infliction points)"},
          {"thresholds",
           {{"plateau_tol", report.plateau_tol}, {"min_plateau", report.min_plateau}, {"jump_tol", report.jump_tol}}},
          {"event_count", report.events.size()},
          {"events", std::move(events)}};
}

}  // namespace smspsa
