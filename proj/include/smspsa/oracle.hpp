#pragma once

// Ground truth on small instances: exhaustive grid search over the
// feasible set and central differences of f_pi o T. Also writes the exact
// program as text for external solvers.

#include <cstddef>
#include <filesystem>
#include <string>

#include "smspsa/markov.hpp"
#include "smspsa/objectives.hpp"
#include "smspsa/transform.hpp"

namespace smspsa {

struct GridSpec {
  std::size_t points = 101;  // lattice points per free dimension, >= 2
  double gamma = 1e-8;       // lower bound of every adjustable entry
  double budget = 1e7;       // maximum number of grid evaluations
};

struct GridResult {
  StochasticMatrix matrix;
  double objective = 0.0;
  std::size_t evaluated = 0;
};

// Number of grid points brute_force_max would evaluate.
double grid_size(const AdjustmentMask& mask, std::size_t points);

// Each row with k adjustable entries ranges over the lattice
//   gamma + (a - k gamma) j / (points - 1),  j in N^k, sum j = points - 1,
// a = 1 - fixed mass; rows combine by Cartesian product. Ties resolve to
// the lexicographically smallest grid coordinate, so the result does not
// depend on thread count.
GridResult brute_force_max(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
                           const GridSpec& grid = {});

// (f(Theta + h e_mn) - f(Theta - h e_mn)) / 2h on adjustable entries, 0 elsewhere.
MatrixX<double> finite_diff_gradient(const ThetaMatrix& theta, const StochasticMatrix& p0, const AdjustmentMask& mask,
                                     const Objective& objective, double h);

// Text model of the exact program (format in docs/model_format.md).
// Throws UnsupportedObjective unless the objective is linear.
std::string model_text(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
                       double gamma);

void export_model(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective, double gamma,
                  const std::filesystem::path& path);

}  // namespace smspsa
