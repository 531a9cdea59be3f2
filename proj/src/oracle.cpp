#include "smspsa/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "smspsa/matrix_io.hpp"
#include "smspsa/optimizer.hpp"
#include "smspsa/parallel.hpp"

namespace smspsa {

namespace {

double binomial(double n, double k) {
  double r = 1.0;
  for (double i = 1.0; i <= k; i += 1.0) r *= (n - k + i) / i;
  return r;
}

// All compositions of `total` into `parts` nonnegative parts, in
// lexicographic order.
std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(parts, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == parts) {
      current[pos] = left;
      out.push_back(current);
      return;
    }
    for (std::size_t j = 0; j <= left; ++j) {
      current[pos] = j;
      self(self, pos + 1, left - j);
    }
  };
  rec(rec, 0, total);
  return out;
}

}  // namespace

double grid_size(const AdjustmentMask& mask, std::size_t points) {
  const double steps = static_cast<double>(points) - 1.0;
  double total = 1.0;
  for (Index m = 0; m < mask.size(); ++m) {
    const auto k = static_cast<double>(mask.row(m).size());
    if (k >= 1.0) total *= binomial(steps + k - 1.0, k - 1.0);
  }
  return total;
}

GridResult brute_force_max(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
                           const GridSpec& grid) {
  if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
  if (grid.points < 2) throw DomainError("grid needs at least 2 points per dimension");
  if (!(grid.gamma >= 0.0)) throw DomainError("grid gamma must be nonnegative");
  objective.check_dimension(p0.size());

  const double required = grid_size(mask, grid.points);
  if (required > grid.budget) {
    std::ostringstream os;
    os << "grid of " << required << " evaluations exceeds the budget of " << grid.budget;
    throw BudgetError(os.str(), required);
  }

  // Per-row candidate values for the adjustable entries.
  struct RowLattice {
    Index row;
    std::vector<std::vector<double>> values;
  };
  std::vector<RowLattice> lattices;
  const auto fixed = fixed_row_mass(p0, mask);
  const std::size_t steps = grid.points - 1;
  for (Index m = 0; m < p0.size(); ++m) {
    const auto& cols = mask.row(m);
    if (cols.empty()) continue;
    const double k = static_cast<double>(cols.size());
    const double available = 1.0 - fixed[static_cast<std::size_t>(m)];
    const double spread = available - k * grid.gamma;
    if (!(spread >= 0.0)) {
      throw DomainError("row " + std::to_string(m) + " cannot hold its adjustable entries above gamma", m);
    }
    RowLattice lat{m, {}};
    for (const auto& c : compositions(steps, cols.size())) {
      std::vector<double> v(cols.size());
      double used = 0.0;
      for (std::size_t j = 0; j + 1 < cols.size(); ++j) {
        v[j] = grid.gamma + spread * static_cast<double>(c[j]) / static_cast<double>(steps);
        used += v[j];
      }
      // Last entry closes the row exactly.
      v.back() = available - used;
      lat.values.push_back(std::move(v));
      if (cols.size() == 1) break;
    }
    lattices.push_back(std::move(lat));
  }

  std::size_t total = 1;
  for (const auto& lat : lattices) total *= lat.values.size();
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, total / 4096));

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = std::numeric_limits<std::size_t>::max();
  };
  std::vector<Best> best(workers);

  auto fill = [&](std::size_t flat, MatrixX<double>& p) {
    // Mixed-radix decode with the first row most significant.
    for (std::size_t r = lattices.size(); r-- > 0;) {
      const auto& lat = lattices[r];
      const std::size_t radix = lat.values.size();
      const auto& v = lat.values[flat % radix];
      flat /= radix;
      const auto& cols = mask.row(lat.row);
      for (std::size_t j = 0; j < cols.size(); ++j) p(lat.row, cols[j]) = v[j];
    }
  };

  parallel_for(workers, [&](std::size_t w) {
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    StationarySolver<double> solver;
    MatrixX<double> p = p0.entries();
    RowVectorX<double> pi;
    for (std::size_t flat = begin; flat < end; ++flat) {
      fill(flat, p);
      solver.solve(p, pi);
      const double f = objective(pi, p);
      if (f > best[w].value) best[w] = {f, flat};
    }
  });

  Best winner;
  for (const auto& b : best) {
    if (b.value > winner.value) winner = b;
  }
  GridResult out;
  MatrixX<double> p = p0.entries();
  fill(winner.index, p);
  out.matrix = StochasticMatrix(std::move(p));
  out.objective = winner.value;
  out.evaluated = total;
  return out;
}

MatrixX<double> finite_diff_gradient(const ThetaMatrix& theta, const StochasticMatrix& p0, const AdjustmentMask& mask,
                                     const Objective& objective, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (theta.size() != p0.size()) throw StructuralError("theta and P0 dimensions differ");
  ObjectiveOracle oracle(p0, mask, objective);
  MatrixX<double> g = MatrixX<double>::Zero(p0.size(), p0.size());
  MatrixX<double> probe = theta.entries();
  for (const auto& [m, n] : mask.positions()) {
    const double base = probe(m, n);
    probe(m, n) = base + h;
    const double up = oracle(probe);
    probe(m, n) = base - h;
    const double down = oracle(probe);
    probe(m, n) = base;
    g(m, n) = (up - down) / (2.0 * h);
  }
  return g;
}

namespace {

std::string var_p(Index m, Index n) { return "P_" + std::to_string(m) + "_" + std::to_string(n); }
std::string var_pi(Index m) { return "pi_" + std::to_string(m); }

}  // namespace

std::string model_text(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
                       double gamma) {
  if (!objective.is_linear()) {
    throw UnsupportedObjective("objective '" + objective.name() +
                               "' is nonlinear; the exact formulation is exportable only for linear objectives, "
                               "use the optimizer instead");
  }
  if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
  objective.check_dimension(p0.size());
  const Index n = p0.size();
  using io::format_double;

  // Entry as it appears in a constraint: a variable name or its fixed value.
  auto term = [&](Index m, Index k) { return mask.adjustable(m, k) ? var_p(m, k) : format_double(p0(m, k)); };

  std::ostringstream os;
  os << "# stationary-distribution maximization, exact formulation\n";
  os << "states " << n << "\n";
  os << "gamma " << format_double(gamma) << "\n";
  os << "variables\n";
  for (Index m = 0; m < n; ++m) {
    for (Index k = 0; k < n; ++k) os << "  " << var_p(m, k) << "\n";
  }
  for (Index m = 0; m < n; ++m) os << "  " << var_pi(m) << "\n";
  os << "end\n";

  os << "objective maximize";
  if (objective.kind() == ObjectiveKind::single_node) {
    os << " 1 * " << var_pi(objective.target());
  } else {
    bool first = true;
    for (Index m = 0; m < n; ++m) {
      const double w = objective.weights()(m);
      if (w == 0.0) continue;
      os << (first ? " " : " + ") << format_double(w) << " * " << var_pi(m);
      first = false;
    }
    if (first) os << " 0";
  }
  os << "\n";

  os << "constraints\n";
  for (Index m = 0; m < n; ++m) {
    os << "  row_sum[" << m << "]: ";
    for (Index k = 0; k < n; ++k) os << (k ? " + " : "") << term(m, k);
    os << " = 1\n";
  }
  for (Index m = 0; m < n; ++m) {
    os << "  balance[" << m << "]: " << var_pi(m) << " =";
    for (Index k = 0; k < n; ++k) os << (k ? " + " : " ") << term(k, m) << " * " << var_pi(k);
    os << "\n";
  }
  os << "  normalization: ";
  for (Index m = 0; m < n; ++m) os << (m ? " + " : "") << var_pi(m);
  os << " = 1\n";
  for (Index m = 0; m < n; ++m) {
    for (Index k = 0; k < n; ++k) {
      if (!mask.adjustable(m, k)) os << "  fixed[" << m << "," << k << "]: " << var_p(m, k) << " = " << format_double(p0(m, k)) << "\n";
    }
  }
  for (Index m = 0; m < n; ++m) os << "  nonnegative[" << m << "]: " << var_pi(m) << " >= 0\n";
  for (const auto& [m, k] : mask.positions()) {
    os << "  bound[" << m << "," << k << "]: " << format_double(gamma) << " <= " << var_p(m, k) << " <= 1\n";
  }
  os << "end\n";
  return os.str();
}

void export_model(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective, double gamma,
                  const std::filesystem::path& path) {
  io::write_text(path, model_text(p0, mask, objective, gamma));
}

}  // namespace smspsa
