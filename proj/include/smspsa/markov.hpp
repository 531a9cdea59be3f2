#pragma once

// Stochastic matrices, adjustment masks, feasibility checks and
// stationary distributions. Dense Eigen storage throughout; every type is
// immutable after construction.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smspsa/errors.hpp"
#include "smspsa/graph.hpp"

namespace smspsa {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

inline constexpr double kRowSumTolerance = 1e-9;

// Row-major (row, column) position of a matrix entry.
struct Entry {
  Index row;
  Index col;
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Square weight matrix P. Shape is enforced on construction; the
// stochasticity invariants are checked by `validate`, which is why an
// instance may hold a matrix that fails them.
template <typename Scalar>
class BasicStochasticMatrix {
 public:
  using Matrix = MatrixX<Scalar>;

  BasicStochasticMatrix() = default;

  explicit BasicStochasticMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
      throw StructuralError("stochastic matrix must be square, got " + std::to_string(entries_.rows()) +
                            "x" + std::to_string(entries_.cols()));
    }
  }

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }
  Scalar operator()(Index m, Index n) const { return entries_(m, n); }

  friend bool operator==(const BasicStochasticMatrix& a, const BasicStochasticMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
};

// Binary matrix C; C(m, n) = 1 marks an entry the optimizer may change.
class AdjustmentMask {
 public:
  using Flags = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

  AdjustmentMask() = default;

  explicit AdjustmentMask(Flags flags) : flags_(std::move(flags)) {
    if (flags_.rows() != flags_.cols()) {
      throw StructuralError("adjustment mask must be square, got " + std::to_string(flags_.rows()) + "x" +
                            std::to_string(flags_.cols()));
    }
    row_positions_.resize(static_cast<std::size_t>(flags_.rows()));
    for (Index m = 0; m < flags_.rows(); ++m) {
      for (Index n = 0; n < flags_.cols(); ++n) {
        if (flags_(m, n)) {
          positions_.push_back({m, n});
          row_positions_[static_cast<std::size_t>(m)].push_back(n);
        }
      }
    }
  }

  // From a numeric matrix whose entries must be exactly 0 or 1.
  template <typename Derived>
  static AdjustmentMask from_numeric(const Eigen::MatrixBase<Derived>& values) {
    Flags flags(values.rows(), values.cols());
    for (Index m = 0; m < values.rows(); ++m) {
      for (Index n = 0; n < values.cols(); ++n) {
        const auto v = values(m, n);
        if (v != 0 && v != 1) {
          throw InputError("mask entry (" + std::to_string(m) + "," + std::to_string(n) + ") is not 0 or 1");
        }
        flags(m, n) = (v == 1);
      }
    }
    return AdjustmentMask(std::move(flags));
  }

  static AdjustmentMask none(Index n) { return AdjustmentMask(Flags::Constant(n, n, false)); }
  static AdjustmentMask all(Index n) { return AdjustmentMask(Flags::Constant(n, n, true)); }

  Index size() const noexcept { return flags_.rows(); }
  bool adjustable(Index m, Index n) const { return flags_(m, n); }
  const Flags& flags() const noexcept { return flags_; }

  // Adjustable entries in row-major order.
  const std::vector<Entry>& positions() const noexcept { return positions_; }
  const std::vector<Index>& row(Index m) const { return row_positions_[static_cast<std::size_t>(m)]; }
  std::size_t count() const noexcept { return positions_.size(); }

  // Free simplex dimensions: sum over rows of (k - 1) for rows with k >= 1.
  std::size_t free_dimensions() const {
    std::size_t d = 0;
    for (const auto& r : row_positions_) d += r.empty() ? 0 : r.size() - 1;
    return d;
  }

  template <typename Scalar>
  MatrixX<Scalar> as_matrix() const {
    return flags_.cast<Scalar>();
  }

  friend bool operator==(const AdjustmentMask& a, const AdjustmentMask& b) {
    return a.flags_.rows() == b.flags_.rows() && a.flags_ == b.flags_;
  }

 private:
  Flags flags_;
  std::vector<Entry> positions_;
  std::vector<std::vector<Index>> row_positions_;
};

template <typename Scalar>
class BasicStationaryDistribution {
 public:
  using Vector = RowVectorX<Scalar>;

  BasicStationaryDistribution() = default;
  explicit BasicStationaryDistribution(Vector probabilities) : probabilities_(std::move(probabilities)) {}

  Index size() const noexcept { return probabilities_.size(); }
  const Vector& probabilities() const noexcept { return probabilities_; }
  Scalar operator[](Index m) const { return probabilities_(m); }

 private:
  Vector probabilities_;
};

using StochasticMatrix = BasicStochasticMatrix<double>;
using StationaryDistribution = BasicStationaryDistribution<double>;

struct RowSumViolation {
  Index row;
  double sum;
};

struct FeasibilityReport {
  std::vector<RowSumViolation> row_sum_violations;
  std::vector<Entry> negative_entries;
  std::vector<Entry> adjustable_below_gamma;
  bool strongly_connected = false;
  // 0 when not computed (some diagonal entry is positive, which already
  // makes an irreducible chain aperiodic).
  std::size_t period = 0;

  bool stochastic() const { return row_sum_violations.empty() && negative_entries.empty(); }
  bool aperiodic() const { return period == 0 || period == 1; }

  // Stochastic, irreducible and aperiodic. Adjustable entries below gamma
  // are reported but do not make the start matrix infeasible: the inverse
  // transform clips them.
  bool feasible() const { return stochastic() && strongly_connected && aperiodic(); }

  std::string summary() const {
    std::ostringstream os;
    if (feasible()) {
      os << "feasible";
    } else {
      os << "infeasible:";
      for (const auto& v : row_sum_violations) os << " row " << v.row << " sums to " << v.sum << ";";
      if (!negative_entries.empty()) os << " " << negative_entries.size() << " negative entries;";
      if (!strongly_connected) os << " support graph not strongly connected (reducible);";
      if (!aperiodic()) os << " periodic with period " << period << ";";
    }
    if (!adjustable_below_gamma.empty()) {
      os << " (" << adjustable_below_gamma.size() << " adjustable entries below gamma)";
    }
    return os.str();
  }
};

// Directed support graph: edge m->n wherever P(m, n) > 0.
template <typename Scalar>
graph::Adjacency support_graph(const BasicStochasticMatrix<Scalar>& p) {
  graph::Adjacency adj(static_cast<std::size_t>(p.size()));
  for (Index m = 0; m < p.size(); ++m) {
    for (Index n = 0; n < p.size(); ++n) {
      if (p(m, n) > Scalar(0)) adj[static_cast<std::size_t>(m)].push_back(static_cast<std::size_t>(n));
    }
  }
  return adj;
}

template <typename Scalar>
FeasibilityReport validate(const BasicStochasticMatrix<Scalar>& p, const AdjustmentMask& mask, double gamma) {
  if (mask.size() != p.size()) {
    throw StructuralError("mask is " + std::to_string(mask.size()) + "x" + std::to_string(mask.size()) +
                          " but matrix is " + std::to_string(p.size()) + "x" + std::to_string(p.size()));
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");

  FeasibilityReport report;
  const Index n = p.size();
  bool any_positive_diagonal = false;
  for (Index m = 0; m < n; ++m) {
    double sum = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double v = static_cast<double>(p(m, k));
      sum += v;
      if (v < 0.0 || std::isnan(v)) report.negative_entries.push_back({m, k});
      if (mask.adjustable(m, k) && v < gamma) report.adjustable_below_gamma.push_back({m, k});
    }
    if (!(std::abs(sum - 1.0) <= kRowSumTolerance)) report.row_sum_violations.push_back({m, sum});
    if (p(m, m) > Scalar(0)) any_positive_diagonal = true;
  }
  const auto adj = support_graph(p);
  report.strongly_connected = n > 0 && graph::is_strongly_connected(adj);
  if (report.strongly_connected && !any_positive_diagonal) report.period = graph::period(adj);
  return report;
}

// Validation without a mask: stochasticity and irreducibility only.
template <typename Scalar>
FeasibilityReport validate(const BasicStochasticMatrix<Scalar>& p) {
  return validate(p, AdjustmentMask::none(p.size()), 0.5);
}

// Explicit opt-in repair: clamps negatives to zero and divides each row by
// its sum. Never applied implicitly.
template <typename Scalar>
BasicStochasticMatrix<Scalar> repair_rows(const BasicStochasticMatrix<Scalar>& p) {
  MatrixX<Scalar> e = p.entries().cwiseMax(Scalar(0));
  for (Index m = 0; m < e.rows(); ++m) {
    const Scalar s = e.row(m).sum();
    if (!(s > Scalar(0))) throw DomainError("row " + std::to_string(m) + " has no positive mass", m);
    e.row(m) /= s;
  }
  return BasicStochasticMatrix<Scalar>(std::move(e));
}

// Max-norm balance residual ||pi P - pi||_inf.
template <typename Scalar>
Scalar balance_residual(const MatrixX<Scalar>& p, const RowVectorX<Scalar>& pi) {
  return (pi * p - pi).template lpNorm<Eigen::Infinity>();
}

// Reusable workspace for repeated solves of the same dimension; the hot
// loop of the optimizer keeps one per run so no allocation happens per call.
template <typename Scalar>
class StationarySolver {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = RowVectorX<Scalar>;

  static constexpr double kResidualTolerance = 1e-9;

  // Solves (P^T - I) x = 0 with the last balance equation replaced by the
  // normalization sum(x) = 1. Falls back to power iteration when the
  // direct residual exceeds kResidualTolerance. Returns the residual.
  Scalar solve(const Matrix& p, Vector& pi) {
    const Index n = p.rows();
    system_.resize(n, n);
    system_.noalias() = p.transpose();
    system_.diagonal().array() -= Scalar(1);
    system_.row(n - 1).setOnes();
    rhs_.setZero(n);
    rhs_(n - 1) = Scalar(1);
    lu_.compute(system_);
    column_.noalias() = lu_.solve(rhs_);
    pi = column_.transpose();

    Scalar residual = finite_residual(p, pi);
    if (!(residual <= Scalar(kResidualTolerance))) {
      residual = power(p, pi);
      if (!(residual <= Scalar(kResidualTolerance))) {
        throw NumericalError("stationary solve failed: balance residual " + to_string(residual),
                             static_cast<double>(residual));
      }
    }
    clamp_roundoff(pi);
    return residual;
  }

  // Lazy power iteration x <- x (I + P) / 2, which shares P's stationary
  // distribution and converges for every irreducible P. Returns the final
  // balance residual.
  Scalar power(const Matrix& p, Vector& pi, Scalar tolerance = Scalar(1e-14), long max_iterations = 2'000'000) {
    const Index n = p.rows();
    pi.setConstant(n, Scalar(1) / Scalar(n));
    Scalar residual = std::numeric_limits<Scalar>::infinity();
    for (long it = 0; it < max_iterations; ++it) {
      next_.noalias() = pi * p;
      residual = (next_ - pi).template lpNorm<Eigen::Infinity>();
      pi = Scalar(0.5) * (pi + next_);
      pi /= pi.sum();
      if (residual <= tolerance) break;
    }
    return balance_residual(p, pi);
  }

 private:
  static std::string to_string(Scalar v) {
    std::ostringstream os;
    os << static_cast<double>(v);
    return os.str();
  }

  static Scalar finite_residual(const Matrix& p, const Vector& pi) {
    if (!pi.allFinite()) return std::numeric_limits<Scalar>::infinity();
    return balance_residual(p, pi);
  }

  // LU output can carry tiny negative roundoff on near-zero components.
  static void clamp_roundoff(Vector& pi) {
    for (Index m = 0; m < pi.size(); ++m) {
      if (pi(m) < Scalar(0) && pi(m) > Scalar(-1e-12)) pi(m) = Scalar(0);
    }
  }

  Matrix system_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> column_;
  Vector next_;
  Eigen::PartialPivLU<Matrix> lu_;
};

template <typename Scalar>
BasicStationaryDistribution<Scalar> stationary(const BasicStochasticMatrix<Scalar>& p) {
  if (p.size() == 0) throw StructuralError("stationary distribution of an empty matrix");
  StationarySolver<Scalar> solver;
  RowVectorX<Scalar> pi;
  solver.solve(p.entries(), pi);
  return BasicStationaryDistribution<Scalar>(std::move(pi));
}

template <typename Scalar>
BasicStationaryDistribution<Scalar> stationary_power(const BasicStochasticMatrix<Scalar>& p,
                                                     Scalar tolerance = Scalar(1e-14)) {
  if (p.size() == 0) throw StructuralError("stationary distribution of an empty matrix");
  StationarySolver<Scalar> solver;
  RowVectorX<Scalar> pi;
  const Scalar residual = solver.power(p.entries(), pi, tolerance);
  if (!(residual <= Scalar(StationarySolver<Scalar>::kResidualTolerance))) {
    throw NumericalError("power iteration did not converge", static_cast<double>(residual));
  }
  return BasicStationaryDistribution<Scalar>(std::move(pi));
}

}  // namespace smspsa
