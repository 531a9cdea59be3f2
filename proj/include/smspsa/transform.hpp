#pragma once

// The map T from unconstrained coordinates Theta to stochastic matrices
// that agree with P0 on fixed entries:
//
//   V = sigmoid(Theta)                      on adjustable entries
//   U = V / (row sum of V over adjustable)  on adjustable entries
//   P = U * (1 - fixed row mass of P0)      on adjustable entries
//   P = P0                                  elsewhere
//
// and its initialization inverse, the clipped logit.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "smspsa/markov.hpp"

namespace smspsa {

template <typename Scalar>
class BasicThetaMatrix {
 public:
  using Matrix = MatrixX<Scalar>;

  BasicThetaMatrix() = default;

  // Entries at masked-off positions are carried but never read by T.
  explicit BasicThetaMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw StructuralError("theta matrix must be square");
    if (!entries_.allFinite()) throw InputError("theta matrix contains NaN or infinite entries");
  }

  static BasicThetaMatrix zeros(Index n) { return BasicThetaMatrix(Matrix::Zero(n, n)); }

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }
  Scalar operator()(Index m, Index n) const { return entries_(m, n); }

 private:
  Matrix entries_;
};

using ThetaMatrix = BasicThetaMatrix<double>;

template <typename Scalar>
Scalar entry_sigmoid(Scalar theta) {
  using std::exp;
  if (theta >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-theta));
  const Scalar e = exp(theta);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Scalar log_sigmoid(Scalar theta) {
  using std::exp;
  using std::log1p;
  if (theta >= Scalar(0)) return -log1p(exp(-theta));
  return theta - log1p(exp(theta));
}

template <typename Scalar>
Scalar logit(Scalar p) {
  using std::log;
  return log(p / (Scalar(1) - p));
}

// Sum of P0 over the entries of each row that are not adjustable.
template <typename Scalar>
std::vector<Scalar> fixed_row_mass(const BasicStochasticMatrix<Scalar>& p0, const AdjustmentMask& mask) {
  std::vector<Scalar> mass(static_cast<std::size_t>(p0.size()), Scalar(0));
  for (Index m = 0; m < p0.size(); ++m) {
    for (Index n = 0; n < p0.size(); ++n) {
      if (!mask.adjustable(m, n)) mass[static_cast<std::size_t>(m)] += p0(m, n);
    }
  }
  return mass;
}

// Half of the smallest nonzero entry of P0, floored at 1e-12.
template <typename Scalar>
double default_gamma(const BasicStochasticMatrix<Scalar>& p0) {
  double smallest = 1.0;
  for (Index m = 0; m < p0.size(); ++m) {
    for (Index n = 0; n < p0.size(); ++n) {
      const double v = static_cast<double>(p0(m, n));
      if (v > 0.0) smallest = std::min(smallest, v);
    }
  }
  return std::max(0.5 * smallest, 1e-12);
}

struct TransformConfig {
  double gamma = 1e-4;

  // Checks gamma in (0, 0.5) and, when non-adjustable nonzero entries
  // exist, gamma strictly below the smallest of them. Without an explicit
  // gamma the default of `default_gamma` is used.
  template <typename Scalar>
  static TransformConfig for_matrix(const BasicStochasticMatrix<Scalar>& p0, const AdjustmentMask& mask,
                                    std::optional<double> gamma = std::nullopt) {
    TransformConfig cfg{gamma.value_or(default_gamma(p0))};
    if (!(cfg.gamma > 0.0 && cfg.gamma < 0.5)) throw DomainError("gamma must lie in (0, 0.5)");
    for (Index m = 0; m < p0.size(); ++m) {
      for (Index n = 0; n < p0.size(); ++n) {
        const double v = static_cast<double>(p0(m, n));
        if (!mask.adjustable(m, n) && v > 0.0 && !(cfg.gamma < v)) {
          throw DomainError("gamma " + std::to_string(cfg.gamma) + " is not below the fixed entry (" +
                                std::to_string(m) + "," + std::to_string(n) + ") = " + std::to_string(v),
                            m);
        }
      }
    }
    return cfg;
  }
};

// T bound to a fixed (P0, C) pair. Precomputes fixed row masses and
// rejects degenerate rows once; `apply` then writes into caller storage.
template <typename Scalar>
class Transform {
 public:
  using Matrix = MatrixX<Scalar>;

  Transform(const BasicStochasticMatrix<Scalar>& p0, const AdjustmentMask& mask)
      : p0_(p0.entries()), mask_(mask), scale_(static_cast<std::size_t>(p0.size())) {
    if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
    const auto fixed = fixed_row_mass(p0, mask);
    for (Index m = 0; m < p0.size(); ++m) {
      const Scalar f = fixed[static_cast<std::size_t>(m)];
      if (!mask.row(m).empty() && !(f < Scalar(1))) {
        throw DomainError("row " + std::to_string(m) + " is degenerate: fixed mass " +
                              std::to_string(static_cast<double>(f)) + " leaves nothing for adjustable entries",
                          m);
      }
      scale_[static_cast<std::size_t>(m)] = Scalar(1) - f;
    }
  }

  Index size() const noexcept { return p0_.rows(); }
  const AdjustmentMask& mask() const noexcept { return mask_; }
  const Matrix& base() const noexcept { return p0_; }
  Scalar scale(Index m) const { return scale_[static_cast<std::size_t>(m)]; }

  void apply(const Matrix& theta, Matrix& out) const {
    if (theta.rows() != p0_.rows() || theta.cols() != p0_.cols()) {
      throw StructuralError("theta and P0 dimensions differ");
    }
    out = p0_;
    for (Index m = 0; m < p0_.rows(); ++m) {
      const auto& cols = mask_.row(m);
      if (cols.empty()) continue;
      Scalar sum(0);
      for (Index n : cols) {
        const Scalar t = theta(m, n);
        if (std::isnan(static_cast<double>(t))) {
          throw InputError("theta(" + std::to_string(m) + "," + std::to_string(n) + ") is NaN");
        }
        const Scalar v = entry_sigmoid(t);
        out(m, n) = v;
        sum += v;
      }
      if (!(sum > Scalar(1e-200))) {
        // Every sigmoid in the row underflowed; normalize in log space.
        Scalar top = -std::numeric_limits<Scalar>::infinity();
        for (Index n : cols) top = std::max(top, log_sigmoid(theta(m, n)));
        sum = Scalar(0);
        for (Index n : cols) {
          out(m, n) = std::exp(log_sigmoid(theta(m, n)) - top);
          sum += out(m, n);
        }
      }
      const Scalar factor = scale_[static_cast<std::size_t>(m)] / sum;
      for (Index n : cols) out(m, n) *= factor;
    }
  }

  BasicStochasticMatrix<Scalar> operator()(const BasicThetaMatrix<Scalar>& theta) const {
    Matrix out;
    apply(theta.entries(), out);
    return BasicStochasticMatrix<Scalar>(std::move(out));
  }

 private:
  Matrix p0_;
  AdjustmentMask mask_;
  std::vector<Scalar> scale_;
};

template <typename Scalar>
BasicStochasticMatrix<Scalar> apply_T(const BasicThetaMatrix<Scalar>& theta, const BasicStochasticMatrix<Scalar>& p0,
                                      const AdjustmentMask& mask) {
  if (theta.size() != p0.size()) throw StructuralError("theta and P0 dimensions differ");
  return Transform<Scalar>(p0, mask)(theta);
}

// Clipped logit on adjustable entries; zero at masked-off positions.
template <typename Scalar>
BasicThetaMatrix<Scalar> inverse_entry(const BasicStochasticMatrix<Scalar>& p0, const AdjustmentMask& mask,
                                       const TransformConfig& cfg) {
  if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 0.5)) throw DomainError("gamma must lie in (0, 0.5)");
  const Scalar lo(cfg.gamma);
  const Scalar hi = Scalar(1) - lo;
  MatrixX<Scalar> theta = MatrixX<Scalar>::Zero(p0.size(), p0.size());
  for (const auto& [m, n] : mask.positions()) theta(m, n) = logit(std::clamp(p0(m, n), lo, hi));
  return BasicThetaMatrix<Scalar>(std::move(theta));
}

}  // namespace smspsa
