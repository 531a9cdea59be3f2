#pragma once

#include <functional>
#include <string>

#include "smspsa/markov.hpp"

namespace smspsa {

// Advertising cost as a function of the transition probability bought
// towards the target page.
struct CostCurve {
  std::string id;
  std::function<double(double)> cost;

  double operator()(double x) const { return cost(x); }
};

// 0.42 sin(1.5 pi x) + 1.92 x^3: increasing overall, nearly flat on [0.4, 0.6].
CostCurve builtin_cost_curve();
CostCurve zero_cost_curve();
// Looks up "advertising" (the builtin) or "zero".
CostCurve cost_curve_by_id(const std::string& id);

enum class ObjectiveKind { single_node, linear, webrank, custom };

// The function f_pi maximized over stationary distributions. Objectives
// see pi and P only, never Theta.
class Objective {
 public:
  using Evaluator = std::function<double(const RowVectorX<double>& pi, const MatrixX<double>& p)>;

  static Objective single_node(Index target);
  static Objective linear(RowVectorX<double> weights);
  static Objective webrank(Index target, CostCurve curve = builtin_cost_curve());
  // Stateless user evaluator with the same signature as the built-in kinds.
  static Objective custom(std::string name, Evaluator evaluator);

  ObjectiveKind kind() const noexcept { return kind_; }
  Index target() const noexcept { return target_; }
  const RowVectorX<double>& weights() const noexcept { return weights_; }
  const CostCurve& cost_curve() const noexcept { return curve_; }
  std::string name() const;

  // Linear objectives (single_node and linear) admit the exact formulation export.
  bool is_linear() const noexcept {
    return kind_ == ObjectiveKind::single_node || kind_ == ObjectiveKind::linear;
  }

  // Checks the objective against a state count; throws StructuralError.
  void check_dimension(Index n) const;

  // Hot-path evaluation on raw Eigen storage; no dimension checks.
  double operator()(const RowVectorX<double>& pi, const MatrixX<double>& p) const;

  // Sum over n != target of pi_n * cost(P(n, target)); webrank only.
  double total_cost(const RowVectorX<double>& pi, const MatrixX<double>& p) const;

 private:
  ObjectiveKind kind_ = ObjectiveKind::single_node;
  Index target_ = 0;
  RowVectorX<double> weights_;
  CostCurve curve_;
  std::string custom_name_;
  Evaluator custom_;
};

double evaluate(const Objective& objective, const StationaryDistribution& pi, const StochasticMatrix& p);

}  // namespace smspsa
