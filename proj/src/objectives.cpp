#include "smspsa/objectives.hpp"

#include <cmath>
#include <numbers>

namespace smspsa {

CostCurve builtin_cost_curve() {
  return {"advertising", [](double x) { return 0.42 * std::sin(1.5 * std::numbers::pi * x) + 1.92 * x * x * x; }};
}

CostCurve zero_cost_curve() {
  return {"zero", [](double) { return 0.0; }};
}

CostCurve cost_curve_by_id(const std::string& id) {
  if (id == "advertising") return builtin_cost_curve();
  if (id == "zero") return zero_cost_curve();
  throw InputError("unknown cost curve '" + id + "' (expected advertising or zero)");
}

Objective Objective::single_node(Index target) {
  if (target < 0) throw InputError("target node must be nonnegative");
  Objective o;
  o.kind_ = ObjectiveKind::single_node;
  o.target_ = target;
  return o;
}

Objective Objective::linear(RowVectorX<double> weights) {
  if (!weights.allFinite()) throw InputError("linear objective weights must be finite");
  Objective o;
  o.kind_ = ObjectiveKind::linear;
  o.weights_ = std::move(weights);
  return o;
}

Objective Objective::webrank(Index target, CostCurve curve) {
  if (target < 0) throw InputError("target node must be nonnegative");
  Objective o;
  o.kind_ = ObjectiveKind::webrank;
  o.target_ = target;
  o.curve_ = std::move(curve);
  return o;
}

Objective Objective::custom(std::string name, Evaluator evaluator) {
  Objective o;
  o.kind_ = ObjectiveKind::custom;
  o.custom_name_ = std::move(name);
  o.custom_ = std::move(evaluator);
  return o;
}

std::string Objective::name() const {
  switch (kind_) {
    case ObjectiveKind::single_node:
      return "single_node";
    case ObjectiveKind::linear:
      return "linear";
    case ObjectiveKind::webrank:
      return "webrank";
    case ObjectiveKind::custom:
      return custom_name_;
  }
  return "unknown";
}

void Objective::check_dimension(Index n) const {
  switch (kind_) {
    case ObjectiveKind::single_node:
    case ObjectiveKind::webrank:
      if (target_ >= n) {
        throw StructuralError("target node " + std::to_string(target_) + " outside [0, " + std::to_string(n) + ")");
      }
      break;
    case ObjectiveKind::linear:
      if (weights_.size() != n) {
        throw StructuralError("linear weights have length " + std::to_string(weights_.size()) + ", expected " +
                              std::to_string(n));
      }
      break;
    case ObjectiveKind::custom:
      break;
  }
}

double Objective::total_cost(const RowVectorX<double>& pi, const MatrixX<double>& p) const {
  double cost = 0.0;
  for (Index n = 0; n < pi.size(); ++n) {
    if (n != target_) cost += pi(n) * curve_(p(n, target_));
  }
  return cost;
}

double Objective::operator()(const RowVectorX<double>& pi, const MatrixX<double>& p) const {
  switch (kind_) {
    case ObjectiveKind::single_node:
      return pi(target_);
    case ObjectiveKind::linear:
      return weights_.dot(pi);
    case ObjectiveKind::webrank:
      return pi(target_) - total_cost(pi, p);
    case ObjectiveKind::custom:
      return custom_(pi, p);
  }
  return 0.0;
}

double evaluate(const Objective& objective, const StationaryDistribution& pi, const StochasticMatrix& p) {
  if (pi.size() != p.size()) throw StructuralError("distribution and matrix dimensions differ");
  objective.check_dimension(pi.size());
  return objective(pi.probabilities(), p.entries());
}

}  // namespace smspsa
