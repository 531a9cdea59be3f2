#include "smspsa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "smspsa/heuristics.hpp"
#include "smspsa/version.hpp"

namespace smspsa {

std::string to_string(InitMode mode) { return mode == InitMode::as_is ? "as-is" : "centered-mass"; }

InitMode parse_init_mode(const std::string& text) {
  if (text == "as-is" || text == "as_is") return InitMode::as_is;
  if (text == "centered-mass" || text == "centered_mass") return InitMode::centered_mass;
  throw InputError("unknown init mode '" + text + "' (expected as-is or centered-mass)");
}

double OptimizerConfig::eta_at(std::size_t i) const {
  const double raw = eta ? eta(i) : 1.0 / (static_cast<double>(i) + 1.0);
  return std::max(raw, eta_floor);
}

void OptimizerConfig::check() const {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (record_stride == 0) throw DomainError("record stride must be at least 1");
  if (!(eta_floor > 0.0)) throw DomainError("eta floor must be positive");
}

StoppingRule StoppingRule::defaults(std::size_t adjustable_count) {
  return {1e-6 * std::sqrt(static_cast<double>(adjustable_count)), 1000};
}

PerturbationMatrix::PerturbationMatrix(MatrixX<double> entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw StructuralError("perturbation matrix must be square");
  if (!((entries_.array() == 1.0) || (entries_.array() == -1.0)).all()) {
    throw InputError("perturbation entries must be +1 or -1");
  }
}

PerturbationMatrix PerturbationMatrix::draw(Rng& rng, const AdjustmentMask& mask) {
  MatrixX<double> d = MatrixX<double>::Ones(mask.size(), mask.size());
  for (const auto& [m, n] : mask.positions()) d(m, n) = rng.coin() ? 1.0 : -1.0;
  return PerturbationMatrix(std::move(d));
}

ObjectiveOracle::ObjectiveOracle(const StochasticMatrix& p0, const AdjustmentMask& mask, Objective objective)
    : transform_(p0, mask), objective_(std::move(objective)) {
  objective_.check_dimension(p0.size());
}

double ObjectiveOracle::operator()(const MatrixX<double>& theta) {
  transform_.apply(theta, p_);
  solver_.solve(p_, pi_);
  ++evaluations_;
  return objective_(pi_, p_);
}

namespace {

double evaluate_signed(ObjectiveOracle& oracle, const MatrixX<double>& theta, const char* sign) {
  try {
    return oracle(theta);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("stationary solve failed at Theta") + sign + " perturbation: " + e.what(),
                         e.residual());
  }
}

}  // namespace

MatrixX<double> gradient_proxy(const ThetaMatrix& theta, const StochasticMatrix& p0, const AdjustmentMask& mask,
                               const Objective& objective, double eta, const PerturbationMatrix& delta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (theta.size() != p0.size() || delta.entries().rows() != p0.size()) {
    throw StructuralError("theta, perturbation and P0 dimensions differ");
  }
  ObjectiveOracle oracle(p0, mask, objective);
  const MatrixX<double> step = eta * delta.entries().cwiseProduct(mask.as_matrix<double>());
  const double f_plus = evaluate_signed(oracle, theta.entries() + step, "+");
  const double f_minus = evaluate_signed(oracle, theta.entries() - step, "-");
  MatrixX<double> g = MatrixX<double>::Zero(p0.size(), p0.size());
  const double diff = (f_plus - f_minus) / (2.0 * eta);
  for (const auto& [m, n] : mask.positions()) g(m, n) = diff / delta.entries()(m, n);
  return g;
}

namespace {

// Ring of the last window+1 adjustable-coordinate vectors.
class StabilityWindow {
 public:
  StabilityWindow(StoppingRule rule, std::size_t width)
      : rule_(rule), history_(rule.window + 1, std::vector<double>(width)) {}

  // Returns true when the newest vector satisfies the rule.
  bool push(const std::vector<double>& theta) {
    history_[head_] = theta;
    const std::size_t newest = head_;
    head_ = (head_ + 1) % history_.size();
    filled_ = std::min(filled_ + 1, history_.size());
    if (filled_ < history_.size()) return false;
    const double limit = rule_.omega * rule_.omega;
    for (std::size_t j = 1; j <= rule_.window; ++j) {
      const auto& older = history_[(newest + history_.size() - j) % history_.size()];
      double sq = 0.0;
      for (std::size_t k = 0; k < theta.size(); ++k) {
        const double d = theta[k] - older[k];
        sq += d * d;
      }
      if (sq > limit) return false;
    }
    return true;
  }

 private:
  StoppingRule rule_;
  std::vector<std::vector<double>> history_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
};

}  // namespace

RunResult run(const StochasticMatrix& p0, const AdjustmentMask& mask, const Objective& objective,
              const OptimizerConfig& config, std::optional<StoppingRule> stop, InitMode init) {
  config.check();
  if (mask.size() != p0.size()) throw StructuralError("mask and matrix dimensions differ");
  objective.check_dimension(p0.size());
  if (stop && (stop->window == 0 || !(stop->omega > 0.0))) throw DomainError("stopping rule needs omega > 0, R >= 1");

  const auto report = validate(p0, mask, 0.5);
  if (!report.feasible()) throw DomainError("start matrix rejected: " + report.summary());

  RunResult result;
  result.start_matrix = init == InitMode::centered_mass ? centered_mass(p0, mask) : p0;
  const auto tcfg = TransformConfig::for_matrix(result.start_matrix, mask, config.gamma);
  result.gamma = tcfg.gamma;

  MatrixX<double> theta = inverse_entry(result.start_matrix, mask, tcfg).entries();
  ObjectiveOracle oracle(result.start_matrix, mask, objective);
  const auto& positions = mask.positions();
  const std::size_t width = positions.size();
  result.trajectory = Trajectory(positions);

  std::vector<double> theta_coords(width);
  auto gather_theta = [&] {
    for (std::size_t k = 0; k < width; ++k) theta_coords[k] = theta(positions[k].row, positions[k].col);
  };

  auto record = [&](std::size_t iteration) {
    const double f = oracle(theta);
    if (!std::isfinite(f)) {
      throw OptimizerError("objective is not finite at iteration " + std::to_string(iteration),
                           static_cast<std::ptrdiff_t>(iteration));
    }
    TrajectoryPoint pt;
    pt.iteration = iteration;
    pt.objective = f;
    pt.p.resize(width);
    pt.theta.resize(width);
    const auto& p = oracle.last_matrix();
    for (std::size_t k = 0; k < width; ++k) {
      pt.p[k] = p(positions[k].row, positions[k].col);
      pt.theta[k] = theta(positions[k].row, positions[k].col);
    }
    result.trajectory.append(std::move(pt));
  };

  record(0);
  std::optional<StabilityWindow> window;
  if (stop) {
    window.emplace(*stop, width);
    gather_theta();
    window->push(theta_coords);
  }

  Rng rng(config.seed);
  std::vector<double> delta(width);
  MatrixX<double> plus = theta;
  MatrixX<double> minus = theta;
  std::size_t i = 0;
  for (; i < config.iterations; ++i) {
    const double eta = config.eta_at(i);
    plus = theta;
    minus = theta;
    for (std::size_t k = 0; k < width; ++k) {
      delta[k] = rng.coin() ? 1.0 : -1.0;
      plus(positions[k].row, positions[k].col) += eta * delta[k];
      minus(positions[k].row, positions[k].col) -= eta * delta[k];
    }
    const double f_plus = evaluate_signed(oracle, plus, "+");
    const double f_minus = evaluate_signed(oracle, minus, "-");
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
      throw OptimizerError("objective is not finite at iteration " + std::to_string(i),
                           static_cast<std::ptrdiff_t>(i));
    }
    const double diff = (f_plus - f_minus) / (2.0 * eta);
    for (std::size_t k = 0; k < width; ++k) {
      theta(positions[k].row, positions[k].col) += config.epsilon * diff / delta[k];
    }

    const std::size_t done = i + 1;
    bool halt = false;
    if (window) {
      gather_theta();
      halt = window->push(theta_coords);
    }
    if (halt) {
      result.stopped_at = done;
      record(done);
      ++i;
      break;
    }
    if (done % config.record_stride == 0 || done == config.iterations) record(done);
  }

  result.iterations_run = i;
  result.final_theta = ThetaMatrix(theta);
  result.final_matrix = oracle.transform()(result.final_theta);
  result.objective_evaluations = oracle.evaluations();
  return result;
}

nlohmann::json run_metadata(const OptimizerConfig& config, InitMode init, const std::optional<StoppingRule>& stop,
                            const RunResult& result, const Objective& objective) {
  nlohmann::json meta = {{"version", kVersion},
                         {"seed", config.seed},
                         {"epsilon", config.epsilon},
                         {"iterations", config.iterations},
                         {"iterations_run", result.iterations_run},
                         {"eta", config.eta ? "custom" : "1/(i+1)"},
                         {"eta_floor", config.eta_floor},
                         {"record_stride", config.record_stride},
                         {"gamma", result.gamma},
                         {"init", to_string(init)},
                         {"objective", objective.name()},
                         {"objective_evaluations", result.objective_evaluations}};
  if (objective.kind() == ObjectiveKind::single_node || objective.kind() == ObjectiveKind::webrank) {
    meta["target"] = objective.target();
  }
  if (objective.kind() == ObjectiveKind::webrank) meta["cost_curve"] = objective.cost_curve().id;
  if (stop) {
    meta["stop"] = {{"omega", stop->omega}, {"window", stop->window}};
    meta["stopped_at"] = result.stopped_at ? nlohmann::json(*result.stopped_at) : nlohmann::json(nullptr);
  } else {
    meta["stop"] = nullptr;
  }
  return meta;
}

}  // namespace smspsa
