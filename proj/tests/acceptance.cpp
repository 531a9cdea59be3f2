// One line per acceptance criterion: "[PASS] k name: measurements" or
// "[FAIL] ...". Exit status is nonzero when any selected criterion fails.
//
//   smspsa_acceptance                 all criteria
//   smspsa_acceptance --criterion 3   only criterion 3

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smspsa/harness.hpp"
#include "smspsa/heuristics.hpp"
#include "smspsa/instances.hpp"
#include "smspsa/matrix_io.hpp"
#include "smspsa/optimizer.hpp"
#include "smspsa/oracle.hpp"

using namespace smspsa;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

StochasticMatrix ring_matrix() {
  MatrixX<double> p(3, 3);
  p << 0.001, 0.001, 0.998,
       0.998, 0.001, 0.001,
       0.001, 0.998, 0.001;
  return StochasticMatrix(p);
}

AdjustmentMask ring_mask() {
  MatrixX<double> c(3, 3);
  c << 0, 1, 1,
       1, 0, 1,
       1, 1, 0;
  return AdjustmentMask::from_numeric(c);
}

SampledNetwork random_instance(Rng& rng, Index n_min, Index n_max) {
  SamplerConfig sc;
  sc.n = n_min + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n_max - n_min + 1)));
  sc.seed = rng.bits();
  return sample_network(sc);
}

Verdict round_trip() {
  const auto start = Clock::now();
  Rng rng(1);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto net = random_instance(rng, 3, 12);
    const auto cfg = TransformConfig::for_matrix(net.matrix, net.mask);
    const auto back = apply_T(inverse_entry(net.matrix, net.mask, cfg), net.matrix, net.mask);
    worst = std::max(worst, (back.entries() - net.matrix.entries()).lpNorm<Eigen::Infinity>());
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 10.0,
          "1000 matrices, max |T(inv(P)) - P| = " + fmt(worst, 3) + " (<= 1e-12), " + fmt(elapsed, 3) + " s (< 10 s)"};
}

Verdict feasibility() {
  Rng rng(2);
  double worst_row = 0.0;
  std::size_t moved = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto net = random_instance(rng, 3, 20);
    const Index n = net.matrix.size();
    MatrixX<double> theta(n, n);
    // Cauchy entries with an occasional scale blow-up.
    const double scale = rng.bernoulli(0.1) ? 1e3 : 10.0;
    for (Index j = 0; j < n * n; ++j) theta.data()[j] = scale * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    const auto p = apply_T(ThetaMatrix(theta), net.matrix, net.mask);
    for (Index m = 0; m < n; ++m) {
      worst_row = std::max(worst_row, std::abs(p.entries().row(m).sum() - 1.0));
      for (Index c = 0; c < n; ++c) {
        if (!net.mask.adjustable(m, c) && p(m, c) != net.matrix(m, c)) ++moved;
      }
    }
  }
  return {worst_row <= 1e-9 && moved == 0, "1000 heavy-tailed Theta, max |row sum - 1| = " + fmt(worst_row, 3) +
                                               " (<= 1e-9), masked-off entries changed: " + std::to_string(moved)};
}

Verdict ring_reproduction() {
  const auto p0 = ring_matrix();
  const auto mask = ring_mask();
  const auto obj = Objective::single_node(0);
  OptimizerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.iterations = 500000;
  cfg.seed = 1;
  const auto plain = run(p0, mask, obj, cfg, std::nullopt, InitMode::as_is);
  const auto plain_events = detect_inflictions(plain.trajectory);
  cfg.iterations = 50000;
  const auto centered = run(p0, mask, obj, cfg, std::nullopt, InitMode::centered_mass);
  const auto centered_events = detect_inflictions(centered.trajectory);
  const double a = plain.trajectory.back().objective;
  const double b = centered.trajectory.back().objective;
  const bool pass = a >= 0.49 && plain_events.events.size() >= 2 && std::abs(a - b) <= 0.01 && centered_events.empty();
  return {pass, "as-is I=500000: pi_0 = " + fmt(a) + " (>= 0.49), events = " +
                    std::to_string(plain_events.events.size()) + " (>= 2); centered-mass I=50000: pi_0 = " + fmt(b) +
                    " (|diff| = " + fmt(std::abs(a - b), 3) + " <= 0.01), events = " +
                    std::to_string(centered_events.events.size()) + " (== 0)"};
}

Verdict gradient_fidelity() {
  const auto p0 = ring_matrix();
  const auto mask = ring_mask();
  const auto obj = Objective::single_node(0);
  const auto theta = inverse_entry(p0, mask, TransformConfig::for_matrix(p0, mask));
  const auto fd = finite_diff_gradient(theta, p0, mask, obj, 1e-5);
  Rng rng(1);
  MatrixX<double> mean = MatrixX<double>::Zero(3, 3);
  for (int k = 0; k < 1000; ++k) mean += gradient_proxy(theta, p0, mask, obj, 0.01, PerturbationMatrix::draw(rng, mask));
  mean /= 1000.0;
  const double cosine = mean.cwiseProduct(fd).sum() / (mean.norm() * fd.norm());
  const double magnitude = std::abs(mean.norm() - fd.norm()) / fd.norm();
  return {cosine >= 0.99 && magnitude <= 0.05, "1000 draws at eta 0.01 vs central difference h 1e-5: cosine = " +
                                                   fmt(cosine) + " (>= 0.99), magnitude error = " +
                                                   fmt(100.0 * magnitude, 3) + "% (<= 5%)"};
}

Verdict gap() {
  const auto start = Clock::now();
  GapStudyConfig cfg;
  const auto report = gap_study(cfg);
  double worst = 0.0;
  for (const auto& e : report.entries) worst = std::max(worst, e.gap_percent);
  const double elapsed = seconds_since(start);
  return {report.mean_gap_percent <= 3.0 && elapsed < 1800.0,
          std::to_string(report.entries.size()) + " four-node instances: mean gap = " +
              fmt(report.mean_gap_percent, 4) + "% (<= 3%), worst = " + fmt(worst, 4) + "%, " + fmt(elapsed, 4) +
              " s (< 1800 s)"};
}

Verdict metastudy() {
  const auto report = heuristic_metastudy(problem_class("small"));
  const auto& cps = report.checkpoints;
  const std::size_t count = cps.size();
  bool late = count >= 3;
  for (std::size_t c = count >= 3 ? count - 3 : 0; c < count; ++c) late = late && cps[c].test.reject;
  const bool early = !cps.front().test.reject;
  std::string detail = "50 ten-node pairs, I=100000: final three checkpoints reject = " +
                       std::string(late ? "yes" : "no");
  for (std::size_t c = count >= 3 ? count - 3 : 0; c < count; ++c) {
    detail += " [t=" + std::to_string(cps[c].t) + " " + std::to_string(cps[c].test.successes) + "/50 p=" +
              fmt(cps[c].test.p_value, 3) + "]";
  }
  detail += "; earliest checkpoint t=" + std::to_string(cps.front().t) + " " +
            std::to_string(cps.front().test.successes) + "/50 p=" + fmt(cps.front().test.p_value, 3) +
            (early ? " not rejected" : " rejected (no warm-up observed)");
  return {late && early, detail};
}

Verdict webrank_signs() {
  const auto dir = std::filesystem::temp_directory_path() / "smspsa_acceptance_webrank";
  std::filesystem::create_directories(dir);
  const auto edges = dir / "graph.edges";
  io::write_text(edges, to_edge_list(sample_edge_list(1000, 3.0, 1)));
  const auto component = largest_scc(load_edge_list(edges), 100);
  std::filesystem::remove_all(dir);
  const auto instance = build_webrank_instance(component, 0, 0.9, 1);
  WebrankStudyConfig cfg;
  cfg.iterations = 20000;
  const auto r = webrank_case_study(instance, cfg);
  const bool pass = r.with_costs.objective > r.without_costs.objective && r.without_costs.pi_target > r.with_costs.pi_target;
  return {pass, std::to_string(component.node_count()) + "-node SCC, I=20000: objective with costs " +
                    fmt(r.with_costs.objective, 4) + " > without " + fmt(r.without_costs.objective, 4) +
                    "; pi_m without costs " + fmt(r.without_costs.pi_target, 4) + " > with " +
                    fmt(r.with_costs.pi_target, 4)};
}

Verdict solver_cross_check() {
  Rng rng(8);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto net = random_instance(rng, 3, 50);
    const auto direct = stationary(net.matrix);
    const auto power = stationary_power(net.matrix);
    worst = std::max(worst, (direct.probabilities() - power.probabilities()).lpNorm<Eigen::Infinity>());
  }
  return {worst <= 1e-10, "100 instances of size 3..50, max |direct - power| = " + fmt(worst, 3) + " (<= 1e-10)"};
}

Verdict determinism() {
  SamplerConfig sc;
  sc.seed = 5;
  const auto net = sample_network(sc);
  OptimizerConfig cfg;
  cfg.iterations = 20000;
  cfg.seed = 11;
  const auto dir = std::filesystem::temp_directory_path() / "smspsa_acceptance_determinism";
  std::filesystem::create_directories(dir);
  for (int k = 0; k < 2; ++k) {
    const auto r = run(net.matrix, net.mask, Objective::single_node(net.target), cfg, std::nullopt, InitMode::as_is);
    io::write_text(dir / ("run" + std::to_string(k) + ".csv"), r.trajectory.to_csv());
  }
  const auto a = io::read_text(dir / "run0.csv");
  const auto b = io::read_text(dir / "run1.csv");
  std::filesystem::remove_all(dir);
  return {!a.empty() && a == b, "two seeded 20000-iteration runs: " + std::to_string(a.size()) + " bytes, " +
                                    (a == b ? "identical" : "different")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Run only these criteria (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "round-trip identity", round_trip},
      {2, "feasibility under arbitrary Theta", feasibility},
      {3, "three-state ring reproduction", ring_reproduction},
      {4, "gradient fidelity", gradient_fidelity},
      {5, "gap study", gap},
      {6, "heuristic metastudy", metastudy},
      {7, "webrank sign pattern", webrank_signs},
      {8, "stationary solver cross-check", solver_cross_check},
      {9, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %d %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
