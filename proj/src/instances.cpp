#include "smspsa/instances.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "smspsa/matrix_io.hpp"
#include "smspsa/rng.hpp"

namespace smspsa {

SampledNetwork sample_network(const SamplerConfig& config) {
  const Index n = config.n;
  if (n < 2) throw InputError("network needs at least 2 nodes");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  if (!(config.p_er >= 0.0 && config.p_er <= 1.0)) throw InputError("p_er must lie in [0, 1]");
  if (config.alpha == 1.0 && config.p_er == 0.0) throw InputError("alpha = 1 with p_er = 0 gives only zero rows");

  Rng rng(config.seed);
  MatrixX<double> q(n, n);
  for (Index m = 0; m < n; ++m)
    for (Index k = 0; k < n; ++k) q(m, k) = rng.uniform_open_left();
  MatrixX<double> er(n, n);
  for (Index m = 0; m < n; ++m)
    for (Index k = 0; k < n; ++k) er(m, k) = rng.bernoulli(config.p_er) ? 1.0 : 0.0;

  SampledNetwork out;
  MatrixX<double> blend = config.alpha * er + (1.0 - config.alpha) * q;
  for (Index m = 0; m < n; ++m) {
    while (!(blend.row(m).sum() > 0.0)) {
      for (Index k = 0; k < n; ++k) er(m, k) = rng.bernoulli(config.p_er) ? 1.0 : 0.0;
      blend.row(m) = config.alpha * er.row(m) + (1.0 - config.alpha) * q.row(m);
      ++out.resampled_rows;
    }
    blend.row(m) /= blend.row(m).sum();
  }
  out.matrix = StochasticMatrix(std::move(blend));

  auto draw_mask = [&] {
    AdjustmentMask::Flags flags = AdjustmentMask::Flags::Constant(n, n, false);
    for (Index m = 0; m < n; ++m)
      for (Index k = 0; k < n; ++k) flags(m, k) = (m != k) && rng.bernoulli(config.mask_probability);
    return AdjustmentMask(std::move(flags));
  };
  out.mask = draw_mask();
  if (config.max_free_dimensions) {
    const std::size_t cap = *config.max_free_dimensions;
    if (cap == 0) throw InputError("max_free_dimensions must be at least 1");
    while (out.mask.free_dimensions() == 0 || out.mask.free_dimensions() > cap) {
      out.mask = draw_mask();
      ++out.mask_draws;
      if (out.mask_draws > 100000) throw DomainError("could not draw a mask within the free-dimension bound");
    }
  }
  out.target = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  return out;
}

std::size_t EdgeListGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : adjacency) e += a.size();
  return e;
}

namespace {

// Sorts each adjacency list together with its weights and drops repeats,
// keeping the first weight seen.
void normalize_adjacency(EdgeListGraph& g) {
  for (std::size_t u = 0; u < g.adjacency.size(); ++u) {
    auto& targets = g.adjacency[u];
    auto& weights = g.weights[u];
    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });
    std::vector<std::size_t> t2;
    std::vector<double> w2;
    for (std::size_t k : order) {
      if (!t2.empty() && t2.back() == targets[k]) continue;
      t2.push_back(targets[k]);
      w2.push_back(weights[k]);
    }
    targets = std::move(t2);
    weights = std::move(w2);
  }
}

}  // namespace

EdgeListGraph parse_edge_list(const std::string& text) {
  EdgeListGraph g;
  std::unordered_map<std::string, std::size_t> ids;
  auto id_of = [&](const std::string& label) {
    const auto [it, inserted] = ids.try_emplace(label, g.labels.size());
    if (inserted) {
      g.labels.push_back(label);
      g.adjacency.emplace_back();
      g.weights.emplace_back();
    }
    return it->second;
  };

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string source;
    std::string target;
    std::string weight;
    std::string extra;
    fields >> source >> target;
    if (source.empty() || target.empty()) throw ParseError("expected 'source target [weight]'", line_no);
    double w = 1.0;
    if (fields >> weight) {
      try {
        std::size_t used = 0;
        w = std::stod(weight, &used);
        if (used != weight.size()) throw std::invalid_argument(weight);
      } catch (const std::exception&) {
        throw ParseError("bad edge weight '" + weight + "'", line_no);
      }
      if (fields >> extra) throw ParseError("too many fields", line_no);
    }
    const std::size_t u = id_of(source);
    const std::size_t v = id_of(target);
    g.adjacency[u].push_back(v);
    g.weights[u].push_back(w);
  }
  normalize_adjacency(g);
  return g;
}

EdgeListGraph load_edge_list(const std::filesystem::path& path) { return parse_edge_list(io::read_text(path)); }

std::string to_edge_list(const EdgeListGraph& g) {
  std::string out;
  for (std::size_t u = 0; u < g.adjacency.size(); ++u) {
    for (std::size_t v : g.adjacency[u]) out += g.labels[u] + "\t" + g.labels[v] + "\n";
  }
  return out;
}

EdgeListGraph induced_subgraph(const EdgeListGraph& g, const std::vector<std::size_t>& nodes) {
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> local(g.node_count(), kAbsent);
  for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;
  EdgeListGraph out;
  out.adjacency.resize(nodes.size());
  out.weights.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::size_t u = nodes[k];
    out.labels.push_back(g.labels[u]);
    for (std::size_t e = 0; e < g.adjacency[u].size(); ++e) {
      const std::size_t v = g.adjacency[u][e];
      if (local[v] == kAbsent) continue;
      out.adjacency[k].push_back(local[v]);
      out.weights[k].push_back(g.weights[u][e]);
    }
  }
  normalize_adjacency(out);
  return out;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Multi-source BFS from every set node through nodes outside the set.
void ear_bfs(const graph::Adjacency& adj, const std::vector<bool>& in_set, std::vector<std::size_t>& dist,
             std::vector<std::size_t>& parent) {
  const std::size_t n = adj.size();
  dist.assign(n, kInf);
  parent.assign(n, kInf);
  std::queue<std::size_t> frontier;
  for (std::size_t u = 0; u < n; ++u) {
    if (!in_set[u]) continue;
    for (std::size_t v : adj[u]) {
      if (in_set[v] || dist[v] != kInf) continue;
      dist[v] = 1;
      parent[v] = u;
      frontier.push(v);
    }
  }
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adj[u]) {
      if (in_set[v] || dist[v] != kInf) continue;
      dist[v] = dist[u] + 1;
      parent[v] = u;
      frontier.push(v);
    }
  }
}

std::optional<std::vector<std::size_t>> grow_by_ears(const graph::Adjacency& adj, std::size_t seed,
                                                     std::size_t cap) {
  const std::size_t n = adj.size();
  const graph::Adjacency rev = graph::reversed(adj);
  std::vector<bool> in_set(n, false);
  in_set[seed] = true;
  std::size_t size = 1;
  std::vector<std::size_t> dist_out;
  std::vector<std::size_t> parent_out;
  std::vector<std::size_t> dist_back;
  std::vector<std::size_t> parent_back;
  while (size < cap) {
    ear_bfs(adj, in_set, dist_out, parent_out);
    ear_bfs(rev, in_set, dist_back, parent_back);
    const std::size_t remaining = cap - size;
    std::size_t best = kInf;
    std::size_t best_len = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_set[v] || dist_out[v] == kInf || dist_back[v] == kInf) continue;
      const std::size_t len = dist_out[v] + dist_back[v] - 1;
      if (len <= remaining && len < best_len) {
        best = v;
        best_len = len;
      }
    }
    if (best == kInf) return std::nullopt;
    for (std::size_t v = best; !in_set[v]; v = parent_out[v]) {
      in_set[v] = true;
      ++size;
    }
    // parent_back points one step closer to the set along forward edges.
    for (std::size_t v = parent_back[best]; !in_set[v]; v = parent_back[v]) {
      in_set[v] = true;
      ++size;
    }
  }
  std::vector<std::size_t> nodes;
  for (std::size_t v = 0; v < n; ++v)
    if (in_set[v]) nodes.push_back(v);
  return nodes;
}

}  // namespace

EdgeListGraph largest_scc(const EdgeListGraph& g, std::optional<std::size_t> size_cap) {
  if (g.node_count() == 0) throw DomainError("empty graph has no strongly connected component");
  const auto comps = graph::strongly_connected_components(g.adjacency);
  std::vector<std::size_t> sizes(comps.count, 0);
  for (std::size_t c : comps.component_of) ++sizes[c];
  // Largest component; ties go to the one containing the smallest node id.
  std::size_t best = comps.component_of[0];
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    const std::size_t c = comps.component_of[u];
    if (sizes[c] > sizes[best]) best = c;
  }
  std::vector<std::size_t> nodes;
  for (std::size_t u = 0; u < g.node_count(); ++u)
    if (comps.component_of[u] == best) nodes.push_back(u);

  EdgeListGraph scc = induced_subgraph(g, nodes);
  if (!size_cap || *size_cap == nodes.size()) return scc;
  if (*size_cap == 0 || *size_cap > nodes.size()) {
    throw DomainError("largest strongly connected component has " + std::to_string(nodes.size()) +
                      " nodes; cannot extract " + std::to_string(size_cap.value_or(0)));
  }

  constexpr std::size_t kSeedAttempts = 32;
  for (std::size_t seed = 0; seed < std::min(kSeedAttempts, scc.node_count()); ++seed) {
    const auto chosen = grow_by_ears(scc.adjacency, seed, *size_cap);
    if (!chosen) continue;
    EdgeListGraph sub = induced_subgraph(scc, *chosen);
    if (graph::is_strongly_connected(sub.adjacency)) return sub;
  }
  throw DomainError("no strongly connected subgraph of " + std::to_string(*size_cap) + " nodes found");
}

EdgeListGraph sample_edge_list(std::size_t n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw InputError("graph needs at least 2 nodes");
  const double p = std::clamp(mean_degree / static_cast<double>(n - 1), 0.0, 1.0);
  Rng rng(seed);
  EdgeListGraph g;
  g.adjacency.resize(n);
  g.weights.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    g.labels.push_back(std::to_string(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(p)) {
        g.adjacency[u].push_back(v);
        g.weights[u].push_back(1.0);
      }
    }
  }
  return g;
}

WebrankInstance build_webrank_instance(const EdgeListGraph& g, Index target, double self_loop_max,
                                       std::uint64_t seed) {
  const auto n = static_cast<Index>(g.node_count());
  if (target < 0 || target >= n) throw InputError("target node " + std::to_string(target) + " is not in the graph");
  if (!(self_loop_max >= 0.0 && self_loop_max < 1.0)) throw InputError("self-loop maximum must lie in [0, 1)");
  if (!graph::is_strongly_connected(g.adjacency)) throw InputError("webrank instance needs a strongly connected graph");

  Rng rng(seed);
  MatrixX<double> p = MatrixX<double>::Zero(n, n);
  AdjustmentMask::Flags flags = AdjustmentMask::Flags::Constant(n, n, false);
  for (Index u = 0; u < n; ++u) {
    std::vector<std::size_t> outs;
    for (std::size_t v : g.adjacency[static_cast<std::size_t>(u)])
      if (static_cast<Index>(v) != u) outs.push_back(v);
    if (outs.empty()) throw InputError("node " + std::to_string(u) + " has no out-edges");

    const double self = u == target ? 0.0 : rng.uniform() * self_loop_max;
    std::vector<double> share(outs.size());
    double total = 0.0;
    for (double& s : share) total += (s = rng.exponential());
    for (std::size_t k = 0; k < outs.size(); ++k) p(u, static_cast<Index>(outs[k])) = (1.0 - self) * share[k] / total;
    p(u, u) = self;
    if (u != target) {
      flags(u, target) = true;
      flags(u, u) = true;
    }
  }
  WebrankInstance out;
  out.matrix = StochasticMatrix(std::move(p));
  out.mask = AdjustmentMask(std::move(flags));
  out.objective = Objective::webrank(target);
  out.target = target;
  out.self_loop_max = self_loop_max;
  out.seed = seed;
  return out;
}

}  // namespace smspsa
