#include "smspsa/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

namespace smspsa::graph {

Components strongly_connected_components(const Adjacency& adjacency) {
  const std::size_t n = adjacency.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  stack.reserve(n);

  Components out;
  out.component_of.assign(n, kUnvisited);

  // (node, next edge position) frames replace recursion.
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  std::size_t next_index = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adjacency[v].size()) {
        const std::size_t w = adjacency[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
      }
      if (lowlink[finished] == index[finished]) {
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = out.count;
        } while (w != finished);
        ++out.count;
      }
    }
  }
  return out;
}

bool is_strongly_connected(const Adjacency& adjacency) {
  if (adjacency.empty()) return false;
  return strongly_connected_components(adjacency).count == 1;
}

std::size_t period(const Adjacency& adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) return 0;
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(n, kUnseen);
  std::queue<std::size_t> frontier;
  level[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adjacency[u]) {
      if (level[v] == kUnseen) {
        level[v] = level[u] + 1;
        frontier.push(v);
      }
    }
  }
  std::size_t g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (level[u] == kUnseen) continue;
    for (std::size_t v : adjacency[u]) {
      if (level[v] == kUnseen) continue;
      const auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
      g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
    }
  }
  return g;
}

Adjacency reversed(const Adjacency& adjacency) {
  Adjacency out(adjacency.size());
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    for (std::size_t v : adjacency[u]) out[v].push_back(u);
  }
  return out;
}

}  // namespace smspsa::graph
