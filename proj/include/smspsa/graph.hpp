#pragma once

#include <cstddef>
#include <vector>

namespace smspsa::graph {

// Directed graph on nodes 0..n-1 as out-adjacency lists.
using Adjacency = std::vector<std::vector<std::size_t>>;

// Component id per node from an iterative Tarjan pass. Ids are assigned in
// reverse topological order of the condensation.
struct Components {
  std::vector<std::size_t> component_of;
  std::size_t count = 0;
};

Components strongly_connected_components(const Adjacency& adjacency);

bool is_strongly_connected(const Adjacency& adjacency);

// Period of a strongly connected graph: gcd over edges u->v of
// level(u) + 1 - level(v), with BFS levels from node 0.
std::size_t period(const Adjacency& adjacency);

Adjacency reversed(const Adjacency& adjacency);

}  // namespace smspsa::graph
