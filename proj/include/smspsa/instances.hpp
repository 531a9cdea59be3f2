#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smspsa/graph.hpp"
#include "smspsa/markov.hpp"
#include "smspsa/objectives.hpp"

namespace smspsa {

struct SamplerConfig {
  Index n = 10;
  double alpha = 0.9;  // weight of the Erdos-Renyi part of the blend
  double p_er = 0.2;
  std::uint64_t seed = 0;
  // Each off-diagonal entry is adjustable independently with this
  // probability; the diagonal is never adjustable.
  double mask_probability = 0.5;
  // When set, the mask is redrawn until it has between 1 and this many
  // free simplex dimensions.
  std::optional<std::size_t> max_free_dimensions;
};

struct SampledNetwork {
  StochasticMatrix matrix;
  AdjustmentMask mask;
  Index target = 0;
  std::size_t resampled_rows = 0;  // zero ER rows redrawn (alpha == 1 only)
  std::size_t mask_draws = 1;
};

// Q ~ U(0,1]^(NxN), E ~ ER(p_er), P = rownormalize(alpha E + (1 - alpha) Q);
// a zero-diagonal random mask and a uniformly drawn target node.
SampledNetwork sample_network(const SamplerConfig& config);

// Directed graph with external labels remapped to 0..N-1 in first-seen
// order. Adjacency lists are sorted and free of duplicates.
struct EdgeListGraph {
  std::vector<std::string> labels;
  graph::Adjacency adjacency;
  // Parallel to adjacency; 1.0 where the input had no weight column.
  std::vector<std::vector<double>> weights;

  std::size_t node_count() const noexcept { return adjacency.size(); }
  std::size_t edge_count() const;
};

// Whitespace-separated `source target [weight]` lines; '#' starts a
// comment line. Throws ParseError with the line number on malformed lines.
EdgeListGraph parse_edge_list(const std::string& text);
EdgeListGraph load_edge_list(const std::filesystem::path& path);
std::string to_edge_list(const EdgeListGraph& g);

// Subgraph induced by `nodes` (renumbered in the given order, labels kept).
EdgeListGraph induced_subgraph(const EdgeListGraph& g, const std::vector<std::size_t>& nodes);

// Largest strongly connected component. With a size cap below the
// component size, a strongly connected subset of exactly `size_cap` nodes
// is grown inside the component from its first node by repeatedly adding
// the shortest breadth-first ear (a path leaving and re-entering the set).
// Throws DomainError when no strongly connected subset of the requested
// size is found.
EdgeListGraph largest_scc(const EdgeListGraph& g, std::optional<std::size_t> size_cap = std::nullopt);

// Directed G(n, p) edge list with p = mean_degree / (n - 1); used when no
// real web graph is at hand.
EdgeListGraph sample_edge_list(std::size_t n, double mean_degree, std::uint64_t seed);

struct WebrankInstance {
  StochasticMatrix matrix;
  AdjustmentMask mask;
  Objective objective;
  Index target = 0;
  double self_loop_max = 0.9;
  std::uint64_t seed = 0;
};

// Every node n != target gets a self-loop of mass U(0, self_loop_max); the
// remaining mass of each row is split over the node's existing out-edges
// by a symmetric Dirichlet(1) draw. Adjustable entries: P(n, target) and
// P(n, n) for every n != target.
WebrankInstance build_webrank_instance(const EdgeListGraph& g, Index target, double self_loop_max,
                                       std::uint64_t seed);

}  // namespace smspsa
