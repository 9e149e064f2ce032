#pragma once

#include <cstdint>
#include <vector>

#include "emtopic/citegraph.hpp"
#include "emtopic/partition.hpp"

namespace emtopic {

struct ClusterParams {
  // Larger values give finer clusters. The default lands near one cluster
  // per thousand publications on citation graphs of typical density.
  double resolution = 0.0005;
  std::uint64_t seed = 1;
  int max_iterations = 10;  // restarts of the local-moving heuristic
  double min_improvement = 1e-9;
};

// Constant-Potts quality: intra-cluster undirected edge count minus
// resolution * sum over clusters of n_c*(n_c-1)/2. Directed edges are
// symmetrized with weight 1 per distinct unordered pair.
double quality(const CitationGraph& graph, const Partition& partition,
               double resolution);

// Iterated local moving with cluster-splitting refinement and multi-level
// aggregation, restarted `max_iterations` times keeping the best partition
// (ties -> lowest restart index). Deterministic for a fixed seed.
// `quality_traces`, when given, receives one per-level quality sequence per
// restart; each sequence is nondecreasing.
Partition cluster_graph(const CitationGraph& graph, const ClusterParams& params,
                        std::vector<std::vector<double>>* quality_traces = nullptr);

// Exhaustive set-partition search, node count <= 12. Ties broken by the
// lexicographically smallest restricted-growth assignment.
Partition brute_force_partition(const CitationGraph& graph, double resolution);

}  // namespace emtopic
