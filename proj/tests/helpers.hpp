#pragma once

// Shared builders and independent oracles for the test suites. The oracles
// recompute expected values by direct scans, never through the library path
// they are checking.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "emtopic/citegraph.hpp"
#include "emtopic/corpus.hpp"
#include "emtopic/partition.hpp"

namespace testutil {

inline emtopic::Publication pub(std::string id, int year,
                                std::vector<std::string> refs = {},
                                std::vector<std::string> terms = {"term"},
                                emtopic::DocType type = emtopic::DocType::article) {
  emtopic::Publication p;
  p.id = std::move(id);
  p.year = year;
  p.doc_type = type;
  p.title_terms = std::move(terms);
  p.references = std::move(refs);
  return p;
}

inline emtopic::Corpus make_corpus(int year_min, int year_max,
                                   std::vector<emtopic::Publication> pubs) {
  emtopic::Corpus corpus(year_min, year_max);
  for (auto& p : pubs) corpus.add(std::move(p));
  return corpus;
}

// Graph from an explicit edge list; node ids n0, n1, ... with given years.
inline emtopic::CitationGraph make_graph(
    const std::vector<int>& years,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const int ymin = *std::min_element(years.begin(), years.end());
  const int ymax = *std::max_element(years.begin(), years.end());
  std::vector<std::vector<std::string>> refs(years.size());
  for (const auto& [a, b] : edges) {
    refs[a].push_back("n" + std::to_string(b));
  }
  std::vector<emtopic::Publication> pubs;
  for (std::size_t i = 0; i < years.size(); ++i) {
    pubs.push_back(pub("n" + std::to_string(i), years[i], refs[i]));
  }
  // zero-pad-free ids sort as n0, n1, n10, ... -- use explicit two-digit ids
  // when order matters; tests that care construct ids themselves.
  return emtopic::build_graph(make_corpus(ymin, ymax, std::move(pubs)));
}

// Ids here are zero-padded so node index i corresponds to years[i].
inline emtopic::CitationGraph make_indexed_graph(
    const std::vector<int>& years,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const int ymin = *std::min_element(years.begin(), years.end());
  const int ymax = *std::max_element(years.begin(), years.end());
  const auto name = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "n%04llu", static_cast<unsigned long long>(i));
    return std::string(buf);
  };
  std::vector<std::vector<std::string>> refs(years.size());
  for (const auto& [a, b] : edges) refs[a].push_back(name(b));
  std::vector<emtopic::Publication> pubs;
  for (std::size_t i = 0; i < years.size(); ++i) {
    pubs.push_back(pub(name(i), years[i], refs[i]));
  }
  return emtopic::build_graph(make_corpus(ymin, ymax, std::move(pubs)));
}

inline emtopic::Partition partition_of(std::vector<emtopic::ClusterId> assignment) {
  emtopic::Partition partition;
  partition.cluster_count =
      assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  partition.assignment = std::move(assignment);
  return partition;
}

// Independent recomputation of the partition quality by a plain edge scan
// over distinct unordered citation pairs.
inline double quality_oracle(const emtopic::CitationGraph& graph,
                             const emtopic::Partition& partition, double resolution) {
  std::set<std::pair<emtopic::NodeIndex, emtopic::NodeIndex>> pairs;
  for (const auto& [a, b] : graph.edges()) {
    pairs.insert({std::min(a, b), std::max(a, b)});
  }
  double intra = 0.0;
  for (const auto& [u, v] : pairs) {
    if (partition.assignment[u] == partition.assignment[v]) intra += 1.0;
  }
  std::map<emtopic::ClusterId, double> sizes;
  for (const auto c : partition.assignment) sizes[c] += 1.0;
  double penalty = 0.0;
  for (const auto& [c, s] : sizes) penalty += s * (s - 1.0) / 2.0;
  return intra - resolution * penalty;
}

// Exhaustive filtered edge scans for the citation-count queries.
inline std::int64_t within_cluster_oracle(const emtopic::CitationGraph& graph,
                                          const emtopic::Partition& partition,
                                          emtopic::ClusterId cluster) {
  std::int64_t count = 0;
  for (const auto& [a, b] : graph.edges()) {
    if (partition.assignment[a] == cluster && partition.assignment[b] == cluster) ++count;
  }
  return count;
}

inline std::int64_t windowed_oracle(const emtopic::CitationGraph& graph,
                                    const emtopic::Partition& partition,
                                    emtopic::ClusterId cluster, int t, int dt,
                                    bool cluster_only = false) {
  std::int64_t count = 0;
  for (const auto& [a, b] : graph.edges()) {
    if (partition.assignment[b] != cluster) continue;
    if (graph.year_of(b) < t || graph.year_of(b) > t + dt) continue;
    if (graph.year_of(a) < t || graph.year_of(a) > t + dt) continue;
    if (cluster_only && partition.assignment[a] != cluster) continue;
    ++count;
  }
  return count;
}

// Random simple digraph over n nodes with edge probability p; years drawn
// uniformly from [year_min, year_max].
inline emtopic::CitationGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                           int year_min, int year_max) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> year(year_min, year_max);
  std::vector<int> years(n);
  for (auto& y : years) y = year(rng);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && coin(rng) < p) edges.emplace_back(a, b);
    }
  }
  return make_indexed_graph(years, edges);
}

inline emtopic::Partition random_partition(std::mt19937_64& rng, std::size_t n,
                                           emtopic::ClusterId max_clusters) {
  std::uniform_int_distribution<emtopic::ClusterId> pick(0, max_clusters - 1);
  std::vector<emtopic::ClusterId> assignment(n);
  for (auto& c : assignment) c = pick(rng);
  return emtopic::canonicalize(partition_of(std::move(assignment)));
}

}  // namespace testutil
