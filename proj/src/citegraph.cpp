#include "emtopic/citegraph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace emtopic {

std::string_view to_string(ImpactScope scope) {
  return scope == ImpactScope::corpus ? "corpus" : "cluster";
}

std::optional<ImpactScope> impact_scope_from_string(std::string_view name) {
  if (name == "corpus") return ImpactScope::corpus;
  if (name == "cluster") return ImpactScope::cluster;
  return std::nullopt;
}

CitationGraph CitationGraph::build(const Corpus& corpus) {
  CitationGraph graph;
  graph.year_min_ = corpus.year_min();
  graph.year_max_ = corpus.year_max();
  graph.ids_.reserve(corpus.size());
  graph.years_.reserve(corpus.size());
  std::unordered_map<std::string_view, NodeIndex> index;
  index.reserve(corpus.size());
  for (const auto& [id, pub] : corpus.publications()) {  // sorted by id
    index.emplace(id, static_cast<NodeIndex>(graph.ids_.size()));
    graph.ids_.push_back(id);
    graph.years_.push_back(pub.year);
  }

  // References were already deduplicated and stripped of self-citations at
  // corpus normalization; dangling targets are skipped here.
  for (const auto& [id, pub] : corpus.publications()) {
    const NodeIndex citing = index.at(id);
    for (const auto& ref : pub.references) {
      const auto it = index.find(ref);
      if (it != index.end()) {
        graph.edges_.emplace_back(citing, it->second);
      }
    }
  }
  std::sort(graph.edges_.begin(), graph.edges_.end());
  graph.edges_.erase(std::unique(graph.edges_.begin(), graph.edges_.end()),
                     graph.edges_.end());

  const std::size_t n = graph.ids_.size();
  std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
  for (const auto& [a, b] : graph.edges_) {
    ++out_deg[a];
    ++in_deg[b];
  }
  graph.out_offsets_.assign(n + 1, 0);
  graph.in_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    graph.out_offsets_[v + 1] = graph.out_offsets_[v] + out_deg[v];
    graph.in_offsets_[v + 1] = graph.in_offsets_[v] + in_deg[v];
  }
  graph.out_adj_.resize(graph.edges_.size());
  graph.in_adj_.resize(graph.edges_.size());
  std::vector<std::size_t> out_pos(graph.out_offsets_.begin(), graph.out_offsets_.end() - 1);
  std::vector<std::size_t> in_pos(graph.in_offsets_.begin(), graph.in_offsets_.end() - 1);
  for (const auto& [a, b] : graph.edges_) {
    graph.out_adj_[out_pos[a]++] = b;
    graph.in_adj_[in_pos[b]++] = a;
  }
  return graph;
}

std::optional<NodeIndex> CitationGraph::index_of(std::string_view id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

std::span<const NodeIndex> CitationGraph::cites(NodeIndex v) const {
  return {out_adj_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeIndex> CitationGraph::cited_by(NodeIndex v) const {
  return {in_adj_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::size_t CitationGraph::in_degree(NodeIndex v) const {
  return in_offsets_[v + 1] - in_offsets_[v];
}

CitationGraph build_graph(const Corpus& corpus) { return CitationGraph::build(corpus); }

namespace {

void check_cluster(const CitationGraph& graph, const Partition& partition,
                   ClusterId cluster) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("partition does not cover all graph nodes");
  }
  if (cluster >= partition.cluster_count) {
    throw std::invalid_argument("unknown cluster id " + std::to_string(cluster));
  }
}

}  // namespace

std::int64_t within_cluster_citations(const CitationGraph& graph,
                                      const Partition& partition, ClusterId cluster) {
  check_cluster(graph, partition, cluster);
  std::int64_t count = 0;
  for (const auto& [a, b] : graph.edges()) {
    if (partition[a] == cluster && partition[b] == cluster) ++count;
  }
  return count;
}

std::int64_t windowed_citations(const CitationGraph& graph, const Partition& partition,
                                ClusterId cluster, int t, int dt, ImpactScope scope) {
  check_cluster(graph, partition, cluster);
  if (dt < 0 || t < graph.year_min() || t + dt > graph.year_max()) {
    throw std::out_of_range("citation window [" + std::to_string(t) + ", " +
                            std::to_string(t + dt) + "] outside corpus years [" +
                            std::to_string(graph.year_min()) + ", " +
                            std::to_string(graph.year_max()) + "]");
  }
  const int t_end = t + dt;
  std::int64_t count = 0;
  for (const auto& [a, b] : graph.edges()) {
    if (partition[b] != cluster) continue;
    const int yb = graph.year_of(b);
    if (yb < t || yb > t_end) continue;
    const int ya = graph.year_of(a);
    if (ya < t || ya > t_end) continue;
    if (scope == ImpactScope::cluster && partition[a] != cluster) continue;
    ++count;
  }
  return count;
}

void write_edge_list(const CitationGraph& graph, std::ostream& out) {
  for (const auto& [a, b] : graph.edges()) {
    out << graph.ids()[a] << '\t' << graph.ids()[b] << '\n';
  }
}

}  // namespace emtopic
