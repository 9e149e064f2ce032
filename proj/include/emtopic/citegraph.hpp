#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emtopic/corpus.hpp"
#include "emtopic/partition.hpp"
#include "emtopic/types.hpp"

namespace emtopic {

// Direct-citation graph over corpus-internal publications. Nodes are all
// corpus publications (isolated ones included), indexed by sorted id.
// Edges are deduplicated (citing, cited) pairs; no self-loops.
// Immutable after build; queries are pure.
class CitationGraph {
 public:
  static CitationGraph build(const Corpus& corpus);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  int year_min() const { return year_min_; }
  int year_max() const { return year_max_; }

  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<NodeIndex> index_of(std::string_view id) const;
  int year_of(NodeIndex v) const { return years_[v]; }
  const std::vector<int>& years() const { return years_; }

  // (citing, cited) pairs sorted lexicographically.
  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const { return edges_; }

  std::span<const NodeIndex> cites(NodeIndex v) const;     // out-neighbors
  std::span<const NodeIndex> cited_by(NodeIndex v) const;  // in-neighbors
  std::size_t in_degree(NodeIndex v) const;

 private:
  int year_min_ = 0;
  int year_max_ = 0;
  std::vector<std::string> ids_;  // sorted
  std::vector<int> years_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeIndex> out_adj_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeIndex> in_adj_;
};

CitationGraph build_graph(const Corpus& corpus);

// Which publications may count as citers in windowed citation queries: the
// whole corpus, or only the cited cluster itself.
enum class ImpactScope { corpus, cluster };

std::string_view to_string(ImpactScope scope);
std::optional<ImpactScope> impact_scope_from_string(std::string_view name);

// Edges whose citing and cited endpoints are both in `cluster`, all years.
// Throws std::invalid_argument for an unknown cluster id.
std::int64_t within_cluster_citations(const CitationGraph& graph,
                                      const Partition& partition, ClusterId cluster);

// Edges (a, b) with b in `cluster`, year(b) and year(a) both in [t, t+dt].
// With ImpactScope::corpus the citing side a may live in any cluster.
// Throws std::out_of_range when the window leaves the corpus year range.
std::int64_t windowed_citations(const CitationGraph& graph, const Partition& partition,
                                ClusterId cluster, int t, int dt,
                                ImpactScope scope = ImpactScope::corpus);

// One "citing_id<TAB>cited_id" line per edge.
void write_edge_list(const CitationGraph& graph, std::ostream& out);

}  // namespace emtopic
