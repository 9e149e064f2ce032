#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "emtopic/types.hpp"

namespace emtopic {

// Total assignment of graph nodes to clusters. Cluster ids are dense
// integers from 0 and every cluster is nonempty once canonicalized.
struct Partition {
  std::vector<ClusterId> assignment;  // node index -> cluster id
  ClusterId cluster_count = 0;

  ClusterId operator[](NodeIndex v) const { return assignment[v]; }
  std::size_t size() const { return assignment.size(); }
};

// Relabels clusters by first appearance in node-index order; the byte-stable
// form used for serialization and equality checks.
Partition canonicalize(const Partition& partition);

std::vector<std::vector<NodeIndex>> cluster_members(const Partition& partition);

// One "publication_id<TAB>cluster_id" line per node, ordered by id.
// `ids` must be the graph's id table (already sorted).
void write_partition(std::span<const std::string> ids, const Partition& partition,
                     std::ostream& out);
Partition read_partition(std::span<const std::string> ids, std::istream& in);

}  // namespace emtopic
