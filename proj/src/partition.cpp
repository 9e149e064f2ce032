#include "emtopic/partition.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace emtopic {

Partition canonicalize(const Partition& partition) {
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> relabel(
      std::max<std::size_t>(partition.cluster_count, partition.assignment.size()), kUnset);
  Partition out;
  out.assignment.resize(partition.assignment.size());
  ClusterId next = 0;
  for (std::size_t v = 0; v < partition.assignment.size(); ++v) {
    const ClusterId old_id = partition.assignment[v];
    if (old_id >= relabel.size()) {
      throw std::invalid_argument("canonicalize: cluster id out of range");
    }
    if (relabel[old_id] == kUnset) {
      relabel[old_id] = next++;
    }
    out.assignment[v] = relabel[old_id];
  }
  out.cluster_count = next;
  return out;
}

std::vector<std::vector<NodeIndex>> cluster_members(const Partition& partition) {
  std::vector<std::vector<NodeIndex>> members(partition.cluster_count);
  for (std::size_t v = 0; v < partition.assignment.size(); ++v) {
    const ClusterId c = partition.assignment[v];
    if (c >= partition.cluster_count) {
      throw std::invalid_argument("cluster_members: assignment exceeds cluster_count");
    }
    members[c].push_back(static_cast<NodeIndex>(v));
  }
  return members;
}

void write_partition(std::span<const std::string> ids, const Partition& partition,
                     std::ostream& out) {
  if (ids.size() != partition.assignment.size()) {
    throw std::invalid_argument("write_partition: id table and assignment differ in size");
  }
  for (std::size_t v = 0; v < ids.size(); ++v) {
    out << ids[v] << '\t' << partition.assignment[v] << '\n';
  }
}

Partition read_partition(std::span<const std::string> ids, std::istream& in) {
  std::unordered_map<std::string_view, NodeIndex> index;
  index.reserve(ids.size());
  for (std::size_t v = 0; v < ids.size(); ++v) {
    index.emplace(ids[v], static_cast<NodeIndex>(v));
  }
  Partition partition;
  partition.assignment.assign(ids.size(), 0);
  std::vector<bool> seen(ids.size(), false);
  std::string line;
  std::size_t line_no = 0;
  ClusterId max_id = 0;
  std::size_t assigned = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("partition line " + std::to_string(line_no) + ": missing tab");
    }
    const std::string_view id(line.data(), tab);
    const auto it = index.find(id);
    if (it == index.end()) {
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": unknown publication id '" + std::string(id) + "'");
    }
    ClusterId cluster = 0;
    try {
      cluster = static_cast<ClusterId>(std::stoul(line.substr(tab + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": bad cluster id");
    }
    if (seen[it->second]) {
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": duplicate assignment for '" + std::string(id) + "'");
    }
    seen[it->second] = true;
    partition.assignment[it->second] = cluster;
    max_id = std::max(max_id, cluster);
    ++assigned;
  }
  if (assigned != ids.size()) {
    throw std::runtime_error("partition does not cover all graph nodes (" +
                             std::to_string(assigned) + " of " + std::to_string(ids.size()) +
                             ")");
  }
  partition.cluster_count = ids.empty() ? 0 : max_id + 1;
  return canonicalize(partition);
}

}  // namespace emtopic
