#include "emtopic/cluster.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

namespace emtopic {

namespace {

// Undirected weighted view used by the optimizer. Super-nodes carry the
// number of original publications they stand for; weight fully inside a
// super-node is kept so the quality of an aggregated partition equals the
// quality of its projection onto the original graph.
struct UGraph {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> node_size;
  std::vector<double> self_weight;
  std::vector<std::size_t> offsets;                     // CSR, size n+1
  std::vector<std::pair<std::uint32_t, double>> arcs;   // both directions stored
};

UGraph build_csr(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
                 const std::vector<double>* pair_weights = nullptr) {
  UGraph g;
  g.n = n;
  g.node_size.assign(n, 1);
  g.self_weight.assign(n, 0.0);
  std::vector<double> weights;
  if (pair_weights) {
    weights = *pair_weights;
  } else {
    weights.assign(pairs.size(), 1.0);
  }
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : pairs) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + deg[v];
  g.arcs.resize(g.offsets[n]);
  std::vector<std::size_t> pos(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    g.arcs[pos[u]++] = {v, weights[i]};
    g.arcs[pos[v]++] = {u, weights[i]};
  }
  return g;
}

// Distinct unordered citation pairs, weight 1 each.
std::vector<std::pair<std::uint32_t, std::uint32_t>> undirected_pairs(
    const CitationGraph& graph) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(graph.edge_count());
  for (const auto& [a, b] : graph.edges()) {
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

UGraph base_ugraph(const CitationGraph& graph) {
  return build_csr(static_cast<std::uint32_t>(graph.node_count()), undirected_pairs(graph));
}

double ugraph_quality(const UGraph& g, const std::vector<ClusterId>& part, double gamma) {
  double intra = 0.0;
  for (std::uint32_t u = 0; u < g.n; ++u) {
    intra += g.self_weight[u];
    for (std::size_t i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
      const auto& [v, w] = g.arcs[i];
      if (u < v && part[u] == part[v]) intra += w;
    }
  }
  std::vector<double> cluster_size(g.n, 0.0);
  for (std::uint32_t u = 0; u < g.n; ++u) cluster_size[part[u]] += g.node_size[u];
  double penalty = 0.0;
  for (double s : cluster_size) penalty += s * (s - 1.0) / 2.0;
  return intra - gamma * penalty;
}

struct MoveState {
  std::vector<ClusterId> part;
  std::vector<double> cluster_size;    // original-node count per cluster
  std::vector<std::uint32_t> members;  // super-node count per cluster
  std::vector<ClusterId> free_ids;
};

MoveState singleton_state(const UGraph& g) {
  MoveState s;
  s.part.resize(g.n);
  std::iota(s.part.begin(), s.part.end(), 0);
  s.cluster_size.assign(g.n, 0.0);
  s.members.assign(g.n, 0);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    s.cluster_size[v] = g.node_size[v];
    s.members[v] = 1;
  }
  return s;
}

MoveState state_from(const UGraph& g, const std::vector<ClusterId>& part) {
  MoveState s;
  s.part = part;
  s.cluster_size.assign(g.n, 0.0);
  s.members.assign(g.n, 0);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    s.cluster_size[part[v]] += g.node_size[v];
    ++s.members[part[v]];
  }
  for (ClusterId c = g.n; c-- > 0;) {
    if (s.members[c] == 0) s.free_ids.push_back(c);
  }
  return s;
}

// Randomized-order single-node moves until a full pass gains no more than
// min_improvement. Exact ties keep the current cluster. Returns whether any
// move happened.
bool local_moving(const UGraph& g, MoveState& s, double gamma, double min_improvement,
                  std::mt19937_64& rng) {
  if (g.n == 0) return false;
  std::vector<std::uint32_t> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> weight_to(g.n, 0.0);
  std::vector<ClusterId> touched;
  bool any_move = false;
  while (true) {
    std::shuffle(order.begin(), order.end(), rng);
    double pass_gain = 0.0;
    for (const std::uint32_t v : order) {
      const ClusterId current = s.part[v];
      touched.clear();
      for (std::size_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
        const auto& [nb, w] = g.arcs[i];
        const ClusterId c = s.part[nb];
        if (weight_to[c] == 0.0) touched.push_back(c);
        weight_to[c] += w;
      }
      const double size_v = g.node_size[v];
      const double current_score =
          weight_to[current] - gamma * size_v * (s.cluster_size[current] - size_v);
      ClusterId best = current;
      double best_score = current_score;
      for (const ClusterId c : touched) {
        if (c == current) continue;
        const double score = weight_to[c] - gamma * size_v * s.cluster_size[c];
        if (score > best_score) {
          best = c;
          best_score = score;
        }
      }
      // Splitting off into a fresh singleton cluster scores exactly 0.
      bool to_fresh = false;
      if (best_score < 0.0 && s.members[current] > 1 && !s.free_ids.empty()) {
        best = s.free_ids.back();
        best_score = 0.0;
        to_fresh = true;
      }
      for (const ClusterId c : touched) weight_to[c] = 0.0;
      if (best == current) continue;

      pass_gain += best_score - current_score;
      any_move = true;
      if (to_fresh) s.free_ids.pop_back();
      s.cluster_size[current] -= size_v;
      if (--s.members[current] == 0) s.free_ids.push_back(current);
      s.cluster_size[best] += size_v;
      ++s.members[best];
      s.part[v] = best;
    }
    if (pass_gain <= min_improvement) break;
  }
  return any_move;
}

struct Refinement {
  std::vector<ClusterId> sub_of;    // node -> subcluster, dense from 0
  std::vector<ClusterId> group_of;  // subcluster -> cluster it came from
  std::uint32_t sub_count = 0;
};

// Splits every cluster by locally moving inside its induced subgraph,
// starting from singletons.
Refinement refine(const UGraph& g, const std::vector<ClusterId>& part, double gamma,
                  double min_improvement, std::mt19937_64& rng) {
  std::vector<std::vector<std::uint32_t>> members(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) members[part[v]].push_back(v);

  Refinement out;
  out.sub_of.assign(g.n, 0);
  std::vector<std::uint32_t> local_index(g.n, 0);
  for (ClusterId c = 0; c < g.n; ++c) {
    const auto& nodes = members[c];
    if (nodes.empty()) continue;
    if (nodes.size() == 1) {
      out.sub_of[nodes[0]] = out.sub_count;
      out.group_of.push_back(c);
      ++out.sub_count;
      continue;
    }
    for (std::uint32_t i = 0; i < nodes.size(); ++i) local_index[nodes[i]] = i;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<double> weights;
    std::vector<std::uint32_t> sizes(nodes.size());
    std::vector<double> selfs(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      const std::uint32_t v = nodes[i];
      sizes[i] = g.node_size[v];
      selfs[i] = g.self_weight[v];
      for (std::size_t a = g.offsets[v]; a < g.offsets[v + 1]; ++a) {
        const auto& [nb, w] = g.arcs[a];
        if (part[nb] == c && v < nb) {
          pairs.emplace_back(i, local_index[nb]);
          weights.push_back(w);
        }
      }
    }
    UGraph induced =
        build_csr(static_cast<std::uint32_t>(nodes.size()), std::move(pairs), &weights);
    induced.node_size = std::move(sizes);
    induced.self_weight = std::move(selfs);

    MoveState state = singleton_state(induced);
    local_moving(induced, state, gamma, min_improvement, rng);

    // Relabel subclusters by first appearance in local order.
    constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
    std::vector<ClusterId> relabel(induced.n, kUnset);
    ClusterId local_count = 0;
    for (std::uint32_t i = 0; i < induced.n; ++i) {
      ClusterId& slot = relabel[state.part[i]];
      if (slot == kUnset) {
        slot = out.sub_count + local_count;
        out.group_of.push_back(c);
        ++local_count;
      }
      out.sub_of[nodes[i]] = slot;
    }
    out.sub_count += local_count;
  }
  return out;
}

// Collapses each subcluster into one super-node. The returned partition
// groups super-nodes by the cluster their subcluster came from, so quality
// is preserved across the aggregation.
std::pair<UGraph, std::vector<ClusterId>> aggregate(const UGraph& g,
                                                    const Refinement& ref) {
  std::vector<std::uint32_t> size(ref.sub_count, 0);
  std::vector<double> self_w(ref.sub_count, 0.0);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    size[ref.sub_of[v]] += g.node_size[v];
    self_w[ref.sub_of[v]] += g.self_weight[v];
  }
  std::vector<std::pair<std::uint64_t, double>> acc;  // packed (su,sv) -> weight
  for (std::uint32_t u = 0; u < g.n; ++u) {
    for (std::size_t i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
      const auto& [v, w] = g.arcs[i];
      if (u >= v) continue;
      const ClusterId su = ref.sub_of[u];
      const ClusterId sv = ref.sub_of[v];
      if (su == sv) {
        self_w[su] += w;
      } else {
        const std::uint64_t key = (static_cast<std::uint64_t>(std::min(su, sv)) << 32) |
                                  std::max(su, sv);
        acc.emplace_back(key, w);
      }
    }
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<double> weights;
  for (std::size_t i = 0; i < acc.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < acc.size() && acc[j].first == acc[i].first) w += acc[j++].second;
    pairs.emplace_back(static_cast<std::uint32_t>(acc[i].first >> 32),
                       static_cast<std::uint32_t>(acc[i].first & 0xffffffffu));
    weights.push_back(w);
    i = j;
  }
  UGraph agg = build_csr(ref.sub_count, std::move(pairs), &weights);
  agg.node_size = std::move(size);
  agg.self_weight = std::move(self_w);

  // Group labels come from the previous level's id space; relabel densely so
  // they are valid cluster ids on the aggregated graph.
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> relabel(g.n, kUnset);
  std::vector<ClusterId> grouped(ref.sub_count);
  ClusterId next = 0;
  for (std::uint32_t s = 0; s < ref.sub_count; ++s) {
    ClusterId& slot = relabel[ref.group_of[s]];
    if (slot == kUnset) slot = next++;
    grouped[s] = slot;
  }
  return {std::move(agg), std::move(grouped)};
}

// One bottom-up sweep: local moving, cluster splitting, aggregation, repeat
// on the coarser graph until nothing moves. Starts from `initial` on the
// base graph and returns the projected partition.
std::vector<ClusterId> multilevel_pass(const UGraph& base, std::vector<ClusterId> initial,
                                       double gamma, double min_improvement,
                                       std::mt19937_64& rng, std::vector<double>* trace) {
  UGraph g = base;
  std::vector<std::uint32_t> node_of(base.n);  // original node -> current super-node
  std::iota(node_of.begin(), node_of.end(), 0);
  MoveState state = state_from(g, initial);

  while (true) {
    const bool moved = local_moving(g, state, gamma, min_improvement, rng);
    if (trace) trace->push_back(ugraph_quality(g, state.part, gamma));
    if (!moved) break;
    const std::uint32_t cluster_count =
        static_cast<std::uint32_t>(g.n - state.free_ids.size());
    if (cluster_count == g.n) break;  // all singletons, nothing to collapse

    const Refinement ref = refine(g, state.part, gamma, min_improvement, rng);
    if (ref.sub_count == g.n) break;  // no compression possible

    auto [agg, grouped] = aggregate(g, ref);
    for (auto& v : node_of) v = ref.sub_of[v];
    g = std::move(agg);
    state = state_from(g, grouped);
  }

  std::vector<ClusterId> result(base.n);
  for (std::uint32_t v = 0; v < base.n; ++v) result[v] = state.part[node_of[v]];
  return result;
}

// Aggregation can freeze a node inside a super-node that a finer move would
// later want to split; re-running the sweep from the projected partition on
// the original graph undoes such merges. Iterate until quality stalls.
std::vector<ClusterId> run_once(const UGraph& base, double gamma, double min_improvement,
                                std::mt19937_64& rng, std::vector<double>* trace) {
  std::vector<ClusterId> part(base.n);
  std::iota(part.begin(), part.end(), 0);
  double q_prev = ugraph_quality(base, part, gamma);
  constexpr int kMaxPasses = 64;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::vector<ClusterId> next =
        multilevel_pass(base, std::move(part), gamma, min_improvement, rng, trace);
    // relabel densely so the next pass can reuse the ids
    Partition dense;
    dense.assignment = std::move(next);
    dense.cluster_count = base.n;
    part = canonicalize(dense).assignment;
    const double q = ugraph_quality(base, part, gamma);
    if (q <= q_prev + min_improvement) break;
    q_prev = q;
  }
  return part;
}

}  // namespace

double quality(const CitationGraph& graph, const Partition& partition, double resolution) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("quality: partition does not cover all graph nodes");
  }
  std::int64_t intra = 0;
  for (const auto& [u, v] : undirected_pairs(graph)) {
    if (partition.assignment[u] == partition.assignment[v]) ++intra;
  }
  std::vector<double> cluster_size(partition.cluster_count, 0.0);
  for (const ClusterId c : partition.assignment) cluster_size[c] += 1.0;
  double penalty = 0.0;
  for (double s : cluster_size) penalty += s * (s - 1.0) / 2.0;
  return static_cast<double>(intra) - resolution * penalty;
}

Partition cluster_graph(const CitationGraph& graph, const ClusterParams& params,
                        std::vector<std::vector<double>>* quality_traces) {
  if (graph.node_count() == 0) {
    throw std::invalid_argument("cluster_graph: graph is empty");
  }
  if (params.resolution <= 0.0) {
    throw std::invalid_argument("cluster_graph: resolution must be positive");
  }
  if (params.max_iterations < 1) {
    throw std::invalid_argument("cluster_graph: max_iterations must be >= 1");
  }
  if (params.min_improvement < 0.0) {
    throw std::invalid_argument("cluster_graph: min_improvement must be >= 0");
  }
  const UGraph base = base_ugraph(graph);
  if (quality_traces) quality_traces->clear();

  std::vector<ClusterId> best;
  double best_quality = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < params.max_iterations; ++restart) {
    std::mt19937_64 rng(params.seed + 0x9e3779b97f4a7c15ull * (restart + 1));
    std::vector<double> trace;
    std::vector<ClusterId> part =
        run_once(base, params.resolution, params.min_improvement, rng,
                 quality_traces ? &trace : nullptr);
    if (quality_traces) quality_traces->push_back(std::move(trace));
    const double q = ugraph_quality(base, part, params.resolution);
    if (q > best_quality) {  // ties keep the earlier restart
      best_quality = q;
      best = std::move(part);
    }
  }

  Partition partition;
  partition.assignment = std::move(best);
  partition.cluster_count = static_cast<ClusterId>(graph.node_count());
  return canonicalize(partition);
}

Partition brute_force_partition(const CitationGraph& graph, double resolution) {
  const std::size_t n = graph.node_count();
  if (n == 0 || n > 12) {
    throw std::invalid_argument("brute_force_partition: node count must be in [1, 12]");
  }
  const auto pairs = undirected_pairs(graph);

  // Restricted-growth strings enumerate every set partition exactly once, in
  // lexicographic order; the first maximum found is the canonical tie-break.
  std::vector<ClusterId> a(n, 0);  // current assignment
  std::vector<ClusterId> b(n, 1);  // b[i] = 1 + max(a[0..i-1]), valid for i >= 1
  std::vector<ClusterId> best(a);
  double best_quality = -std::numeric_limits<double>::infinity();
  std::vector<double> cluster_size(n);

  while (true) {
    double intra = 0.0;
    for (const auto& [u, v] : pairs) {
      if (a[u] == a[v]) intra += 1.0;
    }
    std::fill(cluster_size.begin(), cluster_size.end(), 0.0);
    for (const ClusterId c : a) cluster_size[c] += 1.0;
    double penalty = 0.0;
    for (const double s : cluster_size) penalty += s * (s - 1.0) / 2.0;
    const double q = intra - resolution * penalty;
    if (q > best_quality) {
      best_quality = q;
      best = a;
    }

    // next restricted-growth string
    std::size_t i = n - 1;
    while (i >= 1 && a[i] == b[i]) --i;
    if (i == 0) break;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      b[j] = std::max(b[j - 1], static_cast<ClusterId>(a[j - 1] + 1));
    }
  }

  Partition partition;
  partition.assignment = std::move(best);
  partition.cluster_count = static_cast<ClusterId>(n);
  return canonicalize(partition);
}

}  // namespace emtopic
