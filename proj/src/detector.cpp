#include "emtopic/detector.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace emtopic {

EmergenceParams set1_params() { return {"set1", 2, 2.0, 100.0, 1500, 1.0}; }
EmergenceParams set2_params() { return {"set2", 5, 5.0, 100.0, 2500, 1.0}; }

namespace {

int criteria_count(const CriterionFlags& flags) {
  return static_cast<int>(flags.growth) + static_cast<int>(flags.novelty) +
         static_cast<int>(flags.impact) + static_cast<int>(flags.coherence);
}

AttributeRow make_row(const TopicSeries& series, int t, int dt, double growth,
                      std::int64_t impact_value) {
  AttributeRow row;
  row.cluster = series.cluster;
  row.begin_year = t;
  row.end_year = t + dt;
  row.novelty = series.smoothed.at(t);
  row.growth = growth;
  row.impact = impact_value;
  row.coherence = series.coherence;
  return row;
}

}  // namespace

EmergenceVerdict evaluate_topic(const TopicSeries& series, const ImpactFn& impact_fn,
                                const EmergenceParams& params) {
  if (params.dt < 1) throw std::invalid_argument("evaluate_topic: dt must be >= 1");
  if (params.r_min <= 0.0) throw std::invalid_argument("evaluate_topic: r_min must be > 0");

  EmergenceVerdict verdict;
  verdict.cluster = series.cluster;
  verdict.total_pubs = series.total_pubs;
  const bool coherent = series.coherence >= params.h_min;

  // Diagnostics for the non-emerging case: the candidate year satisfying the
  // most criteria, earliest on ties.
  int best_count = -1;
  std::optional<int> best_year;
  CriterionFlags best_flags;
  std::optional<AttributeRow> best_row;

  for (const auto& [t, baseline] : series.smoothed) {
    if (!series.smoothed.contains(t + params.dt)) continue;
    const auto ratio = growth_ratio(series.smoothed, t, params.dt);
    const std::int64_t cited = impact_fn(t, params.dt);

    CriterionFlags flags;
    flags.growth = ratio.has_value() && *ratio >= params.r_min;
    flags.novelty = baseline <= params.p_max;
    flags.impact = cited >= params.c_min;
    flags.coherence = coherent;

    if (flags.all()) {
      verdict.emergent_years.push_back(t);
      if (!verdict.emerging) {  // first emergent period
        verdict.emerging = true;
        verdict.attributes = make_row(series, t, params.dt, *ratio, cited);
        verdict.criteria = flags;
        verdict.candidate_year = t;
      }
      continue;
    }
    if (!verdict.emerging && criteria_count(flags) > best_count) {
      best_count = criteria_count(flags);
      best_year = t;
      best_flags = flags;
      if (ratio) {
        best_row = make_row(series, t, params.dt, *ratio, cited);
      } else {
        best_row.reset();
      }
    }
  }

  if (!verdict.emerging) {
    verdict.criteria = best_flags;
    verdict.candidate_year = best_year;
    verdict.attributes = best_row;
    if (!best_year) {
      // No candidate window at all; only the time-independent criterion is
      // meaningful.
      verdict.criteria.coherence = coherent;
    }
  }
  return verdict;
}

EmergenceVerdict evaluate_topic(const TopicSeries& series, const CitationGraph& graph,
                                const Partition& partition, const EmergenceParams& params,
                                ImpactScope scope) {
  return evaluate_topic(
      series,
      [&](int t, int dt) {
        return windowed_citations(graph, partition, series.cluster, t, dt, scope);
      },
      params);
}

namespace {

// Per-cluster citation index so detect_all touches every edge a constant
// number of times instead of rescanning the graph per (cluster, year) query.
struct ClusterCitations {
  // (citing year, cited year, citing is intra-cluster) per in-edge
  std::vector<std::tuple<int, int, bool>> in_edges;
  std::int64_t within = 0;
};

}  // namespace

EmergenceReport detect_all(const CitationGraph& graph, const Partition& partition,
                           const EmergenceParams& params, ImpactScope scope) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("detect_all: partition does not cover all graph nodes");
  }
  EmergenceReport report;
  report.params = params;
  report.impact_scope = scope;

  const ClusterId k = partition.cluster_count;
  std::vector<ClusterCitations> citations(k);
  for (const auto& [a, b] : graph.edges()) {
    ClusterCitations& target = citations[partition[b]];
    const bool intra = partition[a] == partition[b];
    target.in_edges.emplace_back(graph.year_of(a), graph.year_of(b), intra);
    if (intra) ++target.within;
  }

  std::vector<std::vector<int>> member_years(k);
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    member_years[partition.assignment[v]].push_back(
        graph.year_of(static_cast<NodeIndex>(v)));
  }

  report.verdicts.reserve(k);
  for (ClusterId c = 0; c < k; ++c) {
    TopicSeries series;
    series.cluster = c;
    for (int y = graph.year_min(); y <= graph.year_max(); ++y) series.raw_counts[y] = 0;
    for (const int y : member_years[c]) ++series.raw_counts[y];
    series.total_pubs = static_cast<std::int64_t>(member_years[c].size());
    series.smoothed = smooth(series.raw_counts);
    series.coherence = series.total_pubs > 0
                           ? static_cast<double>(citations[c].within) /
                                 static_cast<double>(series.total_pubs)
                           : 0.0;

    const auto impact_fn = [&](int t, int dt) {
      const int t_end = t + dt;
      std::int64_t count = 0;
      for (const auto& [ya, yb, intra] : citations[c].in_edges) {
        if (yb < t || yb > t_end || ya < t || ya > t_end) continue;
        if (scope == ImpactScope::cluster && !intra) continue;
        ++count;
      }
      return count;
    };

    EmergenceVerdict verdict = evaluate_topic(series, impact_fn, params);
    if (verdict.emerging) ++report.emerging_count;
    report.verdicts.push_back(std::move(verdict));

    if (auto row = max_growth_attributes(series, impact_fn, params.dt)) {
      report.max_growth_rows.push_back(*row);
    }
  }

  if (!report.max_growth_rows.empty()) {
    report.statistics = attribute_statistics(report.max_growth_rows);
  }
  return report;
}

}  // namespace emtopic
