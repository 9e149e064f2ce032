#include "emtopic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emtopic {

YearCounts yearly_counts(const CitationGraph& graph, const Partition& partition,
                         ClusterId cluster) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("yearly_counts: partition does not cover all graph nodes");
  }
  if (cluster >= partition.cluster_count) {
    throw std::invalid_argument("yearly_counts: unknown cluster id " +
                                std::to_string(cluster));
  }
  YearCounts counts;
  for (int y = graph.year_min(); y <= graph.year_max(); ++y) counts[y] = 0;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    if (partition.assignment[v] == cluster) {
      ++counts[graph.year_of(static_cast<NodeIndex>(v))];
    }
  }
  return counts;
}

SmoothedCounts smooth(const YearCounts& raw) {
  SmoothedCounts smoothed;
  if (raw.size() < 3) return smoothed;
  int prev_year = raw.begin()->first - 1;
  for (const auto& [year, count] : raw) {
    (void)count;
    if (year != prev_year + 1) {
      throw std::invalid_argument("smooth: raw counts must cover a contiguous year range");
    }
    prev_year = year;
  }
  const int first = raw.begin()->first;
  for (auto it = raw.begin(); it != raw.end(); ++it) {
    const int t = it->first;
    if (t < first + 2) continue;
    const double sum = static_cast<double>(raw.at(t - 2) + raw.at(t - 1) + raw.at(t));
    smoothed[t] = sum / 3.0;
  }
  return smoothed;
}

std::optional<double> growth_ratio(const SmoothedCounts& smoothed, int t, int dt) {
  const auto base = smoothed.find(t);
  const auto head = smoothed.find(t + dt);
  if (base == smoothed.end() || head == smoothed.end()) {
    throw std::out_of_range("growth_ratio: year " + std::to_string(t) + " or " +
                            std::to_string(t + dt) + " outside the smoothed range");
  }
  if (base->second == 0.0) return std::nullopt;
  return head->second / base->second;
}

double coherence(const CitationGraph& graph, const Partition& partition, ClusterId cluster,
                 std::int64_t total_pubs) {
  if (total_pubs <= 0) {
    throw std::invalid_argument("coherence: cluster has no publications");
  }
  return static_cast<double>(within_cluster_citations(graph, partition, cluster)) /
         static_cast<double>(total_pubs);
}

std::int64_t impact(const CitationGraph& graph, const Partition& partition,
                    ClusterId cluster, int t, int dt, ImpactScope scope) {
  return windowed_citations(graph, partition, cluster, t, dt, scope);
}

TopicSeries topic_series(const CitationGraph& graph, const Partition& partition,
                         ClusterId cluster) {
  TopicSeries series;
  series.cluster = cluster;
  series.raw_counts = yearly_counts(graph, partition, cluster);
  series.smoothed = smooth(series.raw_counts);
  series.total_pubs = 0;
  for (const auto& [year, count] : series.raw_counts) {
    (void)year;
    series.total_pubs += count;
  }
  series.coherence = coherence(graph, partition, cluster, series.total_pubs);
  return series;
}

std::optional<AttributeRow> max_growth_attributes(const TopicSeries& series,
                                                  const ImpactFn& impact_fn, int dt) {
  std::optional<int> best_t;
  double best_r = 0.0;
  for (const auto& [t, value] : series.smoothed) {
    (void)value;
    if (!series.smoothed.contains(t + dt)) continue;
    const auto r = growth_ratio(series.smoothed, t, dt);
    if (!r) continue;
    if (!best_t || *r > best_r) {  // ties keep the earliest year
      best_t = t;
      best_r = *r;
    }
  }
  if (!best_t) return std::nullopt;
  AttributeRow row;
  row.cluster = series.cluster;
  row.begin_year = *best_t;
  row.end_year = *best_t + dt;
  row.novelty = series.smoothed.at(*best_t);
  row.growth = best_r;
  row.impact = impact_fn(*best_t, dt);
  row.coherence = series.coherence;
  return row;
}

std::optional<AttributeRow> max_growth_attributes(const TopicSeries& series,
                                                  const CitationGraph& graph,
                                                  const Partition& partition, int dt,
                                                  ImpactScope scope) {
  return max_growth_attributes(
      series,
      [&](int t, int window) {
        return impact(graph, partition, series.cluster, t, window, scope);
      },
      dt);
}

namespace {

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats stats;
  stats.min = values.front();
  stats.max = values.front();
  double sum = 0.0;
  for (const double x : values) {
    stats.min = std::min(stats.min, x);
    stats.max = std::max(stats.max, x);
    sum += x;
  }
  stats.avg = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (const double x : values) sq += (x - stats.avg) * (x - stats.avg);
  stats.std = std::sqrt(sq / static_cast<double>(values.size()));
  return stats;
}

}  // namespace

AttributeStatistics attribute_statistics(std::span<const AttributeRow> rows) {
  if (rows.empty()) {
    throw std::invalid_argument("attribute_statistics: no attribute rows");
  }
  std::vector<double> coherence_v, growth_v, novelty_v, impact_v;
  coherence_v.reserve(rows.size());
  growth_v.reserve(rows.size());
  novelty_v.reserve(rows.size());
  impact_v.reserve(rows.size());
  for (const AttributeRow& row : rows) {
    coherence_v.push_back(row.coherence);
    growth_v.push_back(row.growth);
    novelty_v.push_back(row.novelty);
    impact_v.push_back(static_cast<double>(row.impact));
  }
  AttributeStatistics stats;
  stats.coherence = summarize(coherence_v);
  stats.growth = summarize(growth_v);
  stats.novelty = summarize(novelty_v);
  stats.impact = summarize(impact_v);
  stats.row_count = rows.size();
  return stats;
}

}  // namespace emtopic
