#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>

#include "emtopic/citegraph.hpp"
#include "emtopic/partition.hpp"

namespace emtopic {

using YearCounts = std::map<int, std::int64_t>;
// Trailing 3-year means; keys only for years where the mean is defined.
using SmoothedCounts = std::map<int, double>;

struct TopicSeries {
  ClusterId cluster = 0;
  YearCounts raw_counts;    // every year of the corpus range, zeros included
  SmoothedCounts smoothed;  // defined from year_min + 2 onwards
  std::int64_t total_pubs = 0;
  double coherence = 0.0;
};

struct AttributeRow {
  ClusterId cluster = 0;
  int begin_year = 0;
  int end_year = 0;  // begin_year + dt
  double novelty = 0.0;
  double growth = 0.0;
  std::int64_t impact = 0;
  double coherence = 0.0;
};

// Publications of `cluster` per year; zero-filled across the corpus range.
YearCounts yearly_counts(const CitationGraph& graph, const Partition& partition,
                         ClusterId cluster);

// smoothed(t) = (raw(t-2) + raw(t-1) + raw(t)) / 3 for t >= first_year + 2.
// `raw` must cover a contiguous year range.
SmoothedCounts smooth(const YearCounts& raw);

// smoothed(t+dt) / smoothed(t). Empty when the baseline smoothed(t) is zero.
// Throws std::out_of_range when t or t+dt has no smoothed value.
std::optional<double> growth_ratio(const SmoothedCounts& smoothed, int t, int dt);

// within-cluster citations / total publications. Throws on total_pubs <= 0.
double coherence(const CitationGraph& graph, const Partition& partition,
                 ClusterId cluster, std::int64_t total_pubs);

// Citations received in [t, t+dt] by the cluster's publications published in
// that window; delegates to windowed_citations.
std::int64_t impact(const CitationGraph& graph, const Partition& partition,
                    ClusterId cluster, int t, int dt,
                    ImpactScope scope = ImpactScope::corpus);

// Raw counts, smoothing, totals and coherence for one cluster.
TopicSeries topic_series(const CitationGraph& graph, const Partition& partition,
                         ClusterId cluster);

// Citation count for a window [t, t+dt]; lets callers swap in an indexed
// counter or a table of published values for the live graph query.
using ImpactFn = std::function<std::int64_t(int t, int dt)>;

// Attribute row at the year of maximum growth (ties -> earliest year).
// Empty when no (t, t+dt) pair has a defined growth ratio.
std::optional<AttributeRow> max_growth_attributes(const TopicSeries& series,
                                                  const ImpactFn& impact_fn, int dt);
std::optional<AttributeRow> max_growth_attributes(const TopicSeries& series,
                                                  const CitationGraph& graph,
                                                  const Partition& partition, int dt,
                                                  ImpactScope scope = ImpactScope::corpus);

struct SummaryStats {
  double avg = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std = 0.0;  // population standard deviation
};

struct AttributeStatistics {
  SummaryStats coherence;
  SummaryStats growth;
  SummaryStats novelty;
  SummaryStats impact;
  std::size_t row_count = 0;
};

// Throws std::invalid_argument on empty input.
AttributeStatistics attribute_statistics(std::span<const AttributeRow> rows);

}  // namespace emtopic
