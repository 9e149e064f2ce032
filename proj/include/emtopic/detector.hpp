#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emtopic/citegraph.hpp"
#include "emtopic/metrics.hpp"

namespace emtopic {

struct EmergenceParams {
  std::string name = "custom";
  int dt = 2;
  double r_min = 2.0;
  double p_max = 100.0;
  std::int64_t c_min = 1500;
  double h_min = 1.0;
};

// The two shipped presets.
EmergenceParams set1_params();  // dt=2, r_min=2, p_max=100, c_min=1500, h_min=1
EmergenceParams set2_params();  // dt=5, r_min=5, p_max=100, c_min=2500, h_min=1

struct CriterionFlags {
  bool growth = false;
  bool novelty = false;
  bool impact = false;
  bool coherence = false;

  bool all() const { return growth && novelty && impact && coherence; }
  bool operator==(const CriterionFlags&) const = default;
};

struct EmergenceVerdict {
  ClusterId cluster = 0;
  bool emerging = false;
  std::int64_t total_pubs = 0;
  // Attributes at the first emergent period when emerging; otherwise at the
  // best candidate year, absent if growth is undefined there.
  std::optional<AttributeRow> attributes;
  CriterionFlags criteria;            // evaluated at begin/best candidate year
  std::optional<int> candidate_year;  // the year `criteria` refers to
  std::vector<int> emergent_years;    // every satisfying start year
};

// Scans candidate start years ascending and returns the first one where all
// four criteria hold simultaneously. Non-emergence is a verdict, not an error.
EmergenceVerdict evaluate_topic(const TopicSeries& series, const ImpactFn& impact_fn,
                                const EmergenceParams& params);
EmergenceVerdict evaluate_topic(const TopicSeries& series, const CitationGraph& graph,
                                const Partition& partition, const EmergenceParams& params,
                                ImpactScope scope = ImpactScope::corpus);

struct EmergenceReport {
  EmergenceParams params;
  ImpactScope impact_scope = ImpactScope::corpus;
  std::vector<EmergenceVerdict> verdicts;  // one per cluster, ascending id
  std::size_t emerging_count = 0;
  // Max-growth attribute rows over all clusters that have a valid window,
  // plus their summary statistics. Feeds the per-attribute statistics table.
  std::vector<AttributeRow> max_growth_rows;
  std::optional<AttributeStatistics> statistics;
};

EmergenceReport detect_all(const CitationGraph& graph, const Partition& partition,
                           const EmergenceParams& params,
                           ImpactScope scope = ImpactScope::corpus);

}  // namespace emtopic
