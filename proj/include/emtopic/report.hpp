#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "emtopic/citegraph.hpp"
#include "emtopic/corpus.hpp"
#include "emtopic/detector.hpp"

namespace emtopic {

struct TopicLabel {
  ClusterId cluster = 0;
  std::vector<std::string> top_terms;  // most frequent, ties lexicographic
  std::vector<std::string> top_cited;  // highest in-degree, ties year then id
};

std::vector<TopicLabel> label_topics(const Corpus& corpus, const CitationGraph& graph,
                                     const Partition& partition, std::size_t k_terms,
                                     std::size_t k_pubs);

// Tab-separated, columns cluster, begin, end, novelty, growth, impact,
// coherence; two decimals for the real-valued attributes.
void write_attribute_table(std::span<const AttributeRow> rows, std::ostream& out);

// Per-attribute avg/max/min/std rows for one parameter set.
void write_statistics_table(const EmergenceReport& report, std::ostream& out);

// Human-readable report: parameter block plus one row per emerging topic.
// `labels` may be empty. `verbose` appends every satisfying start year.
void write_report_text(const EmergenceReport& report, std::span<const TopicLabel> labels,
                       std::ostream& out, bool verbose = false);

// Machine-readable line-delimited records: a params record followed by one
// verdict record per cluster, full precision.
void write_report_jsonl(const EmergenceReport& report, std::ostream& out);

// Re-reads the cluster ids (and emerging flags) of a report_*.jsonl file.
struct ReportSummary {
  EmergenceParams params;
  std::vector<ClusterId> emerging_clusters;
};
ReportSummary read_report_jsonl(std::istream& in);

void write_labels(std::span<const TopicLabel> labels, std::ostream& out);

// Long-format plot data for the emerging topics: cluster, year, count.
void write_trend_data(std::span<const TopicSeries> series, std::ostream& out);

}  // namespace emtopic
