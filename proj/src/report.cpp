#include "emtopic/report.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace emtopic {

namespace {

std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<TopicLabel> label_topics(const Corpus& corpus, const CitationGraph& graph,
                                     const Partition& partition, std::size_t k_terms,
                                     std::size_t k_pubs) {
  if (partition.assignment.size() != graph.node_count()) {
    throw std::invalid_argument("label_topics: partition does not cover all graph nodes");
  }
  const auto members = cluster_members(partition);
  std::vector<TopicLabel> labels;
  labels.reserve(members.size());
  for (ClusterId c = 0; c < members.size(); ++c) {
    TopicLabel label;
    label.cluster = c;

    std::map<std::string_view, std::int64_t> term_counts;
    for (const NodeIndex v : members[c]) {
      const Publication& pub = corpus.at(graph.ids()[v]);
      for (const auto& term : pub.title_terms) ++term_counts[term];
    }
    std::vector<std::pair<std::string_view, std::int64_t>> terms(term_counts.begin(),
                                                                 term_counts.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (std::size_t i = 0; i < terms.size() && i < k_terms; ++i) {
      label.top_terms.emplace_back(terms[i].first);
    }

    std::vector<NodeIndex> ranked(members[c]);
    std::stable_sort(ranked.begin(), ranked.end(), [&](NodeIndex a, NodeIndex b) {
      const std::size_t da = graph.in_degree(a);
      const std::size_t db = graph.in_degree(b);
      if (da != db) return da > db;
      if (graph.year_of(a) != graph.year_of(b)) return graph.year_of(a) < graph.year_of(b);
      return a < b;  // index order is id order
    });
    for (std::size_t i = 0; i < ranked.size() && i < k_pubs; ++i) {
      label.top_cited.push_back(graph.ids()[ranked[i]]);
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

void write_attribute_table(std::span<const AttributeRow> rows, std::ostream& out) {
  out << "cluster\tbegin\tend\tnovelty\tgrowth\timpact\tcoherence\n";
  for (const AttributeRow& row : rows) {
    out << row.cluster << '\t' << row.begin_year << '\t' << row.end_year << '\t'
        << fixed2(row.novelty) << '\t' << fixed2(row.growth) << '\t' << row.impact << '\t'
        << fixed2(row.coherence) << '\n';
  }
}

void write_statistics_table(const EmergenceReport& report, std::ostream& out) {
  out << "# parameter set " << report.params.name << ", dt=" << report.params.dt
      << ", clusters with a growth window: "
      << (report.statistics ? report.statistics->row_count : 0) << '\n';
  out << "attribute\tavg\tmax\tmin\tstd\n";
  if (!report.statistics) return;
  const auto emit = [&](const char* name, const SummaryStats& s) {
    out << name << '\t' << fixed2(s.avg) << '\t' << fixed2(s.max) << '\t' << fixed2(s.min)
        << '\t' << fixed2(s.std) << '\n';
  };
  emit("coherence", report.statistics->coherence);
  emit("growth", report.statistics->growth);
  emit("novelty", report.statistics->novelty);
  emit("impact", report.statistics->impact);
}

namespace {

void write_params_block(const EmergenceParams& params, ImpactScope scope,
                        std::ostream& out) {
  out << "# params: name=" << params.name << " dt=" << params.dt << " r_min=" << params.r_min
      << " p_max=" << params.p_max << " c_min=" << params.c_min << " h_min=" << params.h_min
      << " impact_scope=" << to_string(scope) << '\n';
}

}  // namespace

void write_report_text(const EmergenceReport& report, std::span<const TopicLabel> labels,
                       std::ostream& out, bool verbose) {
  write_params_block(report.params, report.impact_scope, out);
  out << "# clusters: " << report.verdicts.size() << "  emerging: " << report.emerging_count
      << '\n';
  out << "cluster\ttotal_pubs\tbegin\tend\tnovelty\tgrowth\tcoherence\timpact\tlabel\n";
  std::map<ClusterId, const TopicLabel*> by_cluster;
  for (const TopicLabel& label : labels) by_cluster[label.cluster] = &label;
  for (const EmergenceVerdict& verdict : report.verdicts) {
    if (!verdict.emerging) continue;
    const AttributeRow& row = *verdict.attributes;
    out << verdict.cluster << '\t' << verdict.total_pubs << '\t' << row.begin_year << '\t'
        << row.end_year << '\t' << fixed2(row.novelty) << '\t' << fixed2(row.growth) << '\t'
        << fixed2(row.coherence) << '\t' << row.impact << '\t';
    const auto it = by_cluster.find(verdict.cluster);
    if (it != by_cluster.end()) {
      out << join(it->second->top_terms, "; ");
    }
    out << '\n';
    if (verbose && verdict.emergent_years.size() > 1) {
      out << "#   all emergent start years for cluster " << verdict.cluster << ":";
      for (const int y : verdict.emergent_years) out << ' ' << y;
      out << '\n';
    }
  }
}

void write_report_jsonl(const EmergenceReport& report, std::ostream& out) {
  {
    nlohmann::ordered_json rec;
    rec["kind"] = "params";
    rec["name"] = report.params.name;
    rec["dt"] = report.params.dt;
    rec["r_min"] = report.params.r_min;
    rec["p_max"] = report.params.p_max;
    rec["c_min"] = report.params.c_min;
    rec["h_min"] = report.params.h_min;
    rec["impact_scope"] = std::string(to_string(report.impact_scope));
    rec["clusters"] = report.verdicts.size();
    rec["emerging"] = report.emerging_count;
    out << rec.dump() << '\n';
  }
  for (const EmergenceVerdict& verdict : report.verdicts) {
    nlohmann::ordered_json rec;
    rec["kind"] = "verdict";
    rec["cluster"] = verdict.cluster;
    rec["emerging"] = verdict.emerging;
    rec["total_pubs"] = verdict.total_pubs;
    if (verdict.attributes) {
      const AttributeRow& row = *verdict.attributes;
      rec["begin_year"] = row.begin_year;
      rec["end_year"] = row.end_year;
      rec["novelty"] = row.novelty;
      rec["growth"] = row.growth;
      rec["impact"] = row.impact;
      rec["coherence"] = row.coherence;
    }
    rec["criteria"] = {{"growth", verdict.criteria.growth},
                       {"novelty", verdict.criteria.novelty},
                       {"impact", verdict.criteria.impact},
                       {"coherence", verdict.criteria.coherence}};
    if (verdict.candidate_year) rec["candidate_year"] = *verdict.candidate_year;
    if (!verdict.emergent_years.empty()) rec["emergent_years"] = verdict.emergent_years;
    out << rec.dump() << '\n';
  }
}

ReportSummary read_report_jsonl(std::istream& in) {
  ReportSummary summary;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    const auto kind = rec.at("kind").get<std::string>();
    if (kind == "params") {
      summary.params.name = rec.at("name").get<std::string>();
      summary.params.dt = rec.at("dt").get<int>();
      summary.params.r_min = rec.at("r_min").get<double>();
      summary.params.p_max = rec.at("p_max").get<double>();
      summary.params.c_min = rec.at("c_min").get<std::int64_t>();
      summary.params.h_min = rec.at("h_min").get<double>();
    } else if (kind == "verdict" && rec.at("emerging").get<bool>()) {
      summary.emerging_clusters.push_back(rec.at("cluster").get<ClusterId>());
    }
  }
  return summary;
}

void write_labels(std::span<const TopicLabel> labels, std::ostream& out) {
  out << "cluster\tterms\ttop_cited\n";
  for (const TopicLabel& label : labels) {
    out << label.cluster << '\t' << join(label.top_terms, "; ") << '\t'
        << join(label.top_cited, "; ") << '\n';
  }
}

void write_trend_data(std::span<const TopicSeries> series, std::ostream& out) {
  out << "cluster\tyear\tcount\n";
  for (const TopicSeries& s : series) {
    for (const auto& [year, count] : s.raw_counts) {
      out << s.cluster << '\t' << year << '\t' << count << '\n';
    }
  }
}

}  // namespace emtopic
