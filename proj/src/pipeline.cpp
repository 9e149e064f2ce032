#include "emtopic/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "emtopic/citegraph.hpp"
#include "emtopic/metrics.hpp"
#include "emtopic/synth.hpp"

namespace emtopic {

namespace {

void check_config(const PipelineConfig& config) {
  if (config.input.empty()) throw ConfigError("input: path must be nonempty");
  if (config.output_dir.empty()) throw ConfigError("output_dir: path must be nonempty");
  if (config.param_sets.empty()) {
    throw ConfigError("param_sets: at least one parameter set is required");
  }
  if (config.allowed_types.empty()) {
    throw ConfigError("allowed_types: doc-type filter must be nonempty");
  }
  if (config.year_min > config.year_max) {
    throw ConfigError("year_min: year range is empty");
  }
  if (config.cluster_params.resolution <= 0.0) {
    throw ConfigError("cluster_params.resolution: must be positive");
  }
  for (const EmergenceParams& params : config.param_sets) {
    if (params.dt < 1) throw ConfigError("param_sets." + params.name + ".dt: must be >= 1");
    if (params.r_min <= 0.0) {
      throw ConfigError("param_sets." + params.name + ".r_min: must be > 0");
    }
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("output_dir: cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  check_config(config);
  std::filesystem::create_directories(config.output_dir);

  const Corpus raw = parse_corpus_file(config.input, config.year_min, config.year_max);
  const Corpus corpus = filter_doc_types(raw, config.allowed_types);
  const auto issues = validate(corpus);
  const CitationGraph graph = build_graph(corpus);

  PipelineResult result;
  result.corpus_size = corpus.size();
  result.issue_count = issues.size();
  result.partition = cluster_graph(graph, config.cluster_params);

  result.partition_file = config.output_dir / "partition.tsv";
  {
    auto out = open_out(result.partition_file);
    write_partition(graph.ids(), result.partition, out);
  }

  const auto labels =
      label_topics(corpus, graph, result.partition, config.label_terms, config.label_pubs);
  result.labels_file = config.output_dir / "labels.tsv";
  {
    auto out = open_out(result.labels_file);
    write_labels(labels, out);
  }

  for (const EmergenceParams& params : config.param_sets) {
    EmergenceReport report =
        detect_all(graph, result.partition, params, config.impact_scope);

    // Detected-period attribute rows of the emerging topics.
    std::vector<AttributeRow> emerging_rows;
    std::vector<TopicSeries> emerging_series;
    for (const EmergenceVerdict& verdict : report.verdicts) {
      if (verdict.emerging) {
        emerging_rows.push_back(*verdict.attributes);
        emerging_series.push_back(topic_series(graph, result.partition, verdict.cluster));
      }
    }

    const auto& name = params.name;
    auto attr_path = config.output_dir / ("attributes_" + name + ".tsv");
    auto stats_path = config.output_dir / ("statistics_" + name + ".tsv");
    auto text_path = config.output_dir / ("report_" + name + ".txt");
    auto jsonl_path = config.output_dir / ("report_" + name + ".jsonl");
    auto trend_path = config.output_dir / ("trends_" + name + ".tsv");
    {
      auto out = open_out(attr_path);
      write_attribute_table(emerging_rows, out);
    }
    {
      auto out = open_out(stats_path);
      write_statistics_table(report, out);
    }
    {
      auto out = open_out(text_path);
      write_report_text(report, labels, out, config.verbose_periods);
    }
    {
      auto out = open_out(jsonl_path);
      write_report_jsonl(report, out);
    }
    {
      auto out = open_out(trend_path);
      write_trend_data(emerging_series, out);
    }
    result.attribute_files.push_back(std::move(attr_path));
    result.statistics_files.push_back(std::move(stats_path));
    result.report_text_files.push_back(std::move(text_path));
    result.report_jsonl_files.push_back(std::move(jsonl_path));
    result.trend_files.push_back(std::move(trend_path));
    result.reports.push_back(std::move(report));
  }

  result.overlap_file = config.output_dir / "overlap_summary.txt";
  {
    auto out = open_out(result.overlap_file);
    std::vector<std::set<ClusterId>> emerging_sets;
    for (const EmergenceReport& report : result.reports) {
      std::set<ClusterId> clusters;
      for (const EmergenceVerdict& verdict : report.verdicts) {
        if (verdict.emerging) clusters.insert(verdict.cluster);
      }
      out << report.params.name << " emerging: " << clusters.size() << '\n';
      emerging_sets.push_back(std::move(clusters));
    }
    for (std::size_t i = 0; i < emerging_sets.size(); ++i) {
      for (std::size_t j = i + 1; j < emerging_sets.size(); ++j) {
        std::vector<ClusterId> both;
        std::set_intersection(emerging_sets[i].begin(), emerging_sets[i].end(),
                              emerging_sets[j].begin(), emerging_sets[j].end(),
                              std::back_inserter(both));
        out << result.reports[i].params.name << " & " << result.reports[j].params.name
            << ": " << both.size();
        if (!both.empty()) {
          out << "  clusters:";
          for (const ClusterId c : both) out << ' ' << c;
        }
        out << '\n';
      }
    }
  }
  return result;
}

}  // namespace emtopic
