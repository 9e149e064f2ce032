// Command-line front end: ingest, cluster, detect, label, synth, score and
// the full run pipeline.

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emtopic/citegraph.hpp"
#include "emtopic/cluster.hpp"
#include "emtopic/corpus.hpp"
#include "emtopic/detector.hpp"
#include "emtopic/metrics.hpp"
#include "emtopic/pipeline.hpp"
#include "emtopic/report.hpp"
#include "emtopic/synth.hpp"

namespace {

using namespace emtopic;

struct CorpusOptions {
  std::string input;
  int year_min = 2003;
  int year_max = 2012;
  std::string types = "article,review";
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opts) {
  cmd->add_option("--input", opts.input, "line-delimited corpus file")->required();
  cmd->add_option("--year-min", opts.year_min, "first corpus year");
  cmd->add_option("--year-max", opts.year_max, "last corpus year");
  cmd->add_option("--types", opts.types,
                  "comma-separated doc types to keep, or 'all' (default article,review)");
}

std::set<DocType> parse_types(const std::string& spec) {
  if (spec == "all") return {DocType::article, DocType::review, DocType::other};
  std::set<DocType> types;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto token = spec.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!token.empty()) {
      const auto type = doc_type_from_string(token);
      if (!type) throw ConfigError("types: unknown doc type '" + token + "'");
      types.insert(*type);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (types.empty()) throw ConfigError("types: no doc types given");
  return types;
}

Corpus load_corpus(const CorpusOptions& opts) {
  Corpus raw = parse_corpus_file(opts.input, opts.year_min, opts.year_max);
  return filter_doc_types(raw, parse_types(opts.types));
}

struct ParamsOptions {
  std::vector<std::string> sets;
  std::optional<int> dt;
  std::optional<double> r_min;
  std::optional<double> p_max;
  std::optional<std::int64_t> c_min;
  std::optional<double> h_min;
  std::string impact_scope = "corpus";
};

void add_params_options(CLI::App* cmd, ParamsOptions& opts) {
  cmd->add_option("--set", opts.sets, "named preset (set1, set2); repeatable");
  cmd->add_option("--dt", opts.dt, "time interval in years");
  cmd->add_option("--r-min", opts.r_min, "growth threshold");
  cmd->add_option("--p-max", opts.p_max, "novelty ceiling (smoothed count)");
  cmd->add_option("--c-min", opts.c_min, "windowed citation threshold");
  cmd->add_option("--h-min", opts.h_min, "coherence threshold");
  cmd->add_option("--impact-scope", opts.impact_scope,
                  "citing side for windowed citations: corpus (default) or cluster");
}

std::vector<EmergenceParams> parse_param_sets(const ParamsOptions& opts) {
  std::vector<EmergenceParams> sets;
  for (const std::string& name : opts.sets) {
    if (name == "set1") {
      sets.push_back(set1_params());
    } else if (name == "set2") {
      sets.push_back(set2_params());
    } else {
      throw ConfigError("set: unknown preset '" + name + "'");
    }
  }
  const bool has_custom = opts.dt || opts.r_min || opts.p_max || opts.c_min || opts.h_min;
  if (sets.empty() || has_custom) {
    EmergenceParams params = sets.empty() ? set1_params() : sets.front();
    params.name = sets.empty() ? "custom" : params.name + "-custom";
    if (opts.dt) params.dt = *opts.dt;
    if (opts.r_min) params.r_min = *opts.r_min;
    if (opts.p_max) params.p_max = *opts.p_max;
    if (opts.c_min) params.c_min = *opts.c_min;
    if (opts.h_min) params.h_min = *opts.h_min;
    if (sets.empty()) {
      sets.push_back(std::move(params));
    } else {
      sets.front() = std::move(params);
    }
  }
  return sets;
}

ImpactScope parse_scope(const std::string& name) {
  const auto scope = impact_scope_from_string(name);
  if (!scope) throw ConfigError("impact_scope: must be 'corpus' or 'cluster'");
  return *scope;
}

int cmd_ingest(const CorpusOptions& corpus_opts, const std::string& output,
               bool show_issues) {
  const Corpus raw =
      parse_corpus_file(corpus_opts.input, corpus_opts.year_min, corpus_opts.year_max);
  const Corpus corpus = filter_doc_types(raw, parse_types(corpus_opts.types));
  const auto issues = validate(corpus);
  std::cout << "parsed: " << raw.size() << "  kept after doc-type filter: " << corpus.size()
            << "  issues: " << issues.size() << '\n';
  if (show_issues) {
    for (const auto& issue : issues) {
      std::cout << to_string(issue.kind) << '\t' << issue.publication_id << '\t'
                << issue.detail << '\n';
    }
  }
  if (!output.empty()) {
    write_corpus_file(corpus, output);
    std::cout << "wrote " << output << '\n';
  }
  return 0;
}

int cmd_cluster(const CorpusOptions& corpus_opts, const ClusterParams& params,
                const std::string& output, const std::string& edges_out) {
  const Corpus corpus = load_corpus(corpus_opts);
  const CitationGraph graph = build_graph(corpus);
  if (!edges_out.empty()) {
    std::ofstream out(edges_out);
    write_edge_list(graph, out);
  }
  const Partition partition = cluster_graph(graph, params);
  std::ofstream out(output);
  if (!out) throw ConfigError("output: cannot write '" + output + "'");
  write_partition(graph.ids(), partition, out);
  std::cout << "nodes: " << graph.node_count() << "  edges: " << graph.edge_count()
            << "  clusters: " << partition.cluster_count
            << "  quality: " << quality(graph, partition, params.resolution) << '\n';
  return 0;
}

int cmd_detect(const CorpusOptions& corpus_opts, const ParamsOptions& params_opts,
               const std::string& partition_file, const ClusterParams& cluster_params,
               const std::string& output_dir, bool verbose) {
  PipelineConfig config;
  config.input = corpus_opts.input;
  config.year_min = corpus_opts.year_min;
  config.year_max = corpus_opts.year_max;
  config.allowed_types = parse_types(corpus_opts.types);
  config.cluster_params = cluster_params;
  config.param_sets = parse_param_sets(params_opts);
  config.impact_scope = parse_scope(params_opts.impact_scope);
  config.output_dir = output_dir;
  config.verbose_periods = verbose;

  if (!partition_file.empty()) {
    // Reuse a precomputed partition instead of clustering again.
    const Corpus corpus = load_corpus(corpus_opts);
    const CitationGraph graph = build_graph(corpus);
    std::ifstream in(partition_file);
    if (!in) throw ConfigError("partition: cannot open '" + partition_file + "'");
    const Partition partition = read_partition(graph.ids(), in);
    std::filesystem::create_directories(config.output_dir);
    const auto labels = label_topics(corpus, graph, partition, config.label_terms,
                                     config.label_pubs);
    for (const EmergenceParams& params : config.param_sets) {
      const EmergenceReport report =
          detect_all(graph, partition, params, config.impact_scope);
      std::vector<AttributeRow> rows;
      std::vector<TopicSeries> series;
      for (const EmergenceVerdict& verdict : report.verdicts) {
        if (verdict.emerging) {
          rows.push_back(*verdict.attributes);
          series.push_back(topic_series(graph, partition, verdict.cluster));
        }
      }
      const auto dir = config.output_dir;
      {
        std::ofstream out(dir / ("attributes_" + params.name + ".tsv"));
        write_attribute_table(rows, out);
      }
      {
        std::ofstream out(dir / ("statistics_" + params.name + ".tsv"));
        write_statistics_table(report, out);
      }
      {
        std::ofstream out(dir / ("report_" + params.name + ".txt"));
        write_report_text(report, labels, out, verbose);
      }
      {
        std::ofstream out(dir / ("report_" + params.name + ".jsonl"));
        write_report_jsonl(report, out);
      }
      {
        std::ofstream out(dir / ("trends_" + params.name + ".tsv"));
        write_trend_data(series, out);
      }
      std::cout << params.name << ": " << report.emerging_count << " of "
                << report.verdicts.size() << " clusters emerging\n";
    }
    return 0;
  }

  const PipelineResult result = run_pipeline(config);
  for (const EmergenceReport& report : result.reports) {
    std::cout << report.params.name << ": " << report.emerging_count << " of "
              << report.verdicts.size() << " clusters emerging\n";
  }
  return 0;
}

int cmd_label(const CorpusOptions& corpus_opts, const std::string& partition_file,
              std::size_t k_terms, std::size_t k_pubs, const std::string& output) {
  const Corpus corpus = load_corpus(corpus_opts);
  const CitationGraph graph = build_graph(corpus);
  std::ifstream in(partition_file);
  if (!in) throw ConfigError("partition: cannot open '" + partition_file + "'");
  const Partition partition = read_partition(graph.ids(), in);
  const auto labels = label_topics(corpus, graph, partition, k_terms, k_pubs);
  std::ofstream out(output);
  if (!out) throw ConfigError("output: cannot write '" + output + "'");
  write_labels(labels, out);
  std::cout << "labeled " << labels.size() << " clusters -> " << output << '\n';
  return 0;
}

struct PlantedOption {
  int start = 2005;
  std::int64_t base = 10;
  double growth = 2.0;
  double internal = 5.0;
  double external = 0.5;
};

PlantedTopic parse_planted(const std::string& text) {
  PlantedTopic topic;
  topic.start_year = 2005;
  topic.base_count = 10;
  topic.growth_factor = 2.0;
  topic.internal_citation_rate = 5.0;
  topic.external_citation_rate = 0.5;
  std::size_t start = 0;
  while (start < text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const auto token = text.substr(start, comma - start);
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("planted: expected key=value, got '" + token + "'");
    }
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "start") {
      topic.start_year = std::stoi(value);
    } else if (key == "base") {
      topic.base_count = std::stoll(value);
    } else if (key == "growth") {
      topic.growth_factor = std::stod(value);
    } else if (key == "internal") {
      topic.internal_citation_rate = std::stod(value);
    } else if (key == "external") {
      topic.external_citation_rate = std::stod(value);
    } else {
      throw ConfigError("planted: unknown key '" + key + "'");
    }
    start = comma + 1;
  }
  return topic;
}

int cmd_synth(const SynthSpec& spec, const std::string& output,
              const std::string& manifest_out) {
  const auto [corpus, manifest] = generate(spec);
  write_corpus_file(corpus, output);
  write_manifest_file(manifest, manifest_out);
  std::cout << "generated " << corpus.size() << " publications in "
            << manifest.topics.size() << " topics -> " << output << '\n';
  return 0;
}

int cmd_score(const CorpusOptions& corpus_opts, const std::string& report_file,
              const std::string& manifest_file, const std::string& partition_file,
              double threshold) {
  const Corpus corpus = load_corpus(corpus_opts);
  const CitationGraph graph = build_graph(corpus);
  std::ifstream pin(partition_file);
  if (!pin) throw ConfigError("partition: cannot open '" + partition_file + "'");
  const Partition partition = read_partition(graph.ids(), pin);

  std::ifstream rin(report_file);
  if (!rin) throw ConfigError("report: cannot open '" + report_file + "'");
  const ReportSummary summary = read_report_jsonl(rin);
  EmergenceReport report;
  report.params = summary.params;
  for (const ClusterId c : summary.emerging_clusters) {
    EmergenceVerdict verdict;
    verdict.cluster = c;
    verdict.emerging = true;
    report.verdicts.push_back(std::move(verdict));
  }
  report.emerging_count = summary.emerging_clusters.size();

  const Manifest manifest = read_manifest_file(manifest_file);
  const Score result = score(report, partition, graph.ids(), manifest, threshold);
  std::cout << "detections: " << result.detections
            << "  planted emergent: " << result.planted_emergent << '\n';
  std::cout << "recall: ";
  if (result.recall) {
    std::cout << *result.recall;
  } else {
    std::cout << "n/a";
  }
  std::cout << "  precision: ";
  if (result.precision) {
    std::cout << *result.precision;
  } else {
    std::cout << "n/a";
  }
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emerging research topic detection over direct-citation graphs"};
  app.require_subcommand(1);

  CorpusOptions corpus_opts;
  ClusterParams cluster_params;
  ParamsOptions params_opts;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse, filter and validate a corpus");
  CorpusOptions ingest_opts;
  std::string ingest_output;
  bool ingest_issues = false;
  add_corpus_options(ingest, ingest_opts);
  ingest->add_option("--output", ingest_output, "write the normalized corpus here");
  ingest->add_flag("--issues", ingest_issues, "print every validation issue");

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "partition the citation graph");
  CorpusOptions cluster_corpus;
  std::string cluster_output = "partition.tsv";
  std::string cluster_edges;
  add_corpus_options(cluster_cmd, cluster_corpus);
  cluster_cmd->add_option("--resolution", cluster_params.resolution, "quality resolution");
  cluster_cmd->add_option("--seed", cluster_params.seed, "clustering seed");
  cluster_cmd->add_option("--restarts", cluster_params.max_iterations,
                          "local-moving restarts");
  cluster_cmd->add_option("--min-improvement", cluster_params.min_improvement,
                          "pass termination threshold");
  cluster_cmd->add_option("--output", cluster_output, "partition file");
  cluster_cmd->add_option("--export-edges", cluster_edges, "also dump the edge list here");

  // detect
  auto* detect = app.add_subcommand("detect", "apply the emergence criteria");
  CorpusOptions detect_corpus;
  std::string detect_partition;
  std::string detect_dir = "out";
  bool detect_verbose = false;
  ClusterParams detect_cluster_params;
  ParamsOptions detect_params;
  add_corpus_options(detect, detect_corpus);
  add_params_options(detect, detect_params);
  detect->add_option("--partition", detect_partition,
                     "reuse this partition file instead of clustering");
  detect->add_option("--resolution", detect_cluster_params.resolution, "quality resolution");
  detect->add_option("--seed", detect_cluster_params.seed, "clustering seed");
  detect->add_option("--restarts", detect_cluster_params.max_iterations,
                     "local-moving restarts");
  detect->add_option("--output-dir", detect_dir, "artifact directory");
  detect->add_flag("--verbose", detect_verbose, "list every satisfying start year");

  // label
  auto* label = app.add_subcommand("label", "top terms and most-cited members per cluster");
  CorpusOptions label_corpus;
  std::string label_partition;
  std::string label_output = "labels.tsv";
  std::size_t label_terms = 10;
  std::size_t label_pubs = 2;
  add_corpus_options(label, label_corpus);
  label->add_option("--partition", label_partition, "partition file")->required();
  label->add_option("--terms", label_terms, "terms per cluster");
  label->add_option("--pubs", label_pubs, "most-cited publications per cluster");
  label->add_option("--output", label_output, "labels file");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
  SynthSpec spec;
  std::string synth_output = "corpus.jsonl";
  std::string synth_manifest = "manifest.jsonl";
  std::vector<std::string> planted_specs;
  synth->add_option("--year-min", spec.year_min, "first year");
  synth->add_option("--year-max", spec.year_max, "last year");
  synth->add_option("--background", spec.n_background_topics, "background topic count");
  synth->add_option("--bg-exponent", spec.size_exponent, "background size power-law exponent");
  synth->add_option("--bg-min-size", spec.size_min, "smallest background topic");
  synth->add_option("--bg-max-size", spec.size_max, "largest background topic");
  synth->add_option("--bg-internal", spec.background_internal_rate,
                    "background intra-topic citation rate");
  synth->add_option("--bg-external", spec.background_external_rate,
                    "background cross-topic citation rate");
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--planted", planted_specs,
                    "planted topic, e.g. start=2005,base=10,growth=2.0,internal=5,external=0.5;"
                    " repeatable");
  synth->add_option("--output", synth_output, "corpus file");
  synth->add_option("--manifest", synth_manifest, "manifest file");

  // score
  auto* score_cmd = app.add_subcommand("score", "recall/precision against a manifest");
  CorpusOptions score_corpus;
  std::string score_report;
  std::string score_manifest;
  std::string score_partition;
  double score_threshold = 0.5;
  add_corpus_options(score_cmd, score_corpus);
  score_cmd->add_option("--report", score_report, "report_*.jsonl file")->required();
  score_cmd->add_option("--manifest", score_manifest, "manifest file")->required();
  score_cmd->add_option("--partition", score_partition, "partition file")->required();
  score_cmd->add_option("--threshold", score_threshold, "Jaccard matching threshold");

  // run
  auto* run = app.add_subcommand("run", "full pipeline: ingest, cluster, detect, report");
  CorpusOptions run_corpus;
  ClusterParams run_cluster_params;
  ParamsOptions run_params;
  std::string run_dir = "out";
  bool run_verbose = false;
  add_corpus_options(run, run_corpus);
  add_params_options(run, run_params);
  run->add_option("--resolution", run_cluster_params.resolution, "quality resolution");
  run->add_option("--seed", run_cluster_params.seed, "clustering seed");
  run->add_option("--restarts", run_cluster_params.max_iterations, "local-moving restarts");
  run->add_option("--output-dir", run_dir, "artifact directory");
  run->add_flag("--verbose", run_verbose, "list every satisfying start year");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_opts, ingest_output, ingest_issues);
    if (*cluster_cmd) {
      return cmd_cluster(cluster_corpus, cluster_params, cluster_output, cluster_edges);
    }
    if (*detect) {
      return cmd_detect(detect_corpus, detect_params, detect_partition,
                        detect_cluster_params, detect_dir, detect_verbose);
    }
    if (*label) return cmd_label(label_corpus, label_partition, label_terms, label_pubs,
                                 label_output);
    if (*synth) {
      for (const std::string& text : planted_specs) {
        spec.planted.push_back(parse_planted(text));
      }
      return cmd_synth(spec, synth_output, synth_manifest);
    }
    if (*score_cmd) {
      return cmd_score(score_corpus, score_report, score_manifest, score_partition,
                       score_threshold);
    }
    if (*run) {
      PipelineConfig config;
      config.input = run_corpus.input;
      config.year_min = run_corpus.year_min;
      config.year_max = run_corpus.year_max;
      config.allowed_types = parse_types(run_corpus.types);
      config.cluster_params = run_cluster_params;
      config.param_sets = parse_param_sets(run_params);
      config.impact_scope = parse_scope(run_params.impact_scope);
      config.output_dir = run_dir;
      config.verbose_periods = run_verbose;
      const PipelineResult result = run_pipeline(config);
      std::cout << "corpus: " << result.corpus_size << " publications, "
                << result.issue_count << " validation issues\n";
      for (const EmergenceReport& report : result.reports) {
        std::cout << report.params.name << ": " << report.emerging_count << " of "
                  << report.verdicts.size() << " clusters emerging\n";
      }
      std::cout << "artifacts in " << run_dir << '\n';
      return 0;
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const CorpusError& err) {
    std::cerr << "corpus error: " << err.what() << '\n';
    return 3;
  } catch (const SynthError& err) {
    std::cerr << "synth error: " << err.what() << '\n';
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
