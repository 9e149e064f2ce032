#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "emtopic/cluster.hpp"
#include "emtopic/corpus.hpp"
#include "emtopic/detector.hpp"
#include "emtopic/report.hpp"

namespace emtopic {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::filesystem::path input;
  int year_min = 2003;
  int year_max = 2012;
  std::set<DocType> allowed_types = {DocType::article, DocType::review};
  ClusterParams cluster_params;
  std::vector<EmergenceParams> param_sets;  // at least one
  ImpactScope impact_scope = ImpactScope::corpus;
  std::filesystem::path output_dir;
  std::size_t label_terms = 10;
  std::size_t label_pubs = 2;
  bool verbose_periods = false;
};

struct PipelineResult {
  std::filesystem::path partition_file;
  std::filesystem::path labels_file;
  std::filesystem::path overlap_file;
  // Parallel to PipelineConfig::param_sets.
  std::vector<std::filesystem::path> attribute_files;
  std::vector<std::filesystem::path> statistics_files;
  std::vector<std::filesystem::path> report_text_files;
  std::vector<std::filesystem::path> report_jsonl_files;
  std::vector<std::filesystem::path> trend_files;
  std::vector<EmergenceReport> reports;
  Partition partition;
  std::size_t corpus_size = 0;
  std::size_t issue_count = 0;
};

// Parse -> filter -> validate -> graph -> cluster -> detect per parameter
// set; writes all artifacts under output_dir. Deterministic for a fixed
// config and seed. Throws ConfigError (naming the field) on bad configs.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace emtopic
