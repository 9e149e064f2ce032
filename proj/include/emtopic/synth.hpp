#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emtopic/corpus.hpp"
#include "emtopic/detector.hpp"
#include "emtopic/metrics.hpp"
#include "emtopic/partition.hpp"

namespace emtopic {

struct PlantedTopic {
  int start_year = 0;
  std::int64_t base_count = 1;
  double growth_factor = 1.0;  // yearly multiplier; 1.0 plants a flat control
  double internal_citation_rate = 0.0;  // expected intra-topic references per pub
  double external_citation_rate = 0.0;  // expected cross-topic references per pub
};

struct SynthSpec {
  int year_min = 2003;
  int year_max = 2012;
  std::size_t n_background_topics = 10;
  // Background topic sizes follow a truncated power law.
  double size_exponent = 2.0;
  std::int64_t size_min = 20;
  std::int64_t size_max = 2000;
  double background_internal_rate = 3.0;
  double background_external_rate = 0.3;
  double review_fraction = 0.1;
  std::vector<PlantedTopic> planted;
  std::uint64_t seed = 1;
};

struct TopicTruth {
  std::uint32_t topic = 0;
  bool planted = false;
  double growth_factor = 1.0;
  int start_year = 0;
  std::int64_t size = 0;
  YearCounts yearly;                 // realized counts
  std::vector<std::string> members;  // sorted publication ids
};

struct Manifest {
  std::map<std::string, std::uint32_t> topic_of;
  std::vector<TopicTruth> topics;  // ascending topic id
};

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic per seed: identical spec + seed give byte-identical corpus
// and manifest files. References only point backward in time
// (year(citing) >= year(cited)) and never dangle.
// Throws SynthError for invalid or infeasible specs.
std::pair<Corpus, Manifest> generate(const SynthSpec& spec);

void write_manifest(const Manifest& manifest, std::ostream& out);
void write_manifest_file(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(std::istream& in);
Manifest read_manifest_file(const std::filesystem::path& path);

struct Score {
  // Absent when the denominator is empty: no planted emergent topics
  // (recall) or no detections (precision).
  std::optional<double> recall;
  std::optional<double> precision;
  std::size_t matched_planted = 0;
  std::size_t planted_emergent = 0;
  std::size_t matched_detections = 0;
  std::size_t detections = 0;
};

// Jaccard-overlap matching of detected emerging clusters against planted
// topics with growth_factor > 1 (flat controls are not counted emergent).
Score score(const EmergenceReport& report, const Partition& partition,
            std::span<const std::string> ids, const Manifest& manifest,
            double matching_threshold = 0.5);

}  // namespace emtopic
