#include "emtopic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include <json.hpp>

namespace emtopic {

namespace {

// Hand-rolled draws on top of mt19937_64 keep generated corpora byte-stable
// across standard library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

std::int64_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01(rng);
  } while (p > limit);
  return k - 1;
}

std::int64_t power_law_size(std::mt19937_64& rng, double exponent, std::int64_t lo,
                            std::int64_t hi) {
  const double u = uniform01(rng);
  const double a = static_cast<double>(lo);
  const double b = static_cast<double>(hi);
  double x;
  if (std::abs(exponent - 1.0) < 1e-12) {
    x = std::exp(std::log(a) + u * (std::log(b) - std::log(a)));
  } else {
    const double e = 1.0 - exponent;
    x = std::pow(std::pow(a, e) + u * (std::pow(b, e) - std::pow(a, e)), 1.0 / e);
  }
  return std::clamp(static_cast<std::int64_t>(std::llround(x)), lo, hi);
}

struct TopicPlan {
  bool planted = false;
  double growth_factor = 1.0;
  int start_year = 0;
  double internal_rate = 0.0;
  double external_rate = 0.0;
  YearCounts yearly;
  std::int64_t total = 0;
};

std::string make_id(std::size_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p%08llu", static_cast<unsigned long long>(ordinal));
  return buf;
}

const std::vector<std::string>& shared_vocabulary() {
  static const std::vector<std::string> vocab = {
      "analysis", "study", "method", "model", "data", "effect", "system", "result"};
  return vocab;
}

}  // namespace

std::pair<Corpus, Manifest> generate(const SynthSpec& spec) {
  if (spec.n_background_topics < 1) {
    throw SynthError("spec requires at least one background topic");
  }
  if (spec.year_max - spec.year_min + 1 < 5) {
    throw SynthError("spec year span must be at least 5 years");
  }
  if (spec.size_min < 1 || spec.size_min > spec.size_max) {
    throw SynthError("spec background size range is invalid");
  }
  for (const PlantedTopic& planted : spec.planted) {
    if (planted.base_count < 1) throw SynthError("planted base_count must be >= 1");
    if (planted.growth_factor <= 0.0) throw SynthError("planted growth_factor must be > 0");
    if (planted.start_year < spec.year_min || planted.start_year > spec.year_max) {
      throw SynthError("planted start_year outside the corpus year range");
    }
  }

  std::mt19937_64 rng(spec.seed);
  const int n_years = spec.year_max - spec.year_min + 1;

  // Realized yearly counts per topic: background first, planted after.
  std::vector<TopicPlan> plans;
  for (std::size_t i = 0; i < spec.n_background_topics; ++i) {
    TopicPlan plan;
    plan.start_year = spec.year_min;
    plan.internal_rate = spec.background_internal_rate;
    plan.external_rate = spec.background_external_rate;
    const std::int64_t size =
        power_law_size(rng, spec.size_exponent, spec.size_min, spec.size_max);
    const double per_year = static_cast<double>(size) / static_cast<double>(n_years);
    for (int y = spec.year_min; y <= spec.year_max; ++y) {
      const double noise = 0.9 + 0.2 * uniform01(rng);  // +-10% multiplicative
      const std::int64_t count =
          std::max<std::int64_t>(1, std::llround(per_year * noise));
      plan.yearly[y] = count;
      plan.total += count;
    }
    plans.push_back(std::move(plan));
  }
  for (const PlantedTopic& planted : spec.planted) {
    TopicPlan plan;
    plan.planted = true;
    plan.growth_factor = planted.growth_factor;
    plan.start_year = planted.start_year;
    plan.internal_rate = planted.internal_citation_rate;
    plan.external_rate = planted.external_citation_rate;
    for (int y = spec.year_min; y <= spec.year_max; ++y) {
      std::int64_t count = 0;
      if (y >= planted.start_year) {
        count = std::llround(static_cast<double>(planted.base_count) *
                             std::pow(planted.growth_factor, y - planted.start_year));
      }
      plan.yearly[y] = count;
      plan.total += count;
    }
    plans.push_back(std::move(plan));
  }

  std::int64_t corpus_total = 0;
  for (const TopicPlan& plan : plans) corpus_total += plan.total;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const TopicPlan& plan = plans[i];
    if (plan.internal_rate > static_cast<double>(plan.total - 1)) {
      throw SynthError("topic " + std::to_string(i) +
                       ": internal citation rate exceeds the publications available");
    }
    if (plan.external_rate > static_cast<double>(corpus_total - plan.total)) {
      throw SynthError("topic " + std::to_string(i) +
                       ": external citation rate exceeds the publications available");
    }
  }

  // Instantiate publications in canonical order: topic ascending, year
  // ascending. Sequential zero-padded ids keep graph node order aligned
  // with generation order.
  struct PubSlot {
    std::uint32_t topic;
    int year;
  };
  std::vector<PubSlot> slots;
  slots.reserve(static_cast<std::size_t>(corpus_total));
  std::vector<std::vector<std::size_t>> topic_pubs(plans.size());  // year-ascending
  std::vector<std::vector<std::size_t>> pubs_by_year_offset(n_years);
  for (std::uint32_t topic = 0; topic < plans.size(); ++topic) {
    for (int y = spec.year_min; y <= spec.year_max; ++y) {
      const std::int64_t count = plans[topic].yearly.at(y);
      for (std::int64_t k = 0; k < count; ++k) {
        const std::size_t ordinal = slots.size();
        slots.push_back({topic, y});
        topic_pubs[topic].push_back(ordinal);
        pubs_by_year_offset[y - spec.year_min].push_back(ordinal);
      }
    }
  }

  // Pools for backward-in-time sampling: per topic and globally, the pubs
  // with year <= y as a prefix of a year-sorted list.
  std::vector<std::size_t> global_by_year;  // ordinals sorted by (year, ordinal)
  std::vector<std::size_t> global_prefix(n_years + 1, 0);
  for (int off = 0; off < n_years; ++off) {
    for (const std::size_t ordinal : pubs_by_year_offset[off]) {
      global_by_year.push_back(ordinal);
    }
    global_prefix[off + 1] = global_by_year.size();
  }
  std::vector<std::vector<std::size_t>> topic_prefix(plans.size());
  for (std::uint32_t topic = 0; topic < plans.size(); ++topic) {
    auto& prefix = topic_prefix[topic];
    prefix.assign(n_years + 1, 0);
    std::size_t pos = 0;
    for (int off = 0; off < n_years; ++off) {
      const int y = spec.year_min + off;
      while (pos < topic_pubs[topic].size() && slots[topic_pubs[topic][pos]].year <= y) {
        ++pos;
      }
      prefix[off + 1] = pos;
    }
  }

  Corpus corpus(spec.year_min, spec.year_max);
  Manifest manifest;
  manifest.topics.resize(plans.size());
  for (std::uint32_t topic = 0; topic < plans.size(); ++topic) {
    TopicTruth& truth = manifest.topics[topic];
    truth.topic = topic;
    truth.planted = plans[topic].planted;
    truth.growth_factor = plans[topic].growth_factor;
    truth.start_year = plans[topic].start_year;
    truth.size = plans[topic].total;
    truth.yearly = plans[topic].yearly;
  }

  for (std::size_t ordinal = 0; ordinal < slots.size(); ++ordinal) {
    const PubSlot& slot = slots[ordinal];
    const TopicPlan& plan = plans[slot.topic];
    Publication pub;
    pub.id = make_id(ordinal);
    pub.year = slot.year;
    pub.doc_type =
        uniform01(rng) < spec.review_fraction ? DocType::review : DocType::article;

    pub.title_terms.push_back("topic" + std::to_string(slot.topic));
    const auto& vocab = shared_vocabulary();
    for (int i = 0; i < 2; ++i) {
      pub.title_terms.push_back(vocab[uniform_below(rng, vocab.size())]);
    }

    const int year_off = slot.year - spec.year_min;
    std::set<std::size_t> targets;

    const std::size_t internal_pool = topic_prefix[slot.topic][year_off + 1];
    const std::int64_t internal_draw = poisson(rng, plan.internal_rate);
    for (std::int64_t i = 0; i < internal_draw; ++i) {
      if (internal_pool <= 1) break;
      for (int attempt = 0; attempt < 8; ++attempt) {
        const std::size_t pick =
            topic_pubs[slot.topic][uniform_below(rng, internal_pool)];
        if (pick != ordinal && targets.insert(pick).second) break;
      }
    }

    const std::size_t external_pool = global_prefix[year_off + 1];
    const std::int64_t external_draw = poisson(rng, plan.external_rate);
    for (std::int64_t i = 0; i < external_draw; ++i) {
      if (external_pool <= 1) break;
      for (int attempt = 0; attempt < 8; ++attempt) {
        const std::size_t pick = global_by_year[uniform_below(rng, external_pool)];
        if (pick == ordinal || slots[pick].topic == slot.topic) continue;
        if (targets.insert(pick).second) break;
      }
    }

    for (const std::size_t target : targets) {  // ascending ordinal, deterministic
      pub.references.push_back(make_id(target));
    }

    manifest.topic_of.emplace(pub.id, slot.topic);
    manifest.topics[slot.topic].members.push_back(pub.id);
    corpus.add(std::move(pub));
  }

  return {std::move(corpus), std::move(manifest)};
}

void write_manifest(const Manifest& manifest, std::ostream& out) {
  for (const TopicTruth& truth : manifest.topics) {
    nlohmann::ordered_json rec;
    rec["kind"] = "topic";
    rec["topic"] = truth.topic;
    rec["planted"] = truth.planted;
    rec["growth_factor"] = truth.growth_factor;
    rec["start_year"] = truth.start_year;
    rec["size"] = truth.size;
    nlohmann::ordered_json yearly;
    for (const auto& [year, count] : truth.yearly) {
      yearly[std::to_string(year)] = count;
    }
    rec["yearly"] = std::move(yearly);
    out << rec.dump() << '\n';
  }
  for (const auto& [id, topic] : manifest.topic_of) {
    nlohmann::ordered_json rec;
    rec["kind"] = "member";
    rec["id"] = id;
    rec["topic"] = topic;
    out << rec.dump() << '\n';
  }
}

void write_manifest_file(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SynthError("cannot open '" + path.string() + "' for writing");
  write_manifest(manifest, out);
}

Manifest read_manifest(std::istream& in) {
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& err) {
      throw SynthError("manifest line " + std::to_string(line_no) + ": " + err.what());
    }
    const auto kind = rec.at("kind").get<std::string>();
    if (kind == "topic") {
      TopicTruth truth;
      truth.topic = rec.at("topic").get<std::uint32_t>();
      truth.planted = rec.at("planted").get<bool>();
      truth.growth_factor = rec.at("growth_factor").get<double>();
      truth.start_year = rec.at("start_year").get<int>();
      truth.size = rec.at("size").get<std::int64_t>();
      for (const auto& [year, count] : rec.at("yearly").items()) {
        truth.yearly[std::stoi(year)] = count.get<std::int64_t>();
      }
      if (manifest.topics.size() <= truth.topic) manifest.topics.resize(truth.topic + 1);
      manifest.topics[truth.topic] = std::move(truth);
    } else if (kind == "member") {
      const auto id = rec.at("id").get<std::string>();
      const auto topic = rec.at("topic").get<std::uint32_t>();
      manifest.topic_of.emplace(id, topic);
    } else {
      throw SynthError("manifest line " + std::to_string(line_no) + ": unknown kind '" +
                       kind + "'");
    }
  }
  for (const auto& [id, topic] : manifest.topic_of) {
    if (topic < manifest.topics.size()) {
      manifest.topics[topic].members.push_back(id);
    }
  }
  return manifest;
}

Manifest read_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SynthError("cannot open manifest file '" + path.string() + "'");
  return read_manifest(in);
}

namespace {

double jaccard(const std::vector<std::string>& sorted_a,
               const std::vector<std::string>& sorted_b) {
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < sorted_a.size() && j < sorted_b.size()) {
    const int cmp = sorted_a[i].compare(sorted_b[j]);
    if (cmp == 0) {
      ++inter;
      ++i;
      ++j;
    } else if (cmp < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = sorted_a.size() + sorted_b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

Score score(const EmergenceReport& report, const Partition& partition,
            std::span<const std::string> ids, const Manifest& manifest,
            double matching_threshold) {
  if (partition.assignment.size() != ids.size()) {
    throw std::invalid_argument("score: partition does not cover the id table");
  }
  std::vector<std::vector<std::string>> detected;
  for (const EmergenceVerdict& verdict : report.verdicts) {
    if (!verdict.emerging) continue;
    std::vector<std::string> members;
    for (std::size_t v = 0; v < ids.size(); ++v) {
      if (partition.assignment[v] == verdict.cluster) members.push_back(ids[v]);
    }
    detected.push_back(std::move(members));  // sorted: ids table is sorted
  }

  std::vector<const TopicTruth*> emergent;
  for (const TopicTruth& truth : manifest.topics) {
    if (truth.planted && truth.growth_factor > 1.0) emergent.push_back(&truth);
  }

  Score result;
  result.detections = detected.size();
  result.planted_emergent = emergent.size();
  for (const TopicTruth* truth : emergent) {
    for (const auto& members : detected) {
      if (jaccard(members, truth->members) >= matching_threshold) {
        ++result.matched_planted;
        break;
      }
    }
  }
  for (const auto& members : detected) {
    for (const TopicTruth* truth : emergent) {
      if (jaccard(members, truth->members) >= matching_threshold) {
        ++result.matched_detections;
        break;
      }
    }
  }
  if (result.planted_emergent > 0) {
    result.recall = static_cast<double>(result.matched_planted) /
                    static_cast<double>(result.planted_emergent);
  }
  if (result.detections > 0) {
    result.precision = static_cast<double>(result.matched_detections) /
                       static_cast<double>(result.detections);
  }
  return result;
}

}  // namespace emtopic
