// Acceptance suite: every release criterion, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "emtopic/cluster.hpp"
#include "emtopic/detector.hpp"
#include "emtopic/metrics.hpp"
#include "emtopic/pipeline.hpp"
#include "emtopic/synth.hpp"
#include "helpers.hpp"

using namespace emtopic;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TopicSeries graphene_series() {
  const std::vector<std::int64_t> raw = {32, 38, 46, 147, 415, 790, 1197, 1963, 2693, 3422};
  TopicSeries series;
  series.cluster = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    series.raw_counts[2003 + static_cast<int>(i)] = raw[i];
  }
  series.smoothed = smooth(series.raw_counts);
  series.total_pubs = 10743;
  series.coherence = 21.59;
  return series;
}

ImpactFn graphene_impact() {
  return [](int t, int) -> std::int64_t {
    switch (t) {
      case 2005: return 6513;
      case 2006: return 16560;
      case 2007: return 29743;
      case 2008: return 48716;
      case 2009: return 70623;
      case 2010: return 86470;
      default: return 0;
    }
  };
}

// --- criterion 1: published smoothing and two-year growth ratios ------------

void criterion1() {
  const auto start = Clock::now();
  const TopicSeries series = graphene_series();

  const int printed[] = {39, 77, 203, 451, 801, 1317, 1951, 2693};
  const double exact[] = {38.67, 77.0, 202.67, 450.67, 800.67, 1316.67, 1951.0, 2692.67};
  bool ok = true;
  for (int i = 0; i < 8; ++i) {
    const double value = series.smoothed.at(2005 + i);
    if (std::abs(value - printed[i]) > 0.5) ok = false;
    if (std::abs(value - exact[i]) > 0.005) ok = false;
  }

  const double ratios[] = {5.24, 5.86, 3.95, 2.92, 2.44, 2.05};
  for (int i = 0; i < 6; ++i) {
    const auto r = growth_ratio(series.smoothed, 2005 + i, 2);
    if (!r || std::abs(*r - ratios[i]) > 0.05) ok = false;
  }

  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 1.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%.3fs", elapsed);
  report(1, "graphene smoothed counts and dt=2 growth ratios", ok, detail);
}

// --- criterion 2: five-year growth and novelty cross-check ------------------

void criterion2() {
  const TopicSeries series = graphene_series();
  const auto growth5 = growth_ratio(series.smoothed, 2005, 5);
  const double novelty = series.smoothed.at(2005);
  const bool ok = growth5 && std::abs(*growth5 - 34.05) <= 0.01 &&
                  std::abs(novelty - 38.67) <= 0.01;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "growth=%.4f novelty=%.4f",
                growth5 ? *growth5 : -1.0, novelty);
  report(2, "dt=5 growth 34.05 and dt=2 novelty 38.67 at t=2005", ok, detail);
}

// --- criterion 3: coherence arithmetic through the real citation path -------

void criterion3() {
  const std::size_t n = 10743;
  const std::int64_t target_edges = 231995;
  // node i cites the next k nodes cyclically; 6,392 nodes carry one extra
  // reference so the edge total lands exactly
  const std::int64_t base_refs = target_edges / static_cast<std::int64_t>(n);   // 21
  const std::int64_t extra_nodes = target_edges % static_cast<std::int64_t>(n); // 6392
  Corpus corpus(2003, 2012);
  for (std::size_t i = 0; i < n; ++i) {
    Publication pub;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "g%05llu", static_cast<unsigned long long>(i));
    pub.id = buf;
    pub.year = 2003 + static_cast<int>(i % 10);
    pub.doc_type = DocType::article;
    pub.title_terms = {"t"};
    const std::int64_t refs = base_refs + (static_cast<std::int64_t>(i) < extra_nodes);
    for (std::int64_t j = 1; j <= refs; ++j) {
      char ref[16];
      std::snprintf(ref, sizeof(ref), "g%05llu",
                    static_cast<unsigned long long>((i + j) % n));
      pub.references.push_back(ref);
    }
    corpus.add(std::move(pub));
  }
  const CitationGraph graph = build_graph(corpus);
  Partition partition;
  partition.assignment.assign(n, 0);
  partition.cluster_count = 1;

  const std::int64_t within = within_cluster_citations(graph, partition, 0);
  const double h = coherence(graph, partition, 0, static_cast<std::int64_t>(n));
  const bool ok = within == target_edges && std::abs(h - 21.59) <= 0.01;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "within=%lld coherence=%.4f",
                static_cast<long long>(within), h);
  report(3, "231,995 within-cluster citations over 10,743 pubs -> 21.59", ok, detail);
}

// --- criterion 4: worked-example verdicts ------------------------------------

void criterion4() {
  const TopicSeries series = graphene_series();
  const ImpactFn impact = graphene_impact();

  EmergenceParams strict;
  strict.dt = 2;
  strict.r_min = 5.0;
  strict.p_max = 100.0;
  strict.c_min = 2500;
  strict.h_min = 1.0;
  const bool emerging_at_5 = evaluate_topic(series, impact, strict).emerging;

  strict.r_min = 10.0;
  const bool emerging_at_10 = evaluate_topic(series, impact, strict).emerging;

  const EmergenceVerdict set1 = evaluate_topic(series, impact, set1_params());
  const bool period_ok = set1.emerging && set1.attributes &&
                         set1.attributes->begin_year == 2005 &&
                         set1.attributes->end_year == 2007;

  const bool ok = emerging_at_5 && !emerging_at_10 && period_ok;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "r5=%d r10=%d set1=[%d,%d]", emerging_at_5,
                emerging_at_10, set1.attributes ? set1.attributes->begin_year : 0,
                set1.attributes ? set1.attributes->end_year : 0);
  report(4, "graphene emerging at r_min=5, not at 10, set1 period 2005-2007", ok, detail);
}

// --- criterion 5: clustering vs the exhaustive oracle ------------------------

void criterion5() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260810);
  std::uniform_int_distribution<std::size_t> node_count(2, 8);
  std::uniform_real_distribution<double> edge_prob(0.15, 0.6);
  const double resolutions[] = {0.1, 0.3, 0.5, 1.0};

  bool ratio_ok = true;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = node_count(rng);
    const CitationGraph graph = testutil::random_graph(rng, n, edge_prob(rng), 2003, 2012);
    const double resolution = resolutions[round % 4];
    const Partition exact = brute_force_partition(graph, resolution);
    ClusterParams params;
    params.resolution = resolution;
    params.seed = 1000 + round;
    params.max_iterations = 5;
    const Partition heuristic = cluster_graph(graph, params);
    if (quality(graph, heuristic, resolution) <
        0.95 * quality(graph, exact, resolution) - 1e-9) {
      ratio_ok = false;
    }
  }

  // planted two-clique graph
  std::vector<std::pair<std::size_t, std::size_t>> clique_edges;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      clique_edges.emplace_back(i, j);
      clique_edges.emplace_back(i + 4, j + 4);
    }
  }
  clique_edges.emplace_back(3, 4);
  const CitationGraph cliques =
      testutil::make_indexed_graph(std::vector<int>(8, 2005), clique_edges);
  ClusterParams params;
  params.resolution = 0.5;
  params.seed = 99;
  params.max_iterations = 5;
  const Partition clique_part = cluster_graph(cliques, params);
  const bool cliques_ok =
      clique_part.assignment == std::vector<ClusterId>{0, 0, 0, 0, 1, 1, 1, 1};

  const CitationGraph triangles = testutil::make_indexed_graph(
      {2005, 2005, 2005, 2006, 2006, 2006}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const Partition triangle_part = cluster_graph(triangles, params);
  const bool triangles_ok =
      triangle_part.assignment == std::vector<ClusterId>{0, 0, 0, 1, 1, 1};

  const double elapsed = seconds_since(start);
  const bool ok = ratio_ok && cliques_ok && triangles_ok && elapsed < 30.0;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "ratio=%d cliques=%d triangles=%d %.1fs", ratio_ok,
                cliques_ok, triangles_ok, elapsed);
  report(5, "heuristic within 95% of brute force on 100 graphs, planted recovered", ok,
         detail);
}

// --- criterion 6: planted-emergence recall on a ~100k synthetic corpus -------

void criterion6() {
  const auto start = Clock::now();
  SynthSpec spec;
  spec.year_min = 2003;
  spec.year_max = 2012;
  spec.n_background_topics = 50;
  spec.size_exponent = 1.8;
  spec.size_min = 700;
  spec.size_max = 9000;
  spec.background_internal_rate = 3.0;
  spec.background_external_rate = 0.3;
  spec.seed = 606;
  for (int i = 0; i < 5; ++i) {
    PlantedTopic planted;
    planted.start_year = 2005;
    planted.base_count = 12;
    planted.growth_factor = 1.8;  // >= 1.6
    planted.internal_citation_rate = 6.0;
    planted.external_citation_rate = 0.2;
    spec.planted.push_back(planted);
  }
  PlantedTopic flat;
  flat.start_year = 2003;
  flat.base_count = 40;
  flat.growth_factor = 1.0;
  flat.internal_citation_rate = 6.0;
  flat.external_citation_rate = 0.2;
  spec.planted.push_back(flat);

  const auto [corpus, manifest] = generate(spec);

  const auto work_dir = fs::temp_directory_path() / "emtopic_acceptance_c6";
  fs::remove_all(work_dir);
  fs::create_directories(work_dir);
  const auto input = work_dir / "corpus.jsonl";
  write_corpus_file(corpus, input);

  PipelineConfig config;
  config.input = input;
  config.year_min = spec.year_min;
  config.year_max = spec.year_max;
  config.cluster_params.resolution = 0.0003;
  config.cluster_params.seed = 11;
  config.cluster_params.max_iterations = 2;
  EmergenceParams scaled = set1_params();  // dt=2, r_min=2, p_max=100, h_min=1
  scaled.name = "set1-scaled";
  scaled.c_min = 100;  // citation threshold scaled to the ~100k corpus
  config.param_sets = {scaled};
  config.output_dir = work_dir / "out";

  const PipelineResult result = run_pipeline(config);
  const CitationGraph graph = build_graph(corpus);
  const Score s = score(result.reports[0], result.partition, graph.ids(), manifest, 0.5);

  // the flat control must not match any emerging cluster
  const TopicTruth& control = manifest.topics.back();
  bool control_flagged = false;
  for (const EmergenceVerdict& verdict : result.reports[0].verdicts) {
    if (!verdict.emerging) continue;
    std::vector<std::string> members;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      if (result.partition.assignment[v] == verdict.cluster) {
        members.push_back(graph.ids()[v]);
      }
    }
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < members.size() && j < control.members.size()) {
      const int cmp = members[i].compare(control.members[j]);
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
    const double jaccard = static_cast<double>(inter) /
                           static_cast<double>(members.size() + control.members.size() - inter);
    if (jaccard >= 0.5) control_flagged = true;
  }

  const double elapsed = seconds_since(start);
  const bool ok = s.recall && *s.recall >= 0.8 && !control_flagged && elapsed < 120.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "pubs=%zu recall=%.2f control_flagged=%d %.1fs",
                corpus.size(), s.recall ? *s.recall : -1.0, control_flagged, elapsed);
  report(6, "pipeline recall >= 0.8 on planted topics, flat control stays dark", ok, detail);
  fs::remove_all(work_dir);
}

// --- criterion 7: threshold monotonicity over a 5-point grid -----------------

void criterion7() {
  bool ok = true;
  std::mt19937_64 rng(707);
  for (int corpus_round = 0; corpus_round < 3; ++corpus_round) {
    const CitationGraph graph = testutil::random_graph(rng, 120, 0.05, 2003, 2012);
    const Partition partition = testutil::random_partition(rng, 120, 8);

    EmergenceParams base;
    base.dt = 2;
    base.r_min = 1.02;
    base.p_max = 60.0;
    base.c_min = 1;
    base.h_min = 0.05;

    const auto emerging_set = [&](const EmergenceParams& params) {
      std::set<ClusterId> clusters;
      for (const auto& verdict : detect_all(graph, partition, params).verdicts) {
        if (verdict.emerging) clusters.insert(verdict.cluster);
      }
      return clusters;
    };
    const auto subset = [](const std::set<ClusterId>& a, const std::set<ClusterId>& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    const double r_grid[] = {1.02, 1.05, 1.1, 1.3, 1.6};
    const std::int64_t c_grid[] = {1, 2, 4, 8, 16};
    const double h_grid[] = {0.05, 0.1, 0.2, 0.4, 0.8};
    const double p_grid[] = {60.0, 40.0, 20.0, 10.0, 5.0};

    auto prev = emerging_set(base);
    for (const double r : r_grid) {
      EmergenceParams params = base;
      params.r_min = r;
      const auto current = emerging_set(params);
      if (!subset(current, prev)) ok = false;
      prev = current;
    }
    prev = emerging_set(base);
    for (const std::int64_t c : c_grid) {
      EmergenceParams params = base;
      params.c_min = c;
      const auto current = emerging_set(params);
      if (!subset(current, prev)) ok = false;
      prev = current;
    }
    prev = emerging_set(base);
    for (const double h : h_grid) {
      EmergenceParams params = base;
      params.h_min = h;
      const auto current = emerging_set(params);
      if (!subset(current, prev)) ok = false;
      prev = current;
    }
    prev = emerging_set(base);
    for (const double p : p_grid) {
      EmergenceParams params = base;
      params.p_max = p;
      const auto current = emerging_set(params);
      if (!subset(current, prev)) ok = false;
      prev = current;
    }
  }
  report(7, "emerging set shrinks along every threshold grid", ok);
}

// --- criterion 8: byte-identical reruns --------------------------------------

void criterion8() {
  SynthSpec spec;
  spec.n_background_topics = 10;
  spec.size_min = 50;
  spec.size_max = 200;
  spec.seed = 808;
  PlantedTopic planted;
  planted.start_year = 2005;
  planted.base_count = 8;
  planted.growth_factor = 1.9;
  planted.internal_citation_rate = 5.0;
  spec.planted.push_back(planted);
  const auto [corpus, manifest] = generate(spec);

  const auto work_dir = fs::temp_directory_path() / "emtopic_acceptance_c8";
  fs::remove_all(work_dir);
  fs::create_directories(work_dir);
  const auto input = work_dir / "corpus.jsonl";
  write_corpus_file(corpus, input);

  const auto run = [&](const char* tag) {
    PipelineConfig config;
    config.input = input;
    config.cluster_params.resolution = 0.02;
    config.cluster_params.seed = 5;
    config.cluster_params.max_iterations = 3;
    EmergenceParams scaled = set1_params();
    scaled.c_min = 30;
    config.param_sets = {scaled};
    config.output_dir = work_dir / tag;
    return run_pipeline(config);
  };
  const PipelineResult a = run("a");
  const PipelineResult b = run("b");

  const auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const bool ok = slurp(a.partition_file) == slurp(b.partition_file) &&
                  slurp(a.report_jsonl_files[0]) == slurp(b.report_jsonl_files[0]) &&
                  slurp(a.report_text_files[0]) == slurp(b.report_text_files[0]) &&
                  slurp(a.trend_files[0]) == slurp(b.trend_files[0]);
  report(8, "identical config and seed give byte-identical artifacts", ok);
  fs::remove_all(work_dir);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures != 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
