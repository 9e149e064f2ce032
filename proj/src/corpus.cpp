#include "emtopic/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

namespace emtopic {

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::other: return "other";
  }
  return "other";
}

std::optional<DocType> doc_type_from_string(std::string_view name) {
  if (name == "article") return DocType::article;
  if (name == "review") return DocType::review;
  if (name == "other") return DocType::other;
  return std::nullopt;
}

std::string_view to_string(ValidationIssue::Kind kind) {
  switch (kind) {
    case ValidationIssue::Kind::dangling_reference: return "dangling_reference";
    case ValidationIssue::Kind::self_reference_removed: return "self_reference_removed";
    case ValidationIssue::Kind::empty_title_terms: return "empty_title_terms";
  }
  return "unknown";
}

Corpus::Corpus(int year_min, int year_max) : year_min_(year_min), year_max_(year_max) {
  if (year_min > year_max) {
    throw CorpusError("corpus year range is empty: [" + std::to_string(year_min) + ", " +
                      std::to_string(year_max) + "]");
  }
}

void Corpus::add(Publication pub) {
  if (pub.id.empty()) {
    throw CorpusError("publication id must be nonempty");
  }
  if (pub.year < year_min_ || pub.year > year_max_) {
    throw CorpusError("publication '" + pub.id + "' year " + std::to_string(pub.year) +
                      " outside declared range [" + std::to_string(year_min_) + ", " +
                      std::to_string(year_max_) + "]");
  }
  // Normalize references: drop duplicates (keep first occurrence) and
  // self-citations, tallying the latter for validate().
  std::vector<std::string> refs;
  refs.reserve(pub.references.size());
  std::unordered_set<std::string> seen;
  for (auto& ref : pub.references) {
    if (ref == pub.id) {
      ++pub.self_refs_removed;
      continue;
    }
    if (seen.insert(ref).second) {
      refs.push_back(std::move(ref));
    }
  }
  pub.references = std::move(refs);

  auto [it, inserted] = pubs_.try_emplace(pub.id, std::move(pub));
  if (!inserted) {
    throw CorpusError("duplicate publication id '" + it->first + "'");
  }
}

bool Corpus::contains(std::string_view id) const { return pubs_.find(id) != pubs_.end(); }

const Publication* Corpus::find(std::string_view id) const {
  auto it = pubs_.find(id);
  return it == pubs_.end() ? nullptr : &it->second;
}

const Publication& Corpus::at(std::string_view id) const {
  if (const Publication* pub = find(id)) return *pub;
  throw CorpusError("unknown publication id '" + std::string(id) + "'");
}

namespace {

Publication record_from_json(const nlohmann::json& rec) {
  Publication pub;
  pub.id = rec.at("id").get<std::string>();
  pub.year = rec.at("year").get<int>();
  const auto type_name = rec.at("doc_type").get<std::string>();
  const auto type = doc_type_from_string(type_name);
  if (!type) {
    throw CorpusError("unknown doc_type '" + type_name + "'");
  }
  pub.doc_type = *type;
  if (rec.contains("title_terms")) {
    pub.title_terms = rec.at("title_terms").get<std::vector<std::string>>();
  }
  if (rec.contains("references")) {
    pub.references = rec.at("references").get<std::vector<std::string>>();
  }
  return pub;
}

}  // namespace

Corpus parse_corpus(std::istream& in, int year_min, int year_max) {
  Corpus corpus(year_min, year_max);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Publication pub;
    try {
      pub = record_from_json(nlohmann::json::parse(line));
    } catch (const CorpusError& err) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + err.what());
    } catch (const nlohmann::json::exception& err) {
      throw CorpusError("line " + std::to_string(line_no) + ": unparseable record: " +
                        err.what());
    }
    corpus.add(std::move(pub));
  }
  return corpus;
}

Corpus parse_corpus_file(const std::filesystem::path& path, int year_min, int year_max) {
  std::ifstream in(path);
  if (!in) {
    throw CorpusError("cannot open corpus file '" + path.string() + "'");
  }
  return parse_corpus(in, year_min, year_max);
}

void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& [id, pub] : corpus.publications()) {
    nlohmann::ordered_json rec;
    rec["id"] = pub.id;
    rec["year"] = pub.year;
    rec["doc_type"] = to_string(pub.doc_type);
    rec["title_terms"] = pub.title_terms;
    rec["references"] = pub.references;
    out << rec.dump() << '\n';
  }
}

void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw CorpusError("cannot open '" + path.string() + "' for writing");
  }
  serialize_corpus(corpus, out);
}

Corpus filter_doc_types(const Corpus& corpus, const std::set<DocType>& allowed) {
  if (allowed.empty()) {
    throw CorpusError("filter_doc_types: allowed set must be nonempty");
  }
  Corpus filtered(corpus.year_min(), corpus.year_max());
  for (const auto& [id, pub] : corpus.publications()) {
    if (allowed.contains(pub.doc_type)) {
      filtered.add(pub);
    }
  }
  return filtered;
}

std::vector<ValidationIssue> validate(const Corpus& corpus) {
  std::vector<ValidationIssue> issues;
  for (const auto& [id, pub] : corpus.publications()) {
    for (const auto& ref : pub.references) {
      if (!corpus.contains(ref)) {
        issues.push_back({ValidationIssue::Kind::dangling_reference, id, ref});
      }
    }
    for (std::uint32_t i = 0; i < pub.self_refs_removed; ++i) {
      issues.push_back({ValidationIssue::Kind::self_reference_removed, id, id});
    }
    if (pub.title_terms.empty()) {
      issues.push_back({ValidationIssue::Kind::empty_title_terms, id, ""});
    }
  }
  return issues;
}

}  // namespace emtopic
