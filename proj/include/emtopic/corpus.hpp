#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emtopic {

enum class DocType { article, review, other };

std::string_view to_string(DocType type);
std::optional<DocType> doc_type_from_string(std::string_view name);

struct Publication {
  std::string id;
  int year = 0;
  DocType doc_type = DocType::other;
  std::vector<std::string> title_terms;
  // Cited publication ids, deduplicated, self-citations removed. May point
  // outside the corpus; dangling targets are surfaced by validate() and
  // skipped by the graph builder.
  std::vector<std::string> references;
  // How many self-references were stripped during normalization.
  std::uint32_t self_refs_removed = 0;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after construction + add() calls; readers may share freely.
class Corpus {
 public:
  Corpus(int year_min, int year_max);

  // Normalizes references (dedup, drop self) and stores the record.
  // Throws CorpusError on empty/duplicate id or out-of-range year.
  void add(Publication pub);

  bool contains(std::string_view id) const;
  const Publication* find(std::string_view id) const;
  const Publication& at(std::string_view id) const;

  std::size_t size() const { return pubs_.size(); }
  int year_min() const { return year_min_; }
  int year_max() const { return year_max_; }

  // Id-sorted; the iteration order every downstream consumer relies on.
  const std::map<std::string, Publication, std::less<>>& publications() const {
    return pubs_;
  }

 private:
  int year_min_;
  int year_max_;
  std::map<std::string, Publication, std::less<>> pubs_;
};

struct ValidationIssue {
  enum class Kind { dangling_reference, self_reference_removed, empty_title_terms };
  Kind kind;
  std::string publication_id;
  std::string detail;
};

std::string_view to_string(ValidationIssue::Kind kind);

// One JSON object per line: {"id","year","doc_type","title_terms","references"}.
// Field order is free, missing title_terms/references mean empty.
// Throws CorpusError naming the line number for unparseable lines.
Corpus parse_corpus(std::istream& in, int year_min, int year_max);
Corpus parse_corpus_file(const std::filesystem::path& path, int year_min, int year_max);

void serialize_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path);

// Keeps exactly the publications whose doc_type is in `allowed`.
// Reference lists are left untouched.
Corpus filter_doc_types(const Corpus& corpus, const std::set<DocType>& allowed);

// Pure scan: dangling references, stripped self-references, empty term lists.
std::vector<ValidationIssue> validate(const Corpus& corpus);

}  // namespace emtopic
