#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "raccoon/gazetteer.hpp"

namespace raccoon {

// BM25 parameters (conventional defaults).
inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

/// Lowercased word tokens. Diacritics in the Latin-1 Supplement and Latin
/// Extended-A blocks fold to ASCII ("São" -> "sao"); ASCII non-alphanumerics
/// and common Unicode punctuation/whitespace separate tokens; other non-ASCII
/// code points pass through unchanged.
std::vector<std::string> tokenize(std::string_view text);

struct Posting {
  std::int64_t entry_id = 0;
  std::uint32_t term_frequency = 0;

  bool operator==(const Posting&) const = default;
};

struct ScoredMatch {
  std::int64_t entry_id = 0;
  double score = 0.0;       // BM25, >= 0
  std::int64_t population = 0;
};

/// A retrieved entry with its 1-based position after re-ranking.
struct Candidate {
  GazetteerEntry entry;
  double retrieval_score = 0.0;
  int rank = 0;
};

/// Inverted index over one gazetteer. Each entry is indexed as a single
/// document whose token stream concatenates the name, alternate names, and
/// abbreviations. Immutable after build; queries are thread-safe.
class SearchIndex {
 public:
  /// Throws std::invalid_argument on an empty gazetteer.
  static SearchIndex build(std::shared_ptr<const Gazetteer> source);

  const Gazetteer& source() const { return *source_; }
  const std::shared_ptr<const Gazetteer>& source_ptr() const { return source_; }

  std::size_t doc_count() const { return doc_lengths_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }

  /// Token count of one document. Throws std::out_of_range on unknown ids.
  std::uint32_t doc_length(std::int64_t entry_id) const;

  /// Postings list for a token, sorted by entry id; nullptr when absent.
  const std::vector<Posting>* postings(const std::string& token) const;

  /// Sum over query tokens (as given, duplicates contribute again) of
  ///   IDF(t) * tf*(k1+1) / (tf + k1*(1 - b + b*len/avglen))
  /// with IDF(t) = ln(1 + (N - df + 0.5)/(df + 0.5)).
  /// Throws std::out_of_range on unknown entry ids.
  double bm25_score(const std::vector<std::string>& query_tokens, std::int64_t entry_id) const;

  /// Scores every document sharing at least one query token, applies the
  /// country filter before truncation (falling back to the unfiltered list
  /// when the filter empties it), and returns the top `depth` matches ordered
  /// by (score desc, entry id asc).
  std::vector<ScoredMatch> search(std::string_view mention,
                                  const std::optional<std::string>& country_filter,
                                  std::size_t depth) const;

  const std::unordered_map<std::string, std::vector<Posting>>& all_postings() const {
    return postings_;
  }

 private:
  SearchIndex() = default;
  friend SearchIndex load_index_snapshot(const std::string& path);

  std::shared_ptr<const Gazetteer> source_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> doc_lengths_;  // parallel to source entries (sorted by id)
  double avg_doc_length_ = 0.0;
};

/// Sorts matches by (population desc, score desc, entry id asc) and keeps the
/// first k as ranked candidates.
std::vector<Candidate> rerank_by_population(const Gazetteer& gazetteer,
                                            const std::vector<ScoredMatch>& matches,
                                            std::size_t k);

/// Keeps the first k matches in retrieval order (score desc, entry id asc).
std::vector<Candidate> candidates_by_score(const Gazetteer& gazetteer,
                                           const std::vector<ScoredMatch>& matches, std::size_t k);

/// Binary snapshot of the gazetteer plus the built index. The file starts
/// with a magic header and a format version; loading anything else fails.
void save_index_snapshot(const SearchIndex& index, const std::string& path);
SearchIndex load_index_snapshot(const std::string& path);

inline constexpr std::uint32_t kIndexSnapshotVersion = 1;

}  // namespace raccoon
