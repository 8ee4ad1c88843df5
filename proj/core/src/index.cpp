#include "raccoon/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace raccoon {

namespace {

std::uint32_t posting_tf(const std::vector<Posting>& postings, std::int64_t entry_id) {
  const auto it = std::lower_bound(
      postings.begin(), postings.end(), entry_id,
      [](const Posting& p, std::int64_t id) { return p.entry_id < id; });
  if (it == postings.end() || it->entry_id != entry_id) return 0;
  return it->term_frequency;
}

double idf(std::size_t doc_count, std::size_t doc_frequency) {
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(doc_frequency);
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double tf_term(std::uint32_t tf, std::uint32_t doc_length, double avg_doc_length) {
  const double norm = 1.0 - kBm25B + kBm25B * static_cast<double>(doc_length) / avg_doc_length;
  return static_cast<double>(tf) * (kBm25K1 + 1.0) / (static_cast<double>(tf) + kBm25K1 * norm);
}

std::vector<std::string> document_tokens(const GazetteerEntry& entry) {
  std::vector<std::string> tokens = tokenize(entry.name);
  const auto append = [&tokens](const std::string& text) {
    auto extra = tokenize(text);
    tokens.insert(tokens.end(), std::make_move_iterator(extra.begin()),
                  std::make_move_iterator(extra.end()));
  };
  for (const auto& alt : entry.alternate_names) append(alt);
  for (const auto& abbr : entry.abbreviations) append(abbr);
  return tokens;
}

}  // namespace

SearchIndex SearchIndex::build(std::shared_ptr<const Gazetteer> source) {
  if (!source || source->count() == 0) {
    throw std::invalid_argument("cannot build an index over an empty gazetteer");
  }

  SearchIndex index;
  index.source_ = std::move(source);
  const auto& entries = index.source_->entries();
  index.doc_lengths_.reserve(entries.size());

  std::uint64_t total_length = 0;
  for (const auto& entry : entries) {
    const auto tokens = document_tokens(entry);
    std::map<std::string, std::uint32_t> frequencies;
    for (const auto& token : tokens) ++frequencies[token];
    for (const auto& [token, tf] : frequencies) {
      index.postings_[token].push_back(Posting{entry.id, tf});
    }
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    total_length += tokens.size();
  }
  // Entries are iterated in ascending-id order, so postings are already
  // sorted by entry id.
  index.avg_doc_length_ = static_cast<double>(total_length) / static_cast<double>(entries.size());
  return index;
}

std::uint32_t SearchIndex::doc_length(std::int64_t entry_id) const {
  const std::size_t i = source_->index_of(entry_id);
  if (i == Gazetteer::npos) {
    throw std::out_of_range("unknown entry id " + std::to_string(entry_id));
  }
  return doc_lengths_[i];
}

const std::vector<Posting>* SearchIndex::postings(const std::string& token) const {
  const auto it = postings_.find(token);
  return it == postings_.end() ? nullptr : &it->second;
}

double SearchIndex::bm25_score(const std::vector<std::string>& query_tokens,
                               std::int64_t entry_id) const {
  const std::size_t i = source_->index_of(entry_id);
  if (i == Gazetteer::npos) {
    throw std::out_of_range("unknown entry id " + std::to_string(entry_id));
  }
  const std::uint32_t length = doc_lengths_[i];
  double score = 0.0;
  for (const auto& token : query_tokens) {
    const auto* list = postings(token);
    if (!list) continue;
    const std::uint32_t tf = posting_tf(*list, entry_id);
    if (tf == 0) continue;
    score += idf(doc_count(), list->size()) * tf_term(tf, length, avg_doc_length_);
  }
  return score;
}

std::vector<ScoredMatch> SearchIndex::search(std::string_view mention,
                                             const std::optional<std::string>& country_filter,
                                             std::size_t depth) const {
  const auto query_tokens = tokenize(mention);
  if (query_tokens.empty() || depth == 0) return {};

  // Token-major accumulation adds contributions per document in query-token
  // order, matching the summation sequence of bm25_score exactly.
  std::unordered_map<std::int64_t, double> scores;
  for (const auto& token : query_tokens) {
    const auto* list = postings(token);
    if (!list) continue;
    const double token_idf = idf(doc_count(), list->size());
    for (const Posting& posting : *list) {
      const std::size_t i = source_->index_of(posting.entry_id);
      scores[posting.entry_id] +=
          token_idf * tf_term(posting.term_frequency, doc_lengths_[i], avg_doc_length_);
    }
  }

  std::vector<ScoredMatch> matches;
  matches.reserve(scores.size());
  for (const auto& [entry_id, score] : scores) {
    const GazetteerEntry* entry = source_->lookup_by_id(entry_id);
    matches.push_back(ScoredMatch{entry_id, score, entry->population});
  }

  if (country_filter) {
    std::vector<ScoredMatch> filtered;
    filtered.reserve(matches.size());
    for (const auto& match : matches) {
      if (source_->lookup_by_id(match.entry_id)->country_code == *country_filter) {
        filtered.push_back(match);
      }
    }
    // Fall back to the unfiltered pool when the filter removes everything.
    if (!filtered.empty()) matches = std::move(filtered);
  }

  std::sort(matches.begin(), matches.end(), [](const ScoredMatch& a, const ScoredMatch& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entry_id < b.entry_id;
  });
  if (matches.size() > depth) matches.resize(depth);
  return matches;
}

namespace {

std::vector<Candidate> make_candidates(const Gazetteer& gazetteer,
                                       const std::vector<ScoredMatch>& ordered, std::size_t k) {
  std::vector<Candidate> candidates;
  candidates.reserve(std::min(k, ordered.size()));
  for (const auto& match : ordered) {
    if (candidates.size() == k) break;
    const GazetteerEntry* entry = gazetteer.lookup_by_id(match.entry_id);
    if (!entry) throw std::logic_error("match references an entry missing from the gazetteer");
    candidates.push_back(Candidate{*entry, match.score, static_cast<int>(candidates.size()) + 1});
  }
  return candidates;
}

}  // namespace

std::vector<Candidate> rerank_by_population(const Gazetteer& gazetteer,
                                            const std::vector<ScoredMatch>& matches,
                                            std::size_t k) {
  std::vector<ScoredMatch> ordered = matches;
  std::sort(ordered.begin(), ordered.end(), [](const ScoredMatch& a, const ScoredMatch& b) {
    if (a.population != b.population) return a.population > b.population;
    if (a.score != b.score) return a.score > b.score;
    return a.entry_id < b.entry_id;
  });
  return make_candidates(gazetteer, ordered, k);
}

std::vector<Candidate> candidates_by_score(const Gazetteer& gazetteer,
                                           const std::vector<ScoredMatch>& matches,
                                           std::size_t k) {
  return make_candidates(gazetteer, matches, k);
}

}  // namespace raccoon
