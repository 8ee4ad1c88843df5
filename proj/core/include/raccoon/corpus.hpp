#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raccoon/gazetteer.hpp"
#include "raccoon/geodesy.hpp"

namespace raccoon {

inline constexpr int kCorpusSchemaVersion = 1;

struct Article {
  std::string article_id;
  std::string body;  // UTF-8, non-empty

  bool operator==(const Article&) const = default;
};

// Offsets count Unicode scalar values into the article body.
struct GoldMention {
  std::string article_id;
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;  // exclusive
  GeoPoint gold_point{};
  std::optional<std::int64_t> gold_geonames_id;
  std::optional<std::string> gold_country;
  std::optional<std::int64_t> gold_population;

  bool operator==(const GoldMention&) const = default;
};

struct CorpusProvenance {
  std::string dataset;
  std::string adapter_version;

  bool operator==(const CorpusProvenance&) const = default;
};

struct Corpus {
  CorpusProvenance provenance;
  std::vector<Article> articles;
  std::vector<GoldMention> mentions;

  const Article* find_article(const std::string& article_id) const;

  bool operator==(const Corpus&) const = default;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enforces the corpus invariants: non-empty bodies, every mention referencing
// an existing article, offsets in range and the offset substring equal to the
// surface. Throws CorpusError on the first violation.
void validate_corpus(const Corpus& corpus);

// Stable per-mention identifiers "<article_id>#<ordinal>" with the ordinal
// zero-padded to four digits, counted per article in corpus order.
std::vector<std::string> derive_mention_ids(const Corpus& corpus);

struct AdapterStats {
  std::size_t articles = 0;
  std::size_t mentions_kept = 0;
  std::size_t dropped_type = 0;             // toponym type outside the allow list
  std::size_t dropped_no_coordinates = 0;   // no gold coordinates resolvable
  std::size_t dropped_anomalies = 0;        // malformed rows, offset mismatches
};

struct AdapterResult {
  Corpus corpus;
  AdapterStats stats;
};

// Brat-style .txt/.ann directory. Only toponyms typed Literal, Literal
// Modifier, Mixed, Coercion or Embedded Literal are kept; coordinates come
// from the annotator note (either "lat,lon" or a GeoNames id resolved through
// the gazetteer).
AdapterResult parse_geowebnews(const std::string& dataset_dir, const Gazetteer& gazetteer);

// LGL XML. Toponyms without an associated coordinate tag are dropped; country
// and population are filled from the gazetteer via the annotated GeoNames id.
AdapterResult parse_lgl(const std::string& xml_path, const Gazetteer& gazetteer);

// GeoVirus XML plus a sidecar file mapping mention ids to country codes
// (stand-in for live reverse geocoding). Nothing is filtered.
AdapterResult parse_geovirus(const std::string& xml_path,
                             const std::string& country_sidecar_path);

// Canonical interchange format (JSON with a schema_version field).
// write_normalized ∘ load_normalized is the identity; load rejects schema
// mismatches and invariant violations.
Corpus load_normalized(const std::string& path);
void write_normalized(const Corpus& corpus, const std::string& path);

}  // namespace raccoon
