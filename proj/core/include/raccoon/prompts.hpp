#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raccoon/geodesy.hpp"
#include "raccoon/index.hpp"
#include "raccoon/provider.hpp"

namespace raccoon {

enum class PredictionStatus { kParsed, kParseFailed, kProviderFailed };

std::string to_string(PredictionStatus status);
std::optional<PredictionStatus> prediction_status_from_string(const std::string& text);

struct GeoPrediction {
  std::optional<GeoPoint> point;  // present iff status == kParsed
  std::optional<std::string> country_code;  // uppercase ISO-2; ZZ answers map to absent
  std::optional<std::int64_t> chosen_candidate_id;
  std::string raw_response;
  PredictionStatus status = PredictionStatus::kParseFailed;

  bool parsed() const { return status == PredictionStatus::kParsed; }
};

struct PromptFlags {
  bool feature_types = true;
  bool state_context = true;
};

// The three-part geocoding prompt. context_block holds exactly one line per
// candidate in rank order (empty when retrieval is disabled); render() joins
// the parts with the fixed instruction header into the final prompt text.
struct PromptBundle {
  std::string context_block;
  std::string mention_block;
  std::string article_block;

  std::string render() const;
};

// Markers the mock provider keys on; kept public so tests can assert them.
extern const std::string kGeocodeHeader;
extern const std::string kCountryHeader;
extern const std::string kMentionPrefix;   // "Location mention: "
extern const std::string kArticlePrefix;   // "Article:"
extern const std::string kCandidateHeading;  // "Candidate locations:"

// Shortest decimal representation that parses back to the same double.
std::string format_decimal(double value);

// One deterministic sentence describing a gazetteer entry. The feature-type
// clause appears iff flags.feature_types; the admin1 clause iff
// flags.state_context and the entry has one; the country is always included
// when present.
std::string candidate_context_sentence(const GazetteerEntry& entry, const PromptFlags& flags);

// "<rank>. GeoNames ID <id>, population <pop>: <sentence>". The id/population
// preamble is constant across flag settings so the answer grammar's ID field
// and the mock's population policy keep working in every ablation.
std::string candidate_context_line(const Candidate& candidate, const PromptFlags& flags);

// Candidate parsed back out of a context line; the mock provider and tests
// share this to stay consistent with candidate_context_line.
struct ContextLineParse {
  int rank = 0;
  std::int64_t entry_id = 0;
  std::int64_t population = 0;
  std::string name;
  std::string latitude_text;
  std::string longitude_text;
  std::string country_code;  // empty when the sentence names no country
};
std::optional<ContextLineParse> parse_context_line(const std::string& line);

PromptBundle build_geocoding_prompt(const std::vector<Candidate>& candidates,
                                    const std::string& mention, const std::string& article,
                                    const PromptFlags& flags);

std::string build_country_prompt(const std::string& mention, const std::string& article);

// Trimmed two-letter reply -> uppercase code; UNKNOWN/ZZ/anything else -> absent.
std::optional<std::string> parse_country_response(const std::string& raw);

// Asks the provider which country contains the mention. Any failure (provider
// error, unparseable reply) yields absent so retrieval proceeds unfiltered.
std::optional<std::string> infer_country(const std::string& article, const std::string& mention,
                                         TextProvider& provider, std::chrono::milliseconds timeout,
                                         std::uint64_t sequence);

// Scans raw text for the first well-formed answer line
//   LAT=<decimal> LON=<decimal> COUNTRY=<AA|ZZ> ID=<digits|NONE>
// and range-checks the coordinates. Failures come back as status
// parse_failed with the raw text retained.
GeoPrediction parse_geocode_response(const std::string& raw);

// Inverse of parse_geocode_response for parsed predictions (round-trip exact).
std::string format_geocode_answer(const GeoPrediction& prediction);

}  // namespace raccoon
