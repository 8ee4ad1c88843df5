#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <regex>
#include <stdexcept>
#include <system_error>

#include "raccoon/prompts.hpp"

namespace raccoon {

const std::string kGeocodeHeader =
    "You are a geocoding assistant. Resolve the location mention below to "
    "geographic coordinates using the article for context.\n"
    "Reply with exactly one line of the form:\n"
    "LAT=<decimal> LON=<decimal> COUNTRY=<two-letter code> ID=<GeoNames id or NONE>\n"
    "Use COUNTRY=ZZ when the country is unknown and ID=NONE when no listed "
    "candidate applies.";

const std::string kCountryHeader =
    "Name the two-letter ISO 3166-1 country code of the country that contains "
    "the location mentioned below, using the article for context.\n"
    "Reply with the code only, or UNKNOWN if you cannot tell.";

const std::string kMentionPrefix = "Location mention: ";
const std::string kArticlePrefix = "Article:";
const std::string kCandidateHeading = "Candidate locations:";

std::string to_string(PredictionStatus status) {
  switch (status) {
    case PredictionStatus::kParsed:
      return "parsed";
    case PredictionStatus::kParseFailed:
      return "parse_failed";
    case PredictionStatus::kProviderFailed:
      return "provider_failed";
  }
  return "parse_failed";
}

std::optional<PredictionStatus> prediction_status_from_string(const std::string& text) {
  if (text == "parsed") return PredictionStatus::kParsed;
  if (text == "parse_failed") return PredictionStatus::kParseFailed;
  if (text == "provider_failed") return PredictionStatus::kProviderFailed;
  return std::nullopt;
}

std::string format_decimal(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  if (result.ec != std::errc()) throw std::runtime_error("cannot format decimal");
  return std::string(buf, result.ptr);
}

std::string candidate_context_sentence(const GazetteerEntry& entry, const PromptFlags& flags) {
  std::string sentence = entry.name;
  if (flags.feature_types && !entry.feature_code.empty()) {
    sentence += " (feature type ";
    sentence += entry.feature_code;
    sentence += ")";
  }
  sentence += " is located at latitude ";
  sentence += format_decimal(entry.latitude);
  sentence += ", longitude ";
  sentence += format_decimal(entry.longitude);

  const bool has_state = flags.state_context && !entry.admin1.empty();
  const bool has_country = !entry.country_code.empty();
  if (has_state && has_country) {
    sentence += " in " + entry.admin1 + ", " + entry.country_code;
  } else if (has_state) {
    sentence += " in " + entry.admin1;
  } else if (has_country) {
    sentence += " in " + entry.country_code;
  }
  sentence += ".";
  return sentence;
}

std::string candidate_context_line(const Candidate& candidate, const PromptFlags& flags) {
  std::string line = std::to_string(candidate.rank);
  line += ". GeoNames ID ";
  line += std::to_string(candidate.entry.id);
  line += ", population ";
  line += std::to_string(candidate.entry.population);
  line += ": ";
  line += candidate_context_sentence(candidate.entry, flags);
  return line;
}

std::optional<ContextLineParse> parse_context_line(const std::string& line) {
  static const std::regex kLinePattern(
      R"(^(\d+)\. GeoNames ID (\d+), population (\d+): (.*)$)");
  std::smatch match;
  if (!std::regex_match(line, match, kLinePattern)) return std::nullopt;

  ContextLineParse parse;
  const std::string rank_text = match[1].str();
  const std::string id_text = match[2].str();
  const std::string pop_text = match[3].str();
  if (std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), parse.rank).ec !=
          std::errc() ||
      std::from_chars(id_text.data(), id_text.data() + id_text.size(), parse.entry_id).ec !=
          std::errc() ||
      std::from_chars(pop_text.data(), pop_text.data() + pop_text.size(), parse.population).ec !=
          std::errc()) {
    return std::nullopt;
  }

  const std::string sentence = match[4].str();
  const std::string kLocated = " is located at latitude ";
  const std::string kFeature = " (feature type ";
  const auto located_pos = sentence.find(kLocated);
  if (located_pos == std::string::npos) return std::nullopt;
  auto name_end = located_pos;
  const auto feature_pos = sentence.find(kFeature);
  if (feature_pos != std::string::npos && feature_pos < located_pos) name_end = feature_pos;
  parse.name = sentence.substr(0, name_end);

  auto lat_begin = located_pos + kLocated.size();
  const auto lat_end = sentence.find(", longitude ", lat_begin);
  if (lat_end == std::string::npos) return std::nullopt;
  parse.latitude_text = sentence.substr(lat_begin, lat_end - lat_begin);

  auto lon_begin = lat_end + std::string(", longitude ").size();
  auto lon_end = sentence.find(" in ", lon_begin);
  std::string tail;
  if (lon_end == std::string::npos) {
    lon_end = sentence.rfind('.');
    if (lon_end == std::string::npos || lon_end < lon_begin) return std::nullopt;
  } else {
    tail = sentence.substr(lon_end + 4);
    if (!tail.empty() && tail.back() == '.') tail.pop_back();
  }
  parse.longitude_text = sentence.substr(lon_begin, lon_end - lon_begin);

  if (!tail.empty()) {
    // tail is "<admin1>, <CC>", "<CC>" or "<admin1>"; a bare two-uppercase
    // token is read as the country code.
    const auto comma = tail.rfind(", ");
    std::string last = comma == std::string::npos ? tail : tail.substr(comma + 2);
    const bool is_code = last.size() == 2 && std::isupper(static_cast<unsigned char>(last[0])) &&
                         std::isupper(static_cast<unsigned char>(last[1]));
    if (is_code) parse.country_code = last;
  }
  return parse;
}

std::string PromptBundle::render() const {
  std::string out = kGeocodeHeader;
  out += "\n\n";
  if (!context_block.empty()) {
    out += kCandidateHeading;
    out += "\n";
    out += context_block;
    out += "\n\n";
  }
  out += mention_block;
  out += "\n\n";
  out += article_block;
  out += "\n";
  return out;
}

PromptBundle build_geocoding_prompt(const std::vector<Candidate>& candidates,
                                    const std::string& mention, const std::string& article,
                                    const PromptFlags& flags) {
  if (article.find(mention) == std::string::npos) {
    std::fprintf(stderr, "warning: mention \"%s\" does not appear in the article text\n",
                 mention.c_str());
  }
  PromptBundle bundle;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i > 0) bundle.context_block += "\n";
    bundle.context_block += candidate_context_line(candidates[i], flags);
  }
  bundle.mention_block = kMentionPrefix + mention;
  bundle.article_block = kArticlePrefix + "\n" + article;
  return bundle;
}

std::string build_country_prompt(const std::string& mention, const std::string& article) {
  std::string out = kCountryHeader;
  out += "\n\n";
  out += kMentionPrefix + mention;
  out += "\n\n";
  out += kArticlePrefix + "\n" + article;
  out += "\n";
  return out;
}

std::optional<std::string> parse_country_response(const std::string& raw) {
  auto begin = raw.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return std::nullopt;
  auto end = raw.find_last_not_of(" \t\r\n");
  std::string body = raw.substr(begin, end - begin + 1);
  if (body.size() != 2 || !std::isalpha(static_cast<unsigned char>(body[0])) ||
      !std::isalpha(static_cast<unsigned char>(body[1]))) {
    return std::nullopt;
  }
  for (char& c : body) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (body == "ZZ") return std::nullopt;
  return body;
}

std::optional<std::string> infer_country(const std::string& article, const std::string& mention,
                                         TextProvider& provider, std::chrono::milliseconds timeout,
                                         std::uint64_t sequence) {
  ProviderRequest request;
  request.prompt = build_country_prompt(mention, article);
  request.max_output_tokens = 8;
  request.timeout = timeout;
  request.sequence = sequence;
  const CompletionResult result = provider.complete(request);
  if (!result.ok) return std::nullopt;
  return parse_country_response(result.text);
}

namespace {

bool parse_double_text(const std::string& text, double& out) {
  const auto result = std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

}  // namespace

GeoPrediction parse_geocode_response(const std::string& raw) {
  GeoPrediction prediction;
  prediction.raw_response = raw;
  prediction.status = PredictionStatus::kParseFailed;

  static const std::regex kAnswerPattern(
      R"(^LAT=(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?) )"
      R"(LON=(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?) )"
      R"(COUNTRY=([A-Za-z]{2}) ID=(\d+|NONE)$)");

  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto newline = raw.find('\n', pos);
    std::string line =
        raw.substr(pos, newline == std::string::npos ? std::string::npos : newline - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::smatch match;
    if (std::regex_match(line, match, kAnswerPattern)) {
      double lat = 0.0;
      double lon = 0.0;
      if (parse_double_text(match[1].str(), lat) && parse_double_text(match[2].str(), lon) &&
          valid_point(GeoPoint{lat, lon})) {
        std::string country = match[3].str();
        for (char& c : country) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        std::optional<std::int64_t> candidate_id;
        const std::string id_text = match[4].str();
        if (id_text != "NONE") {
          std::int64_t id = 0;
          if (std::from_chars(id_text.data(), id_text.data() + id_text.size(), id).ec !=
              std::errc()) {
            // id overflow: treat the line as malformed and keep scanning
            pos = newline == std::string::npos ? raw.size() + 1 : newline + 1;
            continue;
          }
          candidate_id = id;
        }
        prediction.point = GeoPoint{lat, lon};
        if (country != "ZZ") prediction.country_code = country;
        prediction.chosen_candidate_id = candidate_id;
        prediction.status = PredictionStatus::kParsed;
        return prediction;
      }
    }
    if (newline == std::string::npos) break;
    pos = newline + 1;
  }
  return prediction;
}

std::string format_geocode_answer(const GeoPrediction& prediction) {
  if (!prediction.parsed() || !prediction.point.has_value()) {
    throw std::invalid_argument("only parsed predictions can be formatted as answers");
  }
  std::string out = "LAT=";
  out += format_decimal(prediction.point->latitude);
  out += " LON=";
  out += format_decimal(prediction.point->longitude);
  out += " COUNTRY=";
  out += prediction.country_code.value_or("ZZ");
  out += " ID=";
  out += prediction.chosen_candidate_id.has_value()
             ? std::to_string(*prediction.chosen_candidate_id)
             : std::string("NONE");
  return out;
}

}  // namespace raccoon
