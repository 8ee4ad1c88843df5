#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "raccoon/prompts.hpp"
#include "raccoon/provider.hpp"

namespace raccoon {

namespace {

std::string lowercase(const std::string& text) {
  std::string out = text;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto newline = text.find('\n', pos);
    if (newline == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, newline - pos));
    pos = newline + 1;
  }
  return lines;
}

std::optional<std::string> find_mention(const std::vector<std::string>& lines) {
  for (const auto& line : lines) {
    if (line.rfind(kMentionPrefix, 0) == 0) return line.substr(kMentionPrefix.size());
  }
  return std::nullopt;
}

std::string answer_for_candidate(const ContextLineParse& candidate,
                                 const MockProviderOptions& options, bool matched) {
  std::string latitude = candidate.latitude_text;
  if (matched && options.miss_below_population.has_value() &&
      candidate.population < *options.miss_below_population) {
    // Simulated small-place miss: push the answer ~15 degrees off.
    double lat = 0.0;
    try {
      lat = std::stod(candidate.latitude_text);
    } catch (...) {
      lat = 0.0;
    }
    lat = lat <= 75.0 ? lat + 15.0 : lat - 15.0;
    latitude = format_decimal(lat);
  }
  std::string answer = "LAT=" + latitude;
  answer += " LON=" + candidate.longitude_text;
  answer += " COUNTRY=";
  answer += candidate.country_code.empty() ? std::string("ZZ") : candidate.country_code;
  answer += " ID=" + std::to_string(candidate.entry_id);
  return answer;
}

}  // namespace

CompletionResult MockProvider::complete(const ProviderRequest& request) {
  if (options_.fault_period > 0 && request.sequence > 0 &&
      request.sequence % options_.fault_period == 0) {
    return {false, "", "injected fault at sequence " + std::to_string(request.sequence)};
  }

  const std::vector<std::string> lines = split_lines(request.prompt);
  const std::optional<std::string> mention = find_mention(lines);

  if (request.prompt.find("ISO 3166-1") != std::string::npos) {
    if (mention.has_value()) {
      const auto it = options_.country_fixtures.find(*mention);
      if (it != options_.country_fixtures.end()) return {true, it->second, ""};
    }
    return {true, "UNKNOWN", ""};
  }

  std::vector<ContextLineParse> candidates;
  for (const auto& line : lines) {
    if (auto parsed = parse_context_line(line); parsed.has_value()) {
      candidates.push_back(std::move(*parsed));
    }
  }
  if (candidates.empty()) {
    return {true, "LAT=0 LON=0 COUNTRY=ZZ ID=NONE", ""};
  }

  const ContextLineParse* chosen = nullptr;
  bool matched = false;
  if (mention.has_value()) {
    const std::string wanted = lowercase(*mention);
    for (const auto& candidate : candidates) {
      if (lowercase(candidate.name) != wanted) continue;
      if (chosen == nullptr || candidate.population > chosen->population) chosen = &candidate;
    }
    matched = chosen != nullptr;
  }
  if (chosen == nullptr) chosen = &candidates.front();

  return {true, answer_for_candidate(*chosen, options_, matched), ""};
}

}  // namespace raccoon
