#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "raccoon/corpus.hpp"
#include "raccoon/gazetteer.hpp"
#include "raccoon/unicode.hpp"

namespace raccoon::testing {

inline GazetteerEntry make_entry(std::int64_t id, std::string name, double lat, double lon,
                                 std::string country, std::int64_t population,
                                 std::string admin1 = "", std::string feature_code = "PPL",
                                 std::vector<std::string> alternates = {},
                                 std::vector<std::string> abbreviations = {}) {
  GazetteerEntry entry;
  entry.id = id;
  entry.name = std::move(name);
  entry.alternate_names = std::move(alternates);
  entry.abbreviations = std::move(abbreviations);
  entry.latitude = lat;
  entry.longitude = lon;
  entry.country_code = std::move(country);
  entry.admin1 = std::move(admin1);
  entry.feature_class = 'P';
  entry.feature_code = std::move(feature_code);
  entry.population = population;
  return entry;
}

// Unique temp directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto candidate = base / (tag + "-" + std::to_string(rng()));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp directory for " + tag);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write fixture file " + path);
  out << content;
}

// Article whose body embeds the given surfaces, with correctly computed
// codepoint offsets. Returns the article and appends the gold mentions.
inline Article make_article_with_mentions(const std::string& article_id,
                                          const std::vector<const GazetteerEntry*>& targets,
                                          std::vector<GoldMention>& mentions) {
  std::string body = "Dispatch";
  for (const GazetteerEntry* entry : targets) {
    body += " from ";
    GoldMention mention;
    mention.article_id = article_id;
    mention.surface = entry->name;
    mention.char_start = utf8_length(body);
    body += entry->name;
    mention.char_end = utf8_length(body);
    mention.gold_point = GeoPoint{entry->latitude, entry->longitude};
    mention.gold_geonames_id = entry->id;
    if (!entry->country_code.empty()) mention.gold_country = entry->country_code;
    mention.gold_population = entry->population;
    mentions.push_back(std::move(mention));
  }
  body += ".";
  return Article{article_id, body};
}

// n entries named Place1..Placen spread over five countries, all with a
// unique name token so BM25 retrieval is an exact lookup.
inline std::vector<GazetteerEntry> synthetic_gazetteer(int n) {
  static const char* kCountries[] = {"US", "GB", "AU", "DE", "FR"};
  std::vector<GazetteerEntry> entries;
  entries.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double lat = -80.0 + std::fmod(i * 7.31, 160.0);
    const double lon = -170.0 + std::fmod(i * 13.7, 340.0);
    entries.push_back(make_entry(i, "Place" + std::to_string(i), lat, lon,
                                 kCountries[i % 5], 1000 + 17 * i,
                                 "Region " + std::to_string(i % 7)));
  }
  return entries;
}

}  // namespace raccoon::testing
