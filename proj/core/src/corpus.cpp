#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "raccoon/corpus.hpp"
#include "raccoon/unicode.hpp"

namespace raccoon {

const Article* Corpus::find_article(const std::string& article_id) const {
  for (const Article& article : articles) {
    if (article.article_id == article_id) return &article;
  }
  return nullptr;
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string> seen_ids;
  for (const Article& article : corpus.articles) {
    if (article.article_id.empty()) throw CorpusError("article with empty id");
    if (article.body.empty()) {
      throw CorpusError("article " + article.article_id + " has an empty body");
    }
    if (!seen_ids.insert(article.article_id).second) {
      throw CorpusError("duplicate article id " + article.article_id);
    }
  }
  for (const GoldMention& mention : corpus.mentions) {
    const Article* article = corpus.find_article(mention.article_id);
    if (article == nullptr) {
      throw CorpusError("mention references unknown article " + mention.article_id);
    }
    if (mention.char_start >= mention.char_end) {
      throw CorpusError("mention \"" + mention.surface + "\" in " + mention.article_id +
                        " has an empty or inverted span");
    }
    const std::size_t body_length = utf8_length(article->body);
    if (mention.char_end > body_length) {
      throw CorpusError("mention \"" + mention.surface + "\" in " + mention.article_id +
                        " ends past the article body");
    }
    const std::string span =
        utf8_substring(article->body, mention.char_start, mention.char_end);
    if (span != mention.surface) {
      throw CorpusError("mention span mismatch in " + mention.article_id + ": body has \"" +
                        span + "\", mention says \"" + mention.surface + "\"");
    }
    if (!valid_point(mention.gold_point)) {
      throw CorpusError("mention \"" + mention.surface + "\" in " + mention.article_id +
                        " has out-of-range gold coordinates");
    }
  }
}

std::vector<std::string> derive_mention_ids(const Corpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(corpus.mentions.size());
  std::map<std::string, int> counters;
  for (const GoldMention& mention : corpus.mentions) {
    const int ordinal = counters[mention.article_id]++;
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "#%04d", ordinal);
    ids.push_back(mention.article_id + suffix);
  }
  return ids;
}

namespace {

nlohmann::json mention_to_json(const GoldMention& mention) {
  nlohmann::json out{
      {"article_id", mention.article_id},
      {"surface", mention.surface},
      {"char_start", mention.char_start},
      {"char_end", mention.char_end},
      {"gold_lat", mention.gold_point.latitude},
      {"gold_lon", mention.gold_point.longitude},
  };
  out["gold_geonames_id"] =
      mention.gold_geonames_id.has_value() ? nlohmann::json(*mention.gold_geonames_id)
                                           : nlohmann::json(nullptr);
  out["gold_country"] = mention.gold_country.has_value() ? nlohmann::json(*mention.gold_country)
                                                         : nlohmann::json(nullptr);
  out["gold_population"] = mention.gold_population.has_value()
                               ? nlohmann::json(*mention.gold_population)
                               : nlohmann::json(nullptr);
  return out;
}

GoldMention mention_from_json(const nlohmann::json& value) {
  GoldMention mention;
  mention.article_id = value.at("article_id").get<std::string>();
  mention.surface = value.at("surface").get<std::string>();
  mention.char_start = value.at("char_start").get<std::size_t>();
  mention.char_end = value.at("char_end").get<std::size_t>();
  mention.gold_point.latitude = value.at("gold_lat").get<double>();
  mention.gold_point.longitude = value.at("gold_lon").get<double>();
  if (const auto& id = value.at("gold_geonames_id"); !id.is_null()) {
    mention.gold_geonames_id = id.get<std::int64_t>();
  }
  if (const auto& country = value.at("gold_country"); !country.is_null()) {
    mention.gold_country = country.get<std::string>();
  }
  if (const auto& population = value.at("gold_population"); !population.is_null()) {
    mention.gold_population = population.get<std::int64_t>();
  }
  return mention;
}

}  // namespace

void write_normalized(const Corpus& corpus, const std::string& path) {
  validate_corpus(corpus);
  nlohmann::json doc;
  doc["schema_version"] = kCorpusSchemaVersion;
  doc["provenance"] = {{"dataset", corpus.provenance.dataset},
                       {"adapter_version", corpus.provenance.adapter_version}};
  doc["articles"] = nlohmann::json::array();
  for (const Article& article : corpus.articles) {
    doc["articles"].push_back({{"article_id", article.article_id}, {"body", article.body}});
  }
  doc["mentions"] = nlohmann::json::array();
  for (const GoldMention& mention : corpus.mentions) {
    doc["mentions"].push_back(mention_to_json(mention));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write corpus file: " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw CorpusError("failed while writing corpus file: " + path);
}

Corpus load_normalized(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file: " + path);

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& error) {
    throw CorpusError("corpus file " + path + " is not valid JSON: " + error.what());
  }

  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kCorpusSchemaVersion) {
      throw CorpusError("corpus file " + path + " has schema version " +
                        std::to_string(version) + ", expected " +
                        std::to_string(kCorpusSchemaVersion));
    }
    Corpus corpus;
    const auto& provenance = doc.at("provenance");
    corpus.provenance.dataset = provenance.at("dataset").get<std::string>();
    corpus.provenance.adapter_version = provenance.at("adapter_version").get<std::string>();
    for (const auto& value : doc.at("articles")) {
      corpus.articles.push_back(Article{value.at("article_id").get<std::string>(),
                                        value.at("body").get<std::string>()});
    }
    for (const auto& value : doc.at("mentions")) {
      corpus.mentions.push_back(mention_from_json(value));
    }
    validate_corpus(corpus);
    return corpus;
  } catch (const nlohmann::json::exception& error) {
    throw CorpusError("corpus file " + path + " is malformed: " + error.what());
  }
}

}  // namespace raccoon
