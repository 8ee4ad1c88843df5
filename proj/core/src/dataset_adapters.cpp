#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "raccoon/corpus.hpp"
#include "raccoon/unicode.hpp"

namespace raccoon {

namespace {

constexpr const char* kAdapterVersion = "1";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool span_matches(const std::string& body, std::size_t start, std::size_t end,
                  const std::string& surface) {
  if (start >= end) return false;
  if (end > utf8_length(body)) return false;
  return utf8_substring(body, start, end) == surface;
}

void fill_from_gazetteer(GoldMention& mention, const Gazetteer& gazetteer) {
  if (!mention.gold_geonames_id.has_value()) return;
  const GazetteerEntry* entry = gazetteer.lookup_by_id(*mention.gold_geonames_id);
  if (entry == nullptr) return;
  if (!entry->country_code.empty()) mention.gold_country = entry->country_code;
  mention.gold_population = entry->population;
}

struct BratEntity {
  std::string type;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
};

// "T1<TAB>Literal 0 6<TAB>Moscow" -> entity; discontinuous spans and other
// shapes return nullopt.
std::optional<BratEntity> parse_brat_entity(const std::string& line) {
  const auto first_tab = line.find('\t');
  const auto second_tab = first_tab == std::string::npos ? std::string::npos
                                                         : line.find('\t', first_tab + 1);
  if (second_tab == std::string::npos) return std::nullopt;

  const std::string middle = line.substr(first_tab + 1, second_tab - first_tab - 1);
  static const std::regex kMiddlePattern(R"(^(\S+) (\d+) (\d+)$)");
  std::smatch match;
  if (!std::regex_match(middle, match, kMiddlePattern)) return std::nullopt;

  BratEntity entity;
  entity.type = match[1].str();
  std::replace(entity.type.begin(), entity.type.end(), '_', ' ');
  entity.start = std::stoull(match[2].str());
  entity.end = std::stoull(match[3].str());
  entity.surface = line.substr(second_tab + 1);
  if (!entity.surface.empty() && entity.surface.back() == '\r') entity.surface.pop_back();
  return entity;
}

// Annotator notes carry either "lat,lon", a bare GeoNames id, or a
// geonames.org URL.
struct NoteContent {
  std::optional<GeoPoint> point;
  std::optional<std::int64_t> geonames_id;
};

std::optional<NoteContent> parse_note_content(std::string note) {
  const auto begin = note.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return std::nullopt;
  const auto end = note.find_last_not_of(" \t\r\n");
  note = note.substr(begin, end - begin + 1);

  static const std::regex kCoordinatePattern(
      R"(^(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)$)");
  static const std::regex kIdPattern(R"(^\d+$)");
  static const std::regex kUrlPattern(R"(geonames\.org/(\d+))");

  std::smatch match;
  NoteContent content;
  if (std::regex_match(note, match, kCoordinatePattern)) {
    content.point = GeoPoint{std::stod(match[1].str()), std::stod(match[2].str())};
    return content;
  }
  if (std::regex_match(note, match, kIdPattern)) {
    content.geonames_id = std::stoll(note);
    return content;
  }
  if (std::regex_search(note, match, kUrlPattern)) {
    content.geonames_id = std::stoll(match[1].str());
    return content;
  }
  return std::nullopt;
}

bool geowebnews_type_allowed(const std::string& type) {
  static const std::vector<std::string> kAllowed = {
      "Literal", "Literal Modifier", "Mixed", "Coercion", "Embedded Literal"};
  return std::find(kAllowed.begin(), kAllowed.end(), type) != kAllowed.end();
}

}  // namespace

AdapterResult parse_geowebnews(const std::string& dataset_dir, const Gazetteer& gazetteer) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dataset_dir)) {
    throw CorpusError("GeoWebNews path is not a directory: " + dataset_dir);
  }

  std::vector<fs::path> texts;
  for (const auto& entry : fs::directory_iterator(dataset_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      texts.push_back(entry.path());
    }
  }
  std::sort(texts.begin(), texts.end());

  AdapterResult result;
  result.corpus.provenance = {"geowebnews", kAdapterVersion};

  for (const fs::path& text_path : texts) {
    fs::path ann_path = text_path;
    ann_path.replace_extension(".ann");
    if (!fs::exists(ann_path)) {
      throw CorpusError("missing annotation file for " + text_path.string());
    }

    const std::string article_id = text_path.stem().string();
    const std::string body = read_file(text_path);
    if (body.empty()) {
      ++result.stats.dropped_anomalies;
      continue;
    }
    result.corpus.articles.push_back(Article{article_id, body});
    ++result.stats.articles;

    // First pass: entities and notes, keyed by the brat id.
    std::map<std::string, BratEntity> entities;
    std::map<std::string, NoteContent> notes;
    std::vector<std::string> entity_order;
    std::istringstream ann(read_file(ann_path));
    std::string line;
    while (std::getline(ann, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == 'T') {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
          ++result.stats.dropped_anomalies;
          continue;
        }
        const std::string id = line.substr(0, tab);
        if (auto entity = parse_brat_entity(line); entity.has_value()) {
          entities[id] = std::move(*entity);
          entity_order.push_back(id);
        } else {
          ++result.stats.dropped_anomalies;
        }
      } else if (line[0] == '#') {
        static const std::regex kNotePattern(R"(^#\S*\tAnnotatorNotes (T\S+)\t(.*)$)");
        std::smatch match;
        if (std::regex_match(line, match, kNotePattern)) {
          if (auto content = parse_note_content(match[2].str()); content.has_value()) {
            notes[match[1].str()] = std::move(*content);
          }
        }
      }
      // Other brat record kinds (relations, attributes) are irrelevant here.
    }

    for (const std::string& id : entity_order) {
      const BratEntity& entity = entities[id];
      if (!geowebnews_type_allowed(entity.type)) {
        ++result.stats.dropped_type;
        continue;
      }
      if (!span_matches(body, entity.start, entity.end, entity.surface)) {
        ++result.stats.dropped_anomalies;
        continue;
      }

      GoldMention mention;
      mention.article_id = article_id;
      mention.surface = entity.surface;
      mention.char_start = entity.start;
      mention.char_end = entity.end;

      const auto note = notes.find(id);
      if (note == notes.end()) {
        ++result.stats.dropped_no_coordinates;
        continue;
      }
      if (note->second.geonames_id.has_value()) {
        mention.gold_geonames_id = note->second.geonames_id;
        const GazetteerEntry* entry = gazetteer.lookup_by_id(*mention.gold_geonames_id);
        if (entry == nullptr && !note->second.point.has_value()) {
          ++result.stats.dropped_no_coordinates;
          continue;
        }
        if (entry != nullptr) mention.gold_point = GeoPoint{entry->latitude, entry->longitude};
      }
      if (note->second.point.has_value()) mention.gold_point = *note->second.point;
      if (!valid_point(mention.gold_point)) {
        ++result.stats.dropped_anomalies;
        continue;
      }
      fill_from_gazetteer(mention, gazetteer);
      result.corpus.mentions.push_back(std::move(mention));
      ++result.stats.mentions_kept;
    }
  }

  validate_corpus(result.corpus);
  return result;
}

AdapterResult parse_lgl(const std::string& xml_path, const Gazetteer& gazetteer) {
  boost::property_tree::ptree doc;
  try {
    boost::property_tree::read_xml(xml_path, doc);
  } catch (const boost::property_tree::xml_parser_error& error) {
    throw CorpusError("cannot parse LGL file " + xml_path + ": " + error.what());
  }

  AdapterResult result;
  result.corpus.provenance = {"lgl", kAdapterVersion};

  const auto articles = doc.get_child_optional("articles");
  if (!articles) throw CorpusError("LGL file " + xml_path + " has no <articles> root");

  for (const auto& [key, article_node] : *articles) {
    if (key != "article") continue;
    const std::string article_id = article_node.get<std::string>("<xmlattr>.docid", "");
    const std::string body = article_node.get<std::string>("text", "");
    if (article_id.empty() || body.empty()) {
      ++result.stats.dropped_anomalies;
      continue;
    }
    result.corpus.articles.push_back(Article{article_id, body});
    ++result.stats.articles;

    const auto toponyms = article_node.get_child_optional("toponyms");
    if (!toponyms) continue;
    for (const auto& [toponym_key, toponym] : *toponyms) {
      if (toponym_key != "toponym") continue;

      GoldMention mention;
      mention.article_id = article_id;
      mention.surface = toponym.get<std::string>("phrase", "");
      const auto start = toponym.get_optional<std::size_t>("start");
      const auto end = toponym.get_optional<std::size_t>("end");
      if (mention.surface.empty() || !start || !end) {
        ++result.stats.dropped_anomalies;
        continue;
      }
      mention.char_start = *start;
      mention.char_end = *end;

      const auto gaztag = toponym.get_child_optional("gaztag");
      if (!gaztag) {
        ++result.stats.dropped_no_coordinates;
        continue;
      }
      const auto latitude = gaztag->get_optional<double>("lat");
      const auto longitude = gaztag->get_optional<double>("lon");
      if (!latitude || !longitude) {
        ++result.stats.dropped_no_coordinates;
        continue;
      }
      mention.gold_point = GeoPoint{*latitude, *longitude};

      if (!span_matches(body, mention.char_start, mention.char_end, mention.surface) ||
          !valid_point(mention.gold_point)) {
        ++result.stats.dropped_anomalies;
        continue;
      }
      if (const auto id = gaztag->get_optional<std::int64_t>("<xmlattr>.geonameid"); id) {
        mention.gold_geonames_id = *id;
      }
      fill_from_gazetteer(mention, gazetteer);
      result.corpus.mentions.push_back(std::move(mention));
      ++result.stats.mentions_kept;
    }
  }

  validate_corpus(result.corpus);
  return result;
}

AdapterResult parse_geovirus(const std::string& xml_path,
                             const std::string& country_sidecar_path) {
  boost::property_tree::ptree doc;
  try {
    boost::property_tree::read_xml(xml_path, doc);
  } catch (const boost::property_tree::xml_parser_error& error) {
    throw CorpusError("cannot parse GeoVirus file " + xml_path + ": " + error.what());
  }

  AdapterResult result;
  result.corpus.provenance = {"geovirus", kAdapterVersion};

  const auto articles = doc.get_child_optional("articles");
  if (!articles) throw CorpusError("GeoVirus file " + xml_path + " has no <articles> root");

  int article_ordinal = 0;
  for (const auto& [key, article_node] : *articles) {
    if (key != "article") continue;
    ++article_ordinal;
    char id_buffer[16];
    std::snprintf(id_buffer, sizeof(id_buffer), "gv-%04d", article_ordinal);
    const std::string article_id = id_buffer;

    const std::string body = article_node.get<std::string>("text", "");
    if (body.empty()) {
      ++result.stats.dropped_anomalies;
      continue;
    }
    result.corpus.articles.push_back(Article{article_id, body});
    ++result.stats.articles;

    const auto locations = article_node.get_child_optional("locations");
    if (!locations) continue;
    for (const auto& [location_key, location] : *locations) {
      if (location_key != "location") continue;

      GoldMention mention;
      mention.article_id = article_id;
      mention.surface = location.get<std::string>("name", "");
      const auto start = location.get_optional<std::size_t>("start");
      const auto end = location.get_optional<std::size_t>("end");
      const auto latitude = location.get_optional<double>("lat");
      const auto longitude = location.get_optional<double>("lon");
      if (mention.surface.empty() || !start || !end || !latitude || !longitude) {
        ++result.stats.dropped_anomalies;
        continue;
      }
      mention.char_start = *start;
      mention.char_end = *end;
      mention.gold_point = GeoPoint{*latitude, *longitude};
      if (!span_matches(body, mention.char_start, mention.char_end, mention.surface) ||
          !valid_point(mention.gold_point)) {
        ++result.stats.dropped_anomalies;
        continue;
      }
      result.corpus.mentions.push_back(std::move(mention));
      ++result.stats.mentions_kept;
    }
  }

  // Country sidecar: { "<mention id>": "<ISO-2>" , ... }.
  std::ifstream sidecar_in(country_sidecar_path, std::ios::binary);
  if (!sidecar_in) throw CorpusError("cannot open country sidecar: " + country_sidecar_path);
  nlohmann::json sidecar;
  try {
    sidecar_in >> sidecar;
  } catch (const nlohmann::json::exception& error) {
    throw CorpusError("country sidecar " + country_sidecar_path +
                      " is not valid JSON: " + error.what());
  }
  if (!sidecar.is_object()) {
    throw CorpusError("country sidecar " + country_sidecar_path + " must be a JSON object");
  }

  const std::vector<std::string> mention_ids = derive_mention_ids(result.corpus);
  for (std::size_t i = 0; i < result.corpus.mentions.size(); ++i) {
    const auto entry = sidecar.find(mention_ids[i]);
    if (entry == sidecar.end() || !entry->is_string()) continue;
    std::string code = entry->get<std::string>();
    if (code.size() != 2) continue;
    for (char& c : code) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    result.corpus.mentions[i].gold_country = code;
  }

  validate_corpus(result.corpus);
  return result;
}

}  // namespace raccoon
