#include "raccoon/gazetteer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace raccoon {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::int64_t parse_int_field(std::string_view field, std::size_t line_number, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_number, std::string("non-numeric ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

double parse_double_field(std::string_view field, std::size_t line_number, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_number, std::string("non-numeric ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

bool is_upper2(std::string_view s) {
  return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string format_coordinate(double value) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const GazetteerEntry& a, const GazetteerEntry& b) { return a.id < b.id; });
  by_id_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!by_id_.emplace(entries_[i].id, i).second) {
      throw std::invalid_argument("duplicate gazetteer id " + std::to_string(entries_[i].id));
    }
  }
}

const GazetteerEntry* Gazetteer::lookup_by_id(std::int64_t id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

std::size_t Gazetteer::index_of(std::int64_t id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? npos : it->second;
}

GazetteerEntry parse_gazetteer_row(std::string_view line, std::size_t line_number) {
  const auto fields = split_tabs(line);
  if (fields.size() < 19) {
    throw ParseError(line_number, "expected 19 tab-separated fields, got " +
                                      std::to_string(fields.size()));
  }

  GazetteerEntry entry;
  entry.id = parse_int_field(fields[0], line_number, "id");
  if (entry.id <= 0) throw ParseError(line_number, "id must be positive");
  entry.name = std::string(fields[1]);
  if (entry.name.empty()) throw ParseError(line_number, "empty name");
  entry.latitude = parse_double_field(fields[4], line_number, "latitude");
  entry.longitude = parse_double_field(fields[5], line_number, "longitude");
  if (entry.latitude < -90.0 || entry.latitude > 90.0) {
    throw ParseError(line_number, "latitude out of range [-90, 90]");
  }
  if (entry.longitude < -180.0 || entry.longitude > 180.0) {
    throw ParseError(line_number, "longitude out of range [-180, 180]");
  }
  if (fields[6].size() > 1) throw ParseError(line_number, "feature class is not a single character");
  entry.feature_class = fields[6].empty() ? ' ' : fields[6][0];
  entry.feature_code = std::string(fields[7]);
  if (!fields[8].empty()) {
    if (!is_upper2(fields[8])) {
      throw ParseError(line_number, "country code '" + std::string(fields[8]) +
                                        "' is not two uppercase letters");
    }
    entry.country_code = std::string(fields[8]);
  }
  entry.admin1 = std::string(fields[10]);
  if (!fields[14].empty()) {
    entry.population = parse_int_field(fields[14], line_number, "population");
    if (entry.population < 0) throw ParseError(line_number, "negative population");
  }
  return entry;
}

AlternateName parse_alternate_name_row(std::string_view line, std::size_t line_number) {
  const auto fields = split_tabs(line);
  if (fields.size() < 4) {
    throw ParseError(line_number, "expected at least 4 tab-separated fields, got " +
                                      std::to_string(fields.size()));
  }
  AlternateName alt;
  alt.entry_id = parse_int_field(fields[1], line_number, "entry id");
  if (alt.entry_id <= 0) throw ParseError(line_number, "entry id must be positive");
  alt.language = std::string(fields[2]);
  alt.name = std::string(fields[3]);
  if (alt.name.empty()) throw ParseError(line_number, "empty alternate name");
  alt.is_abbreviation = alt.language == "abbr";
  return alt;
}

GazetteerLoad load_gazetteer(const std::string& main_path, const std::string& alternates_path,
                             const LoadOptions& options) {
  std::ifstream main_file(main_path);
  if (!main_file) throw std::runtime_error("cannot open gazetteer dump: " + main_path);

  LoadStats stats;
  std::vector<GazetteerEntry> entries;
  std::unordered_map<std::int64_t, std::size_t> by_id;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(main_file, line)) {
    ++line_number;
    strip_cr(line);
    if (line.empty()) continue;
    try {
      GazetteerEntry entry = parse_gazetteer_row(line, line_number);
      if (!by_id.emplace(entry.id, entries.size()).second) {
        throw ParseError(line_number, "duplicate id " + std::to_string(entry.id));
      }
      entries.push_back(std::move(entry));
      ++stats.main_rows;
    } catch (const ParseError&) {
      if (options.strict) throw;
      ++stats.skipped_main_rows;
    }
  }

  if (!alternates_path.empty()) {
    std::ifstream alt_file(alternates_path);
    if (!alt_file) throw std::runtime_error("cannot open alternate names dump: " + alternates_path);
    line_number = 0;
    while (std::getline(alt_file, line)) {
      ++line_number;
      strip_cr(line);
      if (line.empty()) continue;
      try {
        const AlternateName alt = parse_alternate_name_row(line, line_number);
        if (!alt.is_abbreviation && alt.language != options.language_filter) {
          ++stats.filtered_alternate_rows;
          continue;
        }
        const auto it = by_id.find(alt.entry_id);
        if (it == by_id.end()) {
          ++stats.dangling_alternate_rows;
          continue;
        }
        if (alt.is_abbreviation) {
          entries[it->second].abbreviations.push_back(alt.name);
        } else {
          entries[it->second].alternate_names.push_back(alt.name);
        }
        ++stats.alternate_rows;
      } catch (const ParseError&) {
        if (options.strict) throw;
        ++stats.skipped_alternate_rows;
      }
    }
  }

  return GazetteerLoad{Gazetteer(std::move(entries)), stats};
}

std::string format_main_dump_row(const GazetteerEntry& entry) {
  std::string row;
  row += std::to_string(entry.id);
  row += '\t';
  row += entry.name;
  row += '\t';
  row += entry.name;  // asciiname
  row += '\t';        // alternatenames column is left empty
  row += '\t';
  row += format_coordinate(entry.latitude);
  row += '\t';
  row += format_coordinate(entry.longitude);
  row += '\t';
  row += entry.feature_class;
  row += '\t';
  row += entry.feature_code;
  row += '\t';
  row += entry.country_code;
  row += '\t';  // cc2
  row += '\t';
  row += entry.admin1;
  row += "\t\t\t\t";  // admin2..admin4
  row += std::to_string(entry.population);
  row += "\t\t\t\t";  // elevation, dem, timezone, modification date
  return row;
}

}  // namespace raccoon
