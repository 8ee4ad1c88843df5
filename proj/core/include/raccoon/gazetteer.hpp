#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace raccoon {

/// One GeoNames location. country_code and admin1 are empty when the dump
/// leaves the field blank; population parses as 0 when the field is empty.
struct GazetteerEntry {
  std::int64_t id = 0;
  std::string name;
  std::vector<std::string> alternate_names;  // English-language alternates
  std::vector<std::string> abbreviations;
  double latitude = 0.0;
  double longitude = 0.0;
  std::string country_code;  // two uppercase ASCII letters, or empty
  std::string admin1;        // state / first-order division name or code
  char feature_class = ' ';
  std::string feature_code;
  std::int64_t population = 0;

  bool operator==(const GazetteerEntry&) const = default;
};

/// Row-level failure in a dump file, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct AlternateName {
  std::int64_t entry_id = 0;
  std::string name;
  std::string language;
  bool is_abbreviation = false;
};

/// Immutable after construction; safe for unrestricted concurrent reads.
class Gazetteer {
 public:
  Gazetteer() = default;

  /// Takes ownership of the entries, sorted by id. Duplicate ids are rejected.
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  std::size_t count() const { return entries_.size(); }
  const std::vector<GazetteerEntry>& entries() const { return entries_; }

  /// nullptr when the id is not stored; never throws.
  const GazetteerEntry* lookup_by_id(std::int64_t id) const;

  /// Position of an entry in entries(), or npos.
  std::size_t index_of(std::int64_t id) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<GazetteerEntry> entries_;  // sorted by id
  std::unordered_map<std::int64_t, std::size_t> by_id_;
};

struct LoadStats {
  std::size_t main_rows = 0;  // well-formed rows loaded
  std::size_t skipped_main_rows = 0;
  std::size_t alternate_rows = 0;  // attached to an entry
  std::size_t skipped_alternate_rows = 0;
  std::size_t dangling_alternate_rows = 0;  // referenced an unknown entry id
  std::size_t filtered_alternate_rows = 0;  // dropped by the language filter
};

struct LoadOptions {
  std::string language_filter = "en";
  bool strict = false;  // abort on the first bad row instead of skip-and-count
};

struct GazetteerLoad {
  Gazetteer gazetteer;
  LoadStats stats;
};

/// Parses one line of the GeoNames main dump (19 tab-separated fields).
/// Alternate-name lists come back empty; they are attached by load_gazetteer.
/// Throws ParseError on malformed rows.
GazetteerEntry parse_gazetteer_row(std::string_view line, std::size_t line_number = 0);

/// Parses one line of the GeoNames alternateNames dump. The language field
/// value "abbr" marks abbreviations. Throws ParseError on malformed rows.
AlternateName parse_alternate_name_row(std::string_view line, std::size_t line_number = 0);

/// Loads the main dump and, when alternates_path is non-empty, attaches
/// alternate names whose language matches the filter plus all abbreviation
/// rows. Unreadable files throw std::runtime_error; per-row errors follow
/// LoadOptions::strict.
GazetteerLoad load_gazetteer(const std::string& main_path, const std::string& alternates_path,
                             const LoadOptions& options = {});

/// Synthetic main-dump row for an entry (alternate lists are not representable
/// in the main layout). parse_gazetteer_row(format_main_dump_row(e)) == e.
std::string format_main_dump_row(const GazetteerEntry& entry);

}  // namespace raccoon
