#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raccoon/gazetteer.hpp"
#include "support/fixtures.hpp"

using namespace raccoon;
using raccoon::testing::TempDir;
using raccoon::testing::write_file;

namespace {

const char* kMainRows =
    "2158177\tMelbourne\tMelbourne\t\t-37.814\t144.96332\tP\tPPLA\tAU\t\t07\t\t\t\t5078193\t\t\t"
    "Australia/Melbourne\t2023-01-01\n"
    "2147714\tSydney\tSydney\t\t-33.86785\t151.20732\tP\tPPLA\tAU\t\t02\t\t\t\t4627345\t\t\t"
    "Australia/Sydney\t2023-01-01\n"
    "2988507\tParis\tParis\t\t48.85341\t2.3488\tP\tPPLC\tFR\t\t11\t\t\t\t2138551\t\t\t"
    "Europe/Paris\t2023-01-01\n";

}  // namespace

TEST_CASE("parse_gazetteer_row reads the 19-field main dump layout") {
  const GazetteerEntry entry = parse_gazetteer_row(
      "2147714\tSydney\tSydney\t\t-33.86785\t151.20732\tP\tPPLA\tAU\t\t02\t\t\t\t4627345\t\t\t"
      "Australia/Sydney\t2023-01-01");
  CHECK(entry.id == 2147714);
  CHECK(entry.name == "Sydney");
  CHECK(entry.latitude == doctest::Approx(-33.86785));
  CHECK(entry.longitude == doctest::Approx(151.20732));
  CHECK(entry.feature_class == 'P');
  CHECK(entry.feature_code == "PPLA");
  CHECK(entry.country_code == "AU");
  CHECK(entry.admin1 == "02");
  CHECK(entry.population == 4627345);
  CHECK(entry.alternate_names.empty());
}

TEST_CASE("parse_gazetteer_row defaults empty population to zero") {
  const GazetteerEntry entry = parse_gazetteer_row(
      "42\tNowhere\tNowhere\t\t1.5\t2.5\tP\tPPL\tUS\t\t\t\t\t\t\t\t\tUTC\t2023-01-01");
  CHECK(entry.population == 0);
}

TEST_CASE("parse_gazetteer_row rejects malformed rows") {
  CHECK_THROWS_AS(parse_gazetteer_row("not a dump row"), ParseError);
  // wrong field count
  CHECK_THROWS_AS(parse_gazetteer_row("1\tName\tName\t\t0\t0"), ParseError);
  // latitude out of range
  CHECK_THROWS_AS(
      parse_gazetteer_row(
          "1\tName\tName\t\t95.0\t0\tP\tPPL\tUS\t\t\t\t\t\t0\t\t\tUTC\t2023-01-01"),
      ParseError);
  // country code must be two uppercase letters or empty
  CHECK_THROWS_AS(
      parse_gazetteer_row(
          "1\tName\tName\t\t0\t0\tP\tPPL\tusa\t\t\t\t\t\t0\t\t\tUTC\t2023-01-01"),
      ParseError);
  // negative population
  CHECK_THROWS_AS(
      parse_gazetteer_row(
          "1\tName\tName\t\t0\t0\tP\tPPL\tUS\t\t\t\t\t\t-5\t\t\tUTC\t2023-01-01"),
      ParseError);
}

TEST_CASE("format_main_dump_row round-trips through the parser") {
  GazetteerEntry entry = raccoon::testing::make_entry(77, "São Paulo", -23.5475, -46.63611, "BR",
                                                      22046000, "27", "PPLA");
  const GazetteerEntry reparsed = parse_gazetteer_row(format_main_dump_row(entry));
  CHECK(reparsed == entry);
}

TEST_CASE("parse_alternate_name_row reads names and abbreviation markers") {
  const AlternateName alt = parse_alternate_name_row("101\t2147714\ten\tSydney Town\t\t\t\t");
  CHECK(alt.entry_id == 2147714);
  CHECK(alt.language == "en");
  CHECK(alt.name == "Sydney Town");
  CHECK_FALSE(alt.is_abbreviation);

  const AlternateName abbr = parse_alternate_name_row("102\t2147714\tabbr\tSYD\t\t\t\t");
  CHECK(abbr.is_abbreviation);
  CHECK(abbr.name == "SYD");
}

TEST_CASE("gazetteer rejects duplicate ids and looks up by id") {
  std::vector<GazetteerEntry> entries = {
      raccoon::testing::make_entry(2, "B", 0, 0, "US", 10),
      raccoon::testing::make_entry(1, "A", 0, 0, "US", 20),
  };
  const Gazetteer gazetteer(entries);
  CHECK(gazetteer.count() == 2);
  CHECK(gazetteer.entries()[0].id == 1);  // sorted by id
  REQUIRE(gazetteer.lookup_by_id(2) != nullptr);
  CHECK(gazetteer.lookup_by_id(2)->name == "B");
  CHECK(gazetteer.lookup_by_id(3) == nullptr);
  CHECK(gazetteer.index_of(1) == 0);
  CHECK(gazetteer.index_of(99) == Gazetteer::npos);

  entries.push_back(raccoon::testing::make_entry(1, "dup", 0, 0, "US", 0));
  CHECK_THROWS_AS(Gazetteer{entries}, std::invalid_argument);
}

TEST_CASE("load_gazetteer attaches filtered alternates and abbreviations") {
  TempDir dir("gaz");
  write_file(dir.file("main.tsv"), kMainRows);
  write_file(dir.file("alt.tsv"),
             "1\t2147714\ten\tSydney Town\t\t\t\t\n"
             "2\t2147714\tru\tСидней\t\t\t\t\n"
             "3\t2147714\tabbr\tSYD\t\t\t\t\n"
             "4\t999999\ten\tGhost\t\t\t\t\n");

  const GazetteerLoad load = load_gazetteer(dir.file("main.tsv"), dir.file("alt.tsv"), {});
  CHECK(load.stats.main_rows == 3);
  CHECK(load.stats.alternate_rows == 2);  // en name + abbreviation
  CHECK(load.stats.filtered_alternate_rows == 1);  // ru name
  CHECK(load.stats.dangling_alternate_rows == 1);  // unknown id 999999

  const GazetteerEntry* sydney = load.gazetteer.lookup_by_id(2147714);
  REQUIRE(sydney != nullptr);
  CHECK(sydney->alternate_names == std::vector<std::string>{"Sydney Town"});
  CHECK(sydney->abbreviations == std::vector<std::string>{"SYD"});
}

TEST_CASE("abbreviations attach regardless of the language filter") {
  TempDir dir("gaz");
  write_file(dir.file("main.tsv"), kMainRows);
  write_file(dir.file("alt.tsv"), "3\t2988507\tabbr\tPAR\t\t\t\t\n");
  LoadOptions options;
  options.language_filter = "de";
  const GazetteerLoad load = load_gazetteer(dir.file("main.tsv"), dir.file("alt.tsv"), options);
  CHECK(load.gazetteer.lookup_by_id(2988507)->abbreviations ==
        std::vector<std::string>{"PAR"});
}

TEST_CASE("lenient load skips bad rows and counts them; strict load throws") {
  TempDir dir("gaz");
  const std::string rows = std::string(kMainRows) + "garbage row\n";
  write_file(dir.file("main.tsv"), rows);

  const GazetteerLoad lenient = load_gazetteer(dir.file("main.tsv"), "", {});
  CHECK(lenient.stats.main_rows == 3);
  CHECK(lenient.stats.skipped_main_rows == 1);

  LoadOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(load_gazetteer(dir.file("main.tsv"), "", strict), ParseError);
}

TEST_CASE("duplicate dump rows: first occurrence wins in lenient mode, strict throws") {
  TempDir dir("gaz");
  const std::string rows = std::string(kMainRows) +
                           "2147714\tSydney Again\tSydney\t\t0\t0\tP\tPPL\tAU\t\t\t\t\t\t1\t\t\t"
                           "UTC\t2023-01-01\n";
  write_file(dir.file("main.tsv"), rows);

  const GazetteerLoad lenient = load_gazetteer(dir.file("main.tsv"), "", {});
  CHECK(lenient.stats.main_rows == 3);
  CHECK(lenient.stats.skipped_main_rows == 1);
  CHECK(lenient.gazetteer.lookup_by_id(2147714)->name == "Sydney");

  LoadOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(load_gazetteer(dir.file("main.tsv"), "", strict), ParseError);
}

TEST_CASE("missing files throw") {
  CHECK_THROWS(load_gazetteer("/nonexistent/main.tsv", "", {}));
  TempDir dir("gaz");
  write_file(dir.file("main.tsv"), kMainRows);
  CHECK_THROWS(load_gazetteer(dir.file("main.tsv"), "/nonexistent/alt.tsv", {}));
}
