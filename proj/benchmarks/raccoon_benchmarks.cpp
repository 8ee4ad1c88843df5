#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "raccoon/gazetteer.hpp"
#include "raccoon/geodesy.hpp"
#include "raccoon/index.hpp"

namespace {

using raccoon::Gazetteer;
using raccoon::GazetteerEntry;
using raccoon::GeoPoint;
using raccoon::SearchIndex;

std::vector<GazetteerEntry> make_entries(std::size_t count) {
  static const char* kWords[] = {"spring", "field", "lake",  "north", "port",  "san",
                                 "villa",  "nueva", "old",   "fort",  "saint", "clair",
                                 "bad",    "neu",   "upper", "lower"};
  static const char* kCountries[] = {"US", "GB", "AU", "DE", "FR", "BR", "IN", "CN"};
  std::mt19937_64 rng(99);
  std::vector<GazetteerEntry> entries;
  entries.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    GazetteerEntry entry;
    entry.id = static_cast<std::int64_t>(i);
    const int words = 1 + static_cast<int>(rng() % 3);
    for (int w = 0; w < words; ++w) {
      if (w > 0) entry.name += " ";
      entry.name += kWords[rng() % 16];
    }
    entry.latitude = -80.0 + static_cast<double>(rng() % 160000) / 1000.0;
    entry.longitude = -170.0 + static_cast<double>(rng() % 340000) / 1000.0;
    entry.country_code = kCountries[rng() % 8];
    entry.population = static_cast<std::int64_t>(rng() % 5000000);
    entry.feature_code = "PPL";
    if (rng() % 3 == 0) entry.alternate_names.push_back(kWords[rng() % 16]);
    entries.push_back(std::move(entry));
  }
  return entries;
}

void bm_tokenize(benchmark::State& state) {
  const std::string text = "Stratford-upon-Avon, Newcastle upon Tyne and Bad Neuenahr-Ahrweiler";
  for (auto _ : state) {
    benchmark::DoNotOptimize(raccoon::tokenize(text));
  }
}
BENCHMARK(bm_tokenize);

void bm_index_build(benchmark::State& state) {
  const auto entries = make_entries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto index = SearchIndex::build(std::make_shared<Gazetteer>(entries));
    benchmark::DoNotOptimize(index.doc_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_index_build)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_search(benchmark::State& state) {
  const auto entries = make_entries(static_cast<std::size_t>(state.range(0)));
  const auto index = SearchIndex::build(std::make_shared<Gazetteer>(entries));
  static const char* kQueries[] = {"spring field", "lake", "port saint", "villa nueva"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search(kQueries[i++ % 4], std::nullopt, 100));
  }
}
BENCHMARK(bm_search)->Arg(10000)->Arg(100000);

void bm_search_filtered(benchmark::State& state) {
  const auto entries = make_entries(static_cast<std::size_t>(state.range(0)));
  const auto index = SearchIndex::build(std::make_shared<Gazetteer>(entries));
  const std::optional<std::string> country = "US";
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search("spring field", country, 100));
  }
}
BENCHMARK(bm_search_filtered)->Arg(100000);

void bm_haversine(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::vector<GeoPoint> points(1024);
  for (auto& point : points) point = GeoPoint{lat(rng), lon(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const GeoPoint& a = points[i % 1024];
    const GeoPoint& b = points[(i + 511) % 1024];
    benchmark::DoNotOptimize(raccoon::haversine_km(a, b));
    ++i;
  }
}
BENCHMARK(bm_haversine);

}  // namespace

BENCHMARK_MAIN();
