#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "raccoon/metrics.hpp"

using namespace raccoon;

namespace {

EvalRecord parsed_record(std::string id, double error_km,
                         std::optional<std::string> gold_country = std::nullopt,
                         std::optional<std::string> predicted_country = std::nullopt,
                         std::optional<std::int64_t> gold_population = std::nullopt) {
  EvalRecord record;
  record.mention_id = std::move(id);
  record.gold = {0.0, 0.0};
  record.gold_country = std::move(gold_country);
  record.gold_population = gold_population;
  GeoPrediction prediction;
  prediction.point = GeoPoint{0.0, 0.0};
  prediction.country_code = std::move(predicted_country);
  prediction.status = PredictionStatus::kParsed;
  record.prediction = std::move(prediction);
  record.error_km = error_km;
  return record;
}

EvalRecord failed_record(std::string id, PredictionStatus status) {
  EvalRecord record;
  record.mention_id = std::move(id);
  record.gold = {0.0, 0.0};
  GeoPrediction prediction;
  prediction.status = status;
  record.prediction = std::move(prediction);
  return record;
}

}  // namespace

TEST_CASE("mean_error and accuracy_at_161 on hand-checked lists") {
  CHECK(mean_error({10.0, 20.0, 30.0}) == doctest::Approx(20.0));
  CHECK(mean_error({0.0}) == 0.0);
  CHECK_THROWS_AS(mean_error({}), std::invalid_argument);

  CHECK(accuracy_at_161({10.0, 200.0}) == doctest::Approx(0.5));
  CHECK(accuracy_at_161({160.9999, 161.0, 161.0001}) == doctest::Approx(1.0 / 3.0));
  CHECK(accuracy_at_161({161.0}) == 0.0);  // the threshold itself is a miss
  CHECK(accuracy_at_161({0.0}) == 1.0);
  CHECK_THROWS_AS(accuracy_at_161({}), std::invalid_argument);
}

TEST_CASE("auc reproduces independently computed values") {
  constexpr double kTol = 1e-12;
  CHECK(std::abs(auc({0.0, 0.0, 0.0}) - 0.0) < kTol);
  CHECK(std::abs(auc({0.0, 20038.0}) - 0.5) < kTol);
  CHECK(std::abs(auc({20038.0}) - 1.0) < kTol);
  CHECK(std::abs(auc({1.0}) - 0.06997644574039948) < kTol);
  CHECK(std::abs(auc({10.0, 100.0, 1000.0}) - 0.4684892569962676) < kTol);
  CHECK(std::abs(auc({160.9, 161.0, 1000.0}) - 0.5748806538275659) < kTol);
  CHECK(std::abs(auc({0.5, 2.5, 20.25, 4000.125}) - 0.3283277050414804) < kTol);
  CHECK(std::abs(auc(std::vector<double>(7, 100.0)) - 0.4659179745508857) < kTol);
  CHECK(std::abs(auc({124.19, 50.0, 0.0, 3000.0}) - 0.42321104410690613) < kTol);
  CHECK(std::abs(auc({1e-9, 2e-9}) - 1.5143200806819198e-10) < kTol);
  CHECK(std::abs(auc({19000.0, 20000.0, 20038.0}) - 0.9981462411210317) < kTol);
  CHECK(std::abs(auc({0.0, 1.0, 160.999999, 161.0, 161.000001, 20038.0}) -
                 0.4351377153581634) < kTol);
}

TEST_CASE("auc clamps to [0,1] and rejects bad input") {
  // antipodal-ish blowups past the normalizer stay at 1
  CHECK(auc({30000.0, 30000.0}) == 1.0);
  CHECK_THROWS_AS(auc({}), std::invalid_argument);
  CHECK_THROWS_AS(auc({10.0, -0.0001}), std::invalid_argument);
}

TEST_CASE("auc is order-invariant and monotone in any single error") {
  const std::vector<double> base = {5.0, 800.0, 42.5, 0.0, 19000.0};
  std::vector<double> shuffled = {19000.0, 0.0, 5.0, 42.5, 800.0};
  CHECK(auc(base) == doctest::Approx(auc(shuffled)).epsilon(1e-12));

  std::vector<double> bumped = base;
  bumped[1] += 100.0;
  CHECK(auc(bumped) > auc(base));
}

TEST_CASE("country_accuracy only counts eligible records") {
  std::vector<EvalRecord> records;
  records.push_back(parsed_record("a#0001", 10.0, "AU", "au"));   // correct (case-insensitive)
  records.push_back(parsed_record("a#0002", 10.0, "AU", "GB"));   // wrong
  records.push_back(parsed_record("a#0003", 10.0, "AU"));         // prediction lacks country
  records.push_back(parsed_record("a#0004", 10.0, std::nullopt, "AU"));  // no gold country
  records.push_back(failed_record("a#0005", PredictionStatus::kParseFailed));

  const auto accuracy = country_accuracy(records);
  REQUIRE(accuracy.has_value());
  CHECK(*accuracy == doctest::Approx(0.5));

  CHECK_FALSE(country_accuracy({}).has_value());
  CHECK_FALSE(country_accuracy({parsed_record("b#0001", 1.0)}).has_value());
}

TEST_CASE("population buckets assign half-open ranges") {
  std::vector<EvalRecord> records;
  records.push_back(parsed_record("a#0001", 10.0, std::nullopt, std::nullopt, 500));
  records.push_back(parsed_record("a#0002", 500.0, std::nullopt, std::nullopt, 999));
  records.push_back(parsed_record("a#0003", 10.0, std::nullopt, std::nullopt, 1000));  // next bucket
  records.push_back(parsed_record("a#0004", 10.0, std::nullopt, std::nullopt, 2000000));
  records.push_back(parsed_record("a#0005", 10.0));  // no population: excluded
  records.push_back(failed_record("a#0006", PredictionStatus::kProviderFailed));

  const double inf = std::numeric_limits<double>::infinity();
  const auto buckets = population_bucket_accuracy(records, {0.0, 1000.0, 1000000.0, inf});
  REQUIRE(buckets.size() == 3);

  CHECK(buckets[0].lower == 0.0);
  CHECK(buckets[0].upper == 1000.0);
  CHECK(buckets[0].count == 2);
  REQUIRE(buckets[0].accuracy_at_161.has_value());
  CHECK(*buckets[0].accuracy_at_161 == doctest::Approx(0.5));

  CHECK(buckets[1].count == 1);
  CHECK(*buckets[1].accuracy_at_161 == doctest::Approx(1.0));

  CHECK(buckets[2].count == 1);
  CHECK(*buckets[2].accuracy_at_161 == doctest::Approx(1.0));
}

TEST_CASE("population buckets validate edges and leave empty buckets blank") {
  CHECK_THROWS_AS(population_bucket_accuracy({}, {1000.0}), std::invalid_argument);
  CHECK_THROWS_AS(population_bucket_accuracy({}, {5.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(population_bucket_accuracy({}, {10.0, 5.0}), std::invalid_argument);

  const auto buckets = population_bucket_accuracy({}, {0.0, 100.0});
  REQUIRE(buckets.size() == 1);
  CHECK(buckets[0].count == 0);
  CHECK_FALSE(buckets[0].accuracy_at_161.has_value());
}

TEST_CASE("summarize composes the full report over parsed records only") {
  std::vector<EvalRecord> records;
  records.push_back(parsed_record("a#0001", 0.0, "AU", "AU"));
  records.push_back(parsed_record("a#0002", 322.0, "AU", "GB"));
  records.push_back(failed_record("a#0003", PredictionStatus::kParseFailed));
  records.push_back(failed_record("a#0004", PredictionStatus::kProviderFailed));

  const MetricsReport report = summarize(records);
  CHECK(report.total_mentions == 4);
  CHECK(report.num_responses == 2);
  REQUIRE(report.mean_error_km.has_value());
  CHECK(*report.mean_error_km == doctest::Approx(161.0));
  REQUIRE(report.accuracy_at_161.has_value());
  CHECK(*report.accuracy_at_161 == doctest::Approx(0.5));
  REQUIRE(report.auc.has_value());
  CHECK(*report.auc == doctest::Approx(auc({0.0, 322.0})).epsilon(1e-12));
  REQUIRE(report.country_accuracy.has_value());
  CHECK(*report.country_accuracy == doctest::Approx(0.5));
}

TEST_CASE("summarize with no parsed predictions leaves quality metrics absent") {
  std::vector<EvalRecord> records;
  records.push_back(failed_record("a#0001", PredictionStatus::kParseFailed));
  records.push_back(failed_record("a#0002", PredictionStatus::kProviderFailed));

  const MetricsReport report = summarize(records);
  CHECK(report.total_mentions == 2);
  CHECK(report.num_responses == 0);
  CHECK_FALSE(report.mean_error_km.has_value());
  CHECK_FALSE(report.accuracy_at_161.has_value());
  CHECK_FALSE(report.auc.has_value());
  CHECK_FALSE(report.country_accuracy.has_value());

  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("to_key_value prints one key per line with dashes for absences") {
  MetricsReport report;
  report.mean_error_km = 12.5;
  report.accuracy_at_161 = 1.0;
  report.num_responses = 3;
  report.total_mentions = 4;

  CHECK(to_key_value(report) ==
        "mean_error_km=12.5\n"
        "accuracy_at_161=1\n"
        "country_accuracy=-\n"
        "auc=-\n"
        "num_responses=3\n"
        "total_mentions=4\n");
}
