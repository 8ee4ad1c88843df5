#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raccoon/geodesy.hpp"
#include "raccoon/prompts.hpp"

namespace raccoon {

// Normalizing maximum distance for AUC, as printed in the error-curve formula.
inline constexpr double kAucNormalizationKm = 20039.0;

// Join of a gold annotation with the pipeline's prediction for one mention.
struct EvalRecord {
  std::string mention_id;
  GeoPoint gold{};
  std::optional<std::string> gold_country;
  std::optional<std::int64_t> gold_population;
  std::optional<GeoPrediction> prediction;
  std::optional<double> error_km;  // present iff prediction parsed
};

struct MetricsReport {
  std::optional<double> mean_error_km;
  std::optional<double> accuracy_at_161;
  std::optional<double> country_accuracy;  // absent when no record is eligible
  std::optional<double> auc;
  int num_responses = 0;
  int total_mentions = 0;
};

// Arithmetic mean; throws std::invalid_argument on an empty list.
double mean_error(const std::vector<double>& errors_km);

// Fraction strictly below 161 km; throws std::invalid_argument on an empty list.
double accuracy_at_161(const std::vector<double>& errors_km);

// Sum of ln(e+1) over n*ln(20039), clamped to [0,1]; throws
// std::invalid_argument on an empty list or any negative error.
double auc(const std::vector<double>& errors_km);

// Over records with a gold country and a parsed prediction carrying a country:
// fraction matching case-insensitively. Absent when nothing is eligible.
std::optional<double> country_accuracy(const std::vector<EvalRecord>& records);

struct PopulationBucket {
  double lower = 0.0;  // inclusive
  double upper = 0.0;  // exclusive; +inf for the last open bucket
  std::size_t count = 0;
  std::optional<double> accuracy_at_161;  // absent for empty buckets
};

// Assigns each record with a gold population and a parsed prediction to the
// half-open bucket [edge_i, edge_{i+1}) containing the population and computes
// per-bucket accuracy@161. Edges must be strictly increasing with at least two
// entries (throws std::invalid_argument otherwise).
std::vector<PopulationBucket> population_bucket_accuracy(const std::vector<EvalRecord>& records,
                                                         const std::vector<double>& bucket_edges);

// Full report over a run; throws std::invalid_argument on an empty record
// list. Quality metrics are computed over parsed predictions only and are
// absent when nothing parsed.
MetricsReport summarize(const std::vector<EvalRecord>& records);

// Flat key=value serialization, one key per line, absent values printed as
// "-". Key order matches the table column order.
std::string to_key_value(const MetricsReport& report);

}  // namespace raccoon
