#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "raccoon/metrics.hpp"
#include "raccoon/prompts.hpp"

namespace raccoon {

namespace {

bool equals_ignore_case(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

double mean_error(const std::vector<double>& errors_km) {
  if (errors_km.empty()) throw std::invalid_argument("mean_error needs at least one error");
  double sum = 0.0;
  for (double e : errors_km) sum += e;
  return sum / static_cast<double>(errors_km.size());
}

double accuracy_at_161(const std::vector<double>& errors_km) {
  if (errors_km.empty()) throw std::invalid_argument("accuracy_at_161 needs at least one error");
  std::size_t hits = 0;
  for (double e : errors_km) {
    if (e < 161.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(errors_km.size());
}

double auc(const std::vector<double>& errors_km) {
  if (errors_km.empty()) throw std::invalid_argument("auc needs at least one error");
  double sum = 0.0;
  for (double e : errors_km) {
    if (e < 0.0) throw std::invalid_argument("auc is undefined for negative errors");
    sum += std::log(e + 1.0);
  }
  const double value =
      sum / (static_cast<double>(errors_km.size()) * std::log(kAucNormalizationKm));
  return std::clamp(value, 0.0, 1.0);
}

std::optional<double> country_accuracy(const std::vector<EvalRecord>& records) {
  std::size_t eligible = 0;
  std::size_t correct = 0;
  for (const EvalRecord& record : records) {
    if (!record.gold_country.has_value()) continue;
    if (!record.prediction.has_value() || !record.prediction->parsed()) continue;
    if (!record.prediction->country_code.has_value()) continue;
    ++eligible;
    if (equals_ignore_case(*record.gold_country, *record.prediction->country_code)) ++correct;
  }
  if (eligible == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(eligible);
}

std::vector<PopulationBucket> population_bucket_accuracy(const std::vector<EvalRecord>& records,
                                                         const std::vector<double>& bucket_edges) {
  if (bucket_edges.size() < 2) {
    throw std::invalid_argument("population buckets need at least two edges");
  }
  for (std::size_t i = 1; i < bucket_edges.size(); ++i) {
    if (!(bucket_edges[i - 1] < bucket_edges[i])) {
      throw std::invalid_argument("population bucket edges must be strictly increasing");
    }
  }

  std::vector<PopulationBucket> buckets(bucket_edges.size() - 1);
  std::vector<std::size_t> hits(buckets.size(), 0);
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    buckets[i].lower = bucket_edges[i];
    buckets[i].upper = bucket_edges[i + 1];
  }

  for (const EvalRecord& record : records) {
    if (!record.gold_population.has_value() || !record.error_km.has_value()) continue;
    const double population = static_cast<double>(*record.gold_population);
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      if (population >= buckets[i].lower && population < buckets[i].upper) {
        ++buckets[i].count;
        if (*record.error_km < 161.0) ++hits[i];
        break;
      }
    }
  }

  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (buckets[i].count > 0) {
      buckets[i].accuracy_at_161 =
          static_cast<double>(hits[i]) / static_cast<double>(buckets[i].count);
    }
  }
  return buckets;
}

MetricsReport summarize(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize needs at least one record");

  MetricsReport report;
  report.total_mentions = static_cast<int>(records.size());

  std::vector<double> errors;
  errors.reserve(records.size());
  for (const EvalRecord& record : records) {
    if (!record.prediction.has_value() || !record.prediction->parsed()) continue;
    ++report.num_responses;
    if (record.error_km.has_value()) errors.push_back(*record.error_km);
  }

  if (!errors.empty()) {
    report.mean_error_km = mean_error(errors);
    report.accuracy_at_161 = accuracy_at_161(errors);
    report.auc = auc(errors);
  }
  report.country_accuracy = country_accuracy(records);
  return report;
}

std::string to_key_value(const MetricsReport& report) {
  const auto value_or_dash = [](const std::optional<double>& v) {
    return v.has_value() ? format_decimal(*v) : std::string("-");
  };
  std::string out;
  out += "mean_error_km=" + value_or_dash(report.mean_error_km) + "\n";
  out += "accuracy_at_161=" + value_or_dash(report.accuracy_at_161) + "\n";
  out += "country_accuracy=" + value_or_dash(report.country_accuracy) + "\n";
  out += "auc=" + value_or_dash(report.auc) + "\n";
  out += "num_responses=" + std::to_string(report.num_responses) + "\n";
  out += "total_mentions=" + std::to_string(report.total_mentions) + "\n";
  return out;
}

}  // namespace raccoon
