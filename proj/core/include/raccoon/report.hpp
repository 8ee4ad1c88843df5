#pragma once

#include <optional>
#include <string>
#include <vector>

#include "raccoon/metrics.hpp"

namespace raccoon {

// "%.2f" or "-" when absent; used for the MErr column.
std::string format_mean_error(const std::optional<double>& value);

// "%.3f" or "-" when absent; used for the fraction columns.
std::string format_fraction(const std::optional<double>& value);

struct ReportRow {
  std::string name;
  MetricsReport report;
};

// Fixed-order results table: MErr, A@161, CAcc, AUC, Num.
struct ReportTable {
  std::vector<ReportRow> rows;

  std::string to_string() const;
};

std::string format_population_buckets(const std::vector<PopulationBucket>& buckets);

}  // namespace raccoon
