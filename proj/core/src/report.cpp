#include <algorithm>
#include <cmath>
#include <cstdio>

#include "raccoon/report.hpp"

namespace raccoon {

namespace {

std::string formatted(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string pad_left(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return std::string(width - text.size(), ' ') + text;
}

std::string pad_right(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return text + std::string(width - text.size(), ' ');
}

}  // namespace

std::string format_mean_error(const std::optional<double>& value) {
  return value.has_value() ? formatted("%.2f", *value) : std::string("-");
}

std::string format_fraction(const std::optional<double>& value) {
  return value.has_value() ? formatted("%.3f", *value) : std::string("-");
}

std::string ReportTable::to_string() const {
  static const char* kColumns[] = {"MErr", "A@161", "CAcc", "AUC", "Num"};
  std::size_t name_width = std::string("Variant").size();
  for (const ReportRow& row : rows) name_width = std::max(name_width, row.name.size());

  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const ReportRow& row : rows) {
    cells.push_back({
        format_mean_error(row.report.mean_error_km),
        format_fraction(row.report.accuracy_at_161),
        format_fraction(row.report.country_accuracy),
        format_fraction(row.report.auc),
        std::to_string(row.report.num_responses),
    });
  }

  std::size_t widths[5];
  for (std::size_t c = 0; c < 5; ++c) {
    widths[c] = std::string(kColumns[c]).size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }

  std::string out = pad_right("Variant", name_width);
  for (std::size_t c = 0; c < 5; ++c) {
    out += "  " + pad_left(kColumns[c], widths[c]);
  }
  out += "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += pad_right(rows[r].name, name_width);
    for (std::size_t c = 0; c < 5; ++c) {
      out += "  " + pad_left(cells[r][c], widths[c]);
    }
    out += "\n";
  }
  return out;
}

std::string format_population_buckets(const std::vector<PopulationBucket>& buckets) {
  std::string out = "Population bucket accuracy@161\n";
  for (const PopulationBucket& bucket : buckets) {
    std::string range = "[";
    range += formatted("%.0f", bucket.lower);
    range += ", ";
    range += std::isinf(bucket.upper) ? std::string("inf") : formatted("%.0f", bucket.upper);
    range += ")";
    out += pad_right(range, 24);
    out += "  n=" + pad_left(std::to_string(bucket.count), 6);
    out += "  A@161=";
    out += format_fraction(bucket.accuracy_at_161);
    out += "\n";
  }
  return out;
}

}  // namespace raccoon
