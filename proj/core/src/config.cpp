#include <fstream>
#include <stdexcept>

#include "raccoon/pipeline.hpp"

namespace raccoon {

namespace {

nlohmann::json optional_json(const std::optional<double>& value) {
  return value.has_value() ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

nlohmann::json provider_json(const ProviderConfig& provider) {
  if (provider.kind == ProviderKind::kHttp) {
    return {
        {"kind", "http"},
        {"endpoint", provider.http.endpoint},
        {"path", provider.http.path},
        {"model", provider.http.model},
        {"api_key_env", provider.http.api_key_env},
        {"max_retries", provider.http.max_retries},
        {"initial_backoff_ms", provider.http.initial_backoff.count()},
    };
  }
  nlohmann::json out{
      {"kind", "mock"},
      {"country_fixtures", provider.mock.country_fixtures},
      {"fault_period", provider.mock.fault_period},
  };
  out["miss_below_population"] = provider.mock.miss_below_population.has_value()
                                     ? nlohmann::json(*provider.mock.miss_below_population)
                                     : nlohmann::json(nullptr);
  return out;
}

ProviderConfig provider_from_json(const nlohmann::json& in) {
  ProviderConfig provider;
  const std::string kind = in.value("kind", "mock");
  if (kind == "mock") {
    provider.kind = ProviderKind::kMock;
    if (in.contains("country_fixtures")) {
      provider.mock.country_fixtures =
          in.at("country_fixtures").get<std::map<std::string, std::string>>();
    }
    provider.mock.fault_period = in.value("fault_period", std::uint64_t{0});
    if (in.contains("miss_below_population") && !in.at("miss_below_population").is_null()) {
      provider.mock.miss_below_population = in.at("miss_below_population").get<std::int64_t>();
    }
    return provider;
  }
  if (kind == "http") {
    provider.kind = ProviderKind::kHttp;
    HttpProviderConfig defaults;
    provider.http.endpoint = in.value("endpoint", defaults.endpoint);
    provider.http.path = in.value("path", defaults.path);
    provider.http.model = in.value("model", defaults.model);
    provider.http.api_key_env = in.value("api_key_env", defaults.api_key_env);
    provider.http.max_retries = in.value("max_retries", defaults.max_retries);
    provider.http.initial_backoff =
        std::chrono::milliseconds(in.value("initial_backoff_ms", defaults.initial_backoff.count()));
    return provider;
  }
  throw std::invalid_argument("provider kind must be \"mock\" or \"http\", got \"" + kind + "\"");
}

nlohmann::json prediction_json(const GeoPrediction& prediction) {
  nlohmann::json out{
      {"status", to_string(prediction.status)},
      {"raw_response", prediction.raw_response},
  };
  out["lat"] = prediction.point.has_value() ? nlohmann::json(prediction.point->latitude)
                                            : nlohmann::json(nullptr);
  out["lon"] = prediction.point.has_value() ? nlohmann::json(prediction.point->longitude)
                                            : nlohmann::json(nullptr);
  out["country"] = prediction.country_code.has_value() ? nlohmann::json(*prediction.country_code)
                                                       : nlohmann::json(nullptr);
  out["candidate_id"] = prediction.chosen_candidate_id.has_value()
                            ? nlohmann::json(*prediction.chosen_candidate_id)
                            : nlohmann::json(nullptr);
  return out;
}

nlohmann::json record_json(const EvalRecord& record) {
  nlohmann::json out{
      {"mention_id", record.mention_id},
      {"gold_lat", record.gold.latitude},
      {"gold_lon", record.gold.longitude},
  };
  out["gold_country"] =
      record.gold_country.has_value() ? nlohmann::json(*record.gold_country) : nlohmann::json(nullptr);
  out["gold_population"] = record.gold_population.has_value()
                               ? nlohmann::json(*record.gold_population)
                               : nlohmann::json(nullptr);
  out["prediction"] = record.prediction.has_value() ? prediction_json(*record.prediction)
                                                    : nlohmann::json(nullptr);
  out["error_km"] = optional_json(record.error_km);
  return out;
}

nlohmann::json report_json(const MetricsReport& report) {
  nlohmann::json out{
      {"num_responses", report.num_responses},
      {"total_mentions", report.total_mentions},
  };
  out["mean_error_km"] = optional_json(report.mean_error_km);
  out["accuracy_at_161"] = optional_json(report.accuracy_at_161);
  out["country_accuracy"] = optional_json(report.country_accuracy);
  out["auc"] = optional_json(report.auc);
  return out;
}

}  // namespace

void to_json(nlohmann::json& out, const PipelineConfig& config) {
  out = nlohmann::json{
      {"candidate_count", config.candidate_count},
      {"retrieval_depth", config.retrieval_depth},
      {"country_assisted", config.country_assisted},
      {"population_rerank", config.population_rerank},
      {"feature_types", config.feature_types},
      {"state_context", config.state_context},
      {"retrieval_enabled", config.retrieval_enabled},
      {"index_top1", config.index_top1},
      {"provider", provider_json(config.provider)},
      {"max_in_flight", config.max_in_flight},
      {"per_request_timeout_ms", config.per_request_timeout.count()},
  };
}

void from_json(const nlohmann::json& in, PipelineConfig& config) {
  const PipelineConfig defaults;
  config.candidate_count = in.value("candidate_count", defaults.candidate_count);
  config.retrieval_depth = in.value("retrieval_depth", defaults.retrieval_depth);
  config.country_assisted = in.value("country_assisted", defaults.country_assisted);
  config.population_rerank = in.value("population_rerank", defaults.population_rerank);
  config.feature_types = in.value("feature_types", defaults.feature_types);
  config.state_context = in.value("state_context", defaults.state_context);
  config.retrieval_enabled = in.value("retrieval_enabled", defaults.retrieval_enabled);
  config.index_top1 = in.value("index_top1", defaults.index_top1);
  if (in.contains("provider")) config.provider = provider_from_json(in.at("provider"));
  config.max_in_flight = in.value("max_in_flight", defaults.max_in_flight);
  config.per_request_timeout = std::chrono::milliseconds(
      in.value("per_request_timeout_ms", defaults.per_request_timeout.count()));
}

void to_json(nlohmann::json& out, const RunResult& result) {
  out["config"] = result.config;
  out["counters"] = nlohmann::json{
      {"provider_failures", result.counters.provider_failures},
      {"parse_failures", result.counters.parse_failures},
      {"country_fallbacks", result.counters.country_fallbacks},
  };
  out["report"] = report_json(result.report);
  out["records"] = nlohmann::json::array();
  for (const EvalRecord& record : result.records) out["records"].push_back(record_json(record));
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& error) {
    throw std::runtime_error("config file " + path + " is not valid JSON: " + error.what());
  }
  PipelineConfig config;
  try {
    config = doc.get<PipelineConfig>();
  } catch (const nlohmann::json::exception& error) {
    throw std::runtime_error("config file " + path + " is malformed: " + error.what());
  }
  config.validate();
  return config;
}

void save_run_result(const RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write run result: " + path);
  const nlohmann::json doc = result;
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed while writing run result: " + path);
}

}  // namespace raccoon
