#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "raccoon/corpus.hpp"
#include "raccoon/index.hpp"
#include "raccoon/metrics.hpp"
#include "raccoon/prompts.hpp"
#include "raccoon/provider.hpp"

namespace raccoon {

enum class ProviderKind { kMock, kHttp };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kMock;
  MockProviderOptions mock;
  HttpProviderConfig http;
};

struct PipelineConfig {
  int candidate_count = 20;
  int retrieval_depth = 100;
  bool country_assisted = true;
  bool population_rerank = true;
  bool feature_types = true;
  bool state_context = true;
  bool retrieval_enabled = true;
  // Gazetteer-only mode: skip the provider and answer with the top-scored
  // match directly (the gazetteer_base variant).
  bool index_top1 = false;
  ProviderConfig provider;
  int max_in_flight = 4;
  std::chrono::milliseconds per_request_timeout{30000};

  // Throws std::invalid_argument when candidate_count/retrieval_depth or
  // max_in_flight violate their invariants.
  void validate() const;

  PromptFlags prompt_flags() const { return PromptFlags{feature_types, state_context}; }
};

struct RunCounters {
  int provider_failures = 0;
  int parse_failures = 0;
  // Mentions where country assistance was requested but produced no code
  // (provider failure or unparseable reply); retrieval ran unfiltered.
  int country_fallbacks = 0;
};

struct RunResult {
  PipelineConfig config;
  std::vector<EvalRecord> records;  // sorted by mention_id
  MetricsReport report;             // always summarize(records)
  RunCounters counters;
};

// The nine run configurations: raccoon, rag_base, llm_base, gazetteer_base,
// minus_candidates, minus_country, minus_features, minus_population,
// minus_state.
const std::vector<std::string>& variant_names();
PipelineConfig config_for_variant(const std::string& name);

std::unique_ptr<TextProvider> make_provider(const ProviderConfig& config);

// Retrieval step: depth-limited BM25 search with optional country filter,
// then population re-rank or score-order truncation to candidate_count.
std::vector<Candidate> retrieve_candidates(const SearchIndex& index, const std::string& mention,
                                           const std::optional<std::string>& country,
                                           const PipelineConfig& config);

// Single-shot flow (country inference, retrieval, prompt, completion, parse).
// `index` may be null when retrieval is disabled. Failures come back in the
// prediction status; nothing throws per-mention.
GeoPrediction geocode_mention(const std::string& article, const std::string& mention,
                              const SearchIndex* index, TextProvider& provider,
                              const PipelineConfig& config);

// Batch flow over a corpus. Provider requests carry deterministic sequence
// numbers (a country pass over all mentions in corpus order, then a geocoding
// pass), so results do not depend on max_in_flight or scheduling.
RunResult run_pipeline(const Corpus& corpus, const SearchIndex* index,
                       const PipelineConfig& config);

void to_json(nlohmann::json& out, const PipelineConfig& config);
void from_json(const nlohmann::json& in, PipelineConfig& config);
void to_json(nlohmann::json& out, const RunResult& result);

PipelineConfig load_pipeline_config(const std::string& path);
void save_run_result(const RunResult& result, const std::string& path);

}  // namespace raccoon
