#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "raccoon/geodesy.hpp"
#include "raccoon/pipeline.hpp"

namespace raccoon {

void PipelineConfig::validate() const {
  if (candidate_count < 1) throw std::invalid_argument("candidate_count must be at least 1");
  if (retrieval_depth < candidate_count) {
    throw std::invalid_argument("candidate_count must not exceed retrieval_depth");
  }
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
  if (per_request_timeout.count() <= 0) {
    throw std::invalid_argument("per_request_timeout must be positive");
  }
  if (index_top1 && !retrieval_enabled) {
    throw std::invalid_argument("index_top1 requires retrieval_enabled");
  }
  if (provider.kind == ProviderKind::kHttp && provider.http.endpoint.empty() && !index_top1) {
    throw std::invalid_argument("http provider needs an endpoint");
  }
}

const std::vector<std::string>& variant_names() {
  static const std::vector<std::string> kNames = {
      "raccoon",         "rag_base",      "llm_base",
      "gazetteer_base",  "minus_candidates", "minus_country",
      "minus_features",  "minus_population", "minus_state",
  };
  return kNames;
}

PipelineConfig config_for_variant(const std::string& name) {
  PipelineConfig config;  // defaults are the full configuration, k=20
  if (name == "raccoon") return config;
  if (name == "rag_base") {
    config.candidate_count = 10;
    config.country_assisted = false;
    config.population_rerank = false;
    config.feature_types = false;
    config.state_context = false;
    return config;
  }
  if (name == "llm_base") {
    config.retrieval_enabled = false;
    config.country_assisted = false;
    config.population_rerank = false;
    config.feature_types = false;
    config.state_context = false;
    return config;
  }
  if (name == "gazetteer_base") {
    config.index_top1 = true;
    config.candidate_count = 1;
    config.country_assisted = false;
    config.population_rerank = false;
    config.feature_types = false;
    config.state_context = false;
    return config;
  }
  if (name == "minus_candidates") {
    config.candidate_count = 1;
    return config;
  }
  if (name == "minus_country") {
    config.country_assisted = false;
    return config;
  }
  if (name == "minus_features") {
    config.feature_types = false;
    return config;
  }
  if (name == "minus_population") {
    config.population_rerank = false;
    return config;
  }
  if (name == "minus_state") {
    config.state_context = false;
    return config;
  }
  std::string message = "unknown variant \"" + name + "\"; valid names:";
  for (const std::string& valid : variant_names()) message += " " + valid;
  throw std::invalid_argument(message);
}

std::unique_ptr<TextProvider> make_provider(const ProviderConfig& config) {
  switch (config.kind) {
    case ProviderKind::kMock:
      return std::make_unique<MockProvider>(config.mock);
    case ProviderKind::kHttp:
      return std::make_unique<HttpProvider>(config.http);
  }
  throw std::invalid_argument("unknown provider kind");
}

std::vector<Candidate> retrieve_candidates(const SearchIndex& index, const std::string& mention,
                                           const std::optional<std::string>& country,
                                           const PipelineConfig& config) {
  const auto matches =
      index.search(mention, country, static_cast<std::size_t>(config.retrieval_depth));
  const std::size_t k = static_cast<std::size_t>(config.candidate_count);
  if (config.population_rerank) return rerank_by_population(index.source(), matches, k);
  return candidates_by_score(index.source(), matches, k);
}

namespace {

GeoPrediction prediction_from_top_match(const std::vector<Candidate>& candidates) {
  GeoPrediction prediction;
  if (candidates.empty()) {
    prediction.status = PredictionStatus::kParseFailed;
    return prediction;
  }
  const GazetteerEntry& entry = candidates.front().entry;
  prediction.point = GeoPoint{entry.latitude, entry.longitude};
  if (!entry.country_code.empty()) prediction.country_code = entry.country_code;
  prediction.chosen_candidate_id = entry.id;
  prediction.status = PredictionStatus::kParsed;
  return prediction;
}

GeoPrediction geocode_prepared(const std::string& article, const std::string& mention,
                               const SearchIndex* index, TextProvider& provider,
                               const PipelineConfig& config,
                               const std::optional<std::string>& country,
                               std::uint64_t sequence) {
  std::vector<Candidate> candidates;
  if (config.retrieval_enabled) {
    candidates = retrieve_candidates(*index, mention, country, config);
  }
  if (config.index_top1) return prediction_from_top_match(candidates);

  const PromptBundle bundle =
      build_geocoding_prompt(candidates, mention, article, config.prompt_flags());
  ProviderRequest request;
  request.prompt = bundle.render();
  request.timeout = config.per_request_timeout;
  request.sequence = sequence;
  const CompletionResult completion = provider.complete(request);
  if (!completion.ok) {
    GeoPrediction prediction;
    prediction.status = PredictionStatus::kProviderFailed;
    prediction.raw_response = completion.error;
    return prediction;
  }
  return parse_geocode_response(completion.text);
}

bool wants_country_pass(const PipelineConfig& config) {
  return config.country_assisted && config.retrieval_enabled && !config.index_top1;
}

}  // namespace

GeoPrediction geocode_mention(const std::string& article, const std::string& mention,
                              const SearchIndex* index, TextProvider& provider,
                              const PipelineConfig& config) {
  config.validate();
  if (config.retrieval_enabled && index == nullptr) {
    throw std::invalid_argument("retrieval requires a built index");
  }
  std::optional<std::string> country;
  if (wants_country_pass(config)) {
    country = infer_country(article, mention, provider, config.per_request_timeout, 1);
  }
  return geocode_prepared(article, mention, index, provider, config, country, 2);
}

RunResult run_pipeline(const Corpus& corpus, const SearchIndex* index,
                       const PipelineConfig& config) {
  config.validate();
  if (corpus.mentions.empty()) {
    throw std::invalid_argument("run_pipeline needs a corpus with mentions");
  }
  if (config.retrieval_enabled && index == nullptr) {
    throw std::invalid_argument("retrieval requires a built index");
  }

  const std::unique_ptr<TextProvider> provider = make_provider(config.provider);
  const std::vector<std::string> mention_ids = derive_mention_ids(corpus);
  const std::size_t total = corpus.mentions.size();

  std::vector<const std::string*> bodies(total);
  for (std::size_t i = 0; i < total; ++i) {
    const Article* article = corpus.find_article(corpus.mentions[i].article_id);
    if (article == nullptr) {
      throw CorpusError("mention references unknown article " + corpus.mentions[i].article_id);
    }
    bodies[i] = &article->body;
  }

  const auto parallel_for = [&](const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min(static_cast<std::size_t>(config.max_in_flight), total);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= total) break;
          body(i);
        }
      });
    }
    for (std::thread& thread : threads) thread.join();
  };

  // Pass 1: country inference, sequences 1..total in corpus order.
  std::vector<std::optional<std::string>> countries(total);
  std::atomic<int> country_fallbacks{0};
  const bool country_pass = wants_country_pass(config);
  if (country_pass) {
    parallel_for([&](std::size_t i) {
      try {
        countries[i] = infer_country(*bodies[i], corpus.mentions[i].surface, *provider,
                                     config.per_request_timeout, i + 1);
      } catch (const std::exception&) {
        countries[i] = std::nullopt;
      }
      if (!countries[i].has_value()) country_fallbacks.fetch_add(1);
    });
  }

  // Pass 2: geocoding, sequences continuing after the country pass.
  const std::uint64_t sequence_base = country_pass ? total : 0;
  std::vector<GeoPrediction> predictions(total);
  parallel_for([&](std::size_t i) {
    try {
      predictions[i] = geocode_prepared(*bodies[i], corpus.mentions[i].surface, index, *provider,
                                        config, countries[i], sequence_base + i + 1);
    } catch (const std::exception& error) {
      predictions[i].status = PredictionStatus::kProviderFailed;
      predictions[i].raw_response = std::string("internal error: ") + error.what();
    }
  });

  RunResult result;
  result.config = config;
  result.counters.country_fallbacks = country_fallbacks.load();
  result.records.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const GoldMention& gold = corpus.mentions[i];
    EvalRecord record;
    record.mention_id = mention_ids[i];
    record.gold = gold.gold_point;
    record.gold_country = gold.gold_country;
    record.gold_population = gold.gold_population;
    record.prediction = predictions[i];
    switch (predictions[i].status) {
      case PredictionStatus::kParsed:
        record.error_km = haversine_km(gold.gold_point, *predictions[i].point);
        break;
      case PredictionStatus::kParseFailed:
        ++result.counters.parse_failures;
        break;
      case PredictionStatus::kProviderFailed:
        ++result.counters.provider_failures;
        break;
    }
    result.records.push_back(std::move(record));
  }

  std::sort(result.records.begin(), result.records.end(),
            [](const EvalRecord& a, const EvalRecord& b) { return a.mention_id < b.mention_id; });
  result.report = summarize(result.records);
  return result;
}

}  // namespace raccoon
