#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raccoon/corpus.hpp"
#include "raccoon/gazetteer.hpp"
#include "raccoon/index.hpp"
#include "raccoon/pipeline.hpp"
#include "raccoon/prompts.hpp"
#include "raccoon/report.hpp"

namespace {

using namespace raccoon;

std::vector<double> parse_bucket_edges(const std::string& spec) {
  std::vector<double> edges;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    const std::string token =
        spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token == "inf") {
      edges.push_back(std::numeric_limits<double>::infinity());
    } else {
      std::size_t used = 0;
      edges.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument("bad bucket edge: " + token);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  // Validates edge count and ordering before any pipeline work runs.
  population_bucket_accuracy({}, edges);
  return edges;
}

std::string read_text_file(const std::string& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (file == nullptr) throw std::runtime_error("cannot open " + path);
  std::string content;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), file)) > 0) {
    content.append(buffer, got);
  }
  std::fclose(file);
  return content;
}

int cmd_index(const std::string& gazetteer_path, const std::string& alternates_path,
              const std::string& out_path, const std::string& language, bool strict) {
  LoadOptions options;
  options.language_filter = language;
  options.strict = strict;
  GazetteerLoad load = load_gazetteer(gazetteer_path, alternates_path, options);

  auto gazetteer = std::make_shared<Gazetteer>(std::move(load.gazetteer));
  const SearchIndex index = SearchIndex::build(gazetteer);
  save_index_snapshot(index, out_path);

  std::printf("indexed %zu entries\n", gazetteer->count());
  std::printf("skipped main rows: %zu\n", load.stats.skipped_main_rows);
  std::printf("attached alternate rows: %zu\n", load.stats.alternate_rows);
  std::printf("skipped alternate rows: %zu\n", load.stats.skipped_alternate_rows);
  std::printf("dangling alternate rows: %zu\n", load.stats.dangling_alternate_rows);
  std::printf("filtered alternate rows: %zu\n", load.stats.filtered_alternate_rows);
  std::printf("snapshot written to %s\n", out_path.c_str());
  return 0;
}

void print_prediction(const GeoPrediction& prediction) {
  if (prediction.parsed()) {
    std::printf("status=parsed lat=%s lon=%s country=%s id=%s\n",
                format_decimal(prediction.point->latitude).c_str(),
                format_decimal(prediction.point->longitude).c_str(),
                prediction.country_code.value_or("ZZ").c_str(),
                prediction.chosen_candidate_id.has_value()
                    ? std::to_string(*prediction.chosen_candidate_id).c_str()
                    : "NONE");
    return;
  }
  std::printf("status=%s\n", to_string(prediction.status).c_str());
  if (!prediction.raw_response.empty()) {
    std::printf("raw response:\n%s\n", prediction.raw_response.c_str());
  }
}

int cmd_geocode(const std::string& index_path, const std::string& article_path,
                const std::string& mention, const std::string& config_path, bool verbose) {
  const PipelineConfig config = load_pipeline_config(config_path);
  const std::string article = read_text_file(article_path);

  std::optional<SearchIndex> index;
  if (config.retrieval_enabled) index = load_index_snapshot(index_path);

  const std::unique_ptr<TextProvider> provider = make_provider(config.provider);
  if (verbose) {
    std::optional<std::string> country;
    if (config.country_assisted && config.retrieval_enabled && !config.index_top1) {
      country = infer_country(article, mention, *provider, config.per_request_timeout, 1);
      std::printf("inferred country: %s\n", country.has_value() ? country->c_str() : "(none)");
    }
    std::vector<Candidate> candidates;
    if (config.retrieval_enabled) {
      candidates = retrieve_candidates(*index, mention, country, config);
    }
    const PromptBundle bundle =
        build_geocoding_prompt(candidates, mention, article, config.prompt_flags());
    std::printf("prompt:\n%s\n", bundle.render().c_str());
  }

  const GeoPrediction prediction = geocode_mention(
      article, mention, index.has_value() ? &*index : nullptr, *provider, config);
  print_prediction(prediction);
  return 0;
}

RunResult run_one(const Corpus& corpus, const std::optional<SearchIndex>& index,
                  const PipelineConfig& config) {
  if (config.retrieval_enabled && !index.has_value()) {
    throw std::runtime_error("this configuration needs --index");
  }
  return run_pipeline(corpus, index.has_value() ? &*index : nullptr, config);
}

int cmd_evaluate(const std::string& corpus_path, const std::string& index_path,
                 const std::string& variant, const std::string& config_path,
                 const std::string& report_path, const std::string& buckets_spec) {
  if (variant.empty() == config_path.empty()) {
    std::fprintf(stderr, "error: pass exactly one of --variant or --config\n");
    return 1;
  }
  std::vector<double> bucket_edges;
  if (!buckets_spec.empty()) bucket_edges = parse_bucket_edges(buckets_spec);

  const PipelineConfig config =
      variant.empty() ? load_pipeline_config(config_path) : config_for_variant(variant);
  const Corpus corpus = load_normalized(corpus_path);

  std::optional<SearchIndex> index;
  if (config.retrieval_enabled) {
    if (index_path.empty()) throw std::runtime_error("this configuration needs --index");
    index = load_index_snapshot(index_path);
  }

  const RunResult result = run_one(corpus, index, config);
  save_run_result(result, report_path);

  ReportTable table;
  table.rows.push_back({variant.empty() ? std::string("config") : variant, result.report});
  std::printf("%s", table.to_string().c_str());
  if (!bucket_edges.empty()) {
    std::printf("%s",
                format_population_buckets(population_bucket_accuracy(result.records, bucket_edges))
                    .c_str());
  }
  std::printf("run result written to %s\n", report_path.c_str());
  return 0;
}

int cmd_ablate(const std::string& corpus_path, const std::string& index_path,
               std::vector<std::string> variants, const std::string& out_path) {
  if (variants.empty()) variants = variant_names();

  // Resolve configs first so an unknown name fails before any run.
  std::vector<PipelineConfig> configs;
  configs.reserve(variants.size());
  for (const std::string& name : variants) configs.push_back(config_for_variant(name));

  const Corpus corpus = load_normalized(corpus_path);
  std::optional<SearchIndex> index;
  if (!index_path.empty()) index = load_index_snapshot(index_path);

  ReportTable table;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const RunResult result = run_one(corpus, index, configs[i]);
    table.rows.push_back({variants[i], result.report});
  }

  const std::string rendered = table.to_string();
  std::FILE* out = std::fopen(out_path.c_str(), "wb");
  if (out == nullptr) throw std::runtime_error("cannot write table: " + out_path);
  std::fwrite(rendered.data(), 1, rendered.size(), out);
  std::fclose(out);

  std::printf("%s", rendered.c_str());
  std::printf("table written to %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RACCOON: retrieval-augmented geocoding"};
  app.require_subcommand(1);

  auto* index_cmd = app.add_subcommand("index", "Build and snapshot the gazetteer index");
  std::string gazetteer_path;
  std::string alternates_path;
  std::string index_out;
  std::string language = "en";
  bool strict = false;
  index_cmd->add_option("--gazetteer", gazetteer_path, "GeoNames main dump (TSV)")->required();
  index_cmd->add_option("--alternates", alternates_path, "GeoNames alternate names dump (TSV)");
  index_cmd->add_option("--out", index_out, "Output snapshot path")->required();
  index_cmd->add_option("--language", language, "Alternate-name language filter");
  index_cmd->add_flag("--strict", strict, "Abort on the first malformed row");

  auto* geocode_cmd = app.add_subcommand("geocode", "Geocode a single mention");
  std::string geocode_index;
  std::string article_path;
  std::string mention;
  std::string geocode_config;
  bool verbose = false;
  geocode_cmd->add_option("--index", geocode_index, "Index snapshot")->required();
  geocode_cmd->add_option("--article", article_path, "Article text file")->required();
  geocode_cmd->add_option("--mention", mention, "Location mention to geocode")->required();
  geocode_cmd->add_option("--config", geocode_config, "Pipeline config (JSON)")->required();
  geocode_cmd->add_flag("--verbose", verbose, "Print the generated prompt");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run a full evaluation");
  std::string eval_corpus;
  std::string eval_index;
  std::string eval_variant;
  std::string eval_config;
  std::string eval_report;
  std::string buckets_spec;
  evaluate_cmd->add_option("--corpus", eval_corpus, "Normalized corpus file")->required();
  evaluate_cmd->add_option("--index", eval_index, "Index snapshot");
  evaluate_cmd->add_option("--variant", eval_variant, "Named run configuration");
  evaluate_cmd->add_option("--config", eval_config, "Pipeline config (JSON)");
  evaluate_cmd->add_option("--report", eval_report, "Run result output (JSON)")->required();
  evaluate_cmd->add_option("--buckets", buckets_spec,
                           "Population bucket edges, e.g. 0,1000,1000000,inf");

  auto* ablate_cmd = app.add_subcommand("ablate", "Evaluate several variants");
  std::string ablate_corpus;
  std::string ablate_index;
  std::vector<std::string> ablate_variants;
  std::string ablate_out;
  ablate_cmd->add_option("--corpus", ablate_corpus, "Normalized corpus file")->required();
  ablate_cmd->add_option("--index", ablate_index, "Index snapshot");
  ablate_cmd->add_option("--variants", ablate_variants, "Variant names (default: all nine)")
      ->delimiter(',');
  ablate_cmd->add_option("--out", ablate_out, "Results table output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (index_cmd->parsed()) {
      return cmd_index(gazetteer_path, alternates_path, index_out, language, strict);
    }
    if (geocode_cmd->parsed()) {
      return cmd_geocode(geocode_index, article_path, mention, geocode_config, verbose);
    }
    if (evaluate_cmd->parsed()) {
      return cmd_evaluate(eval_corpus, eval_index, eval_variant, eval_config, eval_report,
                          buckets_spec);
    }
    if (ablate_cmd->parsed()) {
      return cmd_ablate(ablate_corpus, ablate_index, ablate_variants, ablate_out);
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 1;
}
