#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace raccoon {

// One completion request. `sequence` is a deterministic ordinal assigned by the
// caller (the pipeline numbers requests before dispatch) so that providers with
// sequence-dependent behaviour, e.g. mock fault injection, give the same result
// regardless of scheduling.
struct ProviderRequest {
  std::string prompt;
  int max_output_tokens = 256;
  double temperature = 0.0;
  std::chrono::milliseconds timeout{30000};
  std::uint64_t sequence = 0;
};

struct CompletionResult {
  bool ok = false;
  std::string text;   // raw completion text when ok
  std::string error;  // diagnostic when not ok
};

class TextProvider {
 public:
  virtual ~TextProvider() = default;

  // Must tolerate concurrent calls. Request ordering is the caller's concern.
  virtual CompletionResult complete(const ProviderRequest& request) = 0;

  virtual std::string name() const = 0;
};

struct MockProviderOptions {
  // mention -> ISO-2 code for country prompts; missing mention answers UNKNOWN.
  std::map<std::string, std::string> country_fixtures;
  // Fail every request whose sequence is a positive multiple of this; 0 = never.
  std::uint64_t fault_period = 0;
  // When set, matched candidates below this population get their latitude
  // shifted by 15 degrees, simulating a model that resolves small places badly.
  std::optional<std::int64_t> miss_below_population;
};

// Deterministic stand-in for a remote model: a pure function of the request.
// Geocoding prompts are answered by re-parsing the candidate context lines;
// country prompts by fixture lookup.
class MockProvider : public TextProvider {
 public:
  MockProvider() = default;
  explicit MockProvider(MockProviderOptions options) : options_(std::move(options)) {}

  CompletionResult complete(const ProviderRequest& request) override;
  std::string name() const override { return "mock"; }

  const MockProviderOptions& options() const { return options_; }

 private:
  MockProviderOptions options_;
};

struct HttpProviderConfig {
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "GEOCODER_API_KEY";
  int max_retries = 3;  // retries after the first attempt
  std::chrono::milliseconds initial_backoff{250};
};

// OpenAI-compatible chat-completions client with exponential-backoff retries
// on transport errors, 429 and 5xx.
class HttpProvider : public TextProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  CompletionResult complete(const ProviderRequest& request) override;
  std::string name() const override { return "http:" + config_.model; }

  const HttpProviderConfig& config() const { return config_; }

 private:
  HttpProviderConfig config_;
  std::string api_key_;
};

}  // namespace raccoon
