#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "raccoon/provider.hpp"

namespace raccoon {

namespace {

bool retryable_status(int status) { return status == 429 || (status >= 500 && status <= 599); }

}  // namespace

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw std::invalid_argument("http provider needs an endpoint");
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr) {
      api_key_ = key;
    }
  }
}

CompletionResult HttpProvider::complete(const ProviderRequest& request) {
  nlohmann::json body{
      {"model", config_.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_output_tokens},
  };
  const std::string payload = body.dump();

  std::string last_error = "no attempt made";
  const int attempts = 1 + std::max(0, config_.max_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(config_.initial_backoff * (1 << (attempt - 1)));
    }

    httplib::Client client(config_.endpoint);
    client.set_connection_timeout(request.timeout);
    client.set_read_timeout(request.timeout);
    client.set_write_timeout(request.timeout);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto response = client.Post(config_.path, headers, payload, "application/json");
    if (!response) {
      last_error = "transport error: " + httplib::to_string(response.error());
      continue;
    }
    if (retryable_status(response->status)) {
      last_error = "http status " + std::to_string(response->status);
      continue;
    }
    if (response->status < 200 || response->status >= 300) {
      return {false, "", "http status " + std::to_string(response->status) + " from " +
                             config_.endpoint + config_.path};
    }

    try {
      const auto parsed = nlohmann::json::parse(response->body);
      const auto& choices = parsed.at("choices");
      if (!choices.is_array() || choices.empty()) {
        return {false, "", "response has no choices"};
      }
      const auto& first = choices.at(0);
      if (first.contains("message")) {
        return {true, first.at("message").at("content").get<std::string>(), ""};
      }
      if (first.contains("text")) {
        return {true, first.at("text").get<std::string>(), ""};
      }
      return {false, "", "choice carries neither message nor text"};
    } catch (const nlohmann::json::exception& error) {
      return {false, "", std::string("malformed response body: ") + error.what()};
    }
  }
  return {false, "", last_error + " after " + std::to_string(attempts) + " attempts"};
}

}  // namespace raccoon
