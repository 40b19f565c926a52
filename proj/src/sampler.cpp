#include "sepkit/sampler.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

using nlohmann::json;

struct SamplerError : Error {
    using Error::Error;
};

struct ParsedUrl {
    std::string host;    // scheme://host[:port], what httplib::Client wants
    std::string prefix;  // path prefix, e.g. /v1
};

ParsedUrl parse_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("endpoint URL must start with http:// or https://: " + base_url);
    }
    auto path_start = base_url.find('/', scheme_end + 3);
    ParsedUrl parsed;
    if (path_start == std::string::npos) {
        parsed.host = base_url;
    } else {
        parsed.host = base_url.substr(0, path_start);
        parsed.prefix = base_url.substr(path_start);
        while (!parsed.prefix.empty() && parsed.prefix.back() == '/') parsed.prefix.pop_back();
    }
    return parsed;
}

class ChatClient {
public:
    ChatClient(const SamplerEndpoint& endpoint, const RunConfig& cfg)
        : endpoint_(endpoint), cfg_(cfg), url_(parse_base_url(endpoint.base_url)),
          client_(url_.host) {
        client_.set_connection_timeout(endpoint.timeout_seconds, 0);
        client_.set_read_timeout(endpoint.timeout_seconds, 0);
        if (!endpoint.api_key_env_var.empty()) {
            const char* key = std::getenv(endpoint.api_key_env_var.c_str());
            if (!key || !*key) {
                throw ValidationError("environment variable " + endpoint.api_key_env_var +
                                      " is not set (it must hold the API key)");
            }
            headers_.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    // Returns n completion texts, retrying transient failures.
    std::vector<std::string> complete(const std::string& prompt, int n, int* retries) {
        json body{{"model", endpoint_.model_name},
                  {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
                  {"temperature", cfg_.temperature},
                  {"n", n}};
        const std::string path = url_.prefix + "/chat/completions";
        const std::string payload = body.dump();

        std::string last_error;
        for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
            if (attempt > 0) {
                ++*retries;
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(endpoint_.backoff_ms << (attempt - 1)));
            }
            httplib::Result res = client_.Post(path, headers_, payload, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 429 || res->status >= 500) {
                last_error = "HTTP " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200) {
                throw SamplerError("HTTP " + std::to_string(res->status) + ": " + res->body);
            }
            std::vector<std::string> texts;
            if (extract(res->body, n, texts, last_error)) return texts;
            // Malformed or empty completions are treated as transient.
        }
        throw SamplerError(last_error + " (after " + std::to_string(endpoint_.max_retries) +
                           " retries)");
    }

private:
    static bool extract(const std::string& body, int n, std::vector<std::string>& texts,
                        std::string& error) {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::parse_error& e) {
            error = std::string("invalid JSON in response: ") + e.what();
            return false;
        }
        if (!doc.contains("choices") || !doc["choices"].is_array()) {
            error = "response carries no choices array";
            return false;
        }
        const json& choices = doc["choices"];
        if (static_cast<int>(choices.size()) < n) {
            error = "response has " + std::to_string(choices.size()) + " choices, requested " +
                    std::to_string(n) + " (server may lack n-sample support; try "
                    "--one-call-per-sample)";
            return false;
        }
        texts.clear();
        for (int i = 0; i < n; ++i) {
            const json& choice = choices[i];
            if (!choice.contains("message") || !choice["message"].contains("content") ||
                !choice["message"]["content"].is_string()) {
                error = "choice " + std::to_string(i) + " carries no message content";
                return false;
            }
            std::string text = choice["message"]["content"].get<std::string>();
            if (text.empty()) {
                error = "empty completion text for sample " + std::to_string(i);
                return false;
            }
            texts.push_back(std::move(text));
        }
        return true;
    }

    SamplerEndpoint endpoint_;
    RunConfig cfg_;
    ParsedUrl url_;
    httplib::Client client_;
    httplib::Headers headers_;
};

}  // namespace

SampleOutcome sample_generations(const SamplerEndpoint& endpoint,
                                 const std::vector<PromptInstance>& instances,
                                 const RunConfig& cfg) {
    cfg.validate();
    if (endpoint.model_name.empty()) {
        throw ValidationError("sampler: model name is required");
    }
    ChatClient client(endpoint, cfg);

    SampleOutcome outcome;
    for (const PromptInstance& instance : instances) {
        if (instance.prompt.empty()) {
            outcome.failures.push_back({instance.instance_id, "empty prompt"});
            continue;
        }
        try {
            std::vector<std::string> texts;
            if (endpoint.one_call_per_sample) {
                for (int j = 0; j < cfg.k; ++j) {
                    auto one = client.complete(instance.prompt, 1, &outcome.retries);
                    texts.push_back(std::move(one.front()));
                }
            } else {
                texts = client.complete(instance.prompt, cfg.k, &outcome.retries);
            }
            // An instance either contributes all k rows or none: partial sets
            // would break the contiguous-index contract of the corpus format.
            for (int j = 0; j < cfg.k; ++j) {
                Generation g;
                g.instance_id = instance.instance_id;
                g.model_id = endpoint.model_name;
                g.sample_index = j;
                g.text = texts[static_cast<std::size_t>(j)];
                outcome.rows.push_back(std::move(g));
            }
        } catch (const SamplerError& e) {
            outcome.failures.push_back({instance.instance_id, e.what()});
        }
    }
    return outcome;
}

}  // namespace sepkit
