#pragma once

#include <string>
#include <vector>

#include "sepkit/config.hpp"
#include "sepkit/io.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

// Chat-completions-compatible endpoint. The bearer token is read from the
// named environment variable only; it never appears in config files, outputs
// or logs.
struct SamplerEndpoint {
    std::string base_url;         // e.g. http://localhost:8000/v1
    std::string api_key_env_var;  // empty = no auth header
    std::string model_name;
    int timeout_seconds = 60;
    int max_retries = 3;
    int backoff_ms = 250;             // doubled per retry
    bool one_call_per_sample = false; // for servers without n-sample support
};

struct SampleFailure {
    std::string instance_id;
    std::string message;
};

struct SampleOutcome {
    std::vector<Generation> rows;
    std::vector<SampleFailure> failures;
    int retries = 0;
};

// Samples cfg.k generations per instance at cfg.temperature. Transient
// failures (5xx, 429, transport errors) are retried with exponential
// backoff; an instance that still fails is recorded and the run continues.
// Empty completion texts become failures, never empty generations.
SampleOutcome sample_generations(const SamplerEndpoint& endpoint,
                                 const std::vector<PromptInstance>& instances,
                                 const RunConfig& cfg);

}  // namespace sepkit
