#pragma once

#include <cstdint>
#include <filesystem>

#include "sepkit/elo.hpp"
#include "sepkit/separability.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

struct RunConfig {
    Metric metric = Metric::kRouge1F1;
    int k = 5;
    double temperature = 0.5;
    int c = 25;  // cross-alignment comparisons, up to k*k
    std::uint64_t seed = 0;
    int bin_count = 4;
    BinRange bin_range = BinRange::kObserved;
    int workers = 1;
    EloConfig elo;

    void validate() const;  // throws ValidationError
};

// Reads a JSON config file; unknown keys are rejected so typos surface.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace sepkit
