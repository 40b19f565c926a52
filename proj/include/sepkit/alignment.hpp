#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/textsim.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

enum class AlignmentKind { kSelf, kCross };

struct AlignmentEstimate {
    AlignmentKind kind = AlignmentKind::kCross;
    std::string model_a;
    std::string model_b;
    std::string instance_id;
    double raw_value = 0.0;
    int compared_pairs = 0;
    Metric metric = Metric::kRouge1F1;
    std::optional<std::uint64_t> rng_seed;
};

// Entry (j, l) = s(a_j, b_l).
std::vector<std::vector<double>> alignment_matrix(const GenerationSet& set_a,
                                                  const GenerationSet& set_b,
                                                  const SimilarityScorer& scorer);

// Monte-Carlo cross-alignment. c = Ka*Kb gives the exact mean over all pairs;
// smaller c averages over c pairs drawn without replacement from the seeded
// generator.
AlignmentEstimate estimate_cross_alignment(const GenerationSet& set_a,
                                           const GenerationSet& set_b,
                                           const SimilarityScorer& scorer,
                                           int c, std::uint64_t seed);

// Mean similarity over all ordered off-diagonal pairs, K*(K-1) terms.
// Requires K >= 2.
AlignmentEstimate estimate_self_alignment(const GenerationSet& set_a,
                                          const SimilarityScorer& scorer,
                                          std::uint64_t seed);

struct NormalizeResult {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;  // range below kDegenerateRange; values forced to 0.5
};

inline constexpr double kDegenerateRange = 1e-9;

// Affine map of each value onto [0, 1] using the pooled min and max.
NormalizeResult min_max_normalize(const std::vector<double>& values);

}  // namespace sepkit
