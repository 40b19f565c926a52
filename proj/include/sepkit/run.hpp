#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepkit/alignment.hpp"
#include "sepkit/config.hpp"
#include "sepkit/io.hpp"
#include "sepkit/separability.hpp"

namespace sepkit {

// The model pair a run compares, in canonical order.
struct ModelPair {
    std::string model_a;
    std::string model_b;
};

// Resolves the pair from flags or, when the corpus holds exactly two models,
// infers it (lexicographic order).
ModelPair resolve_model_pair(const Corpus& corpus, const std::string& flag_a,
                             const std::string& flag_b);

// Raw self/self/cross estimates for every instance where both models have
// K >= 2 samples. Per-instance subsample seeds derive from cfg.seed, so the
// result is independent of worker count and instance order.
std::vector<SeparabilityRecord> compute_all_instances(const Corpus& corpus,
                                                      const ModelPair& pair,
                                                      const SimilarityScorer& scorer,
                                                      const RunConfig& cfg);

// compute_all_instances followed by finalize_run.
std::vector<SeparabilityRecord> separability_run(const Corpus& corpus,
                                                 const ModelPair& pair,
                                                 const SimilarityScorer& scorer,
                                                 const RunConfig& cfg);

// Raw alignment estimates (self for both models plus cross) per instance,
// for the `align` subcommand.
std::vector<AlignmentEstimate> alignment_run(const Corpus& corpus,
                                             const ModelPair& pair,
                                             const SimilarityScorer& scorer,
                                             const RunConfig& cfg);

}  // namespace sepkit
