#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/elo.hpp"
#include "sepkit/ratings.hpp"
#include "sepkit/separability.hpp"
#include "sepkit/textsim.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

inline constexpr const char* kSchemaTag = "sepkit/1";

// A corpus of generation sets keyed by (instance_id, model_id).
struct Corpus {
    std::map<std::pair<std::string, std::string>, GenerationSet> sets;

    std::vector<std::string> instance_ids() const;
    std::vector<std::string> model_ids() const;
    const GenerationSet& at(const std::string& instance_id, const std::string& model_id) const;
    bool empty() const { return sets.empty(); }
};

// JSONL loaders. Every loader validates the schema tag and reports the
// offending line number on errors. Ragged K across models of one instance is
// legal (a warning is pushed to `warnings` when given).
Corpus load_generations(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);
void write_generations(const std::filesystem::path& path, const std::vector<Generation>& rows);

// Ratings arrive with a displayed_swapped flag; swapped rows are sign-flipped
// back into canonical (model_a, model_b) orientation. Rows group by
// (instance, rater, model pair) ordered by pair_index, which must be
// contiguous from 0.
std::vector<RatingSet> load_ratings(const std::filesystem::path& path);
void write_ratings(const std::filesystem::path& path, const std::vector<RatingSet>& sets);

EmbeddingStore load_embeddings(const std::filesystem::path& path);
EntityStore load_entities(const std::filesystem::path& path);

std::vector<SeparabilityRecord> load_separability(const std::filesystem::path& path);
void write_separability(const std::filesystem::path& path,
                        const std::vector<SeparabilityRecord>& records);

std::vector<Match> load_matches(const std::filesystem::path& path);
void write_matches(const std::filesystem::path& path, const std::vector<Match>& matches);

struct PromptInstance {
    std::string instance_id;
    std::string prompt;
};

std::vector<PromptInstance> load_prompts(const std::filesystem::path& path);

}  // namespace sepkit
