#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sepkit {

// Pluggable similarity metrics. Adding one means extending this enum, the
// name table in types.cpp and the dispatch in SimilarityScorer::operator().
enum class Metric {
    kRouge1F1,
    kBleu,
    kBertScoreLa,
    kEmbedCosine,
    kEntityJaccard,
};

std::string to_string(Metric m);
Metric metric_from_string(std::string_view name);  // throws ValidationError
std::vector<std::string> metric_names();

struct GenerationKey {
    std::string instance_id;
    std::string model_id;
    int sample_index = 0;

    auto operator<=>(const GenerationKey&) const = default;
};

// One sampled output text. Entities may be attached inline (from the
// generations file) or resolved later through an EntityStore.
struct Generation {
    std::string instance_id;
    std::string model_id;
    int sample_index = 0;
    std::string text;
    std::optional<std::string> token_embeddings_ref;
    std::optional<std::set<std::string>> entities;

    GenerationKey key() const { return {instance_id, model_id, sample_index}; }
};

struct DecodeParams {
    double temperature = 0.5;
    int sample_count = 5;
};

// The K samples of one model on one instance.
struct GenerationSet {
    std::string instance_id;
    std::string model_id;
    std::vector<Generation> samples;
    DecodeParams decode_params;

    int size() const { return static_cast<int>(samples.size()); }
};

}  // namespace sepkit
