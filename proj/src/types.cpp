#include "sepkit/types.hpp"

#include <array>
#include <utility>

#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

constexpr std::array<std::pair<Metric, const char*>, 5> kMetricNames{{
    {Metric::kRouge1F1, "rouge1-f1"},
    {Metric::kBleu, "bleu"},
    {Metric::kBertScoreLa, "bertscore-la"},
    {Metric::kEmbedCosine, "embed-cosine"},
    {Metric::kEntityJaccard, "entity-jaccard"},
}};

}  // namespace

std::string to_string(Metric m) {
    for (const auto& [metric, name] : kMetricNames) {
        if (metric == m) return name;
    }
    throw ValidationError("unknown metric id");
}

Metric metric_from_string(std::string_view name) {
    for (const auto& [metric, metric_name] : kMetricNames) {
        if (name == metric_name) return metric;
    }
    throw ValidationError("unknown similarity metric: '" + std::string(name) +
                          "' (expected one of rouge1-f1, bleu, bertscore-la, embed-cosine, entity-jaccard)");
}

std::vector<std::string> metric_names() {
    std::vector<std::string> names;
    names.reserve(kMetricNames.size());
    for (const auto& [metric, name] : kMetricNames) names.emplace_back(name);
    return names;
}

}  // namespace sepkit
