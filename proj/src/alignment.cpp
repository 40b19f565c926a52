#include "sepkit/alignment.hpp"

#include <cmath>
#include <string>

#include "sepkit/errors.hpp"
#include "sepkit/rng.hpp"

namespace sepkit {

namespace {

void require_samples(const GenerationSet& set, int minimum, const char* role) {
    if (set.size() < minimum) {
        throw ValidationError(std::string("alignment: set for instance=") + set.instance_id +
                              " model=" + set.model_id + " (" + role + ") has " +
                              std::to_string(set.size()) + " samples, needs at least " +
                              std::to_string(minimum));
    }
}

}  // namespace

std::vector<std::vector<double>> alignment_matrix(const GenerationSet& set_a,
                                                  const GenerationSet& set_b,
                                                  const SimilarityScorer& scorer) {
    require_samples(set_a, 1, "left");
    require_samples(set_b, 1, "right");
    std::vector<std::vector<double>> matrix(set_a.samples.size(),
                                            std::vector<double>(set_b.samples.size(), 0.0));
    for (std::size_t j = 0; j < set_a.samples.size(); ++j) {
        for (std::size_t l = 0; l < set_b.samples.size(); ++l) {
            matrix[j][l] = scorer(set_a.samples[j], set_b.samples[l]);
        }
    }
    return matrix;
}

AlignmentEstimate estimate_cross_alignment(const GenerationSet& set_a,
                                           const GenerationSet& set_b,
                                           const SimilarityScorer& scorer,
                                           int c, std::uint64_t seed) {
    if (set_a.model_id == set_b.model_id) {
        throw ValidationError("cross-alignment requires two distinct models, got '" +
                              set_a.model_id + "' twice (use self-alignment)");
    }
    require_samples(set_a, 1, "left");
    require_samples(set_b, 1, "right");
    const int total_pairs = set_a.size() * set_b.size();
    if (c < 1 || c > total_pairs) {
        throw ValidationError("cross-alignment comparison count c=" + std::to_string(c) +
                              " out of range [1, " + std::to_string(total_pairs) + "]");
    }

    double sum = 0.0;
    if (c == total_pairs) {
        for (const Generation& ga : set_a.samples) {
            for (const Generation& gb : set_b.samples) {
                sum += scorer(ga, gb);
            }
        }
    } else {
        Rng rng(seed);
        auto picks = rng.choose(static_cast<std::size_t>(total_pairs),
                                static_cast<std::size_t>(c));
        for (std::size_t flat : picks) {
            std::size_t j = flat / set_b.samples.size();
            std::size_t l = flat % set_b.samples.size();
            sum += scorer(set_a.samples[j], set_b.samples[l]);
        }
    }

    AlignmentEstimate estimate;
    estimate.kind = AlignmentKind::kCross;
    estimate.model_a = set_a.model_id;
    estimate.model_b = set_b.model_id;
    estimate.instance_id = set_a.instance_id;
    estimate.raw_value = sum / static_cast<double>(c);
    estimate.compared_pairs = c;
    estimate.metric = scorer.metric();
    estimate.rng_seed = seed;
    return estimate;
}

AlignmentEstimate estimate_self_alignment(const GenerationSet& set_a,
                                          const SimilarityScorer& scorer,
                                          std::uint64_t seed) {
    require_samples(set_a, 2, "self");
    // All ordered off-diagonal pairs: the j = l terms are skipped and the
    // denominator is the number of compared pairs, K*(K-1).
    double sum = 0.0;
    const std::size_t k = set_a.samples.size();
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
            if (j == l) continue;
            sum += scorer(set_a.samples[j], set_a.samples[l]);
        }
    }
    const int compared = static_cast<int>(k * (k - 1));

    AlignmentEstimate estimate;
    estimate.kind = AlignmentKind::kSelf;
    estimate.model_a = set_a.model_id;
    estimate.model_b = set_a.model_id;
    estimate.instance_id = set_a.instance_id;
    estimate.raw_value = sum / static_cast<double>(compared);
    estimate.compared_pairs = compared;
    estimate.metric = scorer.metric();
    estimate.rng_seed = seed;
    return estimate;
}

NormalizeResult min_max_normalize(const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("min_max_normalize: empty value list");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("min_max_normalize: non-finite value at index " +
                                  std::to_string(i));
        }
    }
    NormalizeResult result;
    result.min = values.front();
    result.max = values.front();
    for (double v : values) {
        result.min = std::min(result.min, v);
        result.max = std::max(result.max, v);
    }
    result.values.reserve(values.size());
    if (result.max - result.min < kDegenerateRange) {
        result.degenerate = true;
        result.values.assign(values.size(), 0.5);
    } else {
        const double range = result.max - result.min;
        for (double v : values) result.values.push_back((v - result.min) / range);
    }
    return result;
}

}  // namespace sepkit
