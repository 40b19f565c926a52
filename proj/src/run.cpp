#include "sepkit/run.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "sepkit/errors.hpp"
#include "sepkit/rng.hpp"

namespace sepkit {

namespace {

std::uint64_t instance_seed(const RunConfig& cfg, const std::string& instance_id,
                            const ModelPair& pair) {
    return derive_seed(cfg.seed,
                       "cross-subsample/" + instance_id + "/" + pair.model_a + "|" + pair.model_b);
}

// Instances where both models of the pair have at least two samples.
std::vector<std::string> paired_instances(const Corpus& corpus, const ModelPair& pair) {
    std::vector<std::string> ids;
    for (const std::string& instance : corpus.instance_ids()) {
        auto a = corpus.sets.find({instance, pair.model_a});
        auto b = corpus.sets.find({instance, pair.model_b});
        if (a == corpus.sets.end() || b == corpus.sets.end()) continue;
        if (a->second.size() < 2 || b->second.size() < 2) {
            throw ValidationError("instance=" + instance +
                                  " has fewer than 2 samples for one model; self-alignment "
                                  "needs K >= 2");
        }
        ids.push_back(instance);
    }
    return ids;
}

}  // namespace

ModelPair resolve_model_pair(const Corpus& corpus, const std::string& flag_a,
                             const std::string& flag_b) {
    if (!flag_a.empty() != !flag_b.empty()) {
        throw ValidationError("provide both --model-a and --model-b or neither");
    }
    std::vector<std::string> models = corpus.model_ids();
    if (!flag_a.empty()) {
        for (const std::string& m : {flag_a, flag_b}) {
            if (std::find(models.begin(), models.end(), m) == models.end()) {
                throw ValidationError("model '" + m + "' not present in the corpus");
            }
        }
        if (flag_a == flag_b) {
            throw ValidationError("--model-a and --model-b must differ");
        }
        return {flag_a, flag_b};
    }
    if (models.size() != 2) {
        throw ValidationError("corpus has " + std::to_string(models.size()) +
                              " models; pass --model-a and --model-b to pick the pair");
    }
    return {models[0], models[1]};
}

std::vector<SeparabilityRecord> compute_all_instances(const Corpus& corpus,
                                                      const ModelPair& pair,
                                                      const SimilarityScorer& scorer,
                                                      const RunConfig& cfg) {
    cfg.validate();
    std::vector<std::string> instances = paired_instances(corpus, pair);
    if (instances.empty()) {
        throw ValidationError("no instances carry generations for both model '" + pair.model_a +
                              "' and model '" + pair.model_b + "'");
    }

    std::vector<SeparabilityRecord> records(instances.size());
    auto compute_one = [&](std::size_t i) {
        const GenerationSet& set_a = corpus.at(instances[i], pair.model_a);
        const GenerationSet& set_b = corpus.at(instances[i], pair.model_b);
        // Ragged sets may not support the configured C; cap at the pair count.
        int c = std::min(cfg.c, set_a.size() * set_b.size());
        records[i] = compute_instance(set_a, set_b, scorer, c,
                                      instance_seed(cfg, instances[i], pair));
    };

    const int workers = std::min<int>(cfg.workers, static_cast<int>(instances.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) compute_one(i);
    } else {
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w]() {
                for (std::size_t i = w; i < instances.size(); i += workers) {
                    try {
                        compute_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& t : threads) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return records;
}

std::vector<SeparabilityRecord> separability_run(const Corpus& corpus,
                                                 const ModelPair& pair,
                                                 const SimilarityScorer& scorer,
                                                 const RunConfig& cfg) {
    std::vector<SeparabilityRecord> records = compute_all_instances(corpus, pair, scorer, cfg);
    finalize_run(records);
    return records;
}

std::vector<AlignmentEstimate> alignment_run(const Corpus& corpus,
                                             const ModelPair& pair,
                                             const SimilarityScorer& scorer,
                                             const RunConfig& cfg) {
    cfg.validate();
    std::vector<AlignmentEstimate> estimates;
    for (const std::string& instance : paired_instances(corpus, pair)) {
        const GenerationSet& set_a = corpus.at(instance, pair.model_a);
        const GenerationSet& set_b = corpus.at(instance, pair.model_b);
        std::uint64_t seed = instance_seed(cfg, instance, pair);
        estimates.push_back(estimate_self_alignment(set_a, scorer, seed));
        estimates.push_back(estimate_self_alignment(set_b, scorer, seed));
        int c = std::min(cfg.c, set_a.size() * set_b.size());
        estimates.push_back(estimate_cross_alignment(set_a, set_b, scorer, c, seed));
    }
    if (estimates.empty()) {
        throw ValidationError("no instances carry generations for both model '" + pair.model_a +
                              "' and model '" + pair.model_b + "'");
    }
    return estimates;
}

}  // namespace sepkit
