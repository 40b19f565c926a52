#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepkit/types.hpp"

namespace sepkit {

struct TokenSequence {
    std::vector<std::string> tokens;

    std::size_t length() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
};

// Lowercases, strips punctuation and splits on whitespace. Total function:
// never throws, empty text gives an empty sequence.
TokenSequence tokenize(std::string_view text);

// F1 over clipped unigram multiset overlap. Both empty -> 1, one empty -> 0.
double rouge1_f1(const TokenSequence& a, const TokenSequence& b);

// Sentence BLEU, n-grams up to 4, add-one smoothing on match/total counts for
// n >= 2, standard brevity penalty. The longer sequence is the reference; on
// equal lengths the first argument is the candidate (equal-length precision is
// symmetric, so the score stays symmetric). Both empty -> 1, one empty -> 0.
double bleu(const TokenSequence& a, const TokenSequence& b);

// min(1, exp(1 - longer/shorter)). A zero length is a degenerate generation
// and throws ValidationError.
double length_penalty(std::size_t len_a, std::size_t len_b);

// Per-token embedding vectors for one generation.
struct TokenEmbeddings {
    std::size_t dimension = 0;
    std::vector<std::vector<double>> vectors;
};

// Greedy-matching BERTScore F1 times length_penalty. Requires one vector per
// token on both sides.
double bertscore_la(const TokenSequence& a, const TokenEmbeddings& ea,
                    const TokenSequence& b, const TokenEmbeddings& eb);

// Cosine similarity, clamped to [-1, 1]. Zero vectors and dimension
// mismatches throw ValidationError.
double embed_cosine(std::span<const double> va, std::span<const double> vb);

// |A ∩ B| / |A ∪ B|. Both empty -> 1, one empty -> 0.
double entity_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Fallback extractor used when no entity annotations are available: words of
// the original-cased text that start with an uppercase letter and are not
// sentence-initial.
std::set<std::string> extract_entities_heuristic(std::string_view text);

// Keyed stores filled by the ingestion layer. A generation resolves through
// its explicit token_embeddings_ref first, then its (instance, model, sample)
// key.
struct EmbeddingStore {
    std::size_t dimension = 0;
    std::map<std::string, TokenEmbeddings> by_ref;
    std::map<GenerationKey, TokenEmbeddings> by_id;

    const TokenEmbeddings* find(const Generation& g) const;
    bool empty() const { return by_ref.empty() && by_id.empty(); }
};

struct EntityStore {
    std::map<GenerationKey, std::set<std::string>> by_id;

    const std::set<std::string>* find(const Generation& g) const;
    bool empty() const { return by_id.empty(); }
};

// Dispatcher over the metric functions. Pure and stateless: safe to share
// across worker threads. Metric errors are annotated with the
// instance/model/sample that caused them.
class SimilarityScorer {
public:
    explicit SimilarityScorer(Metric metric,
                              const EmbeddingStore* embeddings = nullptr,
                              const EntityStore* entities = nullptr,
                              bool entity_fallback = true)
        : metric_(metric),
          embeddings_(embeddings),
          entities_(entities),
          entity_fallback_(entity_fallback) {}

    double operator()(const Generation& a, const Generation& b) const;

    Metric metric() const { return metric_; }

private:
    const TokenEmbeddings& require_embeddings(const Generation& g) const;
    std::set<std::string> resolve_entities(const Generation& g) const;
    std::vector<double> sentence_vector(const Generation& g) const;

    Metric metric_;
    const EmbeddingStore* embeddings_;
    const EntityStore* entities_;
    bool entity_fallback_;
};

}  // namespace sepkit
