#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "sepkit/rng.hpp"
#include "sepkit/types.hpp"

namespace testutil {

inline sepkit::Generation make_gen(const std::string& instance, const std::string& model,
                                   int index, const std::string& text) {
    sepkit::Generation g;
    g.instance_id = instance;
    g.model_id = model;
    g.sample_index = index;
    g.text = text;
    return g;
}

inline sepkit::GenerationSet make_set(const std::string& instance, const std::string& model,
                                      const std::vector<std::string>& texts) {
    sepkit::GenerationSet set;
    set.instance_id = instance;
    set.model_id = model;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        set.samples.push_back(make_gen(instance, model, static_cast<int>(i), texts[i]));
    }
    set.decode_params.sample_count = set.size();
    return set;
}

inline std::vector<std::string> random_tokens(sepkit::Rng& rng, std::size_t min_len,
                                              std::size_t max_len) {
    static const std::vector<std::string> vocab{
        "alpha", "bravo", "charlie", "delta", "echo", "foxtrot",
        "golf",  "hotel", "india",   "juliet", "kilo", "lima"};
    std::size_t len = min_len + rng.below(max_len - min_len + 1);
    std::vector<std::string> tokens;
    tokens.reserve(len);
    for (std::size_t i = 0; i < len; ++i) tokens.push_back(vocab[rng.below(vocab.size())]);
    return tokens;
}

inline std::string join(const std::vector<std::string>& tokens) {
    std::string text;
    for (const std::string& t : tokens) {
        if (!text.empty()) text += ' ';
        text += t;
    }
    return text;
}

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately use different data structures and
// accumulation orders than the library so they check the math, not the code.
// ---------------------------------------------------------------------------

// Smoothed sentence BLEU: sorted n-gram lists and multiset intersection
// instead of hash-count maps; long-double product instead of log sums.
inline double oracle_smoothed_bleu(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::vector<std::string> cand = a, ref = b;
    if (a.size() > b.size()) {
        cand = b;
        ref = a;
    }

    auto ngrams = [](const std::vector<std::string>& tokens, std::size_t n) {
        std::vector<std::vector<std::string>> grams;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            grams.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
        }
        std::sort(grams.begin(), grams.end());
        return grams;
    };

    long double product = 1.0L;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto gc = ngrams(cand, n);
        auto gr = ngrams(ref, n);
        std::vector<std::vector<std::string>> common;
        std::set_intersection(gc.begin(), gc.end(), gr.begin(), gr.end(),
                              std::back_inserter(common));
        long double total = static_cast<long double>(gc.size());
        long double matches = static_cast<long double>(common.size());
        if (n == 1) {
            if (matches == 0) return 0.0;
            product *= matches / total;
        } else {
            product *= (matches + 1) / (total + 1);
        }
    }
    long double brevity =
        cand.size() < ref.size()
            ? std::exp(1.0L - static_cast<long double>(ref.size()) / cand.size())
            : 1.0L;
    return static_cast<double>(brevity * std::pow(product, 0.25L));
}

// Greedy-matching BERTScore F1 times the length penalty, recomputed from a
// brute-force cosine matrix.
inline double oracle_bertscore_la(const std::vector<std::vector<double>>& va,
                                  const std::vector<std::vector<double>>& vb) {
    auto cosine = [](const std::vector<double>& x, const std::vector<double>& y) {
        double dot = 0, nx = 0, ny = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dot += x[i] * y[i];
            nx += x[i] * x[i];
            ny += y[i] * y[i];
        }
        double c = dot / (std::sqrt(nx) * std::sqrt(ny));
        return std::max(-1.0, std::min(1.0, c));
    };
    std::vector<std::vector<double>> matrix(va.size(), std::vector<double>(vb.size()));
    for (std::size_t i = 0; i < va.size(); ++i) {
        for (std::size_t j = 0; j < vb.size(); ++j) matrix[i][j] = cosine(va[i], vb[j]);
    }
    double precision = 0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        precision += *std::max_element(matrix[i].begin(), matrix[i].end());
    }
    precision /= static_cast<double>(va.size());
    double recall = 0;
    for (std::size_t j = 0; j < vb.size(); ++j) {
        double best = -2;
        for (std::size_t i = 0; i < va.size(); ++i) best = std::max(best, matrix[i][j]);
        recall += best;
    }
    recall /= static_cast<double>(vb.size());
    double f1 = precision + recall == 0 ? 0 : 2 * precision * recall / (precision + recall);
    double longer = static_cast<double>(std::max(va.size(), vb.size()));
    double shorter = static_cast<double>(std::min(va.size(), vb.size()));
    double lp = va.size() == vb.size() ? 1.0 : std::min(1.0, std::exp(1.0 - longer / shorter));
    return f1 * lp;
}

// Eq.-style consistency and strength recomputed from first principles.
inline double oracle_consistency(const std::vector<int>& ratings) {
    bool neg = std::count(ratings.begin(), ratings.end(), -1) > 0;
    bool pos = std::count(ratings.begin(), ratings.end(), 1) > 0;
    if (neg && pos) return 0.0;
    double sum = 0;
    for (int r : ratings) sum += std::abs(r);
    return sum / static_cast<double>(ratings.size());
}

inline double oracle_preference_strength(const std::vector<int>& ratings) {
    double sum = 0;
    for (int r : ratings) sum += r;
    return sum / static_cast<double>(ratings.size());
}

}  // namespace testutil
