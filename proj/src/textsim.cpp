#include "sepkit/textsim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

// --- minimal UTF-8 handling -------------------------------------------------

struct Codepoint {
    char32_t value;
    std::size_t length;  // bytes consumed
};

// Permissive decoder: malformed bytes are consumed one at a time and passed
// through as their byte value, so tokenization stays total and deterministic.
Codepoint decode_utf8(std::string_view text, std::size_t pos) {
    unsigned char b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80) return {b0, 1};

    auto continuation = [&](std::size_t offset) -> int {
        if (pos + offset >= text.size()) return -1;
        unsigned char b = static_cast<unsigned char>(text[pos + offset]);
        return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
    };

    if ((b0 & 0xE0) == 0xC0) {
        int c1 = continuation(1);
        if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
    } else if ((b0 & 0xF0) == 0xE0) {
        int c1 = continuation(1), c2 = continuation(2);
        if (c1 >= 0 && c2 >= 0)
            return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
    } else if ((b0 & 0xF8) == 0xF0) {
        int c1 = continuation(1), c2 = continuation(2), c3 = continuation(3);
        if (c1 >= 0 && c2 >= 0 && c3 >= 0)
            return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), 4};
    }
    return {b0, 1};
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Characters stripped from tokens: every ASCII non-alphanumeric plus the
// common Unicode punctuation blocks.
bool is_strippable_cp(char32_t cp) {
    if (cp < 0x80) {
        bool alnum = (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
                     (cp >= U'A' && cp <= U'Z');
        return !alnum;
    }
    switch (cp) {
        case 0x00A1: case 0x00A6: case 0x00A7: case 0x00AB: case 0x00B6:
        case 0x00B7: case 0x00BB: case 0x00BF: case 0x30FB:
            return true;
        default:
            break;
    }
    return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
           (cp >= 0x2E00 && cp <= 0x2E7F) || (cp >= 0x3001 && cp <= 0x3003) ||
           (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0x3014 && cp <= 0x301F) ||
           (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
           (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

bool is_upper_cp(char32_t cp) {
    return (cp >= U'A' && cp <= U'Z') || (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7);
}

char32_t lower_cp(char32_t cp) {
    if (is_upper_cp(cp)) return cp + 0x20;
    return cp;
}

// --- n-gram helpers ---------------------------------------------------------

// Tokens cannot contain 0x1F (it is stripped), so it is a safe joiner.
std::map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
    std::map<std::string, int> counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
            key.push_back('\x1f');
            key += tokens[i + j];
        }
        ++counts[key];
    }
    return counts;
}

long long clipped_matches(const std::map<std::string, int>& cand,
                          const std::map<std::string, int>& ref) {
    long long matches = 0;
    for (const auto& [gram, count] : cand) {
        auto it = ref.find(gram);
        if (it != ref.end()) matches += std::min(count, it->second);
    }
    return matches;
}

std::string describe(const Generation& g) {
    std::ostringstream os;
    os << "instance=" << g.instance_id << " model=" << g.model_id
       << " sample=" << g.sample_index;
    return os.str();
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
    TokenSequence seq;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        Codepoint cp = decode_utf8(text, pos);
        pos += cp.length;
        if (is_space_cp(cp.value)) {
            if (!current.empty()) {
                seq.tokens.push_back(std::move(current));
                current.clear();
            }
        } else if (!is_strippable_cp(cp.value)) {
            append_utf8(current, lower_cp(cp.value));
        }
    }
    if (!current.empty()) seq.tokens.push_back(std::move(current));
    return seq;
}

double rouge1_f1(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    long long overlap = clipped_matches(ngram_counts(a.tokens, 1), ngram_counts(b.tokens, 1));
    if (overlap == 0) return 0.0;
    double precision = static_cast<double>(overlap) / static_cast<double>(a.length());
    double recall = static_cast<double>(overlap) / static_cast<double>(b.length());
    return 2.0 * precision * recall / (precision + recall);
}

double bleu(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;

    const TokenSequence* candidate = &a;
    const TokenSequence* reference = &b;
    if (a.length() > b.length()) std::swap(candidate, reference);

    double log_precision_sum = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto cand_counts = ngram_counts(candidate->tokens, n);
        auto ref_counts = ngram_counts(reference->tokens, n);
        long long total = candidate->length() >= n
                              ? static_cast<long long>(candidate->length() - n + 1)
                              : 0;
        long long matches = clipped_matches(cand_counts, ref_counts);
        double p;
        if (n == 1) {
            if (matches == 0) return 0.0;
            p = static_cast<double>(matches) / static_cast<double>(total);
        } else {
            p = static_cast<double>(matches + 1) / static_cast<double>(total + 1);
        }
        log_precision_sum += std::log(p);
    }

    double c = static_cast<double>(candidate->length());
    double r = static_cast<double>(reference->length());
    double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
    return brevity * std::exp(log_precision_sum / 4.0);
}

double length_penalty(std::size_t len_a, std::size_t len_b) {
    if (len_a == 0 || len_b == 0) {
        throw ValidationError("length_penalty: zero-length generation (degenerate sample)");
    }
    if (len_a == len_b) return 1.0;
    double longer = static_cast<double>(std::max(len_a, len_b));
    double shorter = static_cast<double>(std::min(len_a, len_b));
    return std::min(1.0, std::exp(1.0 - longer / shorter));
}

double bertscore_la(const TokenSequence& a, const TokenEmbeddings& ea,
                    const TokenSequence& b, const TokenEmbeddings& eb) {
    if (a.empty() || b.empty()) {
        throw ValidationError("bertscore-la: both token sequences must be nonempty");
    }
    if (ea.vectors.size() != a.length() || eb.vectors.size() != b.length()) {
        throw ValidationError("bertscore-la: embedding vector count does not match token count");
    }
    for (const auto& v : ea.vectors) {
        if (v.size() != ea.dimension)
            throw ValidationError("bertscore-la: embedding dimension mismatch within sequence");
    }
    for (const auto& v : eb.vectors) {
        if (v.size() != eb.dimension)
            throw ValidationError("bertscore-la: embedding dimension mismatch within sequence");
    }
    if (ea.dimension != eb.dimension) {
        throw ValidationError("bertscore-la: embedding dimension mismatch between sequences");
    }

    // Greedy matching: every token pairs with its best counterpart.
    double precision_sum = 0.0;
    for (const auto& va : ea.vectors) {
        double best = -2.0;
        for (const auto& vb : eb.vectors) best = std::max(best, embed_cosine(va, vb));
        precision_sum += best;
    }
    double recall_sum = 0.0;
    for (const auto& vb : eb.vectors) {
        double best = -2.0;
        for (const auto& va : ea.vectors) best = std::max(best, embed_cosine(va, vb));
        recall_sum += best;
    }
    double precision = precision_sum / static_cast<double>(ea.vectors.size());
    double recall = recall_sum / static_cast<double>(eb.vectors.size());
    double f1 = (precision + recall) == 0.0 ? 0.0
                                            : 2.0 * precision * recall / (precision + recall);
    return f1 * length_penalty(a.length(), b.length());
}

double embed_cosine(std::span<const double> va, std::span<const double> vb) {
    if (va.size() != vb.size()) {
        throw ValidationError("embed_cosine: dimension mismatch");
    }
    if (va.empty()) {
        throw ValidationError("embed_cosine: empty vectors");
    }
    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        norm_a += va[i] * va[i];
        norm_b += vb[i] * vb[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0) {
        throw ValidationError("embed_cosine: zero vector");
    }
    double cosine = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    return std::clamp(cosine, -1.0, 1.0);
}

double entity_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t intersection = 0;
    for (const auto& e : a) intersection += b.count(e);
    std::size_t unions = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

std::set<std::string> extract_entities_heuristic(std::string_view text) {
    // Split the original-cased text into raw words, then strip punctuation
    // from the edges. A word counts as sentence-initial when it is the first
    // word or the previous raw word ends a sentence.
    struct RawWord {
        std::vector<char32_t> cps;
    };
    std::vector<RawWord> words;
    RawWord current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        Codepoint cp = decode_utf8(text, pos);
        pos += cp.length;
        if (is_space_cp(cp.value)) {
            if (!current.cps.empty()) words.push_back(std::move(current)), current = {};
        } else {
            current.cps.push_back(cp.value);
        }
    }
    if (!current.cps.empty()) words.push_back(std::move(current));

    auto ends_sentence = [](const RawWord& w) {
        for (auto it = w.cps.rbegin(); it != w.cps.rend(); ++it) {
            char32_t cp = *it;
            // Skip closing quotes and brackets.
            if (cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' ||
                cp == 0x00BB || cp == 0x2019 || cp == 0x201D)
                continue;
            return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
        }
        return false;
    };

    std::set<std::string> entities;
    bool sentence_initial = true;
    for (const RawWord& word : words) {
        std::size_t begin = 0, end = word.cps.size();
        while (begin < end && is_strippable_cp(word.cps[begin])) ++begin;
        while (end > begin && is_strippable_cp(word.cps[end - 1])) --end;
        if (begin < end && !sentence_initial && is_upper_cp(word.cps[begin])) {
            std::string entity;
            for (std::size_t i = begin; i < end; ++i) append_utf8(entity, word.cps[i]);
            entities.insert(std::move(entity));
        }
        sentence_initial = ends_sentence(word);
    }
    return entities;
}

const TokenEmbeddings* EmbeddingStore::find(const Generation& g) const {
    if (g.token_embeddings_ref) {
        auto it = by_ref.find(*g.token_embeddings_ref);
        if (it != by_ref.end()) return &it->second;
    }
    auto it = by_id.find(g.key());
    return it == by_id.end() ? nullptr : &it->second;
}

const std::set<std::string>* EntityStore::find(const Generation& g) const {
    auto it = by_id.find(g.key());
    return it == by_id.end() ? nullptr : &it->second;
}

const TokenEmbeddings& SimilarityScorer::require_embeddings(const Generation& g) const {
    const TokenEmbeddings* found = embeddings_ ? embeddings_->find(g) : nullptr;
    if (!found) {
        throw ValidationError("missing token embeddings for " + describe(g));
    }
    return *found;
}

std::set<std::string> SimilarityScorer::resolve_entities(const Generation& g) const {
    if (g.entities) return *g.entities;
    if (entities_) {
        if (const auto* found = entities_->find(g)) return *found;
    }
    if (entity_fallback_) return extract_entities_heuristic(g.text);
    throw ValidationError("missing entity annotations for " + describe(g));
}

std::vector<double> SimilarityScorer::sentence_vector(const Generation& g) const {
    const TokenEmbeddings& emb = require_embeddings(g);
    if (emb.vectors.empty()) {
        throw ValidationError("empty embedding row for " + describe(g));
    }
    if (emb.vectors.size() == 1) return emb.vectors.front();
    // Mean-pool per-token vectors into one sentence vector.
    std::vector<double> pooled(emb.dimension, 0.0);
    for (const auto& v : emb.vectors) {
        if (v.size() != emb.dimension)
            throw ValidationError("embedding dimension mismatch for " + describe(g));
        for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += v[i];
    }
    for (double& x : pooled) x /= static_cast<double>(emb.vectors.size());
    return pooled;
}

double SimilarityScorer::operator()(const Generation& a, const Generation& b) const {
    try {
        switch (metric_) {
            case Metric::kRouge1F1:
                return rouge1_f1(tokenize(a.text), tokenize(b.text));
            case Metric::kBleu:
                return bleu(tokenize(a.text), tokenize(b.text));
            case Metric::kBertScoreLa:
                return bertscore_la(tokenize(a.text), require_embeddings(a),
                                    tokenize(b.text), require_embeddings(b));
            case Metric::kEmbedCosine:
                return embed_cosine(sentence_vector(a), sentence_vector(b));
            case Metric::kEntityJaccard:
                return entity_jaccard(resolve_entities(a), resolve_entities(b));
        }
        throw ValidationError("unknown metric id");
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + " [pair " + describe(a) + " vs " +
                              describe(b) + "]");
    }
}

}  // namespace sepkit
