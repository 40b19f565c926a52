#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sepkit/alignment.hpp"
#include "sepkit/elo.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/ratings.hpp"
#include "sepkit/rng.hpp"
#include "sepkit/separability.hpp"
#include "sepkit/textsim.hpp"

namespace py = pybind11;
using namespace sepkit;

namespace {

GenerationSet make_set(const std::vector<std::string>& texts, const std::string& model_id) {
    GenerationSet set;
    set.instance_id = "py";
    set.model_id = model_id;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        Generation g;
        g.instance_id = "py";
        g.model_id = model_id;
        g.sample_index = static_cast<int>(i);
        g.text = texts[i];
        set.samples.push_back(std::move(g));
    }
    return set;
}

TokenEmbeddings make_embeddings(const std::vector<std::vector<double>>& vectors) {
    TokenEmbeddings emb;
    emb.dimension = vectors.empty() ? 0 : vectors.front().size();
    emb.vectors = vectors;
    return emb;
}

// Placeholder tokens so the length penalty sees the vector counts.
TokenSequence placeholder_tokens(std::size_t n) {
    TokenSequence seq;
    seq.tokens.assign(n, "t");
    return seq;
}

EloConfig make_elo_config(double base_k, double initial_rating, bool sep_weighted,
                          double threshold, double alpha, double beta, double scale,
                          double base) {
    EloConfig cfg;
    cfg.base_k = base_k;
    cfg.initial_rating = initial_rating;
    cfg.sep_weighted = sep_weighted;
    cfg.threshold = threshold;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.scale = scale;
    cfg.base = base;
    return cfg;
}

using PyMatch = std::tuple<std::string, std::string, std::string, double, std::optional<double>>;

Match to_match(const PyMatch& t) {
    Match m;
    m.instance_id = std::get<0>(t);
    m.model_a = std::get<1>(t);
    m.model_b = std::get<2>(t);
    m.outcome_a = std::get<3>(t);
    m.delta = std::get<4>(t);
    return m;
}

}  // namespace

PYBIND11_MODULE(_sepkit, m) {
    m.doc() = "Separability, rating consistency and separability-weighted ELO";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("tokenize", [](const std::string& text) { return tokenize(text).tokens; },
          py::arg("text"));

    m.def("rouge1_f1",
          [](const std::string& a, const std::string& b) {
              return rouge1_f1(tokenize(a), tokenize(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("bleu",
          [](const std::string& a, const std::string& b) { return bleu(tokenize(a), tokenize(b)); },
          py::arg("a"), py::arg("b"));

    m.def("length_penalty",
          [](std::size_t len_a, std::size_t len_b) { return length_penalty(len_a, len_b); },
          py::arg("len_a"), py::arg("len_b"));

    m.def("bertscore_la",
          [](const std::vector<std::vector<double>>& va,
             const std::vector<std::vector<double>>& vb) {
              return bertscore_la(placeholder_tokens(va.size()), make_embeddings(va),
                                  placeholder_tokens(vb.size()), make_embeddings(vb));
          },
          py::arg("vectors_a"), py::arg("vectors_b"),
          "Greedy-matching F1 over per-token vectors, times the length penalty.");

    m.def("embed_cosine",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return embed_cosine(a, b);
          },
          py::arg("a"), py::arg("b"));

    m.def("entity_jaccard",
          [](const std::set<std::string>& a, const std::set<std::string>& b) {
              return entity_jaccard(a, b);
          },
          py::arg("a"), py::arg("b"));

    m.def("extract_entities",
          [](const std::string& text) { return extract_entities_heuristic(text); },
          py::arg("text"));

    m.def("self_alignment",
          [](const std::vector<std::string>& texts, const std::string& metric) {
              SimilarityScorer scorer(metric_from_string(metric));
              return estimate_self_alignment(make_set(texts, "m"), scorer, 0).raw_value;
          },
          py::arg("texts"), py::arg("metric") = "rouge1-f1");

    m.def("cross_alignment",
          [](const std::vector<std::string>& texts_a, const std::vector<std::string>& texts_b,
             const std::string& metric, int c, std::uint64_t seed) {
              SimilarityScorer scorer(metric_from_string(metric));
              GenerationSet a = make_set(texts_a, "a");
              GenerationSet b = make_set(texts_b, "b");
              if (c <= 0) c = a.size() * b.size();
              return estimate_cross_alignment(a, b, scorer, c, seed).raw_value;
          },
          py::arg("texts_a"), py::arg("texts_b"), py::arg("metric") = "rouge1-f1",
          py::arg("c") = 0, py::arg("seed") = 0,
          "Monte-Carlo cross-alignment; c <= 0 means all pairs.");

    m.def("min_max_normalize",
          [](const std::vector<double>& values) {
              NormalizeResult r = min_max_normalize(values);
              return py::make_tuple(r.values, r.min, r.max, r.degenerate);
          },
          py::arg("values"));

    m.def("separability", &separability, py::arg("self_a"), py::arg("self_b"), py::arg("cross"));

    m.def("consistency",
          [](const std::vector<int>& ratings) {
              RatingSet rs;
              rs.ratings = ratings;
              return consistency(rs);
          },
          py::arg("ratings"));

    m.def("preference_strength",
          [](const std::vector<int>& ratings) {
              RatingSet rs;
              rs.ratings = ratings;
              return preference_strength(rs);
          },
          py::arg("ratings"));

    m.def("expected_score",
          [](double rating_a, double rating_b, double scale, double base) {
              EloConfig cfg;
              cfg.scale = scale;
              cfg.base = base;
              return expected_score(rating_a, rating_b, cfg);
          },
          py::arg("rating_a"), py::arg("rating_b"), py::arg("scale") = 400.0,
          py::arg("base") = 10.0);

    m.def("sep_weight",
          [](double delta, double base_k, double alpha, double beta, double threshold) {
              EloConfig cfg;
              cfg.base_k = base_k;
              cfg.alpha = alpha;
              cfg.beta = beta;
              cfg.threshold = threshold;
              return sep_weight(delta, cfg);
          },
          py::arg("delta"), py::arg("base_k") = 4.0, py::arg("alpha") = 2.0,
          py::arg("beta") = 6.0, py::arg("threshold") = 0.4);

    m.def("elo_replay",
          [](const std::vector<PyMatch>& matches, bool sep_weighted, double base_k,
             double initial_rating, double threshold, double alpha, double beta, double scale,
             double base) {
              std::vector<Match> converted;
              converted.reserve(matches.size());
              for (const PyMatch& t : matches) converted.push_back(to_match(t));
              EloTable table = replay(converted,
                                      make_elo_config(base_k, initial_rating, sep_weighted,
                                                      threshold, alpha, beta, scale, base));
              return table.ratings;
          },
          py::arg("matches"), py::arg("sep_weighted") = false, py::arg("base_k") = 4.0,
          py::arg("initial_rating") = 1000.0, py::arg("threshold") = 0.4, py::arg("alpha") = 2.0,
          py::arg("beta") = 6.0, py::arg("scale") = 400.0, py::arg("base") = 10.0,
          "Replays matches (instance, model_a, model_b, outcome_a, delta) in order and "
          "returns the final ratings.");

    m.def("elo_bootstrap",
          [](const std::map<std::string, std::vector<PyMatch>>& pool, int trials,
             std::uint64_t seed, bool sep_weighted, double base_k, double initial_rating,
             double threshold, double alpha, double beta, double scale, double base) {
              std::map<std::string, std::vector<Match>> converted;
              for (const auto& [instance, matches] : pool) {
                  std::vector<Match>& out = converted[instance];
                  out.reserve(matches.size());
                  for (const PyMatch& t : matches) out.push_back(to_match(t));
              }
              return bootstrap_ci(converted, trials, seed,
                                  make_elo_config(base_k, initial_rating, sep_weighted,
                                                  threshold, alpha, beta, scale, base));
          },
          py::arg("pool"), py::arg("trials") = 100, py::arg("seed") = 0,
          py::arg("sep_weighted") = false, py::arg("base_k") = 4.0,
          py::arg("initial_rating") = 1000.0, py::arg("threshold") = 0.4, py::arg("alpha") = 2.0,
          py::arg("beta") = 6.0, py::arg("scale") = 400.0, py::arg("base") = 10.0,
          "95% bootstrap confidence intervals per model from an instance -> matches pool.");

    m.def("derive_seed",
          [](std::uint64_t root, const std::string& stream) { return derive_seed(root, stream); },
          py::arg("root"), py::arg("stream"));
}
