#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/alignment.hpp"
#include "sepkit/errors.hpp"

using namespace sepkit;
using testutil::make_set;

namespace {

const SimilarityScorer kRouge(Metric::kRouge1F1);

double matrix_mean(const std::vector<std::vector<double>>& m) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& row : m) {
        for (double v : row) {
            sum += v;
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

GenerationSet random_set(Rng& rng, const std::string& instance, const std::string& model,
                         int k) {
    std::vector<std::string> texts;
    for (int i = 0; i < k; ++i) texts.push_back(testutil::join(testutil::random_tokens(rng, 1, 20)));
    return make_set(instance, model, texts);
}

}  // namespace

TEST_CASE("alignment_matrix") {
    SUBCASE("identical texts give an all-ones matrix") {
        auto a = make_set("i", "m1", {"same text here", "same text here"});
        auto b = make_set("i", "m2", {"same text here", "same text here"});
        for (const auto& row : alignment_matrix(a, b, kRouge)) {
            for (double v : row) CHECK(v == 1.0);
        }
    }
    SUBCASE("self matrix is symmetric with unit diagonal") {
        auto a = make_set("i", "m1", {"the cat sat", "a dog ran far", "the cat ran"});
        auto m = alignment_matrix(a, a, kRouge);
        for (std::size_t j = 0; j < m.size(); ++j) {
            CHECK(m[j][j] == 1.0);
            for (std::size_t l = 0; l < m.size(); ++l) CHECK(m[j][l] == m[l][j]);
        }
    }
    SUBCASE("2x2 entries equal the four pairwise similarity calls") {
        auto a = make_set("i", "m1", {"north wind blows", "south sun shines"});
        auto b = make_set("i", "m2", {"north wind howls", "bright sun shines"});
        auto m = alignment_matrix(a, b, kRouge);
        for (int j = 0; j < 2; ++j) {
            for (int l = 0; l < 2; ++l) {
                CHECK(m[j][l] == kRouge(a.samples[j], b.samples[l]));
            }
        }
    }
}

TEST_CASE("estimate_cross_alignment") {
    SUBCASE("full coverage on identical texts is exactly 1") {
        auto a = make_set("i", "m1", {"x y z", "x y z"});
        auto b = make_set("i", "m2", {"x y z", "x y z"});
        auto est = estimate_cross_alignment(a, b, kRouge, 4, 0);
        CHECK(est.raw_value == 1.0);
        CHECK(est.compared_pairs == 4);
        CHECK(est.kind == AlignmentKind::kCross);
    }
    SUBCASE("full coverage equals the matrix mean within 1e-12") {
        Rng rng(42);
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_set(rng, "i", "m1", 2 + static_cast<int>(rng.below(4)));
            auto b = random_set(rng, "i", "m2", 2 + static_cast<int>(rng.below(4)));
            int c = a.size() * b.size();
            auto est = estimate_cross_alignment(a, b, kRouge, c, 7);
            CHECK(est.raw_value ==
                  doctest::Approx(matrix_mean(alignment_matrix(a, b, kRouge))).epsilon(1e-12));
        }
    }
    SUBCASE("subsampled estimates are seeded and repeatable") {
        Rng rng(5);
        auto a = random_set(rng, "i", "m1", 5);
        auto b = random_set(rng, "i", "m2", 5);
        auto e1 = estimate_cross_alignment(a, b, kRouge, 5, 123);
        auto e2 = estimate_cross_alignment(a, b, kRouge, 5, 123);
        CHECK(e1.raw_value == e2.raw_value);  // bit-identical
        CHECK(e1.compared_pairs == 5);
        CHECK(*e1.rng_seed == 123);
    }
    SUBCASE("subsampling is unbiased: 1000 seeded half-coverage draws") {
        Rng rng(6);
        auto a = random_set(rng, "i", "m1", 5);
        auto b = random_set(rng, "i", "m2", 5);
        double full = estimate_cross_alignment(a, b, kRouge, 25, 0).raw_value;
        double sum = 0;
        for (int seed = 0; seed < 1000; ++seed) {
            sum += estimate_cross_alignment(a, b, kRouge, 12, seed).raw_value;
        }
        CHECK(sum / 1000.0 == doctest::Approx(full).epsilon(0.02));
    }
    SUBCASE("validation") {
        auto a = make_set("i", "m1", {"x", "y"});
        auto b = make_set("i", "m2", {"x", "y"});
        CHECK_THROWS_AS(estimate_cross_alignment(a, b, kRouge, 0, 0), ValidationError);
        CHECK_THROWS_AS(estimate_cross_alignment(a, b, kRouge, 5, 0), ValidationError);
        auto same = make_set("i", "m1", {"x", "y"});
        CHECK_THROWS_AS(estimate_cross_alignment(a, same, kRouge, 4, 0), ValidationError);
    }
}

TEST_CASE("estimate_self_alignment") {
    SUBCASE("identical samples score 1") {
        auto a = make_set("i", "m1", {"p q r", "p q r", "p q r"});
        auto est = estimate_self_alignment(a, kRouge, 0);
        CHECK(est.raw_value == 1.0);
        CHECK(est.compared_pairs == 6);
        CHECK(est.kind == AlignmentKind::kSelf);
    }
    SUBCASE("K=2 equals the pairwise similarity") {
        auto a = make_set("i", "m1", {"the cat sat", "the cat ran"});
        CHECK(estimate_self_alignment(a, kRouge, 0).raw_value ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("K=3 equals the off-diagonal matrix mean") {
        auto a = make_set("i", "m1", {"cold winter night", "warm summer day", "cold summer day"});
        auto m = alignment_matrix(a, a, kRouge);
        double sum = 0;
        for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) {
                if (j != l) sum += m[j][l];
            }
        }
        CHECK(estimate_self_alignment(a, kRouge, 0).raw_value ==
              doctest::Approx(sum / 6.0).epsilon(1e-12));
    }
    SUBCASE("self-alignment never exceeds the metric maximum") {
        Rng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_set(rng, "i", "m1", 2 + static_cast<int>(rng.below(4)));
            CHECK(estimate_self_alignment(a, kRouge, 0).raw_value <= 1.0 + 1e-12);
        }
    }
    SUBCASE("K < 2 is an error") {
        auto a = make_set("i", "m1", {"only one"});
        CHECK_THROWS_AS(estimate_self_alignment(a, kRouge, 0), ValidationError);
    }
}

TEST_CASE("full-coverage estimates are invariant to sample order") {
    Rng rng(77);
    auto a = random_set(rng, "i", "m1", 4);
    auto b = random_set(rng, "i", "m2", 4);
    double before = estimate_cross_alignment(a, b, kRouge, 16, 0).raw_value;
    double self_before = estimate_self_alignment(a, kRouge, 0).raw_value;
    std::reverse(a.samples.begin(), a.samples.end());
    std::reverse(b.samples.begin(), b.samples.end());
    CHECK(estimate_cross_alignment(a, b, kRouge, 16, 0).raw_value ==
          doctest::Approx(before).epsilon(1e-12));
    CHECK(estimate_self_alignment(a, kRouge, 0).raw_value ==
          doctest::Approx(self_before).epsilon(1e-12));
}

TEST_CASE("min_max_normalize") {
    SUBCASE("endpoints map to 0 and 1") {
        auto r = min_max_normalize({0.2, 0.5, 0.8});
        REQUIRE(r.values.size() == 3);
        CHECK(r.values[0] == 0.0);
        CHECK(r.values[1] == doctest::Approx(0.5));
        CHECK(r.values[2] == 1.0);
        CHECK(r.min == 0.2);
        CHECK(r.max == 0.8);
        CHECK_FALSE(r.degenerate);
    }
    SUBCASE("degenerate range maps to 0.5 and flags") {
        auto r = min_max_normalize({0.4, 0.4, 0.4});
        CHECK(r.values == std::vector<double>{0.5, 0.5, 0.5});
        CHECK(r.degenerate);
    }
    SUBCASE("negative values") {
        auto r = min_max_normalize({-0.5, 0.0, 1.0});
        CHECK(r.values[0] == 0.0);
        CHECK(r.values[1] == doctest::Approx(1.0 / 3.0));
        CHECK(r.values[2] == 1.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(min_max_normalize({}), ValidationError);
        CHECK_THROWS_WITH_AS(min_max_normalize({0.1, std::nan(""), 0.2}),
                             doctest::Contains("index 1"), ValidationError);
    }
    SUBCASE("order preserving") {
        Rng rng(3);
        std::vector<double> values;
        for (int i = 0; i < 50; ++i) values.push_back(rng.uniform(-2.0, 2.0));
        auto r = min_max_normalize(values);
        for (std::size_t i = 0; i < values.size(); ++i) {
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[i] < values[j]) CHECK(r.values[i] < r.values[j]);
            }
        }
    }
}
