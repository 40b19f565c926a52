#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/elo.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/rng.hpp"

using namespace sepkit;

namespace {

Match match(const std::string& instance, double outcome_a,
            std::optional<double> delta = std::nullopt, const std::string& a = "A",
            const std::string& b = "B") {
    Match m;
    m.instance_id = instance;
    m.model_a = a;
    m.model_b = b;
    m.outcome_a = outcome_a;
    m.delta = delta;
    return m;
}

}  // namespace

TEST_CASE("expected_score") {
    EloConfig cfg;
    CHECK(expected_score(1000, 1000, cfg) == 0.5);
    CHECK(expected_score(1400, 1000, cfg) == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
    CHECK(expected_score(1000, 1400, cfg) == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        double ra = rng.uniform(800, 1200), rb = rng.uniform(800, 1200);
        CHECK(expected_score(ra, rb, cfg) + expected_score(rb, ra, cfg) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(expected_score(ra, rb, cfg) > 0.0);
        CHECK(expected_score(ra, rb, cfg) < 1.0);
    }
}

TEST_CASE("sep_weight") {
    EloConfig cfg;
    CHECK(sep_weight(0.4, cfg) == 4.0);  // K unchanged at the threshold
    CHECK(sep_weight(1.0, cfg) == doctest::Approx(7.787).epsilon(1e-3));
    CHECK(sep_weight(0.0, cfg) == doctest::Approx(0.665).epsilon(1e-3));
    CHECK_THROWS_AS(sep_weight(1.5, cfg), ValidationError);
    CHECK_THROWS_AS(sep_weight(-1.5, cfg), ValidationError);

    SUBCASE("strictly increasing and bounded by (0, alpha * base_k)") {
        double previous = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double delta = -1.0 + 2.0 * i / 200.0;
            double w = sep_weight(delta, cfg);
            CHECK(w > 0.0);
            CHECK(w < cfg.alpha * cfg.base_k);
            if (i > 0) CHECK(w > previous);
            previous = w;
        }
    }
}

TEST_CASE("apply_match") {
    EloConfig cfg;
    SUBCASE("equal ratings, K=4, A wins") {
        EloTable table;
        apply_match(table, match("i", 1.0), cfg);
        CHECK(table.ratings.at("A") == 1002.0);
        CHECK(table.ratings.at("B") == 998.0);
        CHECK(table.history.size() == 2);
        CHECK(table.matches_applied == 1);
    }
    SUBCASE("tie between equal models changes nothing") {
        EloTable table;
        apply_match(table, match("i", 0.5), cfg);
        CHECK(table.ratings.at("A") == 1000.0);
        CHECK(table.ratings.at("B") == 1000.0);
    }
    SUBCASE("delta at the threshold reproduces the unweighted update exactly") {
        EloConfig weighted = cfg;
        weighted.sep_weighted = true;
        EloTable plain, sep;
        apply_match(plain, match("i", 1.0), cfg);
        apply_match(sep, match("i", 1.0, 0.4), weighted);
        CHECK(plain.ratings.at("A") == sep.ratings.at("A"));
        CHECK(plain.ratings.at("B") == sep.ratings.at("B"));
    }
    SUBCASE("validation") {
        EloConfig weighted = cfg;
        weighted.sep_weighted = true;
        EloTable table;
        CHECK_THROWS_WITH_AS(apply_match(table, match("i", 1.0), weighted),
                             doctest::Contains("no delta"), ValidationError);
        CHECK_THROWS_AS(apply_match(table, match("i", 0.3), cfg), ValidationError);
        CHECK_THROWS_AS(apply_match(table, match("i", 1.0, std::nullopt, "A", "A"), cfg),
                        ValidationError);
    }
}

TEST_CASE("replay") {
    EloConfig cfg;
    SUBCASE("empty list leaves an empty all-initial table") {
        EloTable table = replay({}, cfg);
        CHECK(table.ratings.empty());
        CHECK(table.matches_applied == 0);
    }
    SUBCASE("single match equals apply_match on a fresh table") {
        EloTable via_replay = replay({match("i", 0.0)}, cfg);
        EloTable direct;
        apply_match(direct, match("i", 0.0), cfg);
        CHECK(via_replay.ratings == direct.ratings);
    }
    SUBCASE("ten hand-built matches match a sequential recomputation") {
        std::vector<Match> matches;
        double outcomes[10] = {1, 0, 1, 1, 0.5, 0, 1, 0.5, 0, 1};
        for (int i = 0; i < 10; ++i) matches.push_back(match("i" + std::to_string(i), outcomes[i]));
        EloTable table = replay(matches, cfg);

        // Independent fold with explicit formulas.
        double ra = 1000.0, rb = 1000.0;
        for (double s : outcomes) {
            double ea = 1.0 / (1.0 + std::pow(10.0, (rb - ra) / 400.0));
            double change = 4.0 * (s - ea);
            ra += change;
            rb += 4.0 * ((1.0 - s) - (1.0 - ea));
        }
        CHECK(table.ratings.at("A") == doctest::Approx(ra).epsilon(1e-9));
        CHECK(table.ratings.at("B") == doctest::Approx(rb).epsilon(1e-9));
    }
    SUBCASE("failing match reports its index") {
        std::vector<Match> matches{match("i0", 1.0), match("i1", 0.25)};
        CHECK_THROWS_WITH_AS(replay(matches, cfg), doctest::Contains("match 1"), ValidationError);
    }
    SUBCASE("replay is deterministic") {
        Rng rng(31);
        std::vector<Match> matches;
        for (int i = 0; i < 50; ++i) {
            matches.push_back(match("i" + std::to_string(i),
                                    rng.below(3) == 0 ? 0.0 : rng.below(2) == 0 ? 0.5 : 1.0,
                                    rng.uniform01()));
        }
        EloConfig weighted = cfg;
        weighted.sep_weighted = true;
        EloTable t1 = replay(matches, weighted);
        EloTable t2 = replay(matches, weighted);
        CHECK(t1.ratings == t2.ratings);  // bit-identical
    }
}

TEST_CASE("per-match rating changes conserve rating mass") {
    Rng rng(101);
    EloConfig weighted;
    weighted.sep_weighted = true;
    for (int stream = 0; stream < 50; ++stream) {
        std::vector<Match> matches;
        for (int i = 0; i < 40; ++i) {
            double outcome = rng.below(4) == 0 ? 0.5 : (rng.coin() ? 1.0 : 0.0);
            matches.push_back(match("i" + std::to_string(i), outcome,
                                    rng.uniform(-1.0, 1.0),
                                    "m" + std::to_string(rng.below(4)),
                                    "n" + std::to_string(rng.below(4))));
        }
        EloTable table = replay(matches, weighted);
        for (std::size_t i = 0; i + 1 < table.history.size(); i += 2) {
            double change_a = table.history[i].new_rating - table.history[i].old_rating;
            double change_b = table.history[i + 1].new_rating - table.history[i + 1].old_rating;
            CHECK(std::abs(change_a + change_b) <= 1e-12);
        }
    }
}

TEST_CASE("bootstrap_ci") {
    EloConfig cfg;
    SUBCASE("single-option pools give narrow intervals") {
        std::map<std::string, std::vector<Match>> pool;
        for (int i = 0; i < 6; ++i) {
            pool["i" + std::to_string(i)] = {match("i" + std::to_string(i), i % 2 ? 1.0 : 0.0)};
        }
        auto ci = bootstrap_ci(pool, 100, 7, cfg);
        for (const auto& [model, interval] : ci) {
            CHECK(interval.second - interval.first < 2.0 * cfg.base_k);
            CHECK(interval.first <= interval.second);
        }
    }
    SUBCASE("fixed seeds reproduce bit-identical intervals") {
        std::map<std::string, std::vector<Match>> pool{
            {"i1", {match("i1", 1.0), match("i1", 0.0)}},
            {"i2", {match("i2", 0.5), match("i2", 1.0)}},
        };
        auto c1 = bootstrap_ci(pool, 100, 99, cfg);
        auto c2 = bootstrap_ci(pool, 100, 99, cfg);
        CHECK(c1 == c2);
    }
    SUBCASE("two-instance planted pool matches exhaustive enumeration") {
        // Each instance offers an A-always-wins and a B-always-wins outcome:
        // 4 resamplings x 2 orders, all equally likely, each with mass 1/8.
        std::map<std::string, std::vector<Match>> pool{
            {"i1", {match("i1", 1.0), match("i1", 0.0)}},
            {"i2", {match("i2", 1.0), match("i2", 0.0)}},
        };
        std::vector<double> enumerated_a;
        for (double s1 : {1.0, 0.0}) {
            for (double s2 : {1.0, 0.0}) {
                for (bool swap_order : {false, true}) {
                    std::vector<Match> sequence{match("i1", s1), match("i2", s2)};
                    if (swap_order) std::swap(sequence[0], sequence[1]);
                    enumerated_a.push_back(replay(sequence, cfg).ratings.at("A"));
                }
            }
        }
        double lo = *std::min_element(enumerated_a.begin(), enumerated_a.end());
        double hi = *std::max_element(enumerated_a.begin(), enumerated_a.end());
        auto ci = bootstrap_ci(pool, 2000, 3, cfg);
        // Every atom carries 12.5% mass, so the 2.5th/97.5th percentiles sit
        // on the extreme atoms.
        CHECK(ci.at("A").first == doctest::Approx(lo).epsilon(1e-9));
        CHECK(ci.at("A").second == doctest::Approx(hi).epsilon(1e-9));
    }
    SUBCASE("validation") {
        std::map<std::string, std::vector<Match>> pool;
        CHECK_THROWS_AS(bootstrap_ci(pool, 100, 0, cfg), ValidationError);
        pool["i1"] = {};
        CHECK_THROWS_AS(bootstrap_ci(pool, 100, 0, cfg), ValidationError);
        pool["i1"] = {match("i1", 1.0)};
        CHECK_THROWS_AS(bootstrap_ci(pool, 0, 0, cfg), ValidationError);
    }
}

TEST_CASE("compare_tables") {
    SUBCASE("identical tables report zero narrowing") {
        EloConfig cfg;
        EloTable t = replay({match("i", 1.0)}, cfg);
        GapReport report = compare_tables(t, t);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].narrowing == 0.0);
    }
    SUBCASE("hand-built narrowing of 12") {
        EloTable vanilla, sep;
        vanilla.ratings = {{"A", 1010.0}, {"B", 990.0}};
        sep.ratings = {{"A", 1004.0}, {"B", 996.0}};
        GapReport report = compare_tables(vanilla, sep);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].gap_vanilla == 20.0);
        CHECK(report.rows[0].gap_sep == 8.0);
        CHECK(report.rows[0].narrowing == 12.0);
    }
    SUBCASE("mismatched model sets are rejected") {
        EloTable vanilla, sep;
        vanilla.ratings = {{"A", 1000.0}, {"B", 1000.0}};
        sep.ratings = {{"A", 1000.0}, {"C", 1000.0}};
        CHECK_THROWS_AS(compare_tables(vanilla, sep), ValidationError);
    }
}

// Fig. 9-style mechanism: when unreliable low-separability instances carry a
// spurious consistent preference and the separable instances are balanced,
// down-weighting the unreliable ones narrows the gap.
TEST_CASE("sep weighting damps gaps driven by unreliable instances") {
    EloConfig vanilla;
    EloConfig weighted;
    weighted.sep_weighted = true;

    int narrowed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(4242, "damping/" + std::to_string(trial)));
        std::vector<Match> matches;
        for (int i = 0; i < 140; ++i) {
            // Spurious 70/30 bias toward B on hard-to-separate instances.
            double outcome = rng.uniform01() < 0.7 ? 0.0 : 1.0;
            matches.push_back(match("lo" + std::to_string(i), outcome, rng.uniform(0.02, 0.18)));
        }
        for (int i = 0; i < 60; ++i) {
            // Separable instances are consistent but balanced between models.
            matches.push_back(match("hi" + std::to_string(i), i < 30 ? 1.0 : 0.0,
                                    rng.uniform(0.62, 0.98)));
        }
        rng.shuffle(matches);

        std::vector<Match> unweighted_stream = matches;
        for (Match& m : unweighted_stream) m.delta.reset();
        EloTable tv = replay(unweighted_stream, vanilla);
        EloTable ts = replay(matches, weighted);
        double gap_v = std::abs(tv.ratings.at("A") - tv.ratings.at("B"));
        double gap_s = std::abs(ts.ratings.at("A") - ts.ratings.at("B"));
        if (gap_s < gap_v) ++narrowed;
    }
    CHECK(narrowed >= 90);
}
