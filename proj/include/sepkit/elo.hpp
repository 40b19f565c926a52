#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sepkit {

// One pairwise comparison outcome: 1 = model_a won, 0 = lost, 0.5 = tie.
// delta is the instance's separability for this pair and is required when
// separability weighting is on.
struct Match {
    std::string instance_id;
    std::string model_a;
    std::string model_b;
    double outcome_a = 0.5;
    std::optional<double> delta;
};

struct EloConfig {
    double base_k = 4.0;
    double initial_rating = 1000.0;
    bool sep_weighted = false;
    double threshold = 0.4;  // T: separability at which K is unchanged
    double alpha = 2.0;
    double beta = 6.0;
    double scale = 400.0;
    double base = 10.0;

    void validate() const;  // throws ValidationError
};

struct RatingChange {
    int match_index = 0;
    std::string model_id;
    double old_rating = 0.0;
    double new_rating = 0.0;
};

struct EloTable {
    std::map<std::string, double> ratings;
    std::vector<RatingChange> history;
    std::map<std::string, std::pair<double, double>> ci;
    int matches_applied = 0;
};

// 1 / (1 + base^((r_b - r_a) / scale)).
double expected_score(double rating_a, double rating_b, const EloConfig& cfg);

// base_k * alpha / (1 + exp(-beta * (delta - threshold))). Strictly
// increasing in delta, equals base_k at delta = threshold (alpha = 2),
// bounded by alpha * base_k. delta outside [-1, 1] throws.
double sep_weight(double delta, const EloConfig& cfg);

// Updates both ratings with one shared effective K, so the two changes sum
// to exactly zero. Unseen models are registered at initial_rating.
void apply_match(EloTable& table, const Match& match, const EloConfig& cfg);

// Left fold of apply_match over the matches in input order. The index of the
// first failing match is reported in the error message.
EloTable replay(const std::vector<Match>& matches, const EloConfig& cfg);

// Percentile bootstrap at 95%: each trial samples one match per instance and
// a fresh instance order (ELO is order-dependent), replays, and records the
// final ratings.
std::map<std::string, std::pair<double, double>> bootstrap_ci(
    const std::map<std::string, std::vector<Match>>& pool,
    int trials, std::uint64_t seed, const EloConfig& cfg);

struct GapReport {
    struct Row {
        std::string model_a;
        std::string model_b;
        double gap_vanilla = 0.0;
        double gap_sep = 0.0;
        double narrowing = 0.0;  // |gap_vanilla| - |gap_sep|
    };
    std::vector<Row> rows;
};

// Per-pair rating gaps of two tables over the same model set. Positive
// narrowing means the separability-weighted gap is smaller.
GapReport compare_tables(const EloTable& vanilla, const EloTable& sep);

}  // namespace sepkit
