#include "sepkit/elo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepkit/errors.hpp"
#include "sepkit/rng.hpp"

namespace sepkit {

namespace {

double percentile(std::vector<double> sorted_values, double q) {
    // Linear interpolation between closest ranks.
    const std::size_t n = sorted_values.size();
    if (n == 1) return sorted_values.front();
    double pos = q * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted_values.back();
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

}  // namespace

void EloConfig::validate() const {
    if (!(base_k > 0.0)) throw ValidationError("elo config: base_k must be > 0");
    if (!(alpha > 0.0)) throw ValidationError("elo config: alpha must be > 0");
    if (!(beta > 0.0)) throw ValidationError("elo config: beta must be > 0");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw ValidationError("elo config: T must lie in [0, 1]");
    if (!(scale > 0.0)) throw ValidationError("elo config: scale must be > 0");
    if (!(base > 1.0)) throw ValidationError("elo config: base must be > 1");
}

double expected_score(double rating_a, double rating_b, const EloConfig& cfg) {
    return 1.0 / (1.0 + std::pow(cfg.base, (rating_b - rating_a) / cfg.scale));
}

double sep_weight(double delta, const EloConfig& cfg) {
    if (!(delta >= -1.0 && delta <= 1.0)) {
        throw ValidationError("sep_weight: separability " + std::to_string(delta) +
                              " outside [-1, 1]");
    }
    return cfg.base_k * cfg.alpha / (1.0 + std::exp(-cfg.beta * (delta - cfg.threshold)));
}

void apply_match(EloTable& table, const Match& match, const EloConfig& cfg) {
    if (match.outcome_a != 0.0 && match.outcome_a != 0.5 && match.outcome_a != 1.0) {
        throw ValidationError("match outcome " + std::to_string(match.outcome_a) +
                              " for instance=" + match.instance_id +
                              " outside {0, 0.5, 1}");
    }
    if (match.model_a == match.model_b) {
        throw ValidationError("match for instance=" + match.instance_id +
                              " pairs model '" + match.model_a + "' with itself");
    }
    double k = cfg.base_k;
    if (cfg.sep_weighted) {
        if (!match.delta) {
            throw ValidationError("separability weighting enabled but match for instance=" +
                                  match.instance_id + " carries no delta");
        }
        k = sep_weight(*match.delta, cfg);
    }

    table.ratings.try_emplace(match.model_a, cfg.initial_rating);
    table.ratings.try_emplace(match.model_b, cfg.initial_rating);
    double& rating_a = table.ratings[match.model_a];
    double& rating_b = table.ratings[match.model_b];

    // One shared K, one signed change. Subtracting the realized (rounded)
    // change from B keeps the update zero-sum to the last bit whenever the
    // two ratings share a binade.
    const double change = k * (match.outcome_a - expected_score(rating_a, rating_b, cfg));
    const double new_a = rating_a + change;
    const double realized = new_a - rating_a;
    const double new_b = rating_b - realized;
    const int index = table.matches_applied;
    table.history.push_back({index, match.model_a, rating_a, new_a});
    table.history.push_back({index, match.model_b, rating_b, new_b});
    rating_a = new_a;
    rating_b = new_b;
    ++table.matches_applied;
}

EloTable replay(const std::vector<Match>& matches, const EloConfig& cfg) {
    cfg.validate();
    EloTable table;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        try {
            apply_match(table, matches[i], cfg);
        } catch (const ValidationError& e) {
            throw ValidationError("match " + std::to_string(i) + ": " + e.what());
        }
    }
    return table;
}

std::map<std::string, std::pair<double, double>> bootstrap_ci(
    const std::map<std::string, std::vector<Match>>& pool,
    int trials, std::uint64_t seed, const EloConfig& cfg) {
    cfg.validate();
    if (trials < 1) {
        throw ValidationError("bootstrap: trials must be >= 1");
    }
    if (pool.empty()) {
        throw ValidationError("bootstrap: empty match pool");
    }
    std::vector<const std::vector<Match>*> instances;
    std::vector<std::string> models;
    instances.reserve(pool.size());
    for (const auto& [instance_id, matches] : pool) {
        if (matches.empty()) {
            throw ValidationError("bootstrap: instance '" + instance_id + "' has no matches");
        }
        instances.push_back(&matches);
        for (const Match& m : matches) {
            models.push_back(m.model_a);
            models.push_back(m.model_b);
        }
    }
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());

    std::map<std::string, std::vector<double>> samples;
    for (const std::string& m : models) samples[m].reserve(trials);

    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "bootstrap/trial/" + std::to_string(t)));
        // One match per instance, then a fresh instance order: ELO is
        // order-dependent, so resampling outcomes alone would understate the
        // variance.
        std::vector<Match> sampled;
        sampled.reserve(instances.size());
        for (const auto* matches : instances) {
            sampled.push_back((*matches)[rng.below(matches->size())]);
        }
        rng.shuffle(sampled);
        EloTable table = replay(sampled, cfg);
        for (const std::string& m : models) {
            auto it = table.ratings.find(m);
            samples[m].push_back(it == table.ratings.end() ? cfg.initial_rating : it->second);
        }
    }

    std::map<std::string, std::pair<double, double>> ci;
    for (auto& [model, values] : samples) {
        std::sort(values.begin(), values.end());
        ci[model] = {percentile(values, 0.025), percentile(values, 0.975)};
    }
    return ci;
}

GapReport compare_tables(const EloTable& vanilla, const EloTable& sep) {
    std::vector<std::string> models;
    for (const auto& [model, rating] : vanilla.ratings) models.push_back(model);
    for (const auto& [model, rating] : sep.ratings) {
        if (!vanilla.ratings.count(model)) {
            throw ValidationError("compare_tables: model '" + model +
                                  "' missing from the vanilla table");
        }
    }
    if (sep.ratings.size() != vanilla.ratings.size()) {
        std::string missing;
        for (const std::string& m : models) {
            if (!sep.ratings.count(m)) missing = m;
        }
        throw ValidationError("compare_tables: model '" + missing +
                              "' missing from the separability-weighted table");
    }

    GapReport report;
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (std::size_t j = i + 1; j < models.size(); ++j) {
            GapReport::Row row;
            row.model_a = models[i];
            row.model_b = models[j];
            row.gap_vanilla =
                std::abs(vanilla.ratings.at(models[i]) - vanilla.ratings.at(models[j]));
            row.gap_sep = std::abs(sep.ratings.at(models[i]) - sep.ratings.at(models[j]));
            row.narrowing = row.gap_vanilla - row.gap_sep;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace sepkit
