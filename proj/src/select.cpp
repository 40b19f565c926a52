#include "sepkit/select.hpp"

#include <algorithm>
#include <cmath>

#include "sepkit/errors.hpp"
#include "sepkit/rng.hpp"

namespace sepkit {

namespace {

struct Candidate {
    std::string instance_id;
    double delta = 0.0;
};

std::vector<Candidate> sorted_candidates(const std::vector<SeparabilityRecord>& records) {
    std::vector<Candidate> candidates;
    candidates.reserve(records.size());
    for (const SeparabilityRecord& r : records) {
        if (!r.finalized) {
            throw ValidationError("select_instances: record for instance=" + r.instance_id +
                                  " is not finalized");
        }
        candidates.push_back({r.instance_id, r.delta});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  return a.instance_id < b.instance_id;
              });
    return candidates;
}

std::vector<std::string> select_weighted(std::vector<Candidate> candidates, int n, Rng& rng) {
    bool any_positive = false;
    for (const Candidate& c : candidates) any_positive = any_positive || c.delta > 0.0;
    if (!any_positive) {
        throw ValidationError(
            "weighted selection: no instance has positive separability; use stratified mode");
    }
    std::vector<std::string> picked;
    picked.reserve(n);
    for (int round = 0; round < n; ++round) {
        double total = 0.0;
        for (const Candidate& c : candidates) total += std::max(c.delta, kSelectionEpsilon);
        double x = rng.uniform01() * total;
        std::size_t chosen = candidates.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            acc += std::max(candidates[i].delta, kSelectionEpsilon);
            if (x < acc) {
                chosen = i;
                break;
            }
        }
        picked.push_back(candidates[chosen].instance_id);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(chosen));
    }
    return picked;
}

std::vector<std::string> select_stratified(const std::vector<Candidate>& candidates, int n,
                                           Rng& rng, int bin_count, BinRange range_mode) {
    double lo = candidates.front().delta, hi = lo;
    for (const Candidate& c : candidates) {
        lo = std::min(lo, c.delta);
        hi = std::max(hi, c.delta);
    }
    if (range_mode == BinRange::kUnit) {
        lo = 0.0;
        hi = 1.0;
    }
    std::vector<Bin> bins = make_bins(lo, hi, bin_count);
    std::vector<std::vector<Candidate>> per_bin(bins.size());
    for (const Candidate& c : candidates) per_bin[bin_assign(c.delta, bins)].push_back(c);

    // Occupied bins, highest first: the remainder and any deficit go to the
    // high-separability end.
    std::vector<std::size_t> occupied;
    for (std::size_t i = per_bin.size(); i-- > 0;) {
        if (!per_bin[i].empty()) occupied.push_back(i);
    }
    const int base_quota = n / static_cast<int>(occupied.size());
    int remainder = n % static_cast<int>(occupied.size());

    std::vector<std::string> picked;
    picked.reserve(n);
    int deficit = 0;
    for (std::size_t b : occupied) {
        int quota = base_quota + (remainder > 0 ? 1 : 0);
        if (remainder > 0) --remainder;
        quota += deficit;
        deficit = 0;
        auto& pool = per_bin[b];
        int take = std::min<int>(quota, static_cast<int>(pool.size()));
        for (std::size_t idx : rng.choose(pool.size(), static_cast<std::size_t>(take))) {
            picked.push_back(pool[idx].instance_id);
        }
        deficit = quota - take;
    }
    // Bins ran dry: fill from the largest remaining deltas.
    if (deficit > 0) {
        std::vector<Candidate> rest;
        for (const Candidate& c : candidates) {
            if (std::find(picked.begin(), picked.end(), c.instance_id) == picked.end()) {
                rest.push_back(c);
            }
        }
        std::sort(rest.begin(), rest.end(), [](const Candidate& a, const Candidate& b) {
            return a.delta != b.delta ? a.delta > b.delta : a.instance_id < b.instance_id;
        });
        for (int i = 0; i < deficit; ++i) picked.push_back(rest[i].instance_id);
    }
    return picked;
}

std::vector<std::string> select_top(std::vector<Candidate> candidates, int n) {
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.delta != b.delta ? a.delta > b.delta : a.instance_id < b.instance_id;
    });
    std::vector<std::string> picked;
    picked.reserve(n);
    for (int i = 0; i < n; ++i) picked.push_back(candidates[i].instance_id);
    return picked;
}

}  // namespace

SelectMode select_mode_from_string(std::string_view name) {
    if (name == "weighted") return SelectMode::kWeighted;
    if (name == "stratified") return SelectMode::kStratified;
    if (name == "top") return SelectMode::kTop;
    throw ValidationError("unknown selection mode: '" + std::string(name) +
                          "' (expected weighted, stratified or top)");
}

std::string to_string(SelectMode mode) {
    switch (mode) {
        case SelectMode::kWeighted: return "weighted";
        case SelectMode::kStratified: return "stratified";
        case SelectMode::kTop: return "top";
    }
    throw ValidationError("unknown selection mode");
}

std::vector<std::string> select_instances(const std::vector<SeparabilityRecord>& records,
                                          SelectMode mode, int n, std::uint64_t seed,
                                          int bin_count, BinRange range_mode) {
    if (n < 0 || n > static_cast<int>(records.size())) {
        throw ValidationError("select_instances: n=" + std::to_string(n) +
                              " exceeds the record count " + std::to_string(records.size()));
    }
    std::vector<Candidate> candidates = sorted_candidates(records);
    Rng rng(derive_seed(seed, "select"));
    switch (mode) {
        case SelectMode::kWeighted: return select_weighted(std::move(candidates), n, rng);
        case SelectMode::kStratified:
            return select_stratified(candidates, n, rng, bin_count, range_mode);
        case SelectMode::kTop: return select_top(std::move(candidates), n);
    }
    throw ValidationError("unknown selection mode");
}

}  // namespace sepkit
