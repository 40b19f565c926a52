#include "sepkit/separability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepkit/errors.hpp"

namespace sepkit {

double separability(double self_a_n, double self_b_n, double cross_n) {
    for (double v : {self_a_n, self_b_n, cross_n}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(
                "separability: alignment value " + std::to_string(v) +
                " outside [0, 1]; normalize raw alignments first");
        }
    }
    return std::max(self_a_n, self_b_n) - cross_n;
}

SeparabilityRecord compute_instance(const GenerationSet& set_a,
                                    const GenerationSet& set_b,
                                    const SimilarityScorer& scorer,
                                    int c, std::uint64_t seed) {
    if (set_a.instance_id != set_b.instance_id) {
        throw ValidationError("compute_instance: instance mismatch ('" + set_a.instance_id +
                              "' vs '" + set_b.instance_id + "')");
    }
    SeparabilityRecord record;
    record.instance_id = set_a.instance_id;
    record.model_a = set_a.model_id;
    record.model_b = set_b.model_id;
    record.metric = scorer.metric();
    record.self_a = estimate_self_alignment(set_a, scorer, seed).raw_value;
    record.self_b = estimate_self_alignment(set_b, scorer, seed).raw_value;
    record.cross = estimate_cross_alignment(set_a, set_b, scorer, c, seed).raw_value;
    return record;
}

void finalize_run(std::vector<SeparabilityRecord>& records) {
    if (records.empty()) {
        throw ValidationError("finalize_run: no records");
    }
    for (const SeparabilityRecord& r : records) {
        if (r.model_a != records.front().model_a || r.model_b != records.front().model_b ||
            r.metric != records.front().metric) {
            throw ValidationError(
                "finalize_run: mixed configurations (all records must share one model pair "
                "and metric)");
        }
    }

    // One pooled normalization across every raw value of the run.
    std::vector<double> pool;
    pool.reserve(records.size() * 3);
    for (const SeparabilityRecord& r : records) {
        pool.push_back(r.self_a);
        pool.push_back(r.self_b);
        pool.push_back(r.cross);
    }
    NormalizeResult norm = min_max_normalize(pool);

    for (std::size_t i = 0; i < records.size(); ++i) {
        SeparabilityRecord& r = records[i];
        r.self_a_n = norm.values[3 * i];
        r.self_b_n = norm.values[3 * i + 1];
        r.cross_n = norm.values[3 * i + 2];
        r.norm_min = norm.min;
        r.norm_max = norm.max;
        r.degenerate_norm = norm.degenerate;
        // A degenerate pool means every alignment was equal: the corpus is
        // maximally inseparable.
        r.delta = norm.degenerate ? 0.0 : separability(r.self_a_n, r.self_b_n, r.cross_n);
        r.finalized = true;
    }
}

BinRange bin_range_from_string(std::string_view name) {
    if (name == "observed") return BinRange::kObserved;
    if (name == "unit") return BinRange::kUnit;
    throw ValidationError("unknown bin range mode: '" + std::string(name) +
                          "' (expected observed or unit)");
}

std::string to_string(BinRange mode) {
    return mode == BinRange::kObserved ? "observed" : "unit";
}

std::vector<Bin> make_bins(double lo, double hi, int count) {
    if (count < 1) {
        throw ValidationError("make_bins: bin count must be >= 1");
    }
    if (!(hi >= lo)) {
        throw ValidationError("make_bins: upper bound below lower bound");
    }
    std::vector<Bin> bins;
    bins.reserve(count);
    const double width = (hi - lo) / count;
    for (int i = 0; i < count; ++i) {
        bins.push_back({lo + width * i, i + 1 == count ? hi : lo + width * (i + 1)});
    }
    return bins;
}

int bin_assign(double delta, const std::vector<Bin>& bins) {
    if (bins.empty()) {
        throw ValidationError("bin_assign: no bins");
    }
    if (delta < bins.front().lo || delta > bins.back().hi) {
        throw ValidationError("bin_assign: value " + std::to_string(delta) +
                              " outside total bin range [" + std::to_string(bins.front().lo) +
                              ", " + std::to_string(bins.back().hi) + "]");
    }
    for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
        if (delta < bins[i].hi) return static_cast<int>(i);
    }
    return static_cast<int>(bins.size()) - 1;  // last bin is closed
}

DistributionSummary distribution_stats(const std::vector<SeparabilityRecord>& records,
                                       int bin_count, BinRange range_mode) {
    if (records.empty()) {
        throw ValidationError("distribution_stats: no records");
    }
    if (bin_count < 1) {
        throw ValidationError("distribution_stats: bin count must be >= 1");
    }

    DistributionSummary summary;
    summary.count = static_cast<int>(records.size());
    summary.bin_count = bin_count;
    summary.range_mode = range_mode;

    double sum = 0.0;
    double lo = records.front().delta, hi = records.front().delta;
    for (const SeparabilityRecord& r : records) {
        sum += r.delta;
        lo = std::min(lo, r.delta);
        hi = std::max(hi, r.delta);
    }
    summary.mean = sum / summary.count;
    double sq = 0.0;
    for (const SeparabilityRecord& r : records) {
        const double d = r.delta - summary.mean;
        sq += d * d;
    }
    summary.variance = sq / summary.count;

    if (range_mode == BinRange::kUnit) {
        lo = 0.0;
        hi = 1.0;
    }
    std::vector<Bin> bins = make_bins(lo, hi, bin_count);
    summary.histogram.reserve(bins.size());
    for (const Bin& b : bins) summary.histogram.push_back({b.lo, b.hi, 0});
    for (const SeparabilityRecord& r : records) {
        ++summary.histogram[bin_assign(r.delta, bins)].count;
    }
    return summary;
}

}  // namespace sepkit
