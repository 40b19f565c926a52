#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepkit/alignment.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

// Per-instance separability for one model pair. compute_instance fills the
// raw alignments; finalize_run pools the raw values across the run,
// normalizes and stamps the delta.
struct SeparabilityRecord {
    std::string instance_id;
    std::string model_a;
    std::string model_b;
    Metric metric = Metric::kRouge1F1;
    double self_a = 0.0;
    double self_b = 0.0;
    double cross = 0.0;
    double self_a_n = 0.0;
    double self_b_n = 0.0;
    double cross_n = 0.0;
    double delta = 0.0;
    double norm_min = 0.0;
    double norm_max = 0.0;
    bool degenerate_norm = false;
    bool finalized = false;
};

// max(self_a_n, self_b_n) - cross_n. Inputs must already be normalized into
// [0, 1]; anything outside throws ValidationError.
double separability(double self_a_n, double self_b_n, double cross_n);

// Raw self/self/cross alignments for one instance. The subsample stream for
// the cross estimate derives from `seed`.
SeparabilityRecord compute_instance(const GenerationSet& set_a,
                                    const GenerationSet& set_b,
                                    const SimilarityScorer& scorer,
                                    int c, std::uint64_t seed);

// Pools every raw value of the run, min-max normalizes once, and computes
// deltas. All records must share the same model pair and metric. A degenerate
// pool (all values equal) forces every delta to 0.
void finalize_run(std::vector<SeparabilityRecord>& records);

enum class BinRange { kObserved, kUnit };

BinRange bin_range_from_string(std::string_view name);
std::string to_string(BinRange mode);

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
};

// `count` contiguous equal-width bins spanning [lo, hi].
std::vector<Bin> make_bins(double lo, double hi, int count);

// Half-open bins [lo, hi), last bin closed. Values outside the total range
// throw ValidationError.
int bin_assign(double delta, const std::vector<Bin>& bins);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

struct DistributionSummary {
    int count = 0;
    double mean = 0.0;
    double variance = 0.0;  // population variance
    int bin_count = 0;
    BinRange range_mode = BinRange::kObserved;
    std::vector<HistogramBin> histogram;
};

DistributionSummary distribution_stats(const std::vector<SeparabilityRecord>& records,
                                       int bin_count,
                                       BinRange range_mode = BinRange::kObserved);

}  // namespace sepkit
