#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepkit/separability.hpp"

namespace sepkit {

enum class RaterKind { kHuman, kAuto };

RaterKind rater_kind_from_string(std::string_view name);
std::string to_string(RaterKind kind);

// One rater's N preference judgments for one instance and model pair,
// already in canonical (model_a, model_b) orientation:
// -1 prefers model_a, +1 prefers model_b, 0 no preference.
struct RatingSet {
    std::string instance_id;
    std::string rater_id;
    std::string model_a;
    std::string model_b;
    std::vector<int> ratings;
    RaterKind rater_kind = RaterKind::kHuman;
};

// 0 if both -1 and +1 appear, otherwise mean |r|. Note the consequence:
// an all-tie set scores 0.
double consistency(const RatingSet& rs);

// Mean rating; -1/+1 means every judgment favored model_a/model_b.
double preference_strength(const RatingSet& rs);

struct ConsistencyRecord {
    std::string instance_id;
    std::string rater_id;
    std::string model_a;
    std::string model_b;
    double consistency = 0.0;
    double preference_strength = 0.0;
    std::optional<double> delta;  // joined from the separability run
};

ConsistencyRecord make_consistency_record(const RatingSet& rs);

// Unweighted mean of per-rater consistency for a single instance.
double aggregate_instance(const std::vector<ConsistencyRecord>& records);

// One row per separability bin: the empirical distribution over attained
// values, their mean, and the support count.
struct BinnedRow {
    int bin_index = 0;
    Bin bin;
    int support = 0;
    double mean = 0.0;
    std::vector<std::pair<double, double>> proportions;  // value -> proportion
};

// Joins each consistency record to its separability record by (instance,
// model pair) and bins by delta. With aggregate_raters the per-instance mean
// consistency (one value per instance) is binned instead of per-rater values.
std::vector<BinnedRow> binned_consistency(const std::vector<ConsistencyRecord>& records,
                                          const std::vector<SeparabilityRecord>& separability,
                                          int bin_count, BinRange range_mode,
                                          bool aggregate_raters = false);

// Same join and binning over preference strength values (always per rater).
std::vector<BinnedRow> binned_preference_strength(const std::vector<ConsistencyRecord>& records,
                                                  const std::vector<SeparabilityRecord>& separability,
                                                  int bin_count, BinRange range_mode);

}  // namespace sepkit
