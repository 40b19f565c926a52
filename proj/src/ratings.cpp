#include "sepkit/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

void require_valid(const RatingSet& rs) {
    if (rs.ratings.empty()) {
        throw ValidationError("rating set for instance=" + rs.instance_id + " rater=" +
                              rs.rater_id + " is empty");
    }
    for (int r : rs.ratings) {
        if (r != -1 && r != 0 && r != 1) {
            throw ValidationError("rating " + std::to_string(r) + " for instance=" +
                                  rs.instance_id + " rater=" + rs.rater_id +
                                  " outside {-1, 0, 1}");
        }
    }
}

// Shared join + binning for the consistency and strength tables.
std::vector<BinnedRow> bin_values(const std::vector<std::pair<double, double>>& delta_value_pairs,
                                  int bin_count, BinRange range_mode) {
    double lo = delta_value_pairs.front().first, hi = lo;
    for (const auto& [delta, value] : delta_value_pairs) {
        lo = std::min(lo, delta);
        hi = std::max(hi, delta);
    }
    if (range_mode == BinRange::kUnit) {
        lo = 0.0;
        hi = 1.0;
    }
    std::vector<Bin> bins = make_bins(lo, hi, bin_count);

    std::vector<std::vector<double>> per_bin(bins.size());
    for (const auto& [delta, value] : delta_value_pairs) {
        per_bin[bin_assign(delta, bins)].push_back(value);
    }

    std::vector<BinnedRow> rows;
    rows.reserve(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
        BinnedRow row;
        row.bin_index = static_cast<int>(i);
        row.bin = bins[i];
        row.support = static_cast<int>(per_bin[i].size());
        if (row.support > 0) {
            double sum = 0.0;
            std::map<double, int> counts;
            for (double v : per_bin[i]) {
                sum += v;
                ++counts[v];
            }
            row.mean = sum / row.support;
            for (const auto& [value, count] : counts) {
                row.proportions.emplace_back(value,
                                             static_cast<double>(count) / row.support);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

using JoinKey = std::tuple<std::string, std::string, std::string>;

JoinKey canonical_key(const std::string& instance, const std::string& ma,
                      const std::string& mb) {
    // Delta is symmetric in the model pair, so join order-free.
    return ma <= mb ? JoinKey{instance, ma, mb} : JoinKey{instance, mb, ma};
}

std::map<JoinKey, double> delta_index(const std::vector<SeparabilityRecord>& separability) {
    std::map<JoinKey, double> index;
    for (const SeparabilityRecord& r : separability) {
        if (!r.finalized) {
            throw ValidationError("separability record for instance=" + r.instance_id +
                                  " is not finalized");
        }
        index[canonical_key(r.instance_id, r.model_a, r.model_b)] = r.delta;
    }
    return index;
}

std::vector<std::pair<double, double>> join_deltas(
    const std::vector<ConsistencyRecord>& records,
    const std::vector<SeparabilityRecord>& separability,
    bool use_strength) {
    if (records.empty()) {
        throw ValidationError("binned table: no consistency records");
    }
    auto index = delta_index(separability);
    std::vector<std::pair<double, double>> joined;
    joined.reserve(records.size());
    std::set<std::string> orphans;
    for (const ConsistencyRecord& r : records) {
        double delta;
        if (r.delta) {
            delta = *r.delta;
        } else {
            auto it = index.find(canonical_key(r.instance_id, r.model_a, r.model_b));
            if (it == index.end()) {
                orphans.insert(r.instance_id);
                continue;
            }
            delta = it->second;
        }
        joined.emplace_back(delta, use_strength ? r.preference_strength : r.consistency);
    }
    if (!orphans.empty()) {
        std::string ids;
        for (const std::string& id : orphans) {
            if (!ids.empty()) ids += ", ";
            ids += id;
        }
        throw ValidationError("no separability record for instance(s): " + ids);
    }
    return joined;
}

}  // namespace

RaterKind rater_kind_from_string(std::string_view name) {
    if (name == "human") return RaterKind::kHuman;
    if (name == "auto") return RaterKind::kAuto;
    throw ValidationError("unknown rater kind: '" + std::string(name) +
                          "' (expected human or auto)");
}

std::string to_string(RaterKind kind) {
    return kind == RaterKind::kHuman ? "human" : "auto";
}

double consistency(const RatingSet& rs) {
    require_valid(rs);
    bool has_neg = false, has_pos = false;
    int abs_sum = 0;
    for (int r : rs.ratings) {
        has_neg = has_neg || r == -1;
        has_pos = has_pos || r == 1;
        abs_sum += r < 0 ? -r : r;
    }
    if (has_neg && has_pos) return 0.0;
    return static_cast<double>(abs_sum) / static_cast<double>(rs.ratings.size());
}

double preference_strength(const RatingSet& rs) {
    require_valid(rs);
    int sum = 0;
    for (int r : rs.ratings) sum += r;
    return static_cast<double>(sum) / static_cast<double>(rs.ratings.size());
}

ConsistencyRecord make_consistency_record(const RatingSet& rs) {
    ConsistencyRecord record;
    record.instance_id = rs.instance_id;
    record.rater_id = rs.rater_id;
    record.model_a = rs.model_a;
    record.model_b = rs.model_b;
    record.consistency = consistency(rs);
    record.preference_strength = preference_strength(rs);
    return record;
}

double aggregate_instance(const std::vector<ConsistencyRecord>& records) {
    if (records.empty()) {
        throw ValidationError("aggregate_instance: no records");
    }
    double sum = 0.0;
    for (const ConsistencyRecord& r : records) {
        if (r.instance_id != records.front().instance_id) {
            throw ValidationError("aggregate_instance: mixed instance ids ('" +
                                  records.front().instance_id + "' vs '" + r.instance_id +
                                  "')");
        }
        sum += r.consistency;
    }
    return sum / static_cast<double>(records.size());
}

std::vector<BinnedRow> binned_consistency(const std::vector<ConsistencyRecord>& records,
                                          const std::vector<SeparabilityRecord>& separability,
                                          int bin_count, BinRange range_mode,
                                          bool aggregate_raters) {
    if (!aggregate_raters) {
        return bin_values(join_deltas(records, separability, /*use_strength=*/false),
                          bin_count, range_mode);
    }
    // Fold each instance's raters into one mean-consistency record first.
    std::map<JoinKey, std::vector<ConsistencyRecord>> groups;
    for (const ConsistencyRecord& r : records) {
        groups[canonical_key(r.instance_id, r.model_a, r.model_b)].push_back(r);
    }
    std::vector<ConsistencyRecord> aggregated;
    aggregated.reserve(groups.size());
    for (const auto& [key, group] : groups) {
        ConsistencyRecord record = group.front();
        record.rater_id = "(mean)";
        record.consistency = aggregate_instance(group);
        aggregated.push_back(std::move(record));
    }
    return bin_values(join_deltas(aggregated, separability, /*use_strength=*/false),
                      bin_count, range_mode);
}

std::vector<BinnedRow> binned_preference_strength(
    const std::vector<ConsistencyRecord>& records,
    const std::vector<SeparabilityRecord>& separability,
    int bin_count, BinRange range_mode) {
    return bin_values(join_deltas(records, separability, /*use_strength=*/true),
                      bin_count, range_mode);
}

}  // namespace sepkit
