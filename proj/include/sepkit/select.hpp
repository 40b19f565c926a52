#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sepkit/separability.hpp"

namespace sepkit {

enum class SelectMode { kWeighted, kStratified, kTop };

SelectMode select_mode_from_string(std::string_view name);
std::string to_string(SelectMode mode);

// Weight floor for weighted selection: zero-delta instances stay selectable
// with vanishing probability.
inline constexpr double kSelectionEpsilon = 1e-6;

// Picks n instance ids from finalized records.
//   weighted   - without replacement, probability proportional to max(delta, eps)
//   stratified - equal draws per occupied bin, remainder to the highest bins
//   top        - the n largest deltas, ties broken by instance_id
std::vector<std::string> select_instances(const std::vector<SeparabilityRecord>& records,
                                          SelectMode mode, int n, std::uint64_t seed,
                                          int bin_count = 4,
                                          BinRange range_mode = BinRange::kUnit);

}  // namespace sepkit
