#include <algorithm>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/select.hpp"

using namespace sepkit;

namespace {

SeparabilityRecord rec(const std::string& instance, double delta) {
    SeparabilityRecord r;
    r.instance_id = instance;
    r.model_a = "m1";
    r.model_b = "m2";
    r.delta = delta;
    r.finalized = true;
    return r;
}

}  // namespace

TEST_CASE("top mode picks the largest deltas with id tiebreaks") {
    std::vector<SeparabilityRecord> records{rec("a", 0.9), rec("b", 0.1), rec("c", 0.5)};
    CHECK(select_instances(records, SelectMode::kTop, 2, 0) ==
          std::vector<std::string>{"a", "c"});

    std::vector<SeparabilityRecord> ties{rec("z", 0.5), rec("a", 0.5), rec("m", 0.5)};
    CHECK(select_instances(ties, SelectMode::kTop, 2, 0) == std::vector<std::string>{"a", "m"});
}

TEST_CASE("stratified mode draws one per occupied bin") {
    std::vector<SeparabilityRecord> records{rec("a", 0.1), rec("b", 0.3), rec("c", 0.6),
                                            rec("d", 0.9)};
    auto picked = select_instances(records, SelectMode::kStratified, 4, 0, 4, BinRange::kUnit);
    std::sort(picked.begin(), picked.end());
    CHECK(picked == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("stratified mode fills deficits from high bins") {
    // Only two occupied bins; quota rounds but n=3 must still come back.
    std::vector<SeparabilityRecord> records{rec("a", 0.1), rec("b", 0.12), rec("c", 0.9)};
    auto picked = select_instances(records, SelectMode::kStratified, 3, 1, 4, BinRange::kUnit);
    CHECK(picked.size() == 3);
    std::sort(picked.begin(), picked.end());
    CHECK(picked == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("weighted mode selects high deltas almost always") {
    std::vector<SeparabilityRecord> records{rec("hot", 1.0)};
    for (int i = 0; i < 9; ++i) records.push_back(rec("cold" + std::to_string(i), 0.0));
    int hot = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto picked = select_instances(records, SelectMode::kWeighted, 1, seed);
        hot += picked[0] == "hot" ? 1 : 0;
    }
    // Weight ratio is 1 : 9e-6, so misses should be vanishingly rare.
    CHECK(hot > 950);
}

TEST_CASE("weighted mode samples without replacement") {
    std::vector<SeparabilityRecord> records{rec("a", 0.5), rec("b", 0.5), rec("c", 0.5)};
    auto picked = select_instances(records, SelectMode::kWeighted, 3, 17);
    std::sort(picked.begin(), picked.end());
    CHECK(picked == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("weighted mode refuses all-nonpositive deltas") {
    std::vector<SeparabilityRecord> records{rec("a", 0.0), rec("b", -0.2)};
    CHECK_THROWS_WITH_AS(select_instances(records, SelectMode::kWeighted, 1, 0),
                         doctest::Contains("stratified"), ValidationError);
}

TEST_CASE("selection validation") {
    std::vector<SeparabilityRecord> records{rec("a", 0.5)};
    CHECK_THROWS_AS(select_instances(records, SelectMode::kTop, 2, 0), ValidationError);
    SeparabilityRecord unfinalized = rec("b", 0.5);
    unfinalized.finalized = false;
    CHECK_THROWS_AS(select_instances({unfinalized}, SelectMode::kTop, 1, 0), ValidationError);
    CHECK_THROWS_AS(select_mode_from_string("best"), ValidationError);
}

TEST_CASE("selection is seed-deterministic") {
    std::vector<SeparabilityRecord> records;
    for (int i = 0; i < 20; ++i) records.push_back(rec("i" + std::to_string(i), (i % 10) / 10.0));
    for (SelectMode mode : {SelectMode::kWeighted, SelectMode::kStratified}) {
        CHECK(select_instances(records, mode, 5, 42) == select_instances(records, mode, 5, 42));
    }
}
