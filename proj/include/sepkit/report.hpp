#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/config.hpp"
#include "sepkit/elo.hpp"
#include "sepkit/ratings.hpp"
#include "sepkit/separability.hpp"

namespace sepkit {

// Fixed-width text histogram, one row per bin, bar length proportional to
// count.
std::string render_histogram(const DistributionSummary& summary, int width = 40);

// Aligned-column rendering of a binned consistency/strength table.
std::string render_binned_table(const std::vector<BinnedRow>& rows,
                                const std::string& value_label);

struct LeaderboardEntry {
    std::string model_id;
    double rating = 0.0;
    int matches = 0;
    std::optional<std::pair<double, double>> ci;
};

std::vector<LeaderboardEntry> leaderboard_from_table(const EloTable& table);

// Everything one run wants persisted. Writers are byte-stable for identical
// inputs and config.
struct ReportBundle {
    std::vector<SeparabilityRecord> records;
    std::optional<DistributionSummary> distribution;
    std::vector<ConsistencyRecord> consistency_records;
    std::vector<BinnedRow> binned_consistency_rows;
    std::vector<BinnedRow> binned_strength_rows;
    std::vector<LeaderboardEntry> leaderboard;
    std::optional<GapReport> gaps;
    const RunConfig* config = nullptr;
};

// Writes separability.jsonl, summary.json, histogram.txt and, when present,
// consistency.jsonl and leaderboard.json into out_dir.
void write_report(const std::filesystem::path& out_dir, const ReportBundle& bundle);

void write_leaderboard(const std::filesystem::path& path,
                       const std::vector<LeaderboardEntry>& entries,
                       const std::optional<GapReport>& gaps);

void write_consistency_records(const std::filesystem::path& path,
                               const std::vector<ConsistencyRecord>& records);

}  // namespace sepkit
