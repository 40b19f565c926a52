#include "sepkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/io.hpp"

namespace sepkit {

namespace {

using nlohmann::json;

std::string format_double(double v, const char* fmt = "%10.4f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed on " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed on " + path.string());
}

json binned_rows_to_json(const std::vector<BinnedRow>& rows) {
    json arr = json::array();
    for (const BinnedRow& row : rows) {
        json proportions = json::array();
        for (const auto& [value, proportion] : row.proportions) {
            proportions.push_back({{"value", value}, {"proportion", proportion}});
        }
        arr.push_back({{"bin_index", row.bin_index},
                       {"lo", row.bin.lo},
                       {"hi", row.bin.hi},
                       {"support", row.support},
                       {"mean", row.mean},
                       {"proportions", std::move(proportions)}});
    }
    return arr;
}

}  // namespace

std::string render_histogram(const DistributionSummary& summary, int width) {
    std::string out;
    out += "count=" + std::to_string(summary.count);
    out += " mean=" + format_double(summary.mean, "%.6f");
    out += " variance=" + format_double(summary.variance, "%.6f");
    out += "\n";
    int max_count = 0;
    for (const HistogramBin& bin : summary.histogram) max_count = std::max(max_count, bin.count);
    for (std::size_t i = 0; i < summary.histogram.size(); ++i) {
        const HistogramBin& bin = summary.histogram[i];
        const char* close = i + 1 == summary.histogram.size() ? "]" : ")";
        int bar = max_count == 0
                      ? 0
                      : static_cast<int>(std::llround(static_cast<double>(bin.count) * width /
                                                      max_count));
        out += "[" + format_double(bin.lo) + ", " + format_double(bin.hi) + close + " " +
               format_double(bin.count, "%6.0f") + " |" + std::string(bar, '#') + "\n";
    }
    return out;
}

std::string render_binned_table(const std::vector<BinnedRow>& rows,
                                const std::string& value_label) {
    std::string out = "bin         range                support   mean " + value_label + "\n";
    for (const BinnedRow& row : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-3d [%9.4f, %9.4f%s %8d %10.4f  ",
                      row.bin_index, row.bin.lo, row.bin.hi,
                      &row == &rows.back() ? "]" : ")", row.support, row.mean);
        out += line;
        for (const auto& [value, proportion] : row.proportions) {
            char cell[64];
            std::snprintf(cell, sizeof(cell), "%g:%.3f ", value, proportion);
            out += cell;
        }
        out += "\n";
    }
    return out;
}

std::vector<LeaderboardEntry> leaderboard_from_table(const EloTable& table) {
    std::map<std::string, int> matches;
    for (const RatingChange& change : table.history) ++matches[change.model_id];
    std::vector<LeaderboardEntry> entries;
    entries.reserve(table.ratings.size());
    for (const auto& [model, rating] : table.ratings) {
        LeaderboardEntry entry;
        entry.model_id = model;
        entry.rating = rating;
        entry.matches = matches.count(model) ? matches.at(model) : 0;
        auto it = table.ci.find(model);
        if (it != table.ci.end()) entry.ci = it->second;
        entries.push_back(std::move(entry));
    }
    std::sort(entries.begin(), entries.end(),
              [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
                  if (a.rating != b.rating) return a.rating > b.rating;
                  return a.model_id < b.model_id;
              });
    return entries;
}

void write_leaderboard(const std::filesystem::path& path,
                       const std::vector<LeaderboardEntry>& entries,
                       const std::optional<GapReport>& gaps) {
    json models = json::array();
    for (const LeaderboardEntry& entry : entries) {
        json j{{"model_id", entry.model_id},
               {"rating", entry.rating},
               {"matches", entry.matches}};
        if (entry.ci) j["ci"] = {{"lo", entry.ci->first}, {"hi", entry.ci->second}};
        models.push_back(std::move(j));
    }
    json doc{{"schema", kSchemaTag}, {"models", std::move(models)}};
    if (gaps) {
        json rows = json::array();
        for (const GapReport::Row& row : gaps->rows) {
            rows.push_back({{"model_a", row.model_a},
                            {"model_b", row.model_b},
                            {"gap_vanilla", row.gap_vanilla},
                            {"gap_sep", row.gap_sep},
                            {"narrowing", row.narrowing}});
        }
        doc["gaps"] = std::move(rows);
    }
    write_json_file(path, doc);
}

void write_consistency_records(const std::filesystem::path& path,
                               const std::vector<ConsistencyRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (const ConsistencyRecord& r : records) {
        json j{{"schema", kSchemaTag},
               {"instance_id", r.instance_id},
               {"rater_id", r.rater_id},
               {"model_a", r.model_a},
               {"model_b", r.model_b},
               {"consistency", r.consistency},
               {"preference_strength", r.preference_strength}};
        if (r.delta) j["delta"] = *r.delta;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed on " + path.string());
}

void write_report(const std::filesystem::path& out_dir, const ReportBundle& bundle) {
    if (bundle.records.empty()) {
        throw ValidationError("report: no instances");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    write_separability(out_dir / "separability.jsonl", bundle.records);

    json summary{{"schema", kSchemaTag}};
    if (bundle.config) {
        summary["config"] = {{"metric", to_string(bundle.config->metric)},
                             {"k", bundle.config->k},
                             {"c", bundle.config->c},
                             {"temperature", bundle.config->temperature},
                             {"seed", bundle.config->seed},
                             {"bin_count", bundle.config->bin_count},
                             {"bin_range", to_string(bundle.config->bin_range)}};
    }
    if (bundle.distribution) {
        json hist = json::array();
        for (const HistogramBin& bin : bundle.distribution->histogram) {
            hist.push_back({{"lo", bin.lo}, {"hi", bin.hi}, {"count", bin.count}});
        }
        summary["distribution"] = {{"count", bundle.distribution->count},
                                   {"mean", bundle.distribution->mean},
                                   {"variance", bundle.distribution->variance},
                                   {"bin_count", bundle.distribution->bin_count},
                                   {"range_mode", to_string(bundle.distribution->range_mode)},
                                   {"histogram", std::move(hist)}};
    }
    if (!bundle.binned_consistency_rows.empty()) {
        summary["binned_consistency"] = binned_rows_to_json(bundle.binned_consistency_rows);
    }
    if (!bundle.binned_strength_rows.empty()) {
        summary["binned_preference_strength"] = binned_rows_to_json(bundle.binned_strength_rows);
    }
    write_json_file(out_dir / "summary.json", summary);

    if (bundle.distribution) {
        std::string text = render_histogram(*bundle.distribution);
        if (!bundle.binned_consistency_rows.empty()) {
            text += "\n" + render_binned_table(bundle.binned_consistency_rows, "consistency");
        }
        if (!bundle.binned_strength_rows.empty()) {
            text += "\n" + render_binned_table(bundle.binned_strength_rows, "strength");
        }
        write_text_file(out_dir / "histogram.txt", text);
    }

    if (!bundle.consistency_records.empty()) {
        write_consistency_records(out_dir / "consistency.jsonl", bundle.consistency_records);
    }
    if (!bundle.leaderboard.empty()) {
        write_leaderboard(out_dir / "leaderboard.json", bundle.leaderboard, bundle.gaps);
    }
}

}  // namespace sepkit
