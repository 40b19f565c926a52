#include "sepkit/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"
#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            throw ValidationError("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

}  // namespace

void RunConfig::validate() const {
    if (k < 2) throw ValidationError("config: k must be >= 2");
    if (c < 1 || c > k * k)
        throw ValidationError("config: c must lie in [1, k*k] (k=" + std::to_string(k) +
                              ", c=" + std::to_string(c) + ")");
    if (bin_count < 1) throw ValidationError("config: bin_count must be >= 1");
    if (workers < 1) throw ValidationError("config: workers must be >= 1");
    if (!(temperature >= 0.0)) throw ValidationError("config: temperature must be >= 0");
    elo.validate();
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path.string() + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("config " + path.string() + ": top level must be an object");
    }
    reject_unknown_keys(j,
                        {"metric", "k", "temperature", "c", "seed", "bin_count", "bin_range",
                         "workers", "elo"},
                        "top level");

    RunConfig cfg;
    if (j.contains("metric")) cfg.metric = metric_from_string(j.at("metric").get<std::string>());
    if (j.contains("k")) cfg.k = j.at("k").get<int>();
    cfg.c = j.contains("c") ? j.at("c").get<int>() : cfg.k * cfg.k;
    if (j.contains("temperature")) cfg.temperature = j.at("temperature").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bin_count")) cfg.bin_count = j.at("bin_count").get<int>();
    if (j.contains("bin_range"))
        cfg.bin_range = bin_range_from_string(j.at("bin_range").get<std::string>());
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();

    if (j.contains("elo")) {
        const json& e = j.at("elo");
        if (!e.is_object()) throw ValidationError("config: 'elo' must be an object");
        reject_unknown_keys(e,
                            {"base_k", "initial_rating", "sep_weighted", "T", "alpha", "beta",
                             "scale", "base"},
                            "'elo'");
        if (e.contains("base_k")) cfg.elo.base_k = e.at("base_k").get<double>();
        if (e.contains("initial_rating"))
            cfg.elo.initial_rating = e.at("initial_rating").get<double>();
        if (e.contains("sep_weighted")) cfg.elo.sep_weighted = e.at("sep_weighted").get<bool>();
        if (e.contains("T")) cfg.elo.threshold = e.at("T").get<double>();
        if (e.contains("alpha")) cfg.elo.alpha = e.at("alpha").get<double>();
        if (e.contains("beta")) cfg.elo.beta = e.at("beta").get<double>();
        if (e.contains("scale")) cfg.elo.scale = e.at("scale").get<double>();
        if (e.contains("base")) cfg.elo.base = e.at("base").get<double>();
    }
    cfg.validate();
    return cfg;
}

}  // namespace sepkit
