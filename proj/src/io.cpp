#include "sepkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

using nlohmann::json;

// Streams a JSONL file row by row, tracking line numbers for error messages
// and enforcing the schema tag.
class JsonlReader {
public:
    explicit JsonlReader(const std::filesystem::path& path) : path_(path), in_(path) {
        if (!in_) {
            throw IoError("cannot open " + path.string());
        }
    }

    bool next(json& row) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                row = json::parse(line);
            } catch (const json::parse_error& e) {
                fail(std::string("invalid JSON: ") + e.what());
            }
            if (!row.is_object()) fail("row is not a JSON object");
            if (row.value("schema", "") != kSchemaTag) {
                fail(std::string("missing or unsupported schema tag (expected \"") +
                     kSchemaTag + "\")");
            }
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ValidationError(path_.string() + ":" + std::to_string(line_number_) + ": " +
                              message);
    }

    int line() const { return line_number_; }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    int line_number_ = 0;
};

class JsonlWriter {
public:
    explicit JsonlWriter(const std::filesystem::path& path) : path_(path), out_(path) {
        if (!out_) {
            throw IoError("cannot write " + path.string());
        }
    }

    void row(json j) {
        j["schema"] = kSchemaTag;
        out_ << j.dump() << '\n';
        if (!out_) {
            throw IoError("write failed on " + path_.string());
        }
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

const json& field(const JsonlReader& reader, const json& row, const char* name) {
    auto it = row.find(name);
    if (it == row.end()) reader.fail(std::string("missing field '") + name + "'");
    return *it;
}

std::string string_field(const JsonlReader& reader, const json& row, const char* name) {
    const json& v = field(reader, row, name);
    if (!v.is_string()) reader.fail(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

long long int_field(const JsonlReader& reader, const json& row, const char* name) {
    const json& v = field(reader, row, name);
    if (!v.is_number_integer()) reader.fail(std::string("field '") + name + "' must be an integer");
    return v.get<long long>();
}

double number_field(const JsonlReader& reader, const json& row, const char* name) {
    const json& v = field(reader, row, name);
    if (!v.is_number()) reader.fail(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

}  // namespace

std::vector<std::string> Corpus::instance_ids() const {
    std::vector<std::string> ids;
    for (const auto& [key, set] : sets) {
        if (ids.empty() || ids.back() != key.first) ids.push_back(key.first);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<std::string> Corpus::model_ids() const {
    std::vector<std::string> ids;
    for (const auto& [key, set] : sets) ids.push_back(key.second);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

const GenerationSet& Corpus::at(const std::string& instance_id,
                                const std::string& model_id) const {
    auto it = sets.find({instance_id, model_id});
    if (it == sets.end()) {
        throw ValidationError("no generations for instance=" + instance_id +
                              " model=" + model_id);
    }
    return it->second;
}

Corpus load_generations(const std::filesystem::path& path,
                        std::vector<std::string>* warnings) {
    JsonlReader reader(path);
    Corpus corpus;
    std::map<GenerationKey, int> seen;  // key -> line number
    json row;
    while (reader.next(row)) {
        Generation g;
        g.instance_id = string_field(reader, row, "instance_id");
        g.model_id = string_field(reader, row, "model_id");
        g.sample_index = static_cast<int>(int_field(reader, row, "sample_index"));
        g.text = string_field(reader, row, "text");
        if (g.sample_index < 0) reader.fail("sample_index must be >= 0");
        if (row.contains("token_embeddings_ref")) {
            g.token_embeddings_ref = string_field(reader, row, "token_embeddings_ref");
        }
        if (row.contains("entities")) {
            const json& ents = row.at("entities");
            if (!ents.is_array()) reader.fail("field 'entities' must be an array");
            std::set<std::string> entities;
            for (const json& e : ents) {
                if (!e.is_string()) reader.fail("entities must be strings");
                entities.insert(e.get<std::string>());
            }
            g.entities = std::move(entities);
        }

        auto [it, inserted] = seen.emplace(g.key(), reader.line());
        if (!inserted) {
            reader.fail("duplicate generation (instance=" + g.instance_id + " model=" +
                        g.model_id + " sample=" + std::to_string(g.sample_index) +
                        "), first seen at line " + std::to_string(it->second));
        }

        GenerationSet& set = corpus.sets[{g.instance_id, g.model_id}];
        set.instance_id = g.instance_id;
        set.model_id = g.model_id;
        set.samples.push_back(std::move(g));
    }

    for (auto& [key, set] : corpus.sets) {
        std::sort(set.samples.begin(), set.samples.end(),
                  [](const Generation& a, const Generation& b) {
                      return a.sample_index < b.sample_index;
                  });
        for (std::size_t i = 0; i < set.samples.size(); ++i) {
            if (set.samples[i].sample_index != static_cast<int>(i)) {
                throw ValidationError(path.string() + ": instance=" + key.first + " model=" +
                                      key.second + " has non-contiguous sample indices (expected " +
                                      std::to_string(i) + ", found " +
                                      std::to_string(set.samples[i].sample_index) + ")");
            }
        }
        set.decode_params.sample_count = set.size();
    }

    if (warnings) {
        std::map<std::string, std::set<int>> counts;
        for (const auto& [key, set] : corpus.sets) counts[key.first].insert(set.size());
        for (const auto& [instance, ks] : counts) {
            if (ks.size() > 1) {
                std::ostringstream os;
                os << "instance=" << instance << " has ragged sample counts across models (";
                bool first = true;
                for (int k : ks) {
                    if (!first) os << ", ";
                    os << k;
                    first = false;
                }
                os << "); per-set K retained";
                warnings->push_back(os.str());
            }
        }
    }
    return corpus;
}

void write_generations(const std::filesystem::path& path, const std::vector<Generation>& rows) {
    JsonlWriter writer(path);
    for (const Generation& g : rows) {
        json j{{"instance_id", g.instance_id},
               {"model_id", g.model_id},
               {"sample_index", g.sample_index},
               {"text", g.text}};
        if (g.token_embeddings_ref) j["token_embeddings_ref"] = *g.token_embeddings_ref;
        if (g.entities) j["entities"] = *g.entities;
        writer.row(std::move(j));
    }
}

std::vector<RatingSet> load_ratings(const std::filesystem::path& path) {
    JsonlReader reader(path);
    using Key = std::tuple<std::string, std::string, std::string, std::string>;
    struct Pending {
        std::vector<std::pair<int, int>> indexed_ratings;  // (pair_index, rating)
        RaterKind kind = RaterKind::kHuman;
        bool kind_set = false;
    };
    std::map<Key, Pending> groups;

    json row;
    while (reader.next(row)) {
        std::string instance_id = string_field(reader, row, "instance_id");
        std::string rater_id = string_field(reader, row, "rater_id");
        std::string model_a = string_field(reader, row, "model_a");
        std::string model_b = string_field(reader, row, "model_b");
        int pair_index = static_cast<int>(int_field(reader, row, "pair_index"));
        int rating = static_cast<int>(int_field(reader, row, "rating"));
        if (rating < -1 || rating > 1) {
            reader.fail("rating " + std::to_string(rating) + " outside {-1, 0, 1}");
        }
        const json& swapped_field = field(reader, row, "displayed_swapped");
        if (!swapped_field.is_boolean()) reader.fail("displayed_swapped must be a boolean");
        if (swapped_field.get<bool>()) rating = -rating;  // back to canonical orientation

        Pending& pending = groups[{instance_id, rater_id, model_a, model_b}];
        for (const auto& [existing, r] : pending.indexed_ratings) {
            if (existing == pair_index) {
                reader.fail("duplicate rating row (instance=" + instance_id + " rater=" +
                            rater_id + " pair_index=" + std::to_string(pair_index) + ")");
            }
        }
        pending.indexed_ratings.emplace_back(pair_index, rating);
        if (row.contains("rater_kind")) {
            RaterKind kind = rater_kind_from_string(string_field(reader, row, "rater_kind"));
            if (pending.kind_set && kind != pending.kind) {
                reader.fail("conflicting rater_kind for rater=" + rater_id);
            }
            pending.kind = kind;
            pending.kind_set = true;
        }
    }

    std::vector<RatingSet> sets;
    sets.reserve(groups.size());
    for (auto& [key, pending] : groups) {
        std::sort(pending.indexed_ratings.begin(), pending.indexed_ratings.end());
        RatingSet rs;
        rs.instance_id = std::get<0>(key);
        rs.rater_id = std::get<1>(key);
        rs.model_a = std::get<2>(key);
        rs.model_b = std::get<3>(key);
        rs.rater_kind = pending.kind;
        for (std::size_t i = 0; i < pending.indexed_ratings.size(); ++i) {
            const auto& [index, rating] = pending.indexed_ratings[i];
            if (index != static_cast<int>(i)) {
                throw ValidationError(path.string() + ": instance=" + rs.instance_id +
                                      " rater=" + rs.rater_id +
                                      " has a gap in pair_index (expected " + std::to_string(i) +
                                      ", found " + std::to_string(index) + ")");
            }
            rs.ratings.push_back(rating);
        }
        sets.push_back(std::move(rs));
    }
    return sets;
}

void write_ratings(const std::filesystem::path& path, const std::vector<RatingSet>& sets) {
    JsonlWriter writer(path);
    for (const RatingSet& rs : sets) {
        for (std::size_t i = 0; i < rs.ratings.size(); ++i) {
            writer.row(json{{"instance_id", rs.instance_id},
                            {"rater_id", rs.rater_id},
                            {"model_a", rs.model_a},
                            {"model_b", rs.model_b},
                            {"pair_index", static_cast<int>(i)},
                            {"rating", rs.ratings[i]},
                            {"displayed_swapped", false},
                            {"rater_kind", to_string(rs.rater_kind)}});
        }
    }
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
    JsonlReader reader(path);
    EmbeddingStore store;
    json row;
    while (reader.next(row)) {
        const json& vectors = field(reader, row, "vectors");
        if (!vectors.is_array() || vectors.empty()) {
            reader.fail("field 'vectors' must be a nonempty array of vectors");
        }
        TokenEmbeddings emb;
        for (const json& v : vectors) {
            if (!v.is_array() || v.empty()) reader.fail("each vector must be a nonempty array");
            std::vector<double> values;
            values.reserve(v.size());
            for (const json& x : v) {
                if (!x.is_number()) reader.fail("vector entries must be numbers");
                values.push_back(x.get<double>());
            }
            if (emb.vectors.empty()) {
                emb.dimension = values.size();
            } else if (values.size() != emb.dimension) {
                reader.fail("vectors within one row differ in dimension");
            }
            emb.vectors.push_back(std::move(values));
        }
        if (store.dimension == 0) {
            store.dimension = emb.dimension;
        } else if (emb.dimension != store.dimension) {
            reader.fail("embedding dimension " + std::to_string(emb.dimension) +
                        " differs from the store dimension " + std::to_string(store.dimension));
        }
        if (row.contains("ref")) {
            std::string ref = string_field(reader, row, "ref");
            if (!store.by_ref.emplace(ref, std::move(emb)).second) {
                reader.fail("duplicate embedding ref '" + ref + "'");
            }
        } else {
            GenerationKey key{string_field(reader, row, "instance_id"),
                              string_field(reader, row, "model_id"),
                              static_cast<int>(int_field(reader, row, "sample_index"))};
            if (!store.by_id.emplace(key, std::move(emb)).second) {
                reader.fail("duplicate embedding row for instance=" + key.instance_id +
                            " model=" + key.model_id + " sample=" +
                            std::to_string(key.sample_index));
            }
        }
    }
    return store;
}

EntityStore load_entities(const std::filesystem::path& path) {
    JsonlReader reader(path);
    EntityStore store;
    json row;
    while (reader.next(row)) {
        GenerationKey key{string_field(reader, row, "instance_id"),
                          string_field(reader, row, "model_id"),
                          static_cast<int>(int_field(reader, row, "sample_index"))};
        const json& ents = field(reader, row, "entities");
        if (!ents.is_array()) reader.fail("field 'entities' must be an array");
        std::set<std::string> entities;
        for (const json& e : ents) {
            if (!e.is_string()) reader.fail("entities must be strings");
            entities.insert(e.get<std::string>());
        }
        if (!store.by_id.emplace(key, std::move(entities)).second) {
            reader.fail("duplicate entity row for instance=" + key.instance_id + " model=" +
                        key.model_id + " sample=" + std::to_string(key.sample_index));
        }
    }
    return store;
}

std::vector<SeparabilityRecord> load_separability(const std::filesystem::path& path) {
    JsonlReader reader(path);
    std::vector<SeparabilityRecord> records;
    json row;
    while (reader.next(row)) {
        SeparabilityRecord r;
        r.instance_id = string_field(reader, row, "instance_id");
        r.model_a = string_field(reader, row, "model_a");
        r.model_b = string_field(reader, row, "model_b");
        r.metric = metric_from_string(string_field(reader, row, "metric"));
        r.self_a = number_field(reader, row, "self_a");
        r.self_b = number_field(reader, row, "self_b");
        r.cross = number_field(reader, row, "cross");
        r.self_a_n = number_field(reader, row, "self_a_n");
        r.self_b_n = number_field(reader, row, "self_b_n");
        r.cross_n = number_field(reader, row, "cross_n");
        r.delta = number_field(reader, row, "delta");
        r.norm_min = number_field(reader, row, "norm_min");
        r.norm_max = number_field(reader, row, "norm_max");
        const json& degenerate = field(reader, row, "degenerate_norm");
        if (!degenerate.is_boolean()) reader.fail("degenerate_norm must be a boolean");
        r.degenerate_norm = degenerate.get<bool>();
        r.finalized = true;
        records.push_back(std::move(r));
    }
    return records;
}

void write_separability(const std::filesystem::path& path,
                        const std::vector<SeparabilityRecord>& records) {
    JsonlWriter writer(path);
    for (const SeparabilityRecord& r : records) {
        writer.row(json{{"instance_id", r.instance_id},
                        {"model_a", r.model_a},
                        {"model_b", r.model_b},
                        {"metric", to_string(r.metric)},
                        {"self_a", r.self_a},
                        {"self_b", r.self_b},
                        {"cross", r.cross},
                        {"self_a_n", r.self_a_n},
                        {"self_b_n", r.self_b_n},
                        {"cross_n", r.cross_n},
                        {"delta", r.delta},
                        {"norm_min", r.norm_min},
                        {"norm_max", r.norm_max},
                        {"degenerate_norm", r.degenerate_norm}});
    }
}

std::vector<Match> load_matches(const std::filesystem::path& path) {
    JsonlReader reader(path);
    std::vector<Match> matches;
    json row;
    while (reader.next(row)) {
        Match m;
        m.instance_id = string_field(reader, row, "instance_id");
        m.model_a = string_field(reader, row, "model_a");
        m.model_b = string_field(reader, row, "model_b");
        m.outcome_a = number_field(reader, row, "outcome");
        if (m.outcome_a != 0.0 && m.outcome_a != 0.5 && m.outcome_a != 1.0) {
            reader.fail("outcome must be one of 0, 0.5, 1");
        }
        if (row.contains("delta")) {
            double delta = number_field(reader, row, "delta");
            if (!(delta >= -1.0 && delta <= 1.0)) reader.fail("delta outside [-1, 1]");
            m.delta = delta;
        }
        matches.push_back(std::move(m));
    }
    return matches;
}

void write_matches(const std::filesystem::path& path, const std::vector<Match>& matches) {
    JsonlWriter writer(path);
    for (const Match& m : matches) {
        json j{{"instance_id", m.instance_id},
               {"model_a", m.model_a},
               {"model_b", m.model_b},
               {"outcome", m.outcome_a}};
        if (m.delta) j["delta"] = *m.delta;
        writer.row(std::move(j));
    }
}

std::vector<PromptInstance> load_prompts(const std::filesystem::path& path) {
    JsonlReader reader(path);
    std::vector<PromptInstance> prompts;
    std::set<std::string> seen;
    json row;
    while (reader.next(row)) {
        PromptInstance p;
        p.instance_id = string_field(reader, row, "instance_id");
        p.prompt = string_field(reader, row, "prompt");
        if (p.prompt.empty()) reader.fail("empty prompt for instance=" + p.instance_id);
        if (!seen.insert(p.instance_id).second) {
            reader.fail("duplicate prompt for instance=" + p.instance_id);
        }
        prompts.push_back(std::move(p));
    }
    return prompts;
}

}  // namespace sepkit
