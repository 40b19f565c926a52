// Command-line front end: sample, align, sep, consistency, elo, select, report.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sepkit/config.hpp"
#include "sepkit/elo.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/io.hpp"
#include "sepkit/ratings.hpp"
#include "sepkit/report.hpp"
#include "sepkit/rng.hpp"
#include "sepkit/run.hpp"
#include "sepkit/sampler.hpp"
#include "sepkit/select.hpp"

namespace {

using namespace sepkit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPartialSampling = 2;
constexpr int kExitIo = 3;

struct GlobalFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string metric;
    int k = 0;
    double temperature = -1.0;
    int c = 0;
    int bins = 0;
    std::string bin_range;
    int workers = 0;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* metric_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* temperature_opt = nullptr;
    CLI::Option* c_opt = nullptr;
    CLI::Option* bins_opt = nullptr;
    CLI::Option* bin_range_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
};

struct EloFlags {
    bool sep_weighted = false;
    double threshold = 0.4;
    double alpha = 2.0;
    double beta = 6.0;
    double base_k = 4.0;
    double initial_rating = 1000.0;
    int bootstrap_trials = 100;
    bool no_bootstrap = false;
    bool shuffle_replay = false;

    CLI::Option* threshold_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* base_k_opt = nullptr;
    CLI::Option* initial_opt = nullptr;
};

void add_global_flags(CLI::App& app, GlobalFlags& flags) {
    app.add_option("--config", flags.config_path, "JSON run-config file");
    flags.seed_opt = app.add_option("--seed", flags.seed, "root seed for every random stream");
    flags.metric_opt = app.add_option("--metric", flags.metric,
                                      "similarity metric (rouge1-f1, bleu, bertscore-la, "
                                      "embed-cosine, entity-jaccard)");
    flags.k_opt = app.add_option("--k", flags.k, "samples per model per instance");
    flags.temperature_opt =
        app.add_option("--temperature", flags.temperature, "sampling temperature");
    flags.c_opt = app.add_option("--c", flags.c, "cross-alignment comparisons (default k*k)");
    flags.bins_opt = app.add_option("--bins", flags.bins, "bin count for histograms and tables");
    flags.bin_range_opt = app.add_option("--bin-range", flags.bin_range,
                                         "bin range mode: observed or unit");
    flags.workers_opt = app.add_option("--workers", flags.workers,
                                       "parallel workers for per-instance computation");
}

void add_elo_flags(CLI::App& cmd, EloFlags& flags) {
    cmd.add_flag("--sep-weighted", flags.sep_weighted,
                 "weight K by each instance's separability");
    flags.threshold_opt = cmd.add_option("--T", flags.threshold,
                                         "separability threshold where K is unchanged");
    flags.alpha_opt = cmd.add_option("--alpha", flags.alpha, "sep-weight ceiling multiplier");
    flags.beta_opt = cmd.add_option("--beta", flags.beta, "sep-weight steepness");
    flags.base_k_opt = cmd.add_option("--base-k", flags.base_k, "base K factor");
    flags.initial_opt =
        cmd.add_option("--initial-rating", flags.initial_rating, "starting rating");
    cmd.add_option("--bootstrap-trials", flags.bootstrap_trials,
                   "bootstrap trials for confidence intervals");
    cmd.add_flag("--no-bootstrap", flags.no_bootstrap, "skip confidence intervals");
    cmd.add_flag("--shuffle-replay", flags.shuffle_replay,
                 "shuffle match order (seeded) before the replay instead of replaying in "
                 "collection order");
}

RunConfig build_config(const GlobalFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = load_run_config(flags.config_path);
    bool k_changed = false;
    if (flags.k_opt->count()) {
        cfg.k = flags.k;
        k_changed = true;
    }
    if (flags.c_opt->count()) {
        cfg.c = flags.c;
    } else if (k_changed && flags.config_path.empty()) {
        cfg.c = cfg.k * cfg.k;
    }
    if (flags.seed_opt->count()) cfg.seed = flags.seed;
    if (flags.metric_opt->count()) cfg.metric = metric_from_string(flags.metric);
    if (flags.temperature_opt->count()) cfg.temperature = flags.temperature;
    if (flags.bins_opt->count()) cfg.bin_count = flags.bins;
    if (flags.bin_range_opt->count()) cfg.bin_range = bin_range_from_string(flags.bin_range);
    if (flags.workers_opt->count()) cfg.workers = flags.workers;
    cfg.validate();
    return cfg;
}

void apply_elo_flags(RunConfig& cfg, const EloFlags& flags) {
    cfg.elo.sep_weighted = flags.sep_weighted || cfg.elo.sep_weighted;
    if (flags.threshold_opt->count()) cfg.elo.threshold = flags.threshold;
    if (flags.alpha_opt->count()) cfg.elo.alpha = flags.alpha;
    if (flags.beta_opt->count()) cfg.elo.beta = flags.beta;
    if (flags.base_k_opt->count()) cfg.elo.base_k = flags.base_k;
    if (flags.initial_opt->count()) cfg.elo.initial_rating = flags.initial_rating;
    cfg.elo.validate();
}

struct AuxStores {
    EmbeddingStore embeddings;
    EntityStore entities;
    bool have_embeddings = false;
    bool have_entities = false;
};

AuxStores load_aux(const std::string& embeddings_path, const std::string& entities_path,
                   Metric metric) {
    AuxStores aux;
    if (!embeddings_path.empty()) {
        aux.embeddings = load_embeddings(embeddings_path);
        aux.have_embeddings = true;
    }
    if (!entities_path.empty()) {
        aux.entities = load_entities(entities_path);
        aux.have_entities = true;
    }
    if (metric == Metric::kEntityJaccard && !aux.have_entities) {
        std::cerr << "note: no entities file supplied; the capitalization-based fallback "
                     "extractor is in effect\n";
    }
    return aux;
}

SimilarityScorer make_scorer(const RunConfig& cfg, const AuxStores& aux) {
    return SimilarityScorer(cfg.metric, aux.have_embeddings ? &aux.embeddings : nullptr,
                            aux.have_entities ? &aux.entities : nullptr,
                            /*entity_fallback=*/!aux.have_entities);
}

Corpus load_corpus(const std::string& path) {
    std::vector<std::string> warnings;
    Corpus corpus = load_generations(path, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return corpus;
}

// Ratings become matches in deterministic (instance, rater, pair_index) order:
// -1 is a win for model_a, +1 for model_b, 0 a tie.
std::vector<Match> matches_from_ratings(const std::vector<RatingSet>& sets) {
    std::vector<Match> matches;
    for (const RatingSet& rs : sets) {
        for (int rating : rs.ratings) {
            Match m;
            m.instance_id = rs.instance_id;
            m.model_a = rs.model_a;
            m.model_b = rs.model_b;
            m.outcome_a = rating < 0 ? 1.0 : rating > 0 ? 0.0 : 0.5;
            matches.push_back(std::move(m));
        }
    }
    return matches;
}

void join_match_deltas(std::vector<Match>& matches,
                       const std::vector<SeparabilityRecord>& records) {
    std::map<std::tuple<std::string, std::string, std::string>, double> index;
    for (const SeparabilityRecord& r : records) {
        auto key = r.model_a <= r.model_b
                       ? std::make_tuple(r.instance_id, r.model_a, r.model_b)
                       : std::make_tuple(r.instance_id, r.model_b, r.model_a);
        index[key] = r.delta;
    }
    for (Match& m : matches) {
        if (m.delta) continue;
        auto key = m.model_a <= m.model_b
                       ? std::make_tuple(m.instance_id, m.model_a, m.model_b)
                       : std::make_tuple(m.instance_id, m.model_b, m.model_a);
        auto it = index.find(key);
        if (it != index.end()) m.delta = it->second;
    }
}

std::map<std::string, std::vector<Match>> pool_by_instance(const std::vector<Match>& matches) {
    std::map<std::string, std::vector<Match>> pool;
    for (const Match& m : matches) pool[m.instance_id].push_back(m);
    return pool;
}

json binned_rows_json(const std::vector<BinnedRow>& rows) {
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

void write_binned_tables(const std::filesystem::path& out_dir,
                         const std::vector<BinnedRow>& consistency_rows,
                         const std::vector<BinnedRow>& strength_rows) {
    json doc{{"schema", kSchemaTag},
             {"binned_consistency", binned_rows_json(consistency_rows)},
             {"binned_preference_strength", binned_rows_json(strength_rows)}};
    std::ofstream json_out(out_dir / "binned.json");
    if (!json_out) throw IoError("cannot write " + (out_dir / "binned.json").string());
    json_out << doc.dump(2) << '\n';

    std::string text = render_binned_table(consistency_rows, "consistency");
    text += "\n" + render_binned_table(strength_rows, "strength");
    std::ofstream text_out(out_dir / "binned.txt");
    if (!text_out) throw IoError("cannot write " + (out_dir / "binned.txt").string());
    text_out << text;
}

// --- subcommand bodies ------------------------------------------------------

int run_sample(const RunConfig& cfg, const std::string& prompts_path,
               const std::string& out_path, SamplerEndpoint endpoint) {
    auto prompts = load_prompts(prompts_path);
    SampleOutcome outcome = sample_generations(endpoint, prompts, cfg);
    write_generations(out_path, outcome.rows);
    if (outcome.retries > 0) {
        std::cerr << "note: " << outcome.retries << " request(s) were retried\n";
    }
    if (!outcome.failures.empty()) {
        std::filesystem::path failures_path = out_path + ".failures.jsonl";
        std::ofstream out(failures_path);
        if (!out) throw IoError("cannot write " + failures_path.string());
        for (const SampleFailure& f : outcome.failures) {
            out << json{{"schema", kSchemaTag},
                        {"instance_id", f.instance_id},
                        {"error", f.message}}
                       .dump()
                << '\n';
            std::cerr << "error: instance " << f.instance_id << ": " << f.message << "\n";
        }
        std::cerr << outcome.failures.size() << " instance(s) failed; see "
                  << failures_path.string() << "\n";
        return kExitPartialSampling;
    }
    return kExitOk;
}

int run_align(const RunConfig& cfg, const std::string& generations_path,
              const std::string& model_a, const std::string& model_b,
              const std::string& embeddings_path, const std::string& entities_path,
              const std::string& out_path) {
    Corpus corpus = load_corpus(generations_path);
    if (corpus.empty()) throw ValidationError("no instances in " + generations_path);
    AuxStores aux = load_aux(embeddings_path, entities_path, cfg.metric);
    SimilarityScorer scorer = make_scorer(cfg, aux);
    ModelPair pair = resolve_model_pair(corpus, model_a, model_b);
    auto estimates = alignment_run(corpus, pair, scorer, cfg);

    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    for (const AlignmentEstimate& e : estimates) {
        json j{{"schema", kSchemaTag},
               {"kind", e.kind == AlignmentKind::kSelf ? "self" : "cross"},
               {"instance_id", e.instance_id},
               {"model_a", e.model_a},
               {"model_b", e.model_b},
               {"metric", to_string(e.metric)},
               {"raw_value", e.raw_value},
               {"compared_pairs", e.compared_pairs}};
        if (e.rng_seed) j["rng_seed"] = *e.rng_seed;
        out << j.dump() << '\n';
    }
    return kExitOk;
}

std::vector<SeparabilityRecord> compute_separability(const RunConfig& cfg,
                                                     const std::string& generations_path,
                                                     const std::string& model_a,
                                                     const std::string& model_b,
                                                     const std::string& embeddings_path,
                                                     const std::string& entities_path) {
    Corpus corpus = load_corpus(generations_path);
    if (corpus.empty()) throw ValidationError("no instances in " + generations_path);
    AuxStores aux = load_aux(embeddings_path, entities_path, cfg.metric);
    SimilarityScorer scorer = make_scorer(cfg, aux);
    ModelPair pair = resolve_model_pair(corpus, model_a, model_b);
    return separability_run(corpus, pair, scorer, cfg);
}

int run_consistency(const RunConfig& cfg, const std::string& ratings_path,
                    const std::string& separability_path, const std::string& out_dir,
                    bool aggregate_raters) {
    auto rating_sets = load_ratings(ratings_path);
    if (rating_sets.empty()) throw ValidationError("no rating sets in " + ratings_path);
    auto separability = load_separability(separability_path);
    std::vector<ConsistencyRecord> records;
    records.reserve(rating_sets.size());
    for (const RatingSet& rs : rating_sets) records.push_back(make_consistency_record(rs));

    auto consistency_rows = binned_consistency(records, separability, cfg.bin_count,
                                               cfg.bin_range, aggregate_raters);
    auto strength_rows =
        binned_preference_strength(records, separability, cfg.bin_count, cfg.bin_range);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    write_consistency_records(std::filesystem::path(out_dir) / "consistency.jsonl", records);
    write_binned_tables(out_dir, consistency_rows, strength_rows);
    std::cout << render_binned_table(consistency_rows, "consistency");
    return kExitOk;
}

int run_elo(const RunConfig& cfg, const EloFlags& flags, const std::string& matches_path,
            const std::string& ratings_path, const std::string& separability_path,
            const std::string& out_path) {
    std::vector<Match> matches;
    if (!matches_path.empty()) {
        matches = load_matches(matches_path);
    } else if (!ratings_path.empty()) {
        matches = matches_from_ratings(load_ratings(ratings_path));
    } else {
        throw ValidationError("elo needs --matches or --ratings");
    }
    if (matches.empty()) throw ValidationError("no matches to replay");
    if (!separability_path.empty()) {
        join_match_deltas(matches, load_separability(separability_path));
    }
    if (flags.shuffle_replay) {
        Rng rng(derive_seed(cfg.seed, "replay-shuffle"));
        rng.shuffle(matches);
    }

    EloTable table = replay(matches, cfg.elo);
    std::optional<GapReport> gaps;
    if (cfg.elo.sep_weighted) {
        EloConfig vanilla = cfg.elo;
        vanilla.sep_weighted = false;
        gaps = compare_tables(replay(matches, vanilla), table);
    }
    if (!flags.no_bootstrap) {
        table.ci = bootstrap_ci(pool_by_instance(matches), flags.bootstrap_trials, cfg.seed,
                                cfg.elo);
    }

    auto entries = leaderboard_from_table(table);
    write_leaderboard(out_path, entries, gaps);
    for (const LeaderboardEntry& e : entries) {
        std::printf("%20s %10.2f", e.model_id.c_str(), e.rating);
        if (e.ci) std::printf("  [%10.2f, %10.2f]", e.ci->first, e.ci->second);
        std::printf("\n");
    }
    return kExitOk;
}

int run_select(const RunConfig& cfg, const std::string& separability_path,
               const std::string& mode, int n, const std::string& out_path) {
    auto records = load_separability(separability_path);
    auto picked = select_instances(records, select_mode_from_string(mode), n, cfg.seed,
                                   cfg.bin_count, cfg.bin_range);
    if (out_path.empty()) {
        for (const std::string& id : picked) std::cout << id << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        for (const std::string& id : picked) out << id << '\n';
    }
    return kExitOk;
}

int run_report(const RunConfig& cfg, const EloFlags& flags,
               const std::string& generations_path, const std::string& ratings_path,
               const std::string& matches_path, const std::string& model_a,
               const std::string& model_b, const std::string& embeddings_path,
               const std::string& entities_path, const std::string& out_dir) {
    ReportBundle bundle;
    bundle.config = &cfg;
    bundle.records = compute_separability(cfg, generations_path, model_a, model_b,
                                          embeddings_path, entities_path);
    bundle.distribution = distribution_stats(bundle.records, cfg.bin_count, cfg.bin_range);

    std::vector<RatingSet> rating_sets;
    if (!ratings_path.empty()) {
        rating_sets = load_ratings(ratings_path);
        for (const RatingSet& rs : rating_sets) {
            bundle.consistency_records.push_back(make_consistency_record(rs));
        }
        bundle.binned_consistency_rows = binned_consistency(
            bundle.consistency_records, bundle.records, cfg.bin_count, cfg.bin_range);
        bundle.binned_strength_rows = binned_preference_strength(
            bundle.consistency_records, bundle.records, cfg.bin_count, cfg.bin_range);
    }

    std::vector<Match> matches;
    if (!matches_path.empty()) {
        matches = load_matches(matches_path);
    } else if (!rating_sets.empty()) {
        matches = matches_from_ratings(rating_sets);
    }
    if (!matches.empty()) {
        join_match_deltas(matches, bundle.records);
        EloTable table = replay(matches, cfg.elo);
        if (cfg.elo.sep_weighted) {
            EloConfig vanilla = cfg.elo;
            vanilla.sep_weighted = false;
            bundle.gaps = compare_tables(replay(matches, vanilla), table);
        }
        if (!flags.no_bootstrap) {
            table.ci = bootstrap_ci(pool_by_instance(matches), flags.bootstrap_trials, cfg.seed,
                                    cfg.elo);
        }
        bundle.leaderboard = leaderboard_from_table(table);
    }

    write_report(out_dir, bundle);
    std::cout << render_histogram(*bundle.distribution);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separability, rating consistency and separability-weighted ELO for "
                 "generative-model comparisons"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags globals;
    add_global_flags(app, globals);

    // sample
    auto* sample_cmd = app.add_subcommand(
        "sample", "sample K generations per prompt from a chat-completions endpoint");
    std::string prompts_path, sample_out, endpoint_url, model_name, api_key_env;
    SamplerEndpoint endpoint;
    sample_cmd->add_option("--prompts", prompts_path, "prompts JSONL")->required();
    sample_cmd->add_option("--out", sample_out, "output generations JSONL")->required();
    sample_cmd->add_option("--endpoint", endpoint_url, "base URL, e.g. http://host:port/v1")
        ->required();
    sample_cmd->add_option("--model", model_name, "model name sent to the endpoint")->required();
    sample_cmd->add_option("--api-key-env", api_key_env,
                           "environment variable holding the bearer token");
    sample_cmd->add_option("--max-retries", endpoint.max_retries, "retries per request");
    sample_cmd->add_option("--timeout", endpoint.timeout_seconds, "request timeout in seconds");
    sample_cmd->add_option("--backoff-ms", endpoint.backoff_ms, "initial retry backoff");
    sample_cmd->add_flag("--one-call-per-sample", endpoint.one_call_per_sample,
                         "issue k single-sample calls instead of one n=k call");

    // align
    auto* align_cmd =
        app.add_subcommand("align", "raw self- and cross-alignment estimates per instance");
    std::string generations_path, align_out, model_a, model_b, embeddings_path, entities_path;
    align_cmd->add_option("--generations", generations_path, "generations JSONL")->required();
    align_cmd->add_option("--out", align_out, "output alignments JSONL")->required();
    align_cmd->add_option("--model-a", model_a, "first model id");
    align_cmd->add_option("--model-b", model_b, "second model id");
    align_cmd->add_option("--embeddings", embeddings_path, "token embeddings JSONL");
    align_cmd->add_option("--entities", entities_path, "entity annotations JSONL");

    // sep
    auto* sep_cmd = app.add_subcommand("sep", "per-instance separability records");
    std::string sep_generations, sep_out, sep_model_a, sep_model_b, sep_embeddings, sep_entities;
    sep_cmd->add_option("--generations", sep_generations, "generations JSONL")->required();
    sep_cmd->add_option("--out", sep_out, "output separability JSONL")->required();
    sep_cmd->add_option("--model-a", sep_model_a, "first model id");
    sep_cmd->add_option("--model-b", sep_model_b, "second model id");
    sep_cmd->add_option("--embeddings", sep_embeddings, "token embeddings JSONL");
    sep_cmd->add_option("--entities", sep_entities, "entity annotations JSONL");

    // consistency
    auto* consistency_cmd =
        app.add_subcommand("consistency", "rating consistency joined against separability");
    std::string ratings_path, consistency_sep, consistency_out;
    bool aggregate_raters = false;
    consistency_cmd->add_option("--ratings", ratings_path, "ratings JSONL")->required();
    consistency_cmd->add_option("--separability", consistency_sep, "separability JSONL")
        ->required();
    consistency_cmd->add_option("--out-dir", consistency_out, "output directory")->required();
    consistency_cmd->add_flag("--aggregate-raters", aggregate_raters,
                              "bin per-instance mean consistency instead of per-rater values");

    // elo
    auto* elo_cmd = app.add_subcommand("elo", "replay matches into a leaderboard");
    EloFlags elo_flags;
    std::string matches_path, elo_ratings, elo_sep, elo_out;
    elo_cmd->add_option("--matches", matches_path, "matches JSONL");
    elo_cmd->add_option("--ratings", elo_ratings, "ratings JSONL (one match per rating)");
    elo_cmd->add_option("--separability", elo_sep, "separability JSONL for delta joins");
    elo_cmd->add_option("--out", elo_out, "output leaderboard JSON")->required();
    add_elo_flags(*elo_cmd, elo_flags);

    // select
    auto* select_cmd = app.add_subcommand("select", "pick instances by separability");
    std::string select_sep, select_mode = "top", select_out;
    int select_n = 0;
    select_cmd->add_option("--separability", select_sep, "separability JSONL")->required();
    select_cmd->add_option("--mode", select_mode, "weighted, stratified or top");
    select_cmd->add_option("--n", select_n, "instances to pick")->required();
    select_cmd->add_option("--out", select_out, "output file (default stdout)");

    // report
    auto* report_cmd = app.add_subcommand(
        "report", "end-to-end run: separability, consistency, leaderboard and text reports");
    EloFlags report_elo_flags;
    std::string report_generations, report_ratings, report_matches, report_model_a,
        report_model_b, report_embeddings, report_entities, report_out;
    report_cmd->add_option("--generations", report_generations, "generations JSONL")->required();
    report_cmd->add_option("--ratings", report_ratings, "ratings JSONL");
    report_cmd->add_option("--matches", report_matches, "matches JSONL");
    report_cmd->add_option("--model-a", report_model_a, "first model id");
    report_cmd->add_option("--model-b", report_model_b, "second model id");
    report_cmd->add_option("--embeddings", report_embeddings, "token embeddings JSONL");
    report_cmd->add_option("--entities", report_entities, "entity annotations JSONL");
    report_cmd->add_option("--out-dir", report_out, "output directory")->required();
    add_elo_flags(*report_cmd, report_elo_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        RunConfig cfg = build_config(globals);
        if (sample_cmd->parsed()) {
            endpoint.base_url = endpoint_url;
            endpoint.model_name = model_name;
            endpoint.api_key_env_var = api_key_env;
            return run_sample(cfg, prompts_path, sample_out, endpoint);
        }
        if (align_cmd->parsed()) {
            return run_align(cfg, generations_path, model_a, model_b, embeddings_path,
                             entities_path, align_out);
        }
        if (sep_cmd->parsed()) {
            auto records = compute_separability(cfg, sep_generations, sep_model_a, sep_model_b,
                                                sep_embeddings, sep_entities);
            write_separability(sep_out, records);
            std::cerr << records.size() << " instance(s) written\n";
            return kExitOk;
        }
        if (consistency_cmd->parsed()) {
            return run_consistency(cfg, ratings_path, consistency_sep, consistency_out,
                                   aggregate_raters);
        }
        if (elo_cmd->parsed()) {
            apply_elo_flags(cfg, elo_flags);
            return run_elo(cfg, elo_flags, matches_path, elo_ratings, elo_sep, elo_out);
        }
        if (select_cmd->parsed()) {
            return run_select(cfg, select_sep, select_mode, select_n, select_out);
        }
        if (report_cmd->parsed()) {
            apply_elo_flags(cfg, report_elo_flags);
            return run_report(cfg, report_elo_flags, report_generations, report_ratings,
                              report_matches, report_model_a, report_model_b, report_embeddings,
                              report_entities, report_out);
        }
        throw ValidationError("no subcommand given");
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
