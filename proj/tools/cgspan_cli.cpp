// cgspan command line tool: mine / generate / eval / validate / translate.
// Exit codes: 0 success, 1 input data invalid, 2 usage or config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgspan/cggen.hpp"
#include "cgspan/eval.hpp"
#include "cgspan/pipeline.hpp"

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

unsigned default_workers() {
    if (const char* env = std::getenv("CGSPAN_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

struct ModuleFlags {
    bool bricks = false, signatures = false, rules = false;
};

ModuleFlags parse_modules(const std::string& spec) {
    ModuleFlags m;
    if (spec == "none") return m;
    if (spec == "all") return {true, true, true};
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "bricks") m.bricks = true;
        else if (item == "signatures") m.signatures = true;
        else if (item == "rules") m.rules = true;
        else if (!item.empty()) throw ConfigError("unknown module: " + item);
    }
    return m;
}

// Values in (0,1) are a fraction of the database (ceiling); values >= 1 are
// absolute graph counts.
std::size_t resolve_minsup(double minsup, std::size_t db_size) {
    if (minsup <= 0) throw ConfigError("minsup must be positive");
    if (minsup < 1.0)
        return static_cast<std::size_t>(std::ceil(minsup * static_cast<double>(db_size)));
    if (minsup != std::floor(minsup)) throw ConfigError("absolute minsup must be an integer");
    return static_cast<std::size_t>(minsup);
}

int cmd_validate(const std::string& vocab_path, const std::string& db_path) {
    auto v = cgspan::Vocabulary::from_json(read_json(vocab_path));
    auto db = cgspan::database_from_json(read_json(db_path));
    std::size_t total = 0;
    for (const auto& g : db) {
        for (const auto& vio : cgspan::validate_graph(g, v)) {
            ++total;
            std::cerr << vio.graph_id << "/" << vio.node_id;
            if (vio.position >= 0) std::cerr << "[" << vio.position << "]";
            std::cerr << ": " << vio.message << "\n";
        }
    }
    if (total) {
        std::cerr << total << " violation(s)\n";
        return 1;
    }
    std::cout << db.size() << " graph(s) valid\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cgspan: frequent pattern mining over conceptual graph databases"};
    app.require_subcommand(1);

    std::string vocab_path, db_path, rules_path, out_path, summary_path;
    std::string config_path, manifest_path, patterns_path, baseline_path, csv_path;
    std::string modules = "bricks";
    double minsup = 2;
    unsigned workers = default_workers();
    std::size_t max_size = 0, graphs_override = 0;
    bool graphs_set = false;
    std::uint64_t rng_seed = 0;
    bool seed_set = false, strict_markers = false, injective = false, print_table = false;

    auto* mine = app.add_subcommand("mine", "mine frequent CG patterns");
    mine->add_option("--vocab", vocab_path)->required();
    mine->add_option("--db", db_path)->required();
    mine->add_option("--rules", rules_path);
    mine->add_option("--minsup", minsup, "fraction in (0,1) or absolute count");
    mine->add_option("--modules", modules, "comma list of bricks,signatures,rules or all|none");
    mine->add_option("--max-size", max_size, "max pattern node count (0 = unlimited)");
    mine->add_option("--workers", workers);
    mine->add_flag("--strict-markers", strict_markers);
    mine->add_flag("--injective", injective);
    mine->add_option("--out", out_path)->required();
    mine->add_option("--summary", summary_path);

    auto* gen = app.add_subcommand("generate", "generate a synthetic CG database");
    gen->add_option("--vocab", vocab_path)->required();
    gen->add_option("--config", config_path)->required();
    gen->add_option("--seed", rng_seed)->each([&](const std::string&) { seed_set = true; });
    gen->add_option("--graphs", graphs_override)->each([&](const std::string&) { graphs_set = true; });
    gen->add_option("--workers", workers);
    gen->add_option("--out", out_path)->required();
    gen->add_option("--manifest", manifest_path)->required();

    auto* eval = app.add_subcommand("eval", "evaluate mined patterns against a manifest");
    eval->add_option("--vocab", vocab_path)->required();
    eval->add_option("--patterns", patterns_path)->required();
    eval->add_option("--manifest", manifest_path)->required();
    eval->add_option("--summary", summary_path, "run summary from mine");
    eval->add_option("--baseline-summary", baseline_path, "summary of the baseline run");
    eval->add_option("--out", out_path)->required();
    eval->add_option("--csv", csv_path, "write the size histogram as CSV");
    eval->add_flag("--table", print_table, "print a plain-text metric table");

    auto* val = app.add_subcommand("validate", "check a database against a vocabulary");
    val->add_option("--vocab", vocab_path)->required();
    val->add_option("--db", db_path)->required();

    auto* trans = app.add_subcommand("translate", "dump the TLG translation of a database");
    trans->add_option("--vocab", vocab_path)->required();
    trans->add_option("--db", db_path)->required();
    trans->add_option("--modules", modules);
    trans->add_flag("--strict-markers", strict_markers);
    trans->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (val->parsed()) return cmd_validate(vocab_path, db_path);

        if (mine->parsed()) {
            auto v = cgspan::Vocabulary::from_json(read_json(vocab_path));
            auto db = cgspan::database_from_json(read_json(db_path));
            std::vector<cgspan::LambdaRule> rules;
            if (!rules_path.empty()) rules = cgspan::rules_from_json(read_json(rules_path));
            ModuleFlags m = parse_modules(modules);
            cgspan::MiningConfig cfg;
            cfg.minsup = resolve_minsup(minsup, db.size());
            cfg.bricks = m.bricks;
            cfg.signatures = m.signatures;
            cfg.rules = m.rules;
            if (max_size) cfg.max_size = max_size;
            cfg.strict_markers = strict_markers;
            cfg.injective = injective;
            cfg.workers = workers;
            auto t0 = std::chrono::steady_clock::now();
            cgspan::MineResult result;
            try {
                result = cgspan::mine(db, v, rules, cfg);
            } catch (const cgspan::ValidationFailure& e) {
                std::cerr << e.what() << "\n";
                for (const auto& vio : e.violations)
                    std::cerr << "  " << vio.graph_id << "/" << vio.node_id << ": " << vio.message
                              << "\n";
                return 1;
            }
            double total_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            write_json(out_path, cgspan::mine_result_to_json(result));
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            if (!summary_path.empty()) {
                nlohmann::ordered_json s;
                s["command"] = "mine";
                s["minsup"] = cfg.minsup;
                s["modules"] = {{"bricks", cfg.bricks},
                                {"signatures", cfg.signatures},
                                {"rules", cfg.rules}};
                s["workers"] = cfg.workers;
                s["patterns"] = result.patterns.size();
                s["pruned"] = result.pruned;
                s["timings_ms"] = nlohmann::ordered_json::object();
                for (const auto& [k, ms] : result.timings_ms) s["timings_ms"][k] = ms;
                s["total_ms"] = total_ms;
                s["warnings"] = result.warnings;
                write_json(summary_path, s);
            }
            std::cout << result.patterns.size() << " pattern(s), " << result.pruned
                      << " pruned\n";
            return 0;
        }

        if (gen->parsed()) {
            auto v = cgspan::Vocabulary::from_json(read_json(vocab_path));
            auto cfg = cgspan::GenConfig::from_json(read_json(config_path));
            if (seed_set) cfg.rng_seed = rng_seed;
            if (graphs_set) cfg.graph_count = graphs_override;
            cfg.workers = workers;
            auto [db, manifest] = cgspan::generate(v, cfg);
            write_json(out_path, cgspan::database_to_json(db));
            write_json(manifest_path, manifest.to_json());
            std::cout << db.size() << " graph(s) generated\n";
            return 0;
        }

        if (eval->parsed()) {
            auto v = cgspan::Vocabulary::from_json(read_json(vocab_path));
            auto pj = read_json(patterns_path);
            std::vector<cgspan::MineEntry> entries;
            std::vector<cgspan::ConceptualGraph> returned;
            for (const auto& e : pj) {
                cgspan::MineEntry me;
                me.pattern = cgspan::ConceptualGraph::from_json(e.at("pattern"));
                me.support = e.at("support").get<std::size_t>();
                me.size = e.at("size").get<std::size_t>();
                if (e.contains("provenance")) me.provenance = e.at("provenance");
                if (e.contains("canonical_code")) me.canonical_code = e.at("canonical_code");
                returned.push_back(me.pattern);
                entries.push_back(std::move(me));
            }
            auto manifest = cgspan::Manifest::from_json(read_json(manifest_path));
            std::vector<cgspan::ConceptualGraph> expected;
            for (const auto& s : manifest.seeds) expected.push_back(s.pattern);
            cgspan::EvalReport report;
            report.recall = cgspan::recall(returned, expected, v, &report.notes);
            report.precision = cgspan::precision(returned, expected, v, &report.notes);
            std::size_t pruned = 0;
            double run_ms = -1, baseline_ms = -1;
            if (!summary_path.empty()) {
                auto s = read_json(summary_path);
                pruned = s.at("pruned").get<std::size_t>();
                run_ms = s.at("total_ms").get<double>();
            }
            report.redundancy = cgspan::redundancy(pruned, returned.size(), &report.notes);
            if (!baseline_path.empty())
                baseline_ms = read_json(baseline_path).at("total_ms").get<double>();
            if (run_ms >= 0)
                report.time_efficiency =
                    cgspan::time_efficiency(run_ms, baseline_ms, &report.notes);
            report.histogram = cgspan::size_frequency_histogram(entries, v);
            write_json(out_path, cgspan::eval_report_to_json(report));
            if (!csv_path.empty()) write_text(csv_path, cgspan::histogram_csv(report.histogram));
            if (print_table) std::cout << cgspan::eval_report_table(report);
            if (expected.empty()) {
                std::cerr << "error: manifest contains no expected patterns\n";
                return 2;
            }
            return 0;
        }

        if (trans->parsed()) {
            auto v = cgspan::Vocabulary::from_json(read_json(vocab_path));
            auto db = cgspan::database_from_json(read_json(db_path));
            ModuleFlags m = parse_modules(modules);
            cgspan::TranslateOptions opts{m.bricks, m.signatures, strict_markers};
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& g : db) {
                auto vio = cgspan::validate_graph(g, v);
                if (!vio.empty()) {
                    std::cerr << g.id << ": " << vio.front().message << "\n";
                    return 1;
                }
                out.push_back(cgspan::tlg_to_json(cgspan::translate(g, v, opts)));
            }
            write_json(out_path, out);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cgspan::VocabularyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cgspan::GenError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
