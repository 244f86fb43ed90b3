// lie-expand: scenario runner over the lie_core library.
// exit codes: 0 success, 2 validation error, 3 budget exhaustion, 4 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lie/constructions.hpp"
#include "lie/delta_sets.hpp"
#include "lie/errors.hpp"
#include "lie/experiments.hpp"
#include "lie/free_lie.hpp"

namespace {

constexpr int kOk = 0, kValidation = 2, kBudget = 3, kInternal = 4;

struct ParamSpec {
    const char *name;
    const char *help;
};

// knob schema per scenario, mirrored from the library's validation
const std::map<std::string, std::vector<ParamSpec>> &scenario_params() {
    static const std::map<std::string, std::vector<ParamSpec>> m = {
        {"bch-order",
         {{"l", "approximation order (2..6)"},
          {"samples", "step sizes sampled for the slope fit"},
          {"hmin", "smallest step size"},
          {"hmax", "largest step size"}}},
        {"synth-word",
         {{"l", "highest order to synthesize (2..6)"},
          {"s", "generator count (1..4)"},
          {"max_word_length", "letter budget per approximant"}}},
        {"nongrowth-ap",
         {{"d", "ambient dimension (1..4)"},
          {"kappa", "progression exponent in (0, 1]"},
          {"delta", "lattice scale in (0, 1)"},
          {"r", "progression radius"}}},
        {"growth-su2",
         {{"n", "random point count"},
          {"delta", "lattice scale in (0, 1)"},
          {"ball", "chart sampling radius"}}},
        {"sum-product-generate",
         {{"na", "module seed set size"},
          {"nx", "acting set size"},
          {"steps", "generation cost budget (1..4)"},
          {"delta", "lattice scale in (0, 1)"}}},
        {"commutator-coverage",
         {{"rho", "sampling ball radius in (0, 1]"}, {"kmax", "largest product length (1..8)"}}},
        {"linearize-demo",
         {{"dim_in", "domain dimension (1..3)"},
          {"dim_out", "range dimension (1..3)"},
          {"delta", "sampling scale"},
          {"rho1", "additivity defect level"},
          {"rho2", "domain radius"},
          {"noise", "perturbation amplitude, below delta"}}},
    };
    return m;
}

// resolves LIE_EXPAND_THREADS; the library is single-threaded, so anything
// above 1 is clamped (and said so on stderr)
int resolve_threads() {
    const char *env = std::getenv("LIE_EXPAND_THREADS");
    if (!env || !*env) return 1;
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw lie::UsageError("LIE_EXPAND_THREADS must be a positive integer");
    if (v > 1) std::cerr << "note: LIE_EXPAND_THREADS=" << v << " clamped to 1\n";
    return 1;
}

struct ScenarioFlags {
    std::string backend;
    std::uint64_t seed = 0;
    std::string out;
    std::vector<std::string> emit;
    std::string config_path;
    std::map<std::string, double> values;                 // storage for knob flags
    std::map<std::string, CLI::Option *> opts;            // to test which were set
    CLI::Option *backend_opt = nullptr, *seed_opt = nullptr, *out_opt = nullptr,
                *emit_opt = nullptr;
};

void apply_config_file(lie::ScenarioConfig &cfg, const std::string &path) {
    std::ifstream f(path);
    if (!f) throw lie::UsageError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception &e) {
        throw lie::ParseError(std::string("malformed config: ") + e.what());
    }
    try {
        if (j.contains("scenario")) {
            std::string s = j["scenario"].get<std::string>();
            if (!cfg.scenario.empty() && s != cfg.scenario)
                throw lie::UsageError("config is for scenario '" + s + "', not '" + cfg.scenario +
                                      "'");
            cfg.scenario = s;
        }
        if (j.contains("backend")) cfg.backend = j["backend"].get<std::string>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
        if (j.contains("emit")) cfg.emit = j["emit"].get<std::vector<std::string>>();
        if (j.contains("params"))
            for (const auto &[k, v] : j["params"].items()) cfg.params[k] = v.get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw lie::ParseError(std::string("malformed config: ") + e.what());
    }
}

int run_one(const std::string &name, const ScenarioFlags &fl) {
    lie::ScenarioConfig cfg;
    cfg.scenario = name;
    if (!fl.config_path.empty()) apply_config_file(cfg, fl.config_path);
    if (fl.backend_opt->count()) cfg.backend = fl.backend;
    if (fl.seed_opt->count()) cfg.seed = fl.seed;
    if (fl.out_opt->count()) cfg.out_dir = fl.out;
    if (fl.emit_opt->count()) cfg.emit = fl.emit;
    for (const auto &[k, opt] : fl.opts)
        if (opt->count()) cfg.params[k] = fl.values.at(k);
    if (cfg.out_dir.empty()) throw lie::UsageError("--out is required");

    resolve_threads();
    lie::RunReport rep = lie::run_scenario(cfg);
    std::cout << "wrote " << cfg.out_dir << " (" << rep.metrics.size() << " metrics"
              << (rep.complete ? "" : ", incomplete") << ")\n";
    return rep.complete ? kOk : kBudget;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"scenario runner for growth, covering, and approximation experiments"};
    app.require_subcommand(1);

    std::vector<std::pair<std::string, ScenarioFlags>> scen_flags;
    scen_flags.reserve(scenario_params().size());
    for (const auto &[name, specs] : scenario_params()) {
        CLI::App *sub = app.add_subcommand(name, "run the " + name + " scenario");
        scen_flags.emplace_back(name, ScenarioFlags{});
        ScenarioFlags &fl = scen_flags.back().second;
        for (const ParamSpec &ps : specs) {
            fl.values[ps.name] = 0.0;
            fl.opts[ps.name] = sub->add_option("--" + std::string(ps.name),
                                               fl.values[ps.name], ps.help);
        }
        fl.backend_opt = sub->add_option("--backend", fl.backend, "backend name override");
        fl.seed_opt = sub->add_option("--seed", fl.seed, "rng seed for randomized scenarios");
        fl.out_opt = sub->add_option("--out", fl.out, "output directory");
        fl.emit_opt = sub->add_option("--emit", fl.emit, "artifact kinds: json csv svg")
                          ->expected(-1);
        sub->add_option("--config", fl.config_path, "JSON config file; flags override it");
    }

    // symbolic series printer
    CLI::App *bch_cmd = app.add_subcommand("bch", "print the symbolic group-law series");
    int bch_order = 3;
    std::string bch_out;
    bch_cmd->add_option("--order", bch_order, "truncation order (1..8)");
    bch_cmd->add_option("--out", bch_out, "write to file instead of stdout");

    // progression constructor
    CLI::App *ap_cmd = app.add_subcommand("construct-ap", "write a progression set to CSV");
    double ap_d = 1, ap_kappa = 0.5, ap_delta = 1.0 / 1024.0, ap_r = 1.0;
    std::string ap_out;
    ap_cmd->add_option("--d", ap_d, "ambient dimension");
    ap_cmd->add_option("--kappa", ap_kappa, "progression exponent");
    ap_cmd->add_option("--delta", ap_delta, "lattice scale");
    ap_cmd->add_option("--r", ap_r, "radius");
    ap_cmd->add_option("--out", ap_out, "output CSV path")->required();

    // non-growth check over a stored set
    CLI::App *ng_cmd = app.add_subcommand("nongrowth", "non-growth report for a stored set");
    std::string ng_in, ng_out;
    ng_cmd->add_option("--in", ng_in, "delta-set CSV path")->required();
    ng_cmd->add_option("--out", ng_out, "output directory")->required();

    // report comparison
    CLI::App *cmp_cmd = app.add_subcommand("compare", "aligned CSV across reports of one family");
    std::vector<std::string> cmp_files;
    std::string cmp_out;
    cmp_cmd->add_option("reports", cmp_files, "report.json files")->expected(-1)->required();
    cmp_cmd->add_option("--out", cmp_out, "write to file instead of stdout");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError &e) {
            int rc = app.exit(e);
            return rc == 0 ? kOk : kValidation;
        }

        for (auto &[name, fl] : scen_flags)
            if (app.get_subcommand(name)->parsed()) return run_one(name, fl);

        if (bch_cmd->parsed()) {
            if (bch_order < 1 || bch_order > 8)
                throw lie::UsageError("order must lie in 1..8");
            lie::FreeLieAlgebra alg(2, bch_order);
            std::string text =
                lie::to_string(lie::bch(alg.generator(1), alg.generator(2), bch_order));
            if (bch_out.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream f(bch_out);
                if (!f) throw lie::UsageError("cannot write '" + bch_out + "'");
                f << text << "\n";
            }
            return kOk;
        }

        if (ap_cmd->parsed()) {
            lie::APConfig c{static_cast<int>(ap_d), ap_kappa, ap_delta, ap_r};
            if (static_cast<double>(c.d) != ap_d)
                throw lie::UsageError("dimension must be an integer");
            lie::DeltaSet s = lie::arithmetic_progression_set(c);
            lie::save_delta_set(s, ap_out);
            std::cout << "wrote " << ap_out << " (" << s.size() << " points)\n";
            return kOk;
        }

        if (ng_cmd->parsed()) {
            resolve_threads();
            lie::DeltaSet s = lie::load_delta_set(ng_in);
            lie::NonGrowthReport ng = lie::verify_nongrowth(s);
            lie::RunReport rep;
            rep.scenario = "nongrowth-set";
            rep.backend = s.ambient.name();
            rep.resolved_params = {{"delta", s.delta}};
            rep.truncated = ng.truncated;
            rep.complete = !ng.truncated;
            auto add = [&rep](const std::string &n, const std::string &v, const std::string &u,
                              const std::string &c) { rep.metrics.push_back({n, v, u, c}); };
            char buf[64];
            auto g = [&buf](double v) {
                std::snprintf(buf, sizeof buf, "%.17g", v);
                return std::string(buf);
            };
            add("count_a", std::to_string(ng.count_a), "cells", "covering count at delta");
            add("count_aaa", std::to_string(ng.count_aaa), "cells", "covering count at delta");
            add("ratio", g(ng.ratio), "dimensionless", "count_aaa / count_a");
            add("base_kappa_hat", g(ng.base_fit.kappa_hat), "dimensionless",
                "fitted covering exponent");
            for (const lie::QuotientProfile &q : ng.quotient_fits)
                add("quotient_kappa_hat_" + q.subgroup, g(q.fit.kappa_hat), "dimensionless",
                    "fitted covering exponent of the quotient image");
            for (const lie::SubgroupClearance &c : ng.clearances)
                add("clearance_" + c.name, g(c.escape_dist), "chart distance",
                    c.clear ? "escapes the delta-neighborhood" : "inside the delta-neighborhood");
            std::filesystem::create_directories(ng_out);
            std::ofstream mf(ng_out + "/metrics.csv");
            mf << lie::metrics_csv(rep);
            rep.artifacts = {"metrics.csv", "report.json"};
            std::ofstream jf(ng_out + "/report.json");
            jf << lie::report_json(rep);
            std::cout << "wrote " << ng_out << "\n";
            return kOk;
        }

        if (cmp_cmd->parsed()) {
            std::vector<lie::RunReport> reports;
            for (const std::string &f : cmp_files) reports.push_back(lie::load_report(f));
            std::string table = lie::compare_reports(reports);
            if (cmp_out.empty()) {
                std::cout << table;
            } else {
                std::ofstream f(cmp_out);
                if (!f) throw lie::UsageError("cannot write '" + cmp_out + "'");
                f << table;
            }
            return kOk;
        }

        throw lie::UsageError("no subcommand selected");
    } catch (const lie::UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const lie::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const lie::BudgetExceeded &e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const lie::InfeasibleError &e) {
        std::cerr << "infeasible instance: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
