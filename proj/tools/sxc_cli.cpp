// sxc: lattice-point counting in weighted right-angled simplices, with the
// multiple-Bernoulli leading terms, Diophantine incline diagnostics, simplex
// Fourier-transform identity suites, and smoothed lattice-sum error bounds.
//
// Exit codes: 0 success, 2 configuration error, 3 identity-suite failure,
// 4 precision exhausted / boundary ambiguity.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "sxc/sweep.hpp"

using namespace sxc;

static void add_common_flags(CLI::App* sub, SweepConfig& cfg, std::string& config_path) {
    sub->add_option("--config", config_path, "JSON config file (flags override its fields)");
    sub->add_option("--preset", cfg.preset,
                    "weight preset: sqrt2, golden, sqrt23, sqrt235, sqrt1235");
    sub->add_option("--weights", cfg.weights,
                    "explicit weights, e.g. \"1,sqrt2,sqrt3\" or \"1,phi\" or \"3/2,2*sqrt5\"");
    sub->add_option("--t-min", cfg.t_min, "lower end of the threshold grid");
    sub->add_option("--t-max", cfg.t_max, "upper end of the threshold grid");
    sub->add_option("--grid", cfg.grid, "grid kind: geometric, arithmetic, jump-aligned");
    sub->add_option("--points", cfg.points, "number of grid points");
    sub->add_option("--delta", cfg.delta, "margin for shift sets (0, 1/2)");
    sub->add_option("--kappa", cfg.kappa, "approximability exponent for bounds/profiles");
    sub->add_option("--precision-bits", cfg.precision_bits, "working precision (>= 64)");
    sub->add_option("--seed", cfg.seed, "random seed for sampled checks");
    sub->add_option("--jobs", cfg.jobs, "worker threads");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
}

int main(int argc, char** argv) {
    CLI::App app{"simplex lattice-point counting and error analysis"};
    app.require_subcommand(1);

    SweepConfig cfg;
    std::string config_path;

    struct SubDef {
        const char* name;
        const char* help;
    };
    const SubDef defs[] = {
        {"count", "exact counts, leading terms and one-sided errors over a t-grid"},
        {"error-sweep", "error magnitudes over a t-grid with growth-model fits"},
        {"dioph", "incline approximability profiles and continued fractions"},
        {"fourier-check", "transform identity suites (exit 3 on any failure)"},
        {"lattice-sum", "smoothed lattice-sum bounds joined with measured errors"},
    };
    for (const SubDef& defn : defs) {
        CLI::App* sub = app.add_subcommand(defn.name, defn.help);
        add_common_flags(sub, cfg, config_path);
        sub->callback([&cfg, name = std::string(defn.name)] { cfg.subcommand = name; });
    }

    bool tmax_given = false;
    try {
        app.parse(argc, argv);
        for (auto* sub : app.get_subcommands()) tmax_given = sub->count("--t-max") > 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            nlohmann::json j;
            in >> j;
            SweepConfig file_cfg = config_from_json(j);
            // flags override file fields: start from the file, reapply flags
            CLI::App reparse{"reparse"};
            std::string dummy;
            add_common_flags(&reparse, file_cfg, dummy);
            std::vector<std::string> args;  // CLI11 parses reversed vectors
            for (int i = argc - 1; i >= 2; --i) args.emplace_back(argv[i]);
            reparse.parse(args);
            file_cfg.subcommand = cfg.subcommand;
            cfg = file_cfg;
        }
        if (cfg.subcommand == "dioph" && !tmax_given && cfg.t_max <= 1000)
            cfg.t_max = 100000;  // default scan bound for profiles

        auto [table, ok] = run_subcommand(cfg);
        std::string payload = (cfg.format == "json") ? table.to_json() : table.to_csv();
        if (cfg.out.empty()) {
            std::fwrite(payload.data(), 1, payload.size(), stdout);
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw ConfigError("cannot open output file '" + cfg.out + "'");
            out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        }
        return ok ? 0 : 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 4;
    } catch (const BoundaryAmbiguity& e) {
        std::cerr << "boundary ambiguity: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
