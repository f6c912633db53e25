// Sweep engine behind the CLI: configuration, grid construction (including
// jump-aligned grids sitting exactly on count discontinuities), parallel
// evaluation with deterministic output, and the five subcommand drivers.
#pragma once

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sxc/counting.hpp"
#include "sxc/csvio.hpp"
#include "sxc/diophantine.hpp"
#include "sxc/fit.hpp"
#include "sxc/fourier.hpp"
#include "sxc/latticesums.hpp"
#include "sxc/weights.hpp"

namespace sxc {

struct SweepConfig {
    std::string subcommand;  // count | error-sweep | dioph | fourier-check | lattice-sum
    std::string preset;      // named weight preset, or
    std::string weights;     // explicit list "1,sqrt2,sqrt3"
    double t_min = 10.0;
    double t_max = 1000.0;
    std::string grid = "geometric";  // geometric | arithmetic | jump-aligned
    unsigned points = 32;
    double delta = 0.1;
    double kappa = 0.0;
    unsigned precision_bits = 128;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;             // output path; empty = stdout
    std::string format = "csv";  // csv | json

    void validate() const {
        if (t_min <= 0) throw ConfigError("t_min must be positive");
        if (t_max < t_min) throw ConfigError("t_max must be >= t_min");
        if (points < 1) throw ConfigError("points must be >= 1");
        if (!(delta > 0 && delta < 0.5)) throw ConfigError("delta must lie in (0, 1/2)");
        if (kappa < 0) throw ConfigError("kappa must be >= 0");
        if (precision_bits < 64) throw ConfigError("precision_bits must be >= 64");
        if (grid != "geometric" && grid != "arithmetic" && grid != "jump-aligned")
            throw ConfigError("grid must be geometric, arithmetic or jump-aligned");
        if (format != "csv" && format != "json")
            throw ConfigError("format must be csv or json");
        if (preset.empty() && weights.empty())
            throw ConfigError("either a preset or an explicit weight list is required");
    }
};

inline SweepConfig config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    auto get = [&](const char* k, auto& slot) {
        if (j.contains(k)) slot = j.at(k).get<std::decay_t<decltype(slot)>>();
    };
    get("subcommand", c.subcommand);
    get("preset", c.preset);
    get("weights", c.weights);
    get("t_min", c.t_min);
    get("t_max", c.t_max);
    get("grid", c.grid);
    get("points", c.points);
    get("delta", c.delta);
    get("kappa", c.kappa);
    get("precision_bits", c.precision_bits);
    get("seed", c.seed);
    get("jobs", c.jobs);
    get("out", c.out);
    get("format", c.format);
    return c;
}

inline nlohmann::json config_to_json(const SweepConfig& c) {
    return nlohmann::json{{"subcommand", c.subcommand},
                          {"preset", c.preset},
                          {"weights", c.weights},
                          {"t_min", c.t_min},
                          {"t_max", c.t_max},
                          {"grid", c.grid},
                          {"points", c.points},
                          {"delta", c.delta},
                          {"kappa", c.kappa},
                          {"precision_bits", c.precision_bits},
                          {"seed", c.seed},
                          {"jobs", c.jobs},
                          {"out", c.out},
                          {"format", c.format}};
}

inline Weights config_weights(const SweepConfig& c) {
    if (!c.weights.empty()) return Weights::parse(c.weights, c.precision_bits);
    return Weights::preset(c.preset, c.precision_bits);
}

// ------------------------------------------------------------ parallel map --

/// Index-parallel loop with deterministic result placement: workers steal
/// indices from a shared counter; outputs land in caller-owned slots.
template <class F>
void parallel_for(size_t n, unsigned jobs, unsigned precision_bits, const F& f) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(n));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            set_default_prec(precision_bits);
            try {
                for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ------------------------------------------------------------------- grids --

/// Exact threshold grid. Geometric/arithmetic grids are exact rationals at
/// the requested positions; jump-aligned grids sit exactly on count
/// discontinuities t = w.m, spread over lattice directions.
inline std::vector<Surd> build_grid(const SweepConfig& cfg, const Weights& w) {
    std::vector<Surd> out;
    const unsigned n = cfg.points;
    auto target = [&](unsigned i) {
        if (n == 1) return cfg.t_min;
        double s = double(i) / double(n - 1);
        if (cfg.grid == "arithmetic") return cfg.t_min + s * (cfg.t_max - cfg.t_min);
        return cfg.t_min * std::pow(cfg.t_max / cfg.t_min, s);
    };
    if (cfg.grid != "jump-aligned") {
        for (unsigned i = 0; i < n; ++i) {
            mpq_class q(target(i));
            q.canonicalize();
            out.emplace_back(q);
        }
        return out;
    }
    if (!w.exact())
        throw ConfigError("jump-aligned grids require exact (surd) weights");
    const unsigned d = w.dim();
    static const long mix[6] = {2, 3, 5, 7, 11, 13};
    double wmin_sum = 0;
    for (unsigned j = 0; j < d; ++j) wmin_sum += w.real(j).to_double();
    std::vector<Surd> raw;
    for (unsigned i = 0; i < n; ++i) {
        double tau = std::max(target(i), wmin_sum + 1.0);
        std::vector<long> m(d);
        double partial = 0;
        for (unsigned j = 0; j + 1 < d; ++j) {
            m[j] = 1 + (long)((i * mix[j % 6]) % 7);
            partial += m[j] * w.real(j).to_double();
        }
        double wd = w.real(d - 1).to_double();
        m[d - 1] = std::max(1L, (long)std::llround((tau - partial) / wd));
        raw.push_back(w.dot_surd(m));
    }
    // order numerically, drop duplicates (exactly)
    std::sort(raw.begin(), raw.end(), [](const Surd& a, const Surd& b) {
        return a.to_double() < b.to_double();
    });
    for (const Surd& t : raw)
        if (out.empty() || !(out.back() == t)) out.push_back(t);
    return out;
}

// ------------------------------------------------------------- subcommands --

/// Exact counts with leading terms and one-sided errors over the grid, one
/// row per (t, side).
inline Table run_count(const SweepConfig& cfg) {
    cfg.validate();
    set_default_prec(cfg.precision_bits);
    Weights w = config_weights(cfg);
    Counter counter(w, BernoulliEngine(64, cfg.precision_bits));
    std::vector<Surd> grid = build_grid(cfg, w);

    std::vector<CountReport> open(grid.size()), closed(grid.size());
    parallel_for(grid.size(), cfg.jobs, cfg.precision_bits, [&](size_t i) {
        open[i] = counter.report_open(grid[i]);
        closed[i] = counter.report_closed(grid[i]);
    });

    Table tab;
    tab.columns = {"side", "t", "exact", "leading", "err_left", "err_right", "rrr", "tau"};
    for (size_t i = 0; i < grid.size(); ++i) {
        for (const char* side : {"open", "closed"}) {
            const CountReport& r = (side[0] == 'o') ? open[i] : closed[i];
            tab.rows.push_back({side, Table::cell(r.t), Table::cell((long long)r.exact_count),
                                Table::cell(r.leading.to_double()),
                                Table::cell(r.error_left.to_double()),
                                Table::cell(r.error_right.to_double()),
                                Table::cell(r.rrr.to_double()), Table::cell(r.tau)});
        }
    }
    if (w.rational())
        tab.trailer.push_back(
            "warning: rational weights give rational (degenerate) inclines; "
            "error growth analysis does not apply");
    return tab;
}

/// One-sided error magnitudes over the grid plus growth-model fits.
inline Table run_error_sweep(const SweepConfig& cfg) {
    cfg.validate();
    set_default_prec(cfg.precision_bits);
    Weights w = config_weights(cfg);
    if (w.rational())
        throw ConfigError("error-sweep requires irrational inclines (degenerate preset)");
    Counter counter(w, BernoulliEngine(64, cfg.precision_bits));
    std::vector<Surd> grid = build_grid(cfg, w);

    std::vector<CountReport> open(grid.size()), closed(grid.size());
    parallel_for(grid.size(), cfg.jobs, cfg.precision_bits, [&](size_t i) {
        open[i] = counter.report_open(grid[i]);
        closed[i] = counter.report_closed(grid[i]);
    });

    Table tab;
    tab.columns = {"t", "rrr_open", "rrr_closed", "tau"};
    std::vector<double> ts, rrr;
    double max_ratio = 0;
    const unsigned d = w.dim();
    for (size_t i = 0; i < grid.size(); ++i) {
        double t = open[i].t, r = open[i].rrr.to_double();
        tab.rows.push_back({Table::cell(t), Table::cell(r),
                            Table::cell(closed[i].rrr.to_double()),
                            Table::cell(open[i].tau)});
        ts.push_back(t);
        rrr.push_back(r);
        if (t > 3.0) max_ratio = std::max(max_ratio, r / std::pow(std::log(t), double(d)));
    }
    auto describe = [&](const FitResult& f) {
        std::string s = "fit " + f.model + ":";
        for (size_t i = 0; i < f.coef.size(); ++i)
            s += " " + f.names[i] + "=" + render_g17(f.coef[i]) + " (se " +
                 render_g17(f.se[i]) + ")";
        s += " resid=" + render_g17(f.residual_norm) +
             " n=" + std::to_string(f.n_points);
        return s;
    };
    try {
        tab.trailer.push_back(describe(fit_power(ts, rrr)));
        tab.trailer.push_back(describe(fit_power_log(ts, rrr)));
        tab.trailer.push_back(describe(fit_polylog(ts, rrr)));
    } catch (const InsufficientData& e) {
        tab.trailer.push_back(std::string("fit skipped: ") + e.what());
    }
    tab.trailer.push_back("max rrr_open/(log t)^d = " + render_g17(max_ratio));
    return tab;
}

/// Incline approximability profiles: records and decimated scan values,
/// fitted exponents, and continued fractions of the inclines.
inline Table run_dioph(const SweepConfig& cfg) {
    cfg.validate();
    set_default_prec(cfg.precision_bits);
    Weights w = config_weights(cfg);
    unsigned long M = static_cast<unsigned long>(std::max(100.0, cfg.t_max));

    InclineProfile prof = incline_profile(w, M, cfg.kappa);

    Table tab;
    tab.columns = {"row", "m", "v_m", "is_record"};
    unsigned long stride = std::max<unsigned long>(1, M / 1000);
    for (unsigned j = 0; j < prof.rows.size(); ++j) {
        const ApproximabilityProfile& p = prof.rows[j];
        std::vector<char> is_rec(M + 1, 0);
        for (unsigned long m : p.record_m) is_rec[m] = 1;
        for (unsigned long m = 1; m <= M; ++m) {
            if (!is_rec[m] && m % stride != 0) continue;
            tab.rows.push_back({Table::cell((long)j), Table::cell(m), Table::cell(p.v[m - 1]),
                                Table::cell((int)is_rec[m])});
        }
        std::string line = "row " + std::to_string(j) + ": min m^(1+kappa)prod<theta m> = " +
                           render_g17(p.min_weighted) + " at m=" +
                           std::to_string(p.argmin_weighted);
        if (p.degenerate)
            line += " DEGENERATE (exact integer hit at m=" +
                    std::to_string(p.degenerate_m) + ")";
        else {
            try {
                line += " kappa_hat=" + render_g17(estimate_kappa(p));
            } catch (const InsufficientData&) {
                line += " kappa_hat=insufficient-data";
            }
        }
        tab.trailer.push_back(line);
    }
    tab.trailer.push_back("c_kappa (min over rows) = " + render_g17(prof.c_kappa));

    if (w.exact() && !w.rational()) {
        for (unsigned j = 0; j < w.dim(); ++j)
            for (unsigned l = 0; l < w.dim(); ++l) {
                if (j == l) continue;
                Surd th = w.incline_surd(j, l);
                if (th.is_rational()) continue;
                ContinuedFraction cf = continued_fraction(th, 24);
                std::string line = "cf theta_" + std::to_string(j) + "_" + std::to_string(l) +
                                   " = [";
                for (size_t i = 0; i < cf.a.size(); ++i)
                    line += (i ? "," : "") + cf.a[i].get_str();
                line += "]";
                tab.trailer.push_back(line);
            }
    }
    return tab;
}

/// Identity suites: quadrature vs closed forms, exact symmetrization and
/// partial fractions, and the coefficient split against the direct
/// transform. The ok flag drives the CLI exit code.
struct FourierCheckResult {
    Table table;
    bool ok = true;
};

inline FourierCheckResult run_fourier_check(const SweepConfig& cfg) {
    cfg.validate();
    set_default_prec(cfg.precision_bits);
    Weights w = config_weights(cfg);
    if (w.dim() > 4) throw ConfigError("fourier-check supports d <= 4");
    if (w.rational())
        throw ConfigError("fourier-check requires irrational inclines (degenerate preset)");

    std::mt19937_64 rng(cfg.seed);
    FourierCheckResult res;
    res.table.columns = {"check", "point", "lhs", "rhs", "abs_err", "rel_err", "pass"};

    auto cplx_str = [](std::complex<double> v) {
        return render_g17(v.real()) + (v.imag() < 0 ? "-" : "+") +
               render_g17(std::fabs(v.imag())) + "i";
    };
    auto push = [&](const std::string& check, const std::string& point,
                    const std::string& lhs, const std::string& rhs, double abs_err,
                    double rel_err, bool pass) {
        res.table.rows.push_back({check, point, lhs, rhs, Table::cell(abs_err),
                                  Table::cell(rel_err), pass ? "1" : "0"});
        res.ok = res.ok && pass;
    };
    auto random_nondiag = [&](unsigned d) {
        std::uniform_real_distribution<double> ud(0.15, 3.0);
        std::vector<double> y(d);
        while (true) {
            for (auto& v : y) v = ud(rng) * (rng() % 2 ? 1 : -1);
            bool ok = true;
            for (unsigned a = 0; a < d && ok; ++a)
                for (unsigned b = a + 1; b < d; ++b)
                    if (std::fabs(y[a] - y[b]) < 0.05) ok = false;
            if (ok) return y;
        }
    };
    auto point_str = [](const std::vector<double>& y) {
        std::string s = "(";
        for (size_t i = 0; i < y.size(); ++i) s += (i ? " " : "") + render_g17(y[i]);
        return s + ")";
    };

    // closed form vs quadrature, full support
    for (unsigned d = 1; d <= 3; ++d) {
        double quad_tol = d < 3 ? 1e-11 : 3e-10;
        for (int rep = 0; rep < 6; ++rep) {
            std::vector<double> y = random_nondiag(d);
            std::vector<Real> yr;
            for (double v : y) yr.emplace_back(v);
            std::complex<double> lhs = simplex_ft_closed(yr).to_std();
            std::complex<double> rhs = simplex_ft_quadrature(y, quad_tol);
            double abs_err = std::abs(lhs - rhs);
            double rel = abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-4});
            push("closed_vs_quadrature", point_str(y), cplx_str(lhs), cplx_str(rhs), abs_err,
                 rel, rel < 1e-6);
        }
    }

    // split form vs quadrature, partial support
    for (unsigned d = 2; d <= 3; ++d) {
        double quad_tol = d < 3 ? 1e-11 : 3e-10;
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<double> y = random_nondiag(d);
            y[rng() % d] = 0.0;
            std::vector<Real> yr;
            for (double v : y) yr.emplace_back(v);
            std::complex<double> lhs = simplex_ft_decomposed(yr).total().to_std();
            std::complex<double> rhs = simplex_ft_quadrature(y, quad_tol);
            double abs_err = std::abs(lhs - rhs);
            double rel = abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-4});
            push("split_vs_quadrature", point_str(y), cplx_str(lhs), cplx_str(rhs), abs_err,
                 rel, rel < 1e-6);
        }
    }

    // exact rational identities
    auto random_rational_vec = [&](unsigned k) {
        std::vector<mpq_class> y;
        while (y.size() < k) {
            mpq_class v((long)(rng() % 30) - 15, 1 + (long)(rng() % 6));
            v.canonicalize();
            if (v == 0) continue;
            bool dup = false;
            for (const auto& p : y) dup = dup || (p == v);
            if (!dup) y.push_back(v);
        }
        return y;
    };
    for (int rep = 0; rep < 50; ++rep) {
        unsigned k = 1 + rng() % 4;
        std::vector<mpq_class> y = random_rational_vec(k);
        unsigned n = k + rng() % 5;
        bool pass = symmetrization_identity(y, n);
        push("symmetrization_exact", "k=" + std::to_string(k) + ",n=" + std::to_string(n),
             "exact", "exact", pass ? 0.0 : 1.0, pass ? 0.0 : 1.0, pass);
    }
    for (int rep = 0; rep < 50; ++rep) {
        unsigned k = 1 + rng() % 4;
        std::vector<mpq_class> y = random_rational_vec(k + 1);
        mpq_class z = y.back();
        y.pop_back();
        bool pass = partial_fraction_check(z, y);
        push("partial_fraction_exact", "k=" + std::to_string(k), "exact", "exact",
             pass ? 0.0 : 1.0, pass ? 0.0 : 1.0, pass);
    }

    // coefficient split vs direct transform on the configured weights
    {
        const unsigned d = w.dim();
        std::uniform_real_distribution<double> td(2.0, 20.0);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<long> m(d, 0);
            bool nz = false;
            while (!nz) {
                for (auto& v : m) v = (long)(rng() % 13) - 6;
                for (long v : m) nz |= (v != 0);
            }
            Real t(td(rng), cfg.precision_bits);
            CoefficientSplit split = fourier_coefficient_decomposed(m, t, w);
            Cplx direct = fourier_coefficient_N(m, t, w);
            double abs_err = (split.total() - direct).abs().to_double();
            double rel = abs_err / std::max(direct.abs().to_double(), 1e-30);
            std::string ms = "m=(";
            for (size_t i = 0; i < m.size(); ++i) ms += (i ? "," : "") + std::to_string(m[i]);
            ms += ") t=" + render_g17(t.to_double());
            push("coefficient_split", ms, cplx_str(split.total().to_std()),
                 cplx_str(direct.to_std()), abs_err, rel, rel < 1e-9);
        }
    }
    return res;
}

/// Balanced smoothed error bounds joined with the measured one-sided errors.
inline Table run_lattice_sum(const SweepConfig& cfg) {
    cfg.validate();
    set_default_prec(cfg.precision_bits);
    Weights w = config_weights(cfg);
    if (w.rational())
        throw ConfigError("lattice-sum requires irrational inclines (degenerate preset)");
    Counter counter(w, BernoulliEngine(64, cfg.precision_bits));
    const unsigned d = w.dim();

    // approximability constant at the configured kappa, measured once
    InclineProfile prof = incline_profile(w, 10000, cfg.kappa);
    std::vector<Surd> grid = build_grid(cfg, w);

    std::vector<ErrorBoundReport> bounds(grid.size());
    std::vector<double> measured(grid.size());
    const SmoothingKernel& kernel = shared_kernel();
    parallel_for(grid.size(), cfg.jobs, cfg.precision_bits, [&](size_t i) {
        double t = grid[i].to_double();
        bounds[i] = error_bound(t, w, cfg.kappa, prof.c_kappa, 1.0, kernel);
        measured[i] = counter.report_open(grid[i]).rrr.to_double();
    });

    Table tab;
    tab.columns = {"t", "T", "M"};
    for (unsigned j = 0; j < d; ++j) tab.columns.push_back("s2_row" + std::to_string(j));
    tab.columns.insert(tab.columns.end(),
                       {"s2_total", "tail", "smoothing_term", "balanced_bound", "rrr_open"});
    for (size_t i = 0; i < grid.size(); ++i) {
        const ErrorBoundReport& b = bounds[i];
        std::vector<std::string> row = {Table::cell(b.t), Table::cell(b.T), Table::cell(b.s2.M)};
        for (unsigned j = 0; j < d; ++j) row.push_back(Table::cell(b.s2.rows[j].sum));
        row.push_back(Table::cell(b.s2.total));
        row.push_back(Table::cell(b.s2.tail));
        row.push_back(Table::cell(b.smoothing_term));
        row.push_back(Table::cell(b.total));
        row.push_back(Table::cell(measured[i]));
        tab.rows.push_back(std::move(row));
    }
    tab.trailer.push_back("kappa = " + render_g17(cfg.kappa) +
                          ", measured c_kappa = " + render_g17(prof.c_kappa) +
                          ", slack constant C = 1 (heuristic, not a certificate)");
    return tab;
}

/// Dispatch by cfg.subcommand; the bool is the identity-suite verdict (true
/// unless a fourier-check failed).
inline std::pair<Table, bool> run_subcommand(const SweepConfig& cfg) {
    if (cfg.subcommand == "count") return {run_count(cfg), true};
    if (cfg.subcommand == "error-sweep") return {run_error_sweep(cfg), true};
    if (cfg.subcommand == "dioph") return {run_dioph(cfg), true};
    if (cfg.subcommand == "fourier-check") {
        FourierCheckResult r = run_fourier_check(cfg);
        return {std::move(r.table), r.ok};
    }
    if (cfg.subcommand == "lattice-sum") return {run_lattice_sum(cfg), true};
    throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace sxc
