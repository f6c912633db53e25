// Continued fractions (exact for surds, interval-validated for numeric
// reals), distance-to-nearest-integer scans, multiplicative approximability
// profiles of incline matrices, and the dimension-2 partial-quotient bound.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sxc/real.hpp"
#include "sxc/surd.hpp"
#include "sxc/util.hpp"
#include "sxc/weights.hpp"

namespace sxc {

// ------------------------------------------------------ continued fractions

struct ContinuedFraction {
    std::vector<mpz_class> a;                         // partial quotients a_0, a_1, ...
    std::vector<std::pair<mpz_class, mpz_class>> pq;  // convergents p_j/q_j

    void push(const mpz_class& aj) {
        mpz_class pm1 = pq.empty() ? mpz_class(1) : pq.back().first;
        mpz_class qm1 = pq.empty() ? mpz_class(0) : pq.back().second;
        mpz_class pm2 = pq.size() < 2 ? mpz_class(pq.empty() ? 0 : 1) : pq[pq.size() - 2].first;
        mpz_class qm2 = pq.size() < 2 ? mpz_class(pq.empty() ? 1 : 0) : pq[pq.size() - 2].second;
        pq.emplace_back(aj * pm1 + pm2, aj * qm1 + qm2);
        a.push_back(aj);
    }
};

/// Exact expansion; periodic surd expansions are exact to any depth. A
/// rational input terminates early.
inline ContinuedFraction continued_fraction(const Surd& x, unsigned n_terms) {
    if (x.sign() <= 0) throw Error("continued_fraction: x must be positive");
    ContinuedFraction cf;
    Surd cur = x;
    for (unsigned j = 0; j < n_terms; ++j) {
        mpz_class aj = cur.floor_z();
        cf.push(aj);
        Surd fr = cur - Surd(aj);
        if (fr.is_zero()) break;
        cur = fr.inverse();
    }
    return cf;
}

/// Numeric expansion with rigorous interval tracking: every digit is
/// certified by agreement of the directed-rounding bounds, otherwise a
/// precision-exhausted error identifies the first unreliable digit.
inline ContinuedFraction continued_fraction(const Real& x, unsigned n_terms) {
    if (x.sign() <= 0) throw Error("continued_fraction: x must be positive");
    const prec_t p = x.prec() + 32;
    Real lo = Real::with_prec(p), hi = Real::with_prec(p);
    mpfr_set(lo.raw(), x.raw(), MPFR_RNDD);
    mpfr_set(hi.raw(), x.raw(), MPFR_RNDU);
    ContinuedFraction cf;
    for (unsigned j = 0; j < n_terms; ++j) {
        mpz_class alo = lo.floor_z(), ahi = hi.floor_z();
        if (alo != ahi)
            throw PrecisionExhausted("continued_fraction: digit " + std::to_string(j) +
                                     " unreliable at precision " + std::to_string(x.prec()));
        cf.push(alo);
        // next = 1 / (cur - a): interval endpoints swap under reciprocal
        Real flo = Real::with_prec(p), fhi = Real::with_prec(p);
        mpfr_sub_z(flo.raw(), lo.raw(), alo.get_mpz_t(), MPFR_RNDD);
        mpfr_sub_z(fhi.raw(), hi.raw(), alo.get_mpz_t(), MPFR_RNDU);
        if (mpfr_sgn(flo.raw()) <= 0) {
            if (mpfr_sgn(fhi.raw()) <= 0) break;  // exactly an integer: terminated
            throw PrecisionExhausted("continued_fraction: digit " + std::to_string(j + 1) +
                                     " unreliable at precision " + std::to_string(x.prec()));
        }
        Real nlo = Real::with_prec(p), nhi = Real::with_prec(p);
        mpfr_ui_div(nlo.raw(), 1, fhi.raw(), MPFR_RNDD);
        mpfr_ui_div(nhi.raw(), 1, flo.raw(), MPFR_RNDU);
        lo = nlo;
        hi = nhi;
    }
    return cf;
}

// -------------------------------------------------- approximability scans --

/// Scan value carrier: either an exact surd (fractional parts reduced
/// exactly, so no precision loss in m) or a plain numeric real.
struct ThetaValue {
    bool exact = false;
    Surd s;
    Real r;

    ThetaValue(const Surd& v) : exact(true), s(v), r(v.to_real()) {}
    ThetaValue(const Real& v) : exact(false), r(v) {}

    double value() const { return r.to_double(); }

    /// <theta * m> as a double, with an exact-integer flag for the
    /// degenerate (rational theta) case.
    double dist_scaled(unsigned long m, bool* exact_zero) const {
        if (exact) {
            Surd sm = s * Surd(static_cast<long>(m));
            Surd fr = sm.frac();
            if (fr.is_zero()) {
                *exact_zero = true;
                return 0.0;
            }
            *exact_zero = false;
            double f = fr.to_double();
            return f <= 0.5 ? f : 1.0 - f;
        }
        Real d = nearest_int_dist(r * Real(static_cast<long>(m), r.prec()));
        double v = d.to_double();
        // indistinguishable from an integer at working precision
        *exact_zero = v < std::ldexp(1.0, -static_cast<int>(3 * r.prec() / 4));
        return *exact_zero ? 0.0 : v;
    }
};

struct ApproximabilityProfile {
    std::vector<double> theta;  // incline values (numeric rendering)
    unsigned long M = 0;
    double kappa = 0;  // weight used for min_weighted

    std::vector<double> v;                 // v[m-1] = m * prod_l <theta_l m>
    std::vector<unsigned long> record_m;   // m achieving new running minima of v
    double min_weighted = 0;               // min over m of m^{1+kappa} prod <theta_l m>
    unsigned long argmin_weighted = 0;
    bool degenerate = false;               // some theta_l * m hit an exact integer
    unsigned long degenerate_m = 0;

    /// Running lower envelope of v at index m (1-based).
    double envelope_at(unsigned long m) const {
        double e = std::numeric_limits<double>::infinity();
        for (unsigned long i = 1; i <= m && i <= v.size(); ++i) e = std::min(e, v[i - 1]);
        return e;
    }
};

/// Exhaustive scan of v(m) = m * prod_l <theta_l m> for m <= M, tracking
/// records and the kappa-weighted minimum.
inline ApproximabilityProfile scan_profile(const std::vector<ThetaValue>& theta, unsigned long M,
                                           double kappa = 0.0) {
    if (M < 1) throw Error("scan_profile: M >= 1 required");
    if (kappa < 0) throw Error("scan_profile: kappa >= 0 required");
    ApproximabilityProfile p;
    p.M = M;
    p.kappa = kappa;
    for (const ThetaValue& t : theta) p.theta.push_back(t.value());
    p.v.reserve(M);
    double best_v = std::numeric_limits<double>::infinity();
    double best_w = std::numeric_limits<double>::infinity();
    for (unsigned long m = 1; m <= M; ++m) {
        double prod = 1.0;
        bool zero = false;
        for (const ThetaValue& t : theta) {
            bool ez = false;
            prod *= t.dist_scaled(m, &ez);
            if (ez) {
                zero = true;
                break;
            }
        }
        double vm = zero ? 0.0 : double(m) * prod;
        p.v.push_back(vm);
        if (zero) {
            if (!p.degenerate) {
                p.degenerate = true;
                p.degenerate_m = m;
            }
            if (best_v > 0) {
                best_v = 0;
                p.record_m.push_back(m);
            }
            if (best_w > 0) {
                best_w = 0;
                p.argmin_weighted = m;
            }
            continue;
        }
        if (vm < best_v) {
            best_v = vm;
            p.record_m.push_back(m);
        }
        double wm = std::pow(double(m), 1.0 + kappa) * prod;
        if (wm < best_w) {
            best_w = wm;
            p.argmin_weighted = m;
        }
    }
    p.min_weighted = best_w;
    return p;
}

/// min over 1 <= m <= M of m^{1+kappa} * prod_l <theta_l m>, with argmin.
struct MultApproxMin {
    double value = 0;
    unsigned long argmin = 0;
    bool degenerate = false;
    unsigned long degenerate_m = 0;
};

inline MultApproxMin mult_approx_min(const std::vector<ThetaValue>& theta, unsigned long M,
                                     double kappa) {
    ApproximabilityProfile p = scan_profile(theta, M, kappa);
    return {p.min_weighted, p.argmin_weighted, p.degenerate, p.degenerate_m};
}

/// Fitted growth exponent of the approximability envelope: OLS slope of
/// -log(envelope) against log(m) over the record-setting m. A degenerate
/// profile reports +infinity. Profiles with fewer than 5 records but a flat
/// envelope (the badly-approximable signature: the early minimum is never
/// beaten) report 0.
inline double estimate_kappa(const ApproximabilityProfile& p) {
    if (p.M < 100) throw Error("estimate_kappa: M >= 100 required");
    if (p.degenerate) return std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> pts;  // (log m, -log v)
    for (unsigned long m : p.record_m) pts.emplace_back(std::log(double(m)),
                                                        -std::log(p.v[m - 1]));
    if (pts.size() < 5) {
        // A scan whose first record is never substantially beaten is the
        // bounded-below signature: the envelope is flat and the exponent 0.
        // A collapsing envelope with too few breakpoints stays undecided.
        if (!p.record_m.empty() &&
            p.v[p.record_m.back() - 1] > 0.5 * p.v[p.record_m.front() - 1])
            return 0.0;
        throw InsufficientData("estimate_kappa: fewer than 5 envelope breakpoints");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(pts.size());
    double denom = n * sxx - sx * sx;
    if (denom <= 0) throw InsufficientData("estimate_kappa: degenerate fit");
    double slope = (n * sxy - sx * sy) / denom;
    return std::max(0.0, slope);
}

inline double estimate_kappa(const std::vector<ThetaValue>& theta, unsigned long M) {
    return estimate_kappa(scan_profile(theta, M, 0.0));
}

// ------------------------------------------------------------- inclines --

/// theta_{j,l} = w_l / w_j, exact; identity on the diagonal.
inline std::vector<std::vector<Surd>> incline_matrix(const Weights& w) {
    const unsigned d = w.dim();
    std::vector<std::vector<Surd>> m(d);
    for (unsigned j = 0; j < d; ++j)
        for (unsigned l = 0; l < d; ++l) m[j].push_back(j == l ? Surd(1) : w.incline_surd(j, l));
    return m;
}

/// Row j of the incline matrix without the diagonal, as scan values.
inline std::vector<ThetaValue> incline_row(const Weights& w, unsigned j) {
    std::vector<ThetaValue> row;
    for (unsigned l = 0; l < w.dim(); ++l) {
        if (l == j) continue;
        if (w.exact())
            row.emplace_back(w.incline_surd(j, l));
        else
            row.emplace_back(w.incline_real(j, l));
    }
    return row;
}

struct InclineProfile {
    std::vector<ApproximabilityProfile> rows;   // one per j
    double c_kappa = 0;                         // min over rows of min_weighted
    bool degenerate = false;
};

inline InclineProfile incline_profile(const Weights& w, unsigned long M, double kappa) {
    InclineProfile out;
    double c = std::numeric_limits<double>::infinity();
    for (unsigned j = 0; j < w.dim(); ++j) {
        out.rows.push_back(scan_profile(incline_row(w, j), M, kappa));
        c = std::min(c, out.rows.back().min_weighted);
        out.degenerate = out.degenerate || out.rows.back().degenerate;
    }
    out.c_kappa = c;
    return out;
}

// --------------------------------------------- d=2 partial-quotient bound --

/// Sum of the first ceil(c * ln t) partial quotients of theta, the classical
/// two-dimensional error budget for bounded-quotient inclines.
inline mpz_class hl_partial_quotient_bound(const ContinuedFraction& cf, double t, double c) {
    if (t <= 1.0 || c <= 0) throw Error("hl_partial_quotient_bound: need t > 1, c > 0");
    unsigned long n = static_cast<unsigned long>(std::ceil(c * std::log(t)));
    if (n > cf.a.size())
        throw PrecisionExhausted("hl_partial_quotient_bound: expansion too short (" +
                                 std::to_string(cf.a.size()) + " < " + std::to_string(n) + ")");
    mpz_class acc = 0;
    for (unsigned long j = 0; j < n; ++j) acc += cf.a[j];
    return acc;
}

inline mpz_class hl_partial_quotient_bound(const Surd& theta, double t, double c) {
    unsigned long n = static_cast<unsigned long>(std::ceil(c * std::log(t)));
    return hl_partial_quotient_bound(continued_fraction(theta, static_cast<unsigned>(n)), t, c);
}

}  // namespace sxc
