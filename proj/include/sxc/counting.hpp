// Exact lattice-point counts in weighted right-angled simplices, their
// one-sided limits, hyperplane hit counts, polynomial leading terms, and the
// exact invariance identities connecting open, closed and shifted counts.
//
// Counting kernel: dimensions are visited largest-weight-first and the last
// (smallest-weight) dimension collapses to a floor computation, so a count is
// O(t^{d-1}) loop iterations. Each iteration runs on doubles with a rigorous
// slack margin; only iterations whose boundary decision falls inside the
// margin escalate to exact arithmetic (surd weights: certified sign of a
// canonical surd; raw numeric weights: exact dyadic evaluation, with a
// boundary-ambiguity error on an exact hit, since strict vs non-strict is
// then unknowable for the underlying real).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sxc/bernoulli.hpp"
#include "sxc/real.hpp"
#include "sxc/surd.hpp"
#include "sxc/util.hpp"
#include "sxc/weights.hpp"

namespace sxc {

enum class BoundarySide { below, on, above };

/// Exact classification of w.x against the level t (surd weights).
inline BoundarySide classify_point(const Weights& w, const std::vector<long>& x, const Surd& t) {
    int s = (w.dot_surd(x) - t).sign();
    return s < 0 ? BoundarySide::below : (s == 0 ? BoundarySide::on : BoundarySide::above);
}

struct CountReport {
    double t = 0;
    std::int64_t exact_count = 0;  // canonical value (left limit for open, right for closed)
    Real leading;
    Real error_left;   // N(t-0) - leading(t)
    Real error_right;  // N(t+0) - leading(t)
    Real rrr;          // max(|error_left|, |error_right|)
    long tau = 0;      // jump N(t+0) - N(t-0)
};

struct InvarianceReport {
    bool ok = true;
    std::string violation;  // first failed identity with witnesses
};

namespace detail {

// exact resolvers for the two weight representations -----------------------

struct SurdExact {
    const std::vector<Surd>* w;  // ordered
    const Surd* budget;
    const std::vector<mpq_class>* lower_shift = nullptr;  // optional exact lower bounds u (ordered)

    Surd remainder(const std::vector<long>& xs, unsigned upto) const {
        Surd rem = *budget;
        for (unsigned j = 0; j < upto; ++j) rem -= (*w)[j] * Surd(xs[j]);
        return rem;
    }

    /// Largest integer c with c * w_last {<,<=} remainder; hint is within a
    /// few units of the answer on the fast path, with an exact-division
    /// fallback otherwise.
    long base_max(const std::vector<long>& xs, bool strict, long hint) const {
        Surd rem = remainder(xs, static_cast<unsigned>(w->size()) - 1);
        const Surd& wb = w->back();
        for (long c = hint + 2; c >= hint - 2; --c) {
            int s = (rem - wb * Surd(c)).sign();
            if (strict ? (s > 0) : (s >= 0)) return c;
        }
        // hint was off: certified floor of rem / w_last
        Surd q = rem / wb;
        mpz_class f = q.floor_z();
        long c = f.fits_slong_p() ? f.get_si() : throw Error("count: range overflow");
        if (strict && q.is_integer()) --c;
        return c;
    }

    /// 1 if some integer c >= lo satisfies c * w_last == remainder exactly.
    long base_eq(const std::vector<long>& xs, long lo, long hint) const {
        Surd rem = remainder(xs, static_cast<unsigned>(w->size()) - 1);
        const Surd& wb = w->back();
        for (long c = std::max(lo, hint - 2); c <= hint + 2; ++c)
            if ((rem - wb * Surd(c)).is_zero()) return 1;
        return 0;
    }
};

struct RealExact {
    const std::vector<Real>* w;  // ordered
    const Real* budget;

    /// remainder evaluated exactly (dyadic inputs; precision grown until no
    /// rounding happens).
    Real remainder(const std::vector<long>& xs, unsigned upto) const {
        prec_t base = budget->prec();
        for (const Real& x : *w) base = std::max(base, x.prec());
        for (prec_t p = base + 96; p <= (prec_t{1} << 16); p *= 2) {
            Real rem = Real::with_prec(p);
            int inexact = mpfr_set(rem.raw(), budget->raw(), MPFR_RNDN);
            Real term = Real::with_prec(p);
            for (unsigned j = 0; j < upto; ++j) {
                inexact |= mpfr_mul_si(term.raw(), (*w)[j].raw(), xs[j], MPFR_RNDN);
                inexact |= mpfr_sub(rem.raw(), rem.raw(), term.raw(), MPFR_RNDN);
            }
            if (!inexact) return rem;
        }
        throw PrecisionExhausted("numeric-weight remainder not exactly representable");
    }

    long base_max(const std::vector<long>& xs, bool strict, long hint) const {
        (void)strict;  // an exact boundary hit is ambiguous for either mode
        Real rem = remainder(xs, static_cast<unsigned>(w->size()) - 1);
        const Real& wb = w->back();
        prec_t p = rem.prec() + 64;
        for (long c = hint + 2; c >= hint - 2; --c) {
            Real lhs = Real::with_prec(p);
            int inexact = mpfr_mul_si(lhs.raw(), wb.raw(), c, MPFR_RNDN);
            inexact |= mpfr_sub(lhs.raw(), rem.raw(), lhs.raw(), MPFR_RNDN);
            if (inexact) throw PrecisionExhausted("numeric-weight comparison inexact");
            int s = lhs.sign();
            if (s == 0)
                throw BoundaryAmbiguity(
                    "lattice point exactly on the boundary near t = " +
                    std::to_string(budget->to_double()) +
                    "; strictness undecidable for raw numeric weights");
            if (s > 0) return c;
        }
        throw Error("count: fast-path hint out of range for numeric weights");
    }

    long base_eq(const std::vector<long>&, long, long) const {
        throw UnsupportedRepresentation("hyperplane hit count requires surd weights");
    }
};

template <class Exact>
std::int64_t count_rec(const std::vector<double>& wd, const std::vector<long>& lower,
                       double margin_abs, const Exact& ex, bool strict, std::vector<long>& xs,
                       unsigned k, double rem) {
    const unsigned d = static_cast<unsigned>(wd.size());
    if (k == d - 1) {
        double y = rem / wd[k];
        if (y < static_cast<double>(lower[k]) - 0.5) return 0;
        if (y > 9e15) throw Error("count: range overflow");
        double fl = std::floor(y);
        double fr = y - fl;
        double my = margin_abs / wd[k] + std::abs(y) * 1e-13 + 1e-13;
        long cmax;
        if (fr > my && fr < 1.0 - my)
            cmax = static_cast<long>(fl);
        else
            cmax = ex.base_max(xs, strict, static_cast<long>(std::llround(y)));
        std::int64_t cnt = static_cast<std::int64_t>(cmax) - lower[k] + 1;
        return cnt > 0 ? cnt : 0;
    }
    std::int64_t total = 0;
    for (long x = lower[k];; ++x) {
        xs[k] = x;
        std::int64_t c =
            count_rec(wd, lower, margin_abs, ex, strict, xs, k + 1, rem - wd[k] * double(x));
        if (c == 0) break;  // budgets shrink with x, counts are monotone
        total += c;
    }
    return total;
}

template <class Exact>
long count_eq_rec(const std::vector<double>& wd, const std::vector<long>& lower,
                  double margin_abs, const Exact& ex, std::vector<long>& xs, unsigned k,
                  double rem) {
    const unsigned d = static_cast<unsigned>(wd.size());
    if (k == d - 1) {
        double y = rem / wd[k];
        if (y < static_cast<double>(lower[k]) - 0.5) return 0;
        double my = margin_abs / wd[k] + std::abs(y) * 1e-13 + 1e-13;
        double fr = y - std::floor(y);
        if (fr > my && fr < 1.0 - my) return 0;  // certainly no integer solution
        return ex.base_eq(xs, lower[k], static_cast<long>(std::llround(y)));
    }
    double need = 0;  // minimal budget the inner dimensions require
    for (unsigned j = k + 1; j < d; ++j) need += wd[j] * static_cast<double>(lower[j]);
    long total = 0;
    for (long x = lower[k];; ++x) {
        xs[k] = x;
        double rem2 = rem - wd[k] * double(x);
        if (rem2 < need - margin_abs - 1e-9 * (std::abs(rem) + 1)) break;
        total += count_eq_rec(wd, lower, margin_abs, ex, xs, k + 1, rem2);
    }
    return total;
}

}  // namespace detail

class Counter {
  public:
    explicit Counter(Weights w, BernoulliEngine eng = BernoulliEngine())
        : w_(std::move(w)), eng_(std::move(eng)) {
        const unsigned d = w_.dim();
        order_.resize(d);
        for (unsigned j = 0; j < d; ++j) order_[j] = j;
        // largest weight first; the smallest weight becomes the floor level
        std::sort(order_.begin(), order_.end(), [&](unsigned a, unsigned b) {
            return w_.real(a) > w_.real(b);
        });
        for (unsigned j : order_) wd_.push_back(w_.real(j).to_double());
    }

    const Weights& weights() const { return w_; }
    const BernoulliEngine& engine() const { return eng_; }

    // ---------------------------------------------------------- raw counts --

    /// #{x in Z^d : x_j >= 1, w.x < t}   (strict) — the open simplex count;
    /// include_boundary switches to w.x <= t, i.e. the right limit.
    std::int64_t count_open(const Surd& t, bool include_boundary = false) const {
        return count_with_lower(t, std::vector<long>(w_.dim(), 1), !include_boundary);
    }

    /// #{x in Z^d : x_j >= 0, w.x <= t}  — the closed simplex count;
    /// the left limit drops the boundary shell.
    std::int64_t count_closed(const Surd& t, bool include_boundary = true) const {
        if (t.sign() < 0) return 0;
        return count_with_lower(t, std::vector<long>(w_.dim(), 0), !include_boundary);
    }

    /// #{x in Z^d : x_j > u_j, w.x < t + w.u}; depends on u only through {u}.
    std::int64_t count_shifted(const Surd& t, const ShiftVector& u,
                               bool include_boundary = false) const {
        if (u.u.size() != w_.dim()) throw Error("count_shifted: |u| != d");
        std::vector<long> lower(w_.dim());
        Surd budget = t;
        for (unsigned j = 0; j < w_.dim(); ++j) {
            const mpq_class& uj = u.u[j];
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), uj.get_num_mpz_t(), uj.get_den_mpz_t());
            if (!f.fits_slong_p()) throw Error("count_shifted: shift overflow");
            lower[j] = f.get_si() + 1;  // smallest integer > u_j
            budget += w_.surd(j) * Surd(uj);
        }
        return count_with_lower(budget, lower, !include_boundary);
    }

    /// Numeric-weight variants (raw Real weights; exact dyadic decisions,
    /// boundary hits raise BoundaryAmbiguity).
    std::int64_t count_open_numeric(const Real& t, bool include_boundary = false) const {
        return count_with_lower_numeric(t, std::vector<long>(w_.dim(), 1), !include_boundary);
    }
    std::int64_t count_closed_numeric(const Real& t, bool include_boundary = true) const {
        if (t.sign() < 0) return 0;
        return count_with_lower_numeric(t, std::vector<long>(w_.dim(), 0), !include_boundary);
    }

    /// tau(t) = #{x in Z^d_{>0} : w.x = t}, exact; requires surd weights.
    long tau(const Surd& t) const {
        if (!w_.exact())
            throw UnsupportedRepresentation("tau requires surd weights (exact equality)");
        if (t.sign() <= 0) return 0;
        const unsigned d = w_.dim();
        std::vector<Surd> w_ord;
        for (unsigned j : order_) w_ord.push_back(w_.surd(j));
        detail::SurdExact ex{&w_ord, &t};
        std::vector<long> xs(d, 0), lower(d, 1);
        double td = t.to_double();
        double margin = 1e-12 * (std::abs(td) + 1.0) * (d + 1);
        return detail::count_eq_rec(wd_, lower, margin, ex, xs, 0, td);
    }

    // ------------------------------------------------------- leading terms --

    /// L_d^-(t) = B*_d(t - w.e_half; w) / (d! prod w)
    Real leading_open(const Real& t) const { return leading_with_shift(t, -1); }
    /// L_d^+(t) = B*_d(t + w.e_half; w) / (d! prod w)
    Real leading_closed(const Real& t) const { return leading_with_shift(t, +1); }

    /// L_d(t; w, {u}) = B*_d(t + w.((u)); w) / (d! prod w)
    Real leading_shifted(const Real& t, const ShiftVector& u) const {
        if (u.u.size() != w_.dim()) throw Error("leading_shifted: |u| != d");
        Real shift = t;
        for (unsigned j = 0; j < w_.dim(); ++j)
            shift += w_.real(j) * Real(sawtooth(u.u[j]), w_.prec());
        return star_over_norm(shift);
    }

    // -------------------------------------------------------- full reports --

    CountReport report_open(const Surd& t) const {
        std::int64_t nl = count_open(t, false), nr = count_open(t, true);
        return make_report(t, nl, nr, leading_open(t.to_real(w_.prec())), nl);
    }

    CountReport report_closed(const Surd& t) const {
        std::int64_t nl = count_closed(t, false), nr = count_closed(t, true);
        return make_report(t, nl, nr, leading_closed(t.to_real(w_.prec())), nr);
    }

    CountReport report_shifted(const Surd& t, const ShiftVector& u) const {
        std::int64_t nl = count_shifted(t, u, false), nr = count_shifted(t, u, true);
        return make_report(t, nl, nr, leading_shifted(t.to_real(w_.prec()), u), nl);
    }

    // -------------------------------------------------- invariance checks --

    /// Exact integer identities linking the open count at t, shifted counts
    /// at t - w.{u}, and the closed count at t - w.e_1:
    ///     N^-(t) = N(t - w.{u}; w, {u}) = N^+(t - w.e_1) - tau(t),
    /// plus the limit-paired error/rrr identities.
    InvarianceReport invariance_check(const Surd& t, const std::vector<ShiftVector>& us) const {
        InvarianceReport rep;
        Surd wsum = w_.sum_surd();
        if (!((t - wsum).sign() > 0)) throw Error("invariance_check: need t > w.e_1");

        const std::int64_t n_open_l = count_open(t, false);
        const std::int64_t n_open_r = count_open(t, true);
        const long tau_t = tau(t);
        const Surd s = t - wsum;
        const std::int64_t n_closed_r = count_closed(s, true);
        const std::int64_t n_closed_l = count_closed(s, false);

        auto fail = [&](const std::string& msg) {
            if (rep.ok) {
                rep.ok = false;
                rep.violation = msg;
            }
        };

        if (n_open_r - n_open_l != tau_t)
            fail("jump identity: N^-(t+0) - N^-(t-0) != tau, t=" + std::to_string(t.to_double()));
        if (n_open_l != n_closed_r - tau_t)
            fail("N^-(t) != N^+(t - w.e_1) - tau at t=" + std::to_string(t.to_double()));
        if (n_open_l != n_closed_l)
            fail("left limits: N^-(t-0) != N^+(t-w.e_1-0) at t=" + std::to_string(t.to_double()));
        if (n_open_r != n_closed_r)
            fail("right limits: N^-(t+0) != N^+(t-w.e_1+0) at t=" + std::to_string(t.to_double()));

        for (const ShiftVector& u : us) {
            if (!u.in_margin_set())
                throw Error("invariance_check: shift outside the margin set");
            std::vector<mpq_class> fr = u.frac();
            Surd tshift = t;
            for (unsigned j = 0; j < w_.dim(); ++j) tshift -= w_.surd(j) * Surd(fr[j]);
            // direct enumeration with the *unreduced* shift u
            std::int64_t n_s_l = count_shifted(tshift, u, false);
            std::int64_t n_s_r = count_shifted(tshift, u, true);
            if (n_s_l != n_open_l || n_s_r != n_open_r) {
                fail("shifted count mismatch at t=" + std::to_string(t.to_double()) +
                     " (shift enumeration)");
                break;
            }
        }

        // rrr identity: RRR^-(t) == RRR^+(t - w.e_1); the leading terms of the
        // two reports agree analytically, so compare through them.
        CountReport ro = report_open(t);
        CountReport rc = report_closed(s);
        double scale = std::max(1.0, std::abs(ro.rrr.to_double()));
        if (std::abs(ro.rrr.to_double() - rc.rrr.to_double()) > 1e-20 * scale)
            fail("rrr identity violated at t=" + std::to_string(t.to_double()));
        return rep;
    }

  private:
    Real star_over_norm(const Real& shifted_t) const {
        const unsigned d = w_.dim();
        Real val = eng_.star_poly(d, shifted_t, w_.reals());
        return val / (Real(mpq_class(factorial(d)), w_.prec()) * w_.prod_real());
    }

    Real leading_with_shift(const Real& t, int dir) const {
        Real half_sum = w_.sum_real() / Real(2, w_.prec());
        return star_over_norm(dir < 0 ? t - half_sum : t + half_sum);
    }

    CountReport make_report(const Surd& t, std::int64_t nl, std::int64_t nr, Real leading,
                            std::int64_t canonical) const {
        CountReport r;
        r.t = t.to_double();
        r.exact_count = canonical;
        r.leading = leading;
        r.error_left = Real(mpz_class(nl), w_.prec()) - leading;
        r.error_right = Real(mpz_class(nr), w_.prec()) - leading;
        Real al = abs(r.error_left), ar = abs(r.error_right);
        r.rrr = al > ar ? al : ar;
        r.tau = static_cast<long>(nr - nl);
        return r;
    }

    std::int64_t count_with_lower(const Surd& budget, const std::vector<long>& lower,
                                  bool strict) const {
        if (!w_.exact()) throw UnsupportedRepresentation("exact counting requires surd weights");
        const unsigned d = w_.dim();
        std::vector<Surd> w_ord;
        std::vector<long> lower_ord(d);
        for (unsigned j = 0; j < d; ++j) {
            w_ord.push_back(w_.surd(order_[j]));
            lower_ord[j] = lower[order_[j]];
        }
        detail::SurdExact ex{&w_ord, &budget};
        std::vector<long> xs(d, 0);
        double bd = budget.to_double();
        double margin = 1e-12 * (std::abs(bd) + 1.0) * (d + 1);
        return detail::count_rec(wd_, lower_ord, margin, ex, strict, xs, 0, bd);
    }

    std::int64_t count_with_lower_numeric(const Real& budget, const std::vector<long>& lower,
                                          bool strict) const {
        const unsigned d = w_.dim();
        std::vector<Real> w_ord;
        std::vector<long> lower_ord(d);
        for (unsigned j = 0; j < d; ++j) {
            w_ord.push_back(w_.real(order_[j]));
            lower_ord[j] = lower[order_[j]];
        }
        detail::RealExact ex{&w_ord, &budget};
        std::vector<long> xs(d, 0);
        double bd = budget.to_double();
        double margin = 1e-12 * (std::abs(bd) + 1.0) * (d + 1);
        return detail::count_rec(wd_, lower_ord, margin, ex, strict, xs, 0, bd);
    }

    Weights w_;
    BernoulliEngine eng_;
    std::vector<unsigned> order_;
    std::vector<double> wd_;  // ordered double approximations
};

}  // namespace sxc
