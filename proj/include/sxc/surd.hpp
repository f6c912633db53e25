// Surd: exact arithmetic on numbers of the form  sum_i q_i * sqrt(n_i)
// with rational q_i and distinct squarefree positive integers n_i
// (n = 1 carries the rational part).
//
// The canonical form gives an exact zero test: square roots of distinct
// squarefree integers are linearly independent over Q, so the value is zero
// iff every coefficient is zero. A nonzero value therefore always gets a
// certified sign from directed-rounding interval evaluation at escalating
// precision. Strict vs non-strict comparisons against lattice hyperplanes
// reduce to this sign test and are exact.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <string>
#include <utility>

#include "sxc/real.hpp"
#include "sxc/util.hpp"

namespace sxc {

class Surd {
  public:
    Surd() = default;
    Surd(long v) {
        if (v != 0) terms_[1] = v;
    }
    Surd(const mpz_class& v) {
        if (v != 0) terms_[1] = v;
    }
    Surd(const mpq_class& q) {
        if (q != 0) terms_[1] = q;
    }

    /// q * sqrt(n), n > 0 reduced to squarefree internally.
    static Surd radical(const mpq_class& q, long n) {
        Surd s;
        if (q == 0) return s;
        auto [sq, sf] = squarefree_decompose(mpz_class(n));
        mpq_class c = q * sq;
        long key = radicand_key(sf);
        s.terms_[key] = c;
        return s;
    }
    static Surd sqrt_of(long n) { return radical(1, n); }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    mpq_class rational_value() const {
        if (terms_.empty()) return 0;
        if (!is_rational()) throw Error("Surd: not a rational value");
        return terms_.begin()->second;
    }
    bool is_integer() const {
        return is_rational() && (terms_.empty() || terms_.begin()->second.get_den() == 1);
    }

    Surd& operator+=(const Surd& o) {
        for (const auto& [n, q] : o.terms_) add_term(n, q);
        return *this;
    }
    Surd& operator-=(const Surd& o) {
        for (const auto& [n, q] : o.terms_) add_term(n, -q);
        return *this;
    }
    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator-(const Surd& a) {
        Surd r;
        for (const auto& [n, q] : a.terms_) r.terms_[n] = -q;
        return r;
    }

    friend Surd operator*(const Surd& a, const Surd& b) {
        Surd r;
        for (const auto& [na, qa] : a.terms_)
            for (const auto& [nb, qb] : b.terms_) {
                if (na == nb) {
                    r.add_term(1, qa * qb * na);
                } else {
                    auto [s, n] = squarefree_decompose(mpz_class(na) * mpz_class(nb));
                    r.add_term(radicand_key(n), qa * qb * s);
                }
            }
        return r;
    }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }

    Surd& scale(const mpq_class& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [n, q] : terms_) q *= c;
        return *this;
    }
    friend Surd operator*(Surd a, const mpq_class& c) { return a.scale(c); }
    friend Surd operator*(const mpq_class& c, Surd a) { return a.scale(c); }

    Surd inverse() const {
        if (is_zero()) throw Error("Surd: division by zero");
        if (is_rational()) return Surd(mpq_class(1 / rational_value()));
        // Split off one prime p from the radicands: x = b0 + sqrt(p)*b1 with
        // b0, b1 free of p; then 1/x = (b0 - sqrt(p)*b1) / (b0^2 - p*b1^2)
        // and the denominator involves strictly fewer primes.
        long p = 0;
        for (const auto& [n, q] : terms_)
            if (n > 1) {
                p = smallest_prime_factor(n);
                break;
            }
        Surd b0, b1;
        for (const auto& [n, q] : terms_) {
            if (n % p == 0)
                b1.add_term(radicand_key(mpz_class(n / p)), q);
            else
                b0.add_term(n, q);
        }
        Surd denom = b0 * b0 - Surd(mpq_class(p)) * (b1 * b1);
        Surd num = b0 - sqrt_of(p) * b1;
        return num * denom.inverse();
    }
    friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

    friend bool operator==(const Surd& a, const Surd& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

    /// Certified sign: -1, 0, +1.
    int sign(prec_t max_prec = prec_t{1} << 20) const {
        if (terms_.empty()) return 0;
        if (terms_.size() == 1) return sgn(terms_.begin()->second);
        bool all_pos = true, all_neg = true;
        for (const auto& [n, q] : terms_) {
            if (q > 0) all_neg = false;
            if (q < 0) all_pos = false;
        }
        if (all_pos) return 1;
        if (all_neg) return -1;
        for (prec_t p = 128; p <= max_prec; p *= 2) {
            auto [lo, hi] = interval(p);
            int slo = mpfr_sgn(lo.raw()), shi = mpfr_sgn(hi.raw());
            if (slo > 0) return 1;
            if (shi < 0) return -1;
            // value is provably nonzero (canonical form), keep refining
        }
        throw PrecisionExhausted("Surd: sign not separated at max precision");
    }

    friend int cmp(const Surd& a, const Surd& b) { return (a - b).sign(); }
    friend bool operator<(const Surd& a, const Surd& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Surd& a, const Surd& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Surd& a, const Surd& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Surd& a, const Surd& b) { return cmp(a, b) >= 0; }

    /// Rigorous enclosure [lo, hi] at the given working precision.
    std::pair<Real, Real> interval(prec_t prec) const {
        Real lo = Real::with_prec(prec), hi = Real::with_prec(prec);
        Real t = Real::with_prec(prec);
        for (const auto& [n, q] : terms_) {
            if (n == 1) {
                mpfr_set_q(t.raw(), q.get_mpq_t(), MPFR_RNDD);
                mpfr_add(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
                mpfr_set_q(t.raw(), q.get_mpq_t(), MPFR_RNDU);
                mpfr_add(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
                continue;
            }
            Real rlo = Real::with_prec(prec), rhi = Real::with_prec(prec);
            mpfr_sqrt_ui(rlo.raw(), static_cast<unsigned long>(n), MPFR_RNDD);
            mpfr_sqrt_ui(rhi.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
            if (q > 0) {
                mpfr_mul_q(t.raw(), rlo.raw(), q.get_mpq_t(), MPFR_RNDD);
                mpfr_add(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
                mpfr_mul_q(t.raw(), rhi.raw(), q.get_mpq_t(), MPFR_RNDU);
                mpfr_add(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
            } else {
                mpfr_mul_q(t.raw(), rhi.raw(), q.get_mpq_t(), MPFR_RNDD);
                mpfr_add(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
                mpfr_mul_q(t.raw(), rlo.raw(), q.get_mpq_t(), MPFR_RNDU);
                mpfr_add(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
            }
        }
        return {lo, hi};
    }

    /// Round-to-nearest numeric value at the given precision.
    Real to_real(prec_t prec = default_prec()) const {
        Real acc = Real::with_prec(prec + 32);
        Real t = Real::with_prec(prec + 32);
        for (const auto& [n, q] : terms_) {
            if (n == 1) {
                mpfr_set_q(t.raw(), q.get_mpq_t(), MPFR_RNDN);
            } else {
                mpfr_sqrt_ui(t.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
                mpfr_mul_q(t.raw(), t.raw(), q.get_mpq_t(), MPFR_RNDN);
            }
            mpfr_add(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
        }
        Real out = Real::with_prec(prec);
        mpfr_set(out.raw(), acc.raw(), MPFR_RNDN);
        return out;
    }
    double to_double() const { return to_real(64).to_double(); }

    /// Exact floor. For rational values via integer division; irrational
    /// values are separated from every integer, so interval refinement
    /// terminates.
    mpz_class floor_z() const {
        if (is_rational()) {
            if (terms_.empty()) return 0;
            const mpq_class& q = terms_.begin()->second;
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            return f;
        }
        for (prec_t p = 128; p <= (prec_t{1} << 20); p *= 2) {
            auto [lo, hi] = interval(p);
            mpz_class zlo = lo.floor_z(), zhi = hi.floor_z();
            if (zlo == zhi) return zlo;
        }
        throw PrecisionExhausted("Surd: floor not separated at max precision");
    }

    /// Exact fractional part {x} in [0, 1).
    Surd frac() const { return *this - Surd(floor_z()); }

    /// Distance to the nearest integer as a Real at the given precision.
    Real dist_to_int(prec_t prec = default_prec()) const {
        Surd f = frac();
        Real fr = f.to_real(prec);
        Real one_minus = Real(1, prec) - fr;
        return fr < one_minus ? fr : one_minus;
    }

    size_t term_count() const { return terms_.size(); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [n, q] : terms_) {
            std::string qs = q.get_str();
            if (!first && qs[0] != '-') out += "+";
            out += qs;
            if (n != 1) out += "*sqrt(" + std::to_string(n) + ")";
            first = false;
        }
        return out;
    }

  private:
    static int sgn(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

    static long radicand_key(const mpz_class& n) {
        if (!n.fits_slong_p()) throw Error("Surd: radicand overflow");
        return n.get_si();
    }

    static long smallest_prime_factor(long n) {
        for (long p = 2; p * p <= n; ++p)
            if (n % p == 0) return p;
        return n;
    }

    void add_term(long n, const mpq_class& q) {
        auto it = terms_.find(n);
        if (it == terms_.end()) {
            if (q != 0) terms_[n] = q;
            return;
        }
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }

    // radicand (squarefree, >= 1) -> rational coefficient (never zero)
    std::map<long, mpq_class> terms_;
};

}  // namespace sxc
