// Real: a value-semantics wrapper over MPFR with precision tracked in bits.
//
// Precision model: every value carries its own precision; the result of a
// binary operation is computed at the larger of the two operand precisions
// (rounded to nearest). Values created from literals adopt the thread-local
// default precision, so running a whole computation at doubled precision only
// requires constructing its inputs at doubled precision.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "sxc/util.hpp"

namespace sxc {

using prec_t = mpfr_prec_t;

inline constexpr prec_t kDefaultPrecBits = 128;
inline constexpr prec_t kMinPrecBits = 64;

inline prec_t& default_prec_slot() {
    thread_local prec_t p = kDefaultPrecBits;
    return p;
}

inline prec_t default_prec() { return default_prec_slot(); }

inline void set_default_prec(prec_t bits) {
    if (bits < kMinPrecBits) throw Error("precision_bits must be >= 64");
    default_prec_slot() = bits;
}

/// RAII scope that temporarily switches the thread default precision.
struct PrecScope {
    prec_t saved;
    explicit PrecScope(prec_t bits) : saved(default_prec()) { set_default_prec(bits); }
    ~PrecScope() { default_prec_slot() = saved; }
    PrecScope(const PrecScope&) = delete;
    PrecScope& operator=(const PrecScope&) = delete;
};

class Real {
    struct PrecTag {};
    Real(PrecTag, prec_t prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }

  public:
    Real() : Real(PrecTag{}, default_prec()) {}

    /// Zero value carrying the given working precision.
    static Real with_prec(prec_t prec) { return Real(PrecTag{}, prec); }

    Real(double d, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    Real(int i, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    Real(long i, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    Real(const mpz_class& z, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& q, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    /// Decimal string, e.g. "0.1100010000000000000000010".
    Real(const std::string& s, prec_t prec = default_prec()) {
        mpfr_init2(v_, clamp(prec));
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            mpfr_clear(v_);
            throw Error("Real: cannot parse '" + s + "'");
        }
    }

    Real(const Real& o) : Real(PrecTag{}, mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(PrecTag{}, mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

    mpz_class floor_z() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    long floor_long() const {
        Real f = Real::with_prec(prec());
        mpfr_floor(f.v_, v_);
        return mpfr_get_si(f.v_, MPFR_RNDN);
    }

    std::string str(int digits10 = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits10, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    // in-place compound ops keep this->prec()
    Real& operator+=(const Real& o) { return apply(mpfr_add, o); }
    Real& operator-=(const Real& o) { return apply(mpfr_sub, o); }
    Real& operator*=(const Real& o) { return apply(mpfr_mul, o); }
    Real& operator/=(const Real& o) { return apply(mpfr_div, o); }

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
    friend Real operator-(const Real& a) {
        Real r = Real::with_prec(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  private:
    static prec_t clamp(prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }

    template <typename F>
    Real& apply(F f, const Real& o) {
        f(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    template <typename F>
    static Real bin(F f, const Real& a, const Real& b) {
        Real r = Real::with_prec(a.prec() > b.prec() ? a.prec() : b.prec());
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// ------------------------------------------------------------- functions --

inline Real abs(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real floor(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}
inline Real ceil(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}
/// Fractional part {x} = x - floor(x), in [0, 1).
inline Real frac(const Real& x) { return x - floor(x); }

inline Real sqrt(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real exp(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real sin(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real cos(const Real& x) {
    Real r = Real::with_prec(x.prec());
    mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& x, long e) {
    Real r = Real::with_prec(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline Real pow(const Real& x, const Real& e) {
    Real r = Real::with_prec(x.prec() > e.prec() ? x.prec() : e.prec());
    mpfr_pow(r.raw(), x.raw(), e.raw(), MPFR_RNDN);
    return r;
}
inline Real pi(prec_t prec = default_prec()) {
    Real r = Real::with_prec(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

/// sin(pi*x) with the pi multiplication carried at guard precision.
inline Real sin_pi(const Real& x) {
    prec_t p = x.prec() + 32;
    Real px = pi(p);
    mpfr_mul(px.raw(), px.raw(), x.raw(), MPFR_RNDN);
    Real r = Real::with_prec(x.prec());
    mpfr_sin(r.raw(), px.raw(), MPFR_RNDN);
    return r;
}

/// Distance from x to the nearest integer, in [0, 1/2].
inline Real nearest_int_dist(const Real& x) {
    Real f = frac(x);
    Real g = Real(1, x.prec()) - f;
    return f < g ? f : g;
}

}  // namespace sxc
