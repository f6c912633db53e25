// Exact-rational Bernoulli numbers/polynomials and multiple (Bernoulli-Norlund)
// polynomial evaluation: the plain form B_k(t; w, u), the star form
// B*_k(t; w) built from half-integer shifts (only even coefficients survive),
// its periodization in the shift argument, and the polynomial values of the
// Barnes zeta function at non-positive integers.
//
// Everything is evaluated through a generic field parameter: mpq_class gives
// the exact path (rational w, u, t), Real gives the configurable-precision
// numeric path. The same composition-sum generator drives both.
#pragma once

#include <gmpxx.h>

#include <vector>

#include "sxc/real.hpp"
#include "sxc/util.hpp"

namespace sxc {

namespace detail {

template <class T>
T field_pow(const T& x, unsigned e) {
    T r = T(mpq_class(1));
    T b = x;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline mpq_class to_field(const mpq_class& q, const mpq_class&) { return q; }
inline Real to_field(const mpq_class& q, const Real& like) { return Real(q, like.prec()); }

}  // namespace detail

class BernoulliEngine {
  public:
    explicit BernoulliEngine(unsigned k_max = 64, prec_t prec = kDefaultPrecBits)
        : k_max_(k_max), prec_(prec) {
        // B_k from the recurrence sum_{j=0}^{k} C(k+1,j) B_j = 0, B_0 = 1.
        // The generating function s/(e^s - 1) fixes B_1 = -1/2.
        table_.reserve(k_max_ + 1);
        table_.push_back(1);
        for (unsigned k = 1; k <= k_max_; ++k) {
            mpq_class acc = 0;
            for (unsigned j = 0; j < k; ++j) acc += mpq_class(binomial(k + 1, j)) * table_[j];
            mpq_class bk = -acc / mpq_class(binomial(k + 1, k));
            bk.canonicalize();
            table_.push_back(bk);
        }
    }

    unsigned k_max() const { return k_max_; }
    prec_t prec() const { return prec_; }

    const mpq_class& number(unsigned k) const {
        check_capacity(k);
        return table_[k];
    }

    /// B_k(u) = sum_n C(k,n) B_n u^{k-n}; exact for mpq_class u.
    template <class T>
    T poly(unsigned k, const T& u) const {
        check_capacity(k);
        T acc = T(mpq_class(0));
        for (unsigned n = 0; n <= k; ++n) {
            mpq_class c = mpq_class(binomial(k, n)) * table_[n];
            if (c == 0) continue;
            acc = acc + detail::to_field(c, u) * detail::field_pow(u, k - n);
        }
        return acc;
    }

    /// B_k(1/2) = -(1 - 2^{1-k}) B_k, exact.
    mpq_class poly_half(unsigned k) const {
        check_capacity(k);
        if (k == 0) return 1;
        // 2^{1-k} = 1 / 2^{k-1}
        mpq_class p(mpz_class(1), mpz_class(1) << (k - 1));
        mpq_class r = -(1 - p) * table_[k];
        r.canonicalize();
        return r;
    }

    /// Multiple Bernoulli number B_n(w, u) =
    ///   sum_{n_1+...+n_d = n} n!/(n_1!...n_d!) prod_j B_{n_j}(u_j) w_j^{n_j}.
    template <class T>
    T multi_number(unsigned n, const std::vector<T>& w, const std::vector<T>& u) const {
        check_capacity(n);
        const unsigned d = static_cast<unsigned>(w.size());
        if (u.size() != w.size()) throw Error("multi_number: |w| != |u|");
        if (d == 0) return T(mpq_class(n == 0 ? 1 : 0));
        // f[j][m] = B_m(u_j) w_j^m / m!
        std::vector<std::vector<T>> f(d);
        for (unsigned j = 0; j < d; ++j) {
            f[j].reserve(n + 1);
            for (unsigned m = 0; m <= n; ++m) {
                T term = poly(m, u[j]) * detail::field_pow(w[j], m);
                f[j].push_back(term * detail::to_field(mpq_class(1, factorial(m)), term));
            }
        }
        T acc = T(mpq_class(0));
        for_each_composition(n, d, [&](const std::vector<unsigned>& c) {
            T prod = T(mpq_class(1));
            for (unsigned j = 0; j < d; ++j) prod = prod * f[j][c[j]];
            acc = acc + prod;
        });
        return acc * detail::to_field(mpq_class(factorial(n)), acc);
    }

    /// B_k(t; w, u) = sum_n C(k,n) B_n(w,u) t^{k-n}.
    template <class T>
    T multi_poly(unsigned k, const T& t, const std::vector<T>& w, const std::vector<T>& u) const {
        check_capacity(k);
        T acc = T(mpq_class(0));
        for (unsigned n = 0; n <= k; ++n) {
            T coeff = multi_number(n, w, u);
            acc = acc + detail::to_field(mpq_class(binomial(k, n)), t) * coeff *
                            detail::field_pow(t, k - n);
        }
        return acc;
    }

    /// B_k(t; w) = B_k(t; w, 0).
    template <class T>
    T multi_poly_zero_shift(unsigned k, const T& t, const std::vector<T>& w) const {
        std::vector<T> u(w.size(), T(mpq_class(0)));
        return multi_poly(k, t, w, u);
    }

    /// Star coefficient B*_{2n}(w) =
    ///   sum_{n_1+...+n_d = n} (2n)!/((2n_1)!...(2n_d)!) prod_j B_{2n_j}(1/2) w_j^{2n_j}.
    template <class T>
    T star_coeff(unsigned two_n, const std::vector<T>& w) const {
        check_capacity(two_n);
        if (two_n % 2 == 1) return T(mpq_class(0));  // odd star coefficients vanish
        const unsigned n = two_n / 2;
        const unsigned d = static_cast<unsigned>(w.size());
        if (d == 0) return T(mpq_class(n == 0 ? 1 : 0));
        T acc = w[0] * T(mpq_class(0));  // zero carrying the operand precision
        for_each_composition(n, d, [&](const std::vector<unsigned>& c) {
            mpq_class rat = factorial(two_n);
            for (unsigned j = 0; j < d; ++j) {
                rat /= factorial(2 * c[j]);
                rat *= poly_half(2 * c[j]);
            }
            if (rat == 0) return;
            T prod = detail::to_field(rat, acc);
            for (unsigned j = 0; j < d; ++j)
                if (c[j]) prod = prod * detail::field_pow(w[j], 2 * c[j]);
            acc = acc + prod;
        });
        return acc;
    }

    /// B*_k(t; w) = sum_{0<=n<=k/2} k!/((2n)!(k-2n)!) B*_{2n}(w) t^{k-2n}.
    template <class T>
    T star_poly(unsigned k, const T& t, const std::vector<T>& w) const {
        check_capacity(k);
        T acc = T(mpq_class(0));
        for (unsigned n = 0; 2 * n <= k; ++n) {
            mpq_class c = mpq_class(factorial(k)) / (factorial(2 * n) * factorial(k - 2 * n));
            acc = acc + detail::to_field(c, t) * star_coeff(2 * n, w) *
                            detail::field_pow(t, k - 2 * n);
        }
        return acc;
    }

    /// Periodization in the shift argument: B*_k(t + w.((u)); w) with
    /// ((u)) = {u} - 1/2 applied coordinatewise. The sawtooth overloads take
    /// pre-reduced ((u)) values.
    template <class T>
    T periodized(unsigned k, const T& t, const std::vector<T>& w,
                 const std::vector<T>& sawtooth_u) const {
        if (sawtooth_u.size() != w.size()) throw Error("periodized: |w| != |u|");
        T shift = t;
        for (size_t j = 0; j < w.size(); ++j) shift = shift + w[j] * sawtooth_u[j];
        return star_poly(k, shift, w);
    }

    mpq_class periodized_shift(unsigned k, const mpq_class& t, const std::vector<mpq_class>& w,
                               const std::vector<mpq_class>& u) const;
    Real periodized_shift(unsigned k, const Real& t, const std::vector<Real>& w,
                          const std::vector<Real>& u) const;

    /// zeta(-k, t, w) = (-1)^d k! / (w_1...w_d (k+d)!) * B_{k+d}(t; w).
    template <class T>
    T barnes_zeta_nonpos(unsigned k, const T& t, const std::vector<T>& w) const {
        const unsigned d = static_cast<unsigned>(w.size());
        check_capacity(k + d);
        mpq_class c = mpq_class(factorial(k)) / factorial(k + d);
        if (d % 2 == 1) c = -c;
        T r = detail::to_field(c, t) * multi_poly_zero_shift(k + d, t, w);
        for (const T& wj : w) r = r / wj;
        return r;
    }

  private:
    void check_capacity(unsigned k) const {
        if (k > k_max_)
            throw CapacityError("Bernoulli index " + std::to_string(k) + " exceeds k_max " +
                                std::to_string(k_max_));
    }

    unsigned k_max_;
    prec_t prec_;
    std::vector<mpq_class> table_;
};

/// ((u)) = {u} - 1/2, exact for rationals.
inline mpq_class sawtooth(const mpq_class& u) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
    mpq_class r = u - mpq_class(f) - mpq_class(1, 2);
    r.canonicalize();
    return r;
}

inline Real sawtooth(const Real& u) { return frac(u) - Real(mpq_class(1, 2), u.prec()); }

inline mpq_class BernoulliEngine::periodized_shift(unsigned k, const mpq_class& t,
                                                   const std::vector<mpq_class>& w,
                                                   const std::vector<mpq_class>& u) const {
    std::vector<mpq_class> saw;
    saw.reserve(u.size());
    for (const mpq_class& x : u) saw.push_back(sawtooth(x));
    return periodized(k, t, w, saw);
}

inline Real BernoulliEngine::periodized_shift(unsigned k, const Real& t,
                                              const std::vector<Real>& w,
                                              const std::vector<Real>& u) const {
    std::vector<Real> saw;
    saw.reserve(u.size());
    for (const Real& x : u) saw.push_back(sawtooth(x));
    return periodized(k, t, w, saw);
}

/// One evaluation request for the general polynomial B_k(t; w, u).
struct MultiBernoulliQuery {
    unsigned k = 0;
    Real t;
    std::vector<Real> w;
    std::vector<Real> u;  // empty means zero shift

    void validate() const {
        if (w.empty()) throw Error("MultiBernoulliQuery: d >= 1 required");
        if (!u.empty() && u.size() != w.size())
            throw Error("MultiBernoulliQuery: |u| must be 0 or d");
        for (const Real& x : w)
            if (x.sign() <= 0) throw Error("MultiBernoulliQuery: weights must be positive");
    }

    Real evaluate(const BernoulliEngine& eng) const {
        validate();
        if (u.empty()) return eng.multi_poly_zero_shift(k, t, w);
        return eng.multi_poly(k, t, w, u);
    }
};

}  // namespace sxc
