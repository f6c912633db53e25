// Fourier transform of the standard simplex indicator and the machinery
// built on it: the nondiagonal closed form, its split into a pure power part
// and an exponential part, exact rational identity checks (symmetrization,
// partial fractions), and the Fourier coefficients of simplex counts and of
// periodized multiple Bernoulli polynomials.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sxc/bernoulli.hpp"
#include "sxc/quadrature.hpp"
#include "sxc/real.hpp"
#include "sxc/util.hpp"
#include "sxc/weights.hpp"

namespace sxc {

// ------------------------------------------------------------ complex type --

struct Cplx {
    Real re, im;

    Cplx() = default;
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(const Real& r) : re(r), im(Real(0, r.prec())) {}
    explicit Cplx(double r, prec_t prec = kDefaultPrecBits)
        : re(r, prec), im(Real(0, prec)) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    Cplx conj() const { return {re, -im}; }
    Real abs() const { return sqrt(re * re + im * im); }
    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
};

/// e^{2 i pi x}, with the 2*pi*x product carried at guard precision.
inline Cplx cis2pi(const Real& x) {
    prec_t p = x.prec() + 32;
    Real ang = pi(p);
    mpfr_mul(ang.raw(), ang.raw(), x.raw(), MPFR_RNDN);
    mpfr_mul_ui(ang.raw(), ang.raw(), 2, MPFR_RNDN);
    Real c = Real::with_prec(x.prec()), s = Real::with_prec(x.prec());
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    return {c, s};
}

/// 1/(2 i pi) at the given precision.
inline Cplx inv_2ipi(prec_t prec = kDefaultPrecBits) {
    Real p2 = pi(prec) * Real(2, prec);
    return {Real(0, prec), Real(-1, prec) / p2};
}

inline Cplx cplx_pow(const Cplx& base, unsigned e) {
    Cplx r(Real(1, base.re.prec()), Real(0, base.re.prec()));
    Cplx b = base;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// ------------------------------------------------------------- quadrature --

/// Transform of the |y|-dimensional standard simplex by iterated adaptive
/// quadrature: the outer coordinate is integrated over [0,1] against the
/// scaled transform of the one-lower-dimensional simplex. Purely numeric,
/// double precision, absolute error target tol.
inline std::complex<double> simplex_ft_quadrature(const std::vector<double>& y,
                                                  double tol = 1e-9) {
    const unsigned d = static_cast<unsigned>(y.size());
    if (d == 0) return 1.0;
    if (d > 4) throw Error("simplex_ft_quadrature: oracle scale is d <= 4");
    std::vector<double> inner(y.begin(), y.end() - 1);
    const double yd = y.back();
    auto f = [&](double x) -> std::complex<double> {
        double beta = 1.0 - x;
        std::vector<double> ys(inner.size());
        for (size_t j = 0; j < inner.size(); ++j) ys[j] = beta * inner[j];
        std::complex<double> g = simplex_ft_quadrature(ys, tol / 8.0);
        double pw = 1.0;
        for (unsigned k = 1; k < d; ++k) pw *= beta;
        return std::exp(std::complex<double>(0.0, 2.0 * M_PI * yd * x)) * g * pw;
    };
    return adaptive_quadrature<std::complex<double>>(f, 0.0, 1.0, tol);
}

// --------------------------------------------------------- support patterns --

/// Subset J of coordinate slots (bitmask) and its complement.
struct SupportPattern {
    unsigned d = 0;
    std::uint32_t mask = 0;

    static SupportPattern of_point(const std::vector<Real>& y) {
        SupportPattern p;
        p.d = static_cast<unsigned>(y.size());
        for (unsigned j = 0; j < p.d; ++j)
            if (!y[j].is_zero()) p.mask |= (1u << j);
        return p;
    }
    bool contains(unsigned j) const { return (mask >> j) & 1u; }
    unsigned size() const { return static_cast<unsigned>(__builtin_popcount(mask)); }
    SupportPattern complement() const { return {d, ~mask & ((1u << d) - 1u)}; }
    std::vector<unsigned> slots() const {
        std::vector<unsigned> out;
        for (unsigned j = 0; j < d; ++j)
            if (contains(j)) out.push_back(j);
        return out;
    }
};

// ------------------------------------------------------------ closed forms --

/// Nondiagonal closed form for the transform of the |J|-dimensional simplex:
///   (1/(2 i pi))^{|J|} sum_j (e^{2 i pi y_j} - 1) / (y_j prod_{l != j} (y_j - y_l)).
/// All coordinates must be nonzero and pairwise distinct; near-diagonal
/// points are flagged (value still returned), never regularized.
inline Cplx simplex_ft_closed(const std::vector<Real>& yj, bool* near_diagonal = nullptr) {
    if (yj.empty()) throw Error("simplex_ft_closed: empty support");
    const prec_t prec = yj[0].prec();
    if (near_diagonal) *near_diagonal = false;
    Real maxabs = Real(0, prec);
    for (const Real& v : yj) {
        if (v.is_zero()) throw Error("simplex_ft_closed: zero coordinate in support");
        Real a = abs(v);
        if (a > maxabs) maxabs = a;
    }
    Cplx acc(Real(0, prec), Real(0, prec));
    for (size_t j = 0; j < yj.size(); ++j) {
        Real denom = yj[j];
        for (size_t l = 0; l < yj.size(); ++l) {
            if (l == j) continue;
            Real diff = yj[j] - yj[l];
            if (near_diagonal && abs(diff) < Real(1e-6, prec) * maxabs) *near_diagonal = true;
            denom *= diff;
        }
        Cplx num = cis2pi(yj[j]) - Cplx(Real(1, prec), Real(0, prec));
        acc = acc + num / denom;
    }
    return acc * cplx_pow(inv_2ipi(prec), static_cast<unsigned>(yj.size()));
}

/// Split of the d-dimensional transform at a point supported on J:
///   X1: pure inverse-power part, a composition sum over J;
///   X2: exponential part with the full d-fold products (zero coordinates
///       contribute their plain y_j factors).
struct FtSplit {
    Cplx x1, x2;
    bool near_diagonal = false;
    Cplx total() const { return x1 + x2; }
};

inline FtSplit simplex_ft_decomposed(const std::vector<Real>& y) {
    const unsigned d = static_cast<unsigned>(y.size());
    if (d == 0) throw Error("simplex_ft_decomposed: empty point");
    const prec_t prec = y[0].prec();
    std::vector<unsigned> J = SupportPattern::of_point(y).slots();
    if (J.empty()) throw Error("simplex_ft_decomposed: y = 0 is not supported here");

    FtSplit out;
    Real maxabs = Real(0, prec);
    for (unsigned j : J) {
        Real a = abs(y[j]);
        if (a > maxabs) maxabs = a;
    }
    for (size_t a = 0; a < J.size(); ++a)
        for (size_t b = a + 1; b < J.size(); ++b)
            if (abs(y[J[a]] - y[J[b]]) < Real(1e-6, prec) * maxabs) out.near_diagonal = true;

    // X1 = (-1)^{|J|} sum_{n=|J|}^{d} (1/2ipi)^n 1/(d-n)!
    //        sum_{c in Z_{>0}^J, |c| = n} prod y_j^{-c_j}
    Cplx x1(Real(0, prec), Real(0, prec));
    for (unsigned n = static_cast<unsigned>(J.size()); n <= d; ++n) {
        Real power_sum(0, prec);
        for_each_positive_composition(n, static_cast<unsigned>(J.size()),
                                      [&](const std::vector<unsigned>& c) {
                                          Real prod(1, prec);
                                          for (size_t i = 0; i < J.size(); ++i)
                                              prod *= pow(y[J[i]], -(long)c[i]);
                                          power_sum += prod;
                                      });
        Cplx term = cplx_pow(inv_2ipi(prec), n) *
                    (power_sum * Real(mpq_class(1, factorial(d - n)), prec));
        x1 = x1 + term;
    }
    if (J.size() % 2 == 1) x1 = -x1;
    out.x1 = x1;

    // X2 = (1/2ipi)^d sum_{j in J} e^{2 i pi y_j} / (y_j prod_{l != j} (y_j - y_l))
    Cplx x2(Real(0, prec), Real(0, prec));
    for (unsigned j : J) {
        Real denom = y[j];
        for (unsigned l = 0; l < d; ++l) {
            if (l == j) continue;
            denom *= y[j] - y[l];
        }
        x2 = x2 + cis2pi(y[j]) / denom;
    }
    out.x2 = cplx_pow(inv_2ipi(prec), d) * Cplx(Real(1, prec), Real(0, prec)) * x2;
    return out;
}

/// Transform of the d-dimensional simplex at an arbitrary point: volume at
/// y = 0, the nondiagonal closed form at full support, the split form when
/// some coordinates vanish.
inline Cplx simplex_ft_point(const std::vector<Real>& y, bool* near_diagonal = nullptr) {
    const unsigned d = static_cast<unsigned>(y.size());
    prec_t prec = d ? y[0].prec() : kDefaultPrecBits;
    bool all_zero = true, all_nonzero = true;
    for (const Real& v : y) (v.is_zero() ? all_nonzero : all_zero) = false;
    if (all_zero) {
        if (near_diagonal) *near_diagonal = false;
        return Cplx(Real(mpq_class(1, factorial(d)), prec), Real(0, prec));
    }
    if (all_nonzero) return simplex_ft_closed(y, near_diagonal);
    FtSplit s = simplex_ft_decomposed(y);
    if (near_diagonal) *near_diagonal = s.near_diagonal;
    return s.total();
}

// ------------------------------------------------- exact rational identities --

/// Symmetrization identity, exact: for nondiagonal rational y_J and n >= |J|,
///   sum_j 1/(y_j^{n-|J|+1} prod_{k != j}(y_j - y_k))
///     = (-1)^{|J|-1} sum_{|c|_1 = n, c > 0} prod_j y_j^{-c_j}.
inline bool symmetrization_identity(const std::vector<mpq_class>& y, unsigned n) {
    const unsigned k = static_cast<unsigned>(y.size());
    if (k == 0 || n < k) throw Error("symmetrization_identity: need nonempty J and n >= |J|");
    for (size_t a = 0; a < y.size(); ++a) {
        if (y[a] == 0) throw Error("symmetrization_identity: zero coordinate");
        for (size_t b = a + 1; b < y.size(); ++b)
            if (y[a] == y[b]) throw Error("symmetrization_identity: diagonal point");
    }
    auto qpow = [](const mpq_class& base, unsigned e) {
        mpq_class r = 1;
        for (unsigned i = 0; i < e; ++i) r *= base;
        return r;
    };
    mpq_class lhs = 0;
    for (size_t j = 0; j < y.size(); ++j) {
        mpq_class denom = qpow(y[j], n - k + 1);
        for (size_t l = 0; l < y.size(); ++l)
            if (l != j) denom *= (y[j] - y[l]);
        lhs += 1 / denom;
    }
    mpq_class rhs = 0;
    for_each_positive_composition(n, k, [&](const std::vector<unsigned>& c) {
        mpq_class prod = 1;
        for (size_t j = 0; j < y.size(); ++j) prod *= qpow(y[j], c[j]);
        rhs += 1 / prod;
    });
    if (k % 2 == 0) rhs = -rhs;
    lhs.canonicalize();
    rhs.canonicalize();
    return lhs == rhs;
}

/// Partial fraction decomposition, exact:
///   1/prod_k (z - y_k) = sum_j 1/(z - y_j) * 1/prod_{k != j}(y_j - y_k).
inline bool partial_fraction_check(const mpq_class& z, const std::vector<mpq_class>& y) {
    for (size_t a = 0; a < y.size(); ++a) {
        if (z == y[a]) throw Error("partial_fraction_check: z collides with a pole");
        for (size_t b = a + 1; b < y.size(); ++b)
            if (y[a] == y[b]) throw Error("partial_fraction_check: diagonal point");
    }
    mpq_class lhs = 1;
    for (const mpq_class& yk : y) lhs /= (z - yk);
    mpq_class rhs = 0;
    for (size_t j = 0; j < y.size(); ++j) {
        mpq_class term = 1 / (z - y[j]);
        for (size_t k = 0; k < y.size(); ++k)
            if (k != j) term /= (y[j] - y[k]);
        rhs += term;
    }
    lhs.canonicalize();
    rhs.canonicalize();
    return lhs == rhs;
}

// ----------------------------------------------------- Fourier coefficients --

/// Coefficient of e^{2 i pi m.u} in the expansion of the shifted-simplex
/// count as a periodic function of the shift:
///   N_m(t; w) = (t^d / prod w) * X(m_1 t / w_1, ..., m_d t / w_d),
/// with the volume value t^d/(d! prod w) at m = 0.
inline Cplx fourier_coefficient_N(const std::vector<long>& m, const Real& t, const Weights& w,
                                  bool* near_diagonal = nullptr) {
    const unsigned d = w.dim();
    if (m.size() != d) throw Error("fourier_coefficient_N: |m| != d");
    const prec_t prec = w.prec();
    std::vector<Real> y;
    y.reserve(d);
    for (unsigned j = 0; j < d; ++j) y.push_back(Real(m[j], prec) * t / w.real(j));
    Cplx x = simplex_ft_point(y, near_diagonal);
    Real scale = pow(t, (long)d) / w.prod_real();
    return x * scale;
}

/// The same coefficient split into a polynomial part Q_m/(d! prod w) and an
/// exponential part R_m with incline small denominators.
struct CoefficientSplit {
    Cplx q_over_norm;  // Q_m(t; w) / (d! prod w)
    Cplx r;            // R_m(t; w)
    Cplx total() const { return q_over_norm + r; }
};

/// b_{n,m}(w, J) = (-1)^{|J|} n! (1/2ipi)^n sum_{|c|_1=n, c>0 on J} prod (w_j/m_j)^{c_j}
inline Cplx detail_b_nm(unsigned n, const std::vector<long>& m, const Weights& w,
                        const std::vector<unsigned>& J) {
    const prec_t prec = w.prec();
    Real power_sum(0, prec);
    for_each_positive_composition(n, static_cast<unsigned>(J.size()),
                                  [&](const std::vector<unsigned>& c) {
                                      Real prod(1, prec);
                                      for (size_t i = 0; i < J.size(); ++i) {
                                          Real ratio = w.real(J[i]) / Real(m[J[i]], prec);
                                          prod *= pow(ratio, (long)c[i]);
                                      }
                                      power_sum += prod;
                                  });
    Cplx out = cplx_pow(inv_2ipi(prec), n) * (power_sum * Real(mpq_class(factorial(n)), prec));
    if (J.size() % 2 == 1) out = -out;
    return out;
}

/// b_{k,m}(t; w): coefficient of e^{2 i pi m.u} in the expansion of the
/// periodized multiple Bernoulli polynomial of degree k. The bare t^k term
/// belongs to m = 0 only.
inline Cplx bernoulli_fourier_coeff(unsigned k, const std::vector<long>& m, const Real& t,
                                    const Weights& w) {
    const unsigned d = w.dim();
    if (m.size() != d) throw Error("bernoulli_fourier_coeff: |m| != d");
    const prec_t prec = w.prec();
    std::vector<unsigned> J;
    for (unsigned j = 0; j < d; ++j)
        if (m[j] != 0) J.push_back(j);
    Cplx acc(Real(0, prec), Real(0, prec));
    if (J.empty()) acc = Cplx(pow(t, (long)k), Real(0, prec));
    if (!J.empty() && J.size() <= k) {
        for (unsigned n = static_cast<unsigned>(J.size()); n <= k; ++n) {
            mpq_class binomial_part =
                mpq_class(factorial(k)) / (factorial(n) * factorial(k - n));
            Cplx term = detail_b_nm(n, m, w, J) *
                        (pow(t, (long)(k - n)) * Real(binomial_part, prec));
            acc = acc + term;
        }
    }
    return acc;
}

/// R_m(t; w) = (1/2ipi)^d sum_{j: m_j != 0}
///               e^{2 i pi (m_j/w_j) t} / (m_j prod_{l != j} (theta_{j,l} m_j - m_l))
inline Cplx fourier_coefficient_R(const std::vector<long>& m, const Real& t, const Weights& w) {
    const unsigned d = w.dim();
    const prec_t prec = w.prec();
    Cplx acc(Real(0, prec), Real(0, prec));
    for (unsigned j = 0; j < d; ++j) {
        if (m[j] == 0) continue;
        Real denom(m[j], prec);
        for (unsigned l = 0; l < d; ++l) {
            if (l == j) continue;
            denom *= w.incline_real(j, l) * Real(m[j], prec) - Real(m[l], prec);
        }
        Real phase = Real(m[j], prec) * t / w.real(j);
        acc = acc + cis2pi(phase) / denom;
    }
    return cplx_pow(inv_2ipi(prec), d) * Cplx(Real(1, prec), Real(0, prec)) * acc;
}

inline CoefficientSplit fourier_coefficient_decomposed(const std::vector<long>& m, const Real& t,
                                                       const Weights& w) {
    const unsigned d = w.dim();
    const prec_t prec = w.prec();
    CoefficientSplit out;
    Cplx q = bernoulli_fourier_coeff(d, m, t, w);  // Q_m(t; w) coincides with b_{d,m}
    Real norm = Real(mpq_class(factorial(d)), prec) * w.prod_real();
    out.q_over_norm = q / norm;
    out.r = fourier_coefficient_R(m, t, w);
    return out;
}

}  // namespace sxc
