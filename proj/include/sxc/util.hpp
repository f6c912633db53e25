// Shared small utilities: error types, exact integer combinatorics,
// composition enumeration, squarefree decomposition.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sxc {

// ---------------------------------------------------------------- errors --

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested degree/index exceeds the configured table capacity.
struct CapacityError : Error {
    using Error::Error;
};

/// A strict-vs-nonstrict boundary decision could not be certified at the
/// maximum allowed precision (raw numeric weights only).
struct BoundaryAmbiguity : Error {
    using Error::Error;
};

/// A numeric expansion step (continued fraction digit, interval sign, ...)
/// became unreliable at the available precision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// sin(pi * theta * m) vanished exactly: rational incline fed into a lattice
/// sum that requires irrational inclines.
struct ZeroSine : Error {
    using Error::Error;
};

/// Not enough data points for a requested fit.
struct InsufficientData : Error {
    using Error::Error;
};

/// Operation needs an exact (surd/rational) weight representation.
struct UnsupportedRepresentation : Error {
    using Error::Error;
};

/// Bad CLI/sweep configuration.
struct ConfigError : Error {
    using Error::Error;
};

// ---------------------------------------------------- exact combinatorics --

inline mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// n! / (c_0! c_1! ... c_{k-1}!) for a composition c of n.
inline mpz_class multinomial(const std::vector<unsigned>& parts) {
    unsigned n = 0;
    for (unsigned p : parts) n += p;
    mpz_class r = factorial(n);
    for (unsigned p : parts)
        if (p > 1) r /= factorial(p);
    return r;
}

/// Visits every vector c in Z_{>=0}^k with c_0 + ... + c_{k-1} = n.
/// The same generator drives the multiple-Bernoulli composition sums and the
/// composition sums of the simplex-transform coefficients.
inline void for_each_composition(unsigned n, unsigned k,
                                 const std::function<void(const std::vector<unsigned>&)>& visit) {
    if (k == 0) {
        if (n == 0) visit({});
        return;
    }
    std::vector<unsigned> c(k, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
        if (pos == k - 1) {
            c[pos] = left;
            visit(c);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            c[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
}

/// Visits every vector c in Z_{>0}^k with |c|_1 = n (positive compositions).
inline void for_each_positive_composition(unsigned n, unsigned k,
                                          const std::function<void(const std::vector<unsigned>&)>& visit) {
    if (k == 0) {
        if (n == 0) visit({});
        return;
    }
    if (n < k) return;
    std::vector<unsigned> shifted;
    for_each_composition(n - k, k, [&](const std::vector<unsigned>& c) {
        shifted = c;
        for (auto& v : shifted) v += 1;
        visit(shifted);
    });
}

// ---------------------------------------------------------- squarefree --

/// m = s^2 * n with n squarefree; returns {s, n}. Trial division; intended
/// for the small radicands that arise from products of preset surds.
inline std::pair<mpz_class, mpz_class> squarefree_decompose(mpz_class m) {
    mpz_class s = 1, n = 1;
    if (m <= 0) throw Error("squarefree_decompose: radicand must be positive");
    for (mpz_class p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
        if (e % 2 == 1) n *= p;
    }
    n *= m;  // leftover prime
    return {s, n};
}

// ------------------------------------------------------------- rendering --

/// Fixed 17-significant-digit rendering used by every CSV/JSON emitter.
inline std::string render_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace sxc
