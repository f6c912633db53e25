// Test-only oracles, independent of the library implementation paths they
// check: a truncated formal power series with exact rational coefficients
// for the multiple Bernoulli numbers, and a plain nested-loop point counter
// with exact surd sign decisions at the margin.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sxc/bernoulli.hpp"
#include "sxc/weights.hpp"

namespace sxc_test {

using namespace sxc;

// ------------------------------------------------ formal power series oracle

using Series = std::vector<mpq_class>;  // coefficients of s^0 .. s^{len-1}

inline Series series_mul(const Series& a, const Series& b, size_t len) {
    Series r(len, 0);
    for (size_t i = 0; i < len && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < len && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Series series_div(const Series& a, const Series& b, size_t len) {
    Series q(len, 0);
    Series rem = a;
    rem.resize(len, 0);
    for (size_t n = 0; n < len; ++n) {
        mpq_class c = rem[n] / b[0];
        c.canonicalize();
        q[n] = c;
        for (size_t j = 0; n + j < len && j < b.size(); ++j) rem[n + j] -= c * b[j];
    }
    return q;
}

/// Series of w s e^{w u s} / (e^{w s} - 1), both parts shifted down by one
/// power of s before the long division.
inline Series factor_series(const mpq_class& w, const mpq_class& u, size_t len) {
    Series num(len, 0), den(len, 0);
    mpq_class wu = w * u;
    mpq_class p = w;
    for (size_t m = 0; m < len; ++m) {
        num[m] = p;
        p = p * wu / mpq_class(m + 1);
    }
    mpq_class q = w;
    for (size_t m = 0; m < len; ++m) {
        den[m] = q;
        q = q * w / mpq_class(m + 2);
    }
    return series_div(num, den, len);
}

inline mpq_class oracle_multi_bernoulli(unsigned n, const std::vector<mpq_class>& w,
                                        const std::vector<mpq_class>& u) {
    size_t len = n + 1;
    Series prod(len, 0);
    prod[0] = 1;
    for (size_t j = 0; j < w.size(); ++j)
        prod = series_mul(prod, factor_series(w[j], u[j], len), len);
    mpq_class r = prod[n] * factorial(n);
    r.canonicalize();
    return r;
}

// --------------------------------------------------- nested-loop count oracle

/// #{x : x_j >= lower, w.x < t (strict) or <= t}: nested loops in natural
/// dimension order, each candidate point decided by a double comparison with
/// a wide margin and an exact surd sign inside the margin.
inline std::int64_t oracle_count(const Weights& w, const Surd& t, bool strict, long lower) {
    const unsigned d = w.dim();
    const double td = t.to_double();
    std::vector<double> wd;
    for (unsigned j = 0; j < d; ++j) wd.push_back(w.real(j).to_double());
    const double margin = 1e-9 * (std::abs(td) + 1.0);

    std::vector<long> x(d, lower);
    std::int64_t count = 0;
    std::function<void(unsigned, double)> rec = [&](unsigned j, double partial) {
        if (j == d) {
            double diff = partial - td;
            bool inside;
            if (diff < -margin)
                inside = true;
            else if (diff > margin)
                inside = false;
            else {
                Surd exact = -t;
                for (unsigned i = 0; i < d; ++i) exact += w.surd(i) * Surd(x[i]);
                int s = exact.sign();
                inside = strict ? (s < 0) : (s <= 0);
            }
            if (inside) ++count;
            return;
        }
        for (long v = lower;; ++v) {
            double p2 = partial + wd[j] * double(v);
            if (p2 - td > margin + wd[j]) break;
            x[j] = v;
            rec(j + 1, p2);
        }
    };
    rec(0, 0.0);
    return count;
}

/// Random surd weight vector with entries q*sqrt(n) kept >= lo.
inline Weights random_surd_weights(std::mt19937_64& rng, unsigned d, double lo = 0.8) {
    static const long radicands[] = {1, 2, 3, 5, 6, 7, 10, 11, 13};
    std::vector<Surd> ws;
    for (unsigned j = 0; j < d; ++j) {
        mpq_class q(1 + (long)(rng() % 8), 1 + (long)(rng() % 4));
        q.canonicalize();
        Surd s = Surd::radical(q, radicands[rng() % 9]);
        while (s.to_double() < lo) s += Surd(1);
        ws.push_back(s);
    }
    return Weights::from_surds(ws);
}

}  // namespace sxc_test
