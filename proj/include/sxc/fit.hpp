// Small ordinary-least-squares fits for the growth models used by the
// sweeps: pure power, power with a log correction, and pure poly-log.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sxc/util.hpp"

namespace sxc {

struct FitResult {
    std::string model;
    std::vector<std::string> names;  // coefficient names, intercept first
    std::vector<double> coef;
    std::vector<double> se;  // standard errors
    double residual_norm = 0;
    size_t n_points = 0;
};

namespace detail {

/// OLS with explicit design matrix (rows x cols, cols <= 3).
inline FitResult ols(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                     std::string model, std::vector<std::string> names) {
    const size_t n = X.size(), k = X.empty() ? 0 : X[0].size();
    if (n < 8) throw InsufficientData("fit requires at least 8 points");
    double xtx[3][3] = {};
    double xty[3] = {};
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < k; ++a) {
            xty[a] += X[i][a] * y[i];
            for (size_t b = 0; b < k; ++b) xtx[a][b] += X[i][a] * X[i][b];
        }
    }
    // invert xtx by Gauss-Jordan (k <= 3, well-scaled inputs)
    double inv[3][3] = {};
    for (size_t a = 0; a < k; ++a) inv[a][a] = 1;
    double m[3][3];
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) m[a][b] = xtx[a][b];
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12) throw InsufficientData("fit design matrix singular");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        double d = m[col][col];
        for (size_t b = 0; b < k; ++b) {
            m[col][b] /= d;
            inv[col][b] /= d;
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            for (size_t b = 0; b < k; ++b) {
                m[r][b] -= f * m[col][b];
                inv[r][b] -= f * inv[col][b];
            }
        }
    }
    FitResult out;
    out.model = std::move(model);
    out.names = std::move(names);
    out.n_points = n;
    out.coef.resize(k);
    for (size_t a = 0; a < k; ++a) {
        double c = 0;
        for (size_t b = 0; b < k; ++b) c += inv[a][b] * xty[b];
        out.coef[a] = c;
    }
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        double pred = 0;
        for (size_t a = 0; a < k; ++a) pred += X[i][a] * out.coef[a];
        ss += (y[i] - pred) * (y[i] - pred);
    }
    out.residual_norm = std::sqrt(ss);
    double sigma2 = (n > k) ? ss / double(n - k) : 0.0;
    out.se.resize(k);
    for (size_t a = 0; a < k; ++a) out.se[a] = std::sqrt(sigma2 * inv[a][a]);
    return out;
}

}  // namespace detail

/// log v = c + alpha log t            (pure power law)
inline FitResult fit_power(const std::vector<double>& t, const std::vector<double>& v) {
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(v[i] > 0) || !(t[i] > 1)) continue;
        X.push_back({1.0, std::log(t[i])});
        y.push_back(std::log(v[i]));
    }
    return detail::ols(X, y, "power t^alpha", {"c", "alpha"});
}

/// log v = c + alpha log t + beta log log t
inline FitResult fit_power_log(const std::vector<double>& t, const std::vector<double>& v) {
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(v[i] > 0) || !(t[i] > std::exp(1.0))) continue;
        X.push_back({1.0, std::log(t[i]), std::log(std::log(t[i]))});
        y.push_back(std::log(v[i]));
    }
    return detail::ols(X, y, "power t^alpha (log t)^beta", {"c", "alpha", "beta"});
}

/// log v = c + gamma log log t        (pure poly-log growth)
inline FitResult fit_polylog(const std::vector<double>& t, const std::vector<double>& v) {
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(v[i] > 0) || !(t[i] > std::exp(1.0))) continue;
        X.push_back({1.0, std::log(std::log(t[i]))});
        y.push_back(std::log(v[i]));
    }
    return detail::ols(X, y, "poly-log (log t)^gamma", {"c", "gamma"});
}

}  // namespace sxc
