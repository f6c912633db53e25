// Smoothing bump kernel, its Fourier transform (cached on a geometric grid),
// the sine-product lattice sums bounding the smoothed counting error, their
// truncation-tail estimates, Spencer sums, and the balanced error bound
// T = t^{(d-1)/(1+kappa)}.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "sxc/diophantine.hpp"
#include "sxc/quadrature.hpp"
#include "sxc/real.hpp"
#include "sxc/util.hpp"
#include "sxc/weights.hpp"

namespace sxc {

// --------------------------------------------------------- smoothing kernel

/// omega(x) = c * exp(-1/(1-4x^2)) on (-1/2, 1/2), with c fixed once by
/// quadrature so the mass is 1. The transform is real and even; it is cached
/// on a geometric grid with cubic interpolation because the lattice sums
/// evaluate it at up to |T|^3 arguments.
class SmoothingKernel {
  public:
    SmoothingKernel() {
        double mass = adaptive_quadrature([](double x) { return raw_bump(x); }, -0.5, 0.5,
                                          1e-13);
        c_ = 1.0 / mass;
        second_moment_ = c_ * adaptive_quadrature(
                                  [](double x) { return x * x * raw_bump(x); }, -0.5, 0.5, 1e-14);
        build_cache();
        fit_decay();
    }

    double bump(double x) const { return c_ * raw_bump(x); }

    /// Transform by direct quadrature (used for test points and the cache).
    double bump_ft_direct(double y) const {
        int panels = 4000 + static_cast<int>(8.0 * std::fabs(y));
        double v = adaptive_quadrature(
            [&](double x) { return raw_bump(x) * std::cos(2.0 * M_PI * x * y); }, 0.0, 0.5,
            1e-14, panels);
        return 2.0 * c_ * v;
    }

    /// Cached transform with cubic interpolation on the geometric grid.
    double bump_ft(double y) const {
        double ay = std::fabs(y);
        if (ay < grid_lo_) return 1.0 - 2.0 * M_PI * M_PI * second_moment_ * ay * ay;
        if (ay >= grid_hi_) return 0.0;  // below cutoff; tail bounds account for it
        double u = std::log(ay / grid_lo_) / log_step_;
        long i = static_cast<long>(u);
        if (i < 1) i = 1;
        if (i > static_cast<long>(cache_.size()) - 3) i = static_cast<long>(cache_.size()) - 3;
        double s = u - double(i);
        // Catmull-Rom through the four surrounding samples
        double p0 = cache_[i - 1], p1 = cache_[i], p2 = cache_[i + 1], p3 = cache_[i + 2];
        return p1 + 0.5 * s * (p2 - p0 +
                               s * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                    s * (3 * (p1 - p2) + p3 - p0)));
    }

    /// Empirical decay certificate: |bump_ft(y)| <= decay_C * (1+|y|)^{-decay_A}
    /// over the cached table.
    double decay_A() const { return decay_A_; }
    double decay_C() const { return decay_C_; }

  private:
    static double raw_bump(double x) {
        double q = 1.0 - 4.0 * x * x;
        return q > 0 ? std::exp(-1.0 / q) : 0.0;
    }

    void build_cache() {
        // |bump_ft| falls below 1e-15 near y ~ 300; beyond the grid it is
        // treated as zero and the truncation-tail estimate covers it.
        grid_lo_ = 1.0 / 64;
        grid_hi_ = 320.0;
        log_step_ = std::log(1.02);
        size_t n = static_cast<size_t>(std::ceil(std::log(grid_hi_ / grid_lo_) / log_step_)) + 4;
        cache_.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            double y = grid_lo_ * std::exp(log_step_ * double(i));
            cache_.push_back(bump_ft_direct(y));
        }
    }

    void fit_decay() {
        decay_A_ = 6.0;
        double c = 0.0;
        for (size_t i = 0; i < cache_.size(); ++i) {
            double y = grid_lo_ * std::exp(log_step_ * double(i));
            double v = std::fabs(cache_[i]);
            if (v < 1e-250) continue;
            c = std::max(c, v * std::pow(1.0 + y, decay_A_));
        }
        decay_C_ = std::max(c, 1.0);
    }

    double c_ = 1.0;
    double second_moment_ = 0.0;
    std::vector<double> cache_;
    double grid_lo_ = 0, grid_hi_ = 0, log_step_ = 1;
    double decay_A_ = 6.0, decay_C_ = 1.0;
};

inline const SmoothingKernel& shared_kernel() {
    static SmoothingKernel k;
    return k;
}

// ------------------------------------------------------------ lattice sums

struct S2Row {
    double sum = 0;              // (1/(2^{d-1} pi)) sum |ft(m/T)| / (m prod |sin pi theta m|)
    unsigned long m_summed = 0;  // terms actually accumulated
    unsigned long M = 0;         // nominal truncation
    double tail = std::numeric_limits<double>::quiet_NaN();  // bound on the skipped part
};

/// <theta m> for one scan value, throwing on an exact integer hit.
inline double sine_dist(const ThetaValue& th, unsigned long m) {
    bool zero = false;
    double dist = th.dist_scaled(m, &zero);
    if (zero)
        throw ZeroSine("sin(pi theta m) vanishes at m = " + std::to_string(m) +
                       " (rational incline)");
    return dist;
}

/// One row of the smoothed lattice sum, truncated at M (default |T|^3 at the
/// call sites). Terms beyond the kernel-transform cutoff cannot contribute;
/// the skipped range is covered by the reported tail bound when an
/// approximability envelope (c_kappa at exponent kappa) is supplied.
inline S2Row s2_row(const std::vector<ThetaValue>& theta_row, double T, unsigned long M,
                    const SmoothingKernel& kernel = shared_kernel(),
                    double env_kappa = std::numeric_limits<double>::quiet_NaN(),
                    double env_c = std::numeric_limits<double>::quiet_NaN()) {
    if (T <= 0) throw Error("s2_row: T > 0 required");
    const unsigned d = static_cast<unsigned>(theta_row.size()) + 1;
    const double norm = 1.0 / (std::pow(2.0, d - 1) * M_PI);
    const double ft_cutoff = 1e-13;

    S2Row out;
    out.M = M;
    double acc = 0;
    unsigned long m = 1;
    for (; m <= M; ++m) {
        double ft = std::fabs(kernel.bump_ft(double(m) / T));
        if (ft < ft_cutoff) break;
        double denom = double(m);
        for (const ThetaValue& th : theta_row) denom *= std::sin(M_PI * sine_dist(th, m));
        acc += ft / denom;
    }
    out.sum = norm * acc;
    out.m_summed = (m > M) ? M : m - 1;

    if (out.m_summed < M && std::isfinite(env_kappa) && std::isfinite(env_c) && env_c > 0) {
        // terms m > m_summed: |ft(m/T)| <= C_A (m/T)^{-A} and
        // prod |sin(pi theta m)| >= 2^{d-1} c_kappa m^{-(1+kappa)}   (measured
        // envelope, extrapolated beyond its scan range — an estimate, not a
        // certificate)
        double A = kernel.decay_A(), CA = kernel.decay_C();
        double expo = A - env_kappa - 1.0;  // sum of m^{-(expo+1)} beyond the cut
        if (expo > 0.0) {
            double m0 = double(out.m_summed);
            double tail_terms = std::pow(m0, -expo) / expo;
            out.tail = norm * CA * std::pow(T, A) * tail_terms / (std::pow(2.0, d - 1) * env_c);
        }
    } else if (out.m_summed == M) {
        out.tail = 0.0;  // nominal truncation reached; nothing skipped
    }
    return out;
}

struct LatticeSumReport {
    double T = 0;
    unsigned long M = 0;
    std::vector<S2Row> rows;  // one per incline-matrix row
    double total = 0;         // sum of row sums
    double tail = 0;          // sum of row tail bounds (NaN if any row lacks one)
};

inline LatticeSumReport s2_total(const Weights& w, double T, unsigned long M,
                                 const SmoothingKernel& kernel = shared_kernel(),
                                 double env_kappa = std::numeric_limits<double>::quiet_NaN(),
                                 double env_c = std::numeric_limits<double>::quiet_NaN()) {
    LatticeSumReport rep;
    rep.T = T;
    rep.M = M;
    for (unsigned j = 0; j < w.dim(); ++j) {
        rep.rows.push_back(s2_row(incline_row(w, j), T, M, kernel, env_kappa, env_c));
        rep.total += rep.rows.back().sum;
        rep.tail += rep.rows.back().tail;
    }
    return rep;
}

/// Spencer sum: sum_{m <= K} 1 / (m prod_l |sin(pi theta_l m)|).
inline double spencer_sum(const std::vector<ThetaValue>& theta_row, unsigned long K) {
    double acc = 0;
    for (unsigned long m = 1; m <= K; ++m) {
        double denom = double(m);
        for (const ThetaValue& th : theta_row) denom *= std::sin(M_PI * sine_dist(th, m));
        acc += 1.0 / denom;
    }
    return acc;
}

/// Truncated, shift-sampled smoothed row sum (the sup of its magnitude over
/// shifts is bounded by the corresponding s2_row). Evaluated as a surrogate
/// at a concrete shift u with both index ranges truncated at trunc.
inline std::complex<double> smoothed_row_sum(const Weights& w, unsigned j,
                                             const std::vector<double>& u, double T,
                                             long trunc,
                                             const SmoothingKernel& kernel = shared_kernel()) {
    const unsigned d = w.dim();
    if (u.size() != d) throw Error("smoothed_row_sum: |u| != d");
    std::vector<double> theta;  // theta_{j,l}, l != j, in slot order
    std::vector<unsigned> cols;
    for (unsigned l = 0; l < d; ++l) {
        if (l == j) continue;
        theta.push_back(w.incline_real(j, l).to_double());
        cols.push_back(l);
    }
    std::complex<double> outer = 0.0;
    for (long mj = -trunc; mj <= trunc; ++mj) {
        if (mj == 0) continue;
        double ft = kernel.bump_ft(double(mj) / T);
        if (std::fabs(ft) < 1e-15) continue;
        std::complex<double> term =
            std::exp(std::complex<double>(0, 2 * M_PI * mj * u[j])) * ft / double(mj);
        for (size_t i = 0; i < theta.size(); ++i) {
            std::complex<double> inner = 0.0;
            for (long ml = -trunc; ml <= trunc; ++ml) {
                double ftl = kernel.bump_ft(double(ml) / T);
                if (std::fabs(ftl) < 1e-15 && ml != 0) continue;
                inner += std::exp(std::complex<double>(0, 2 * M_PI * ml * u[cols[i]])) * ftl /
                         (theta[i] * double(mj) - double(ml));
            }
            term *= inner;
        }
        outer += term;
    }
    double scale = std::pow(2.0 * M_PI, d);
    return outer / scale;  // |1/(2 i pi)|^d absorbed into the magnitude scale
}

// ----------------------------------------------------- balanced error bound

struct ErrorBoundReport {
    double t = 0;
    double kappa = 0;
    double c_kappa = 0;
    double T = 0;             // balanced smoothing scale t^{(d-1)/(1+kappa)}
    LatticeSumReport s2;      // truncated at M = |T|^3
    double smoothing_term = 0;  // C * T^{-1} t^{d-1}
    double slack_constant = 1;  // the heuristic C (the analysis leaves it unspecified)
    double total = 0;           // s2.total + s2.tail + smoothing_term
};

inline ErrorBoundReport error_bound(double t, const Weights& w, double kappa, double c_kappa,
                                    double slack_constant = 1.0,
                                    const SmoothingKernel& kernel = shared_kernel()) {
    if (t <= 1) throw Error("error_bound: t > 1 required");
    if (!(kappa > 0) && !(c_kappa > 0))
        throw Error("error_bound: need kappa > 0 or a measured c_kappa");
    const unsigned d = w.dim();
    ErrorBoundReport rep;
    rep.t = t;
    rep.kappa = kappa;
    rep.c_kappa = c_kappa;
    rep.slack_constant = slack_constant;
    rep.T = std::pow(t, double(d - 1) / (1.0 + kappa));
    double Tf = std::floor(rep.T);
    unsigned long M = (Tf < 1) ? 1ul
                               : static_cast<unsigned long>(
                                     std::min(1e18, Tf * Tf * Tf));
    rep.s2 = s2_total(w, rep.T, M, kernel, kappa, c_kappa);
    rep.smoothing_term = slack_constant * std::pow(t, double(d - 1)) / rep.T;
    double tail = std::isnan(rep.s2.tail) ? 0.0 : rep.s2.tail;
    rep.total = rep.s2.total + tail + rep.smoothing_term;
    return rep;
}

}  // namespace sxc
