// Adaptive Gauss-Kronrod (G7/K15) quadrature for smooth, possibly
// oscillatory integrands, real- or complex-valued, with an absolute error
// target. The 15-point rule resolves the gently oscillatory integrands that
// arise here with very few panels, which matters because the simplex
// transform oracle nests one quadrature per dimension.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "sxc/util.hpp"

namespace sxc {

namespace detail {

// K15 abscissae (positive half) and weights; G7 weights on the shared nodes.
inline constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {0.129484966168870, 0.279705391489277,
                                      0.381830050505119, 0.417959183673469};

}  // namespace detail

/// Integrates f over [a, b] to absolute tolerance tol. V is double or
/// std::complex<double>. Throws on failure to converge within the panel
/// budget.
template <class V = double, class F>
V adaptive_quadrature(const F& f, double a, double b, double tol, int max_panels = 4000) {
    if (!(b > a)) return V(0);
    struct Panel {
        double a, b, err;
        V val;
    };
    auto eval = [&](double x0, double x1) {
        const double c = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
        V resk = V(0), resg = V(0);
        for (int i = 0; i < 8; ++i) {
            const double dx = h * detail::kKronrodX[i];
            V fv = (i == 7) ? f(c) : V(f(c - dx) + f(c + dx));
            resk = resk + fv * detail::kKronrodW[i];
            if (i % 2 == 1 || i == 7) resg = resg + fv * detail::kGaussW[i / 2];
        }
        return Panel{x0, x1, std::abs(resk - resg) * h, resk * h};
    };
    std::vector<Panel> panels{eval(a, b)};
    while (true) {
        double total_err = 0;
        int worst = -1;
        double worst_err = 0;
        for (int i = 0; i < (int)panels.size(); ++i) {
            total_err += panels[i].err;
            if (panels[i].err > worst_err) {
                worst_err = panels[i].err;
                worst = i;
            }
        }
        if (total_err <= tol || worst < 0) break;
        if ((int)panels.size() >= max_panels)
            throw Error("adaptive_quadrature: no convergence within panel budget");
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        panels[worst] = eval(p.a, mid);
        panels.push_back(eval(mid, p.b));
    }
    V acc = V(0);
    for (const Panel& p : panels) acc = acc + p.val;
    return acc;
}

}  // namespace sxc
