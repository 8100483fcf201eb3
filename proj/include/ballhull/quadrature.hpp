#pragma once

// Adaptive Simpson quadrature with interval-doubling error estimate, shared
// by the closed-form law evaluations and the geometry integrals.

#include <cmath>
#include <functional>
#include <vector>

#include "core.hpp"

namespace ballhull {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    int max_depth = 48;
    double tail_threshold = 1e-12;
};

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, int max_depth, bool* ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth) {
        if (std::fabs(delta) > 15.0 * tol) *ok = false;
        return left + right + delta / 15.0;
    }
    if (std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth, ok) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth, ok);
}

}  // namespace detail

/// Integral of f over [a,b] to absolute tolerance spec.abs_tol.
/// Throws QuadratureError if the tolerance was not reached within max_depth.
template <typename F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) return 0.0;
    bool ok = true;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double r = detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, spec.abs_tol, 0,
                                            spec.max_depth, &ok);
    if (!ok)
        throw QuadratureError("integrate: requested abs_tol " + std::to_string(spec.abs_tol) +
                              " not reached on [" + std::to_string(a) + "," + std::to_string(b) + "]");
    return r;
}

/// Integral over [a,b] with interior breakpoints; each smooth piece is
/// integrated separately so kinks do not defeat the error estimate.
template <typename F>
double integrate_pieces(const F& f, double a, double b, std::vector<double> breaks,
                        const QuadratureSpec& spec = {}) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    QuadratureSpec piece = spec;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
        if (hi > lo) total += integrate(f, lo, hi, piece);
    }
    return total;
}

/// Integral of f over [a, infinity) where f decays super-exponentially:
/// integrates on doubling panels until a panel contributes less than
/// spec.tail_threshold in absolute value.
template <typename F>
double integrate_tail(const F& f, double a, double panel0, const QuadratureSpec& spec = {}) {
    double total = 0.0, lo = a, w = panel0;
    for (int i = 0; i < 64; ++i) {
        double piece = integrate(f, lo, lo + w, spec);
        total += piece;
        if (std::fabs(piece) < spec.tail_threshold) return total;
        lo += w;
        w *= 2.0;
    }
    throw QuadratureError("integrate_tail: integrand did not decay");
}

}  // namespace ballhull
