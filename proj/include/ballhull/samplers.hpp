#pragma once

// Seeded Poisson samplers for the three point-process models:
//   * ball process, intensity lambda (1-|x|)^delta on B_d,
//   * half-space process, intensity h^delta dh dv on R^{d-1} x R_+,
//   * dual radial process, intensity lambda |x|^{alpha-d} outside B_d.
//
// The generic samplers accept any d >= 2.  The 2/3-dimensional fast paths
// can restrict the ball process to a boundary annulus 1-|x| <= eps; the
// restriction is an exact Poisson restriction, and callers pick eps so that
// every hull functional of interest is unaffected except on events of
// negligible probability (see boundary_annulus_eps).

#include <vector>

#include "core.hpp"
#include "geom.hpp"
#include "rng.hpp"

namespace ballhull {

struct HalfSpacePoint {
    VecD v;       // d-1 spatial coordinates
    double h = 0; // height >= 0
};

/// Simulation window for the half-space process: [-L,L]^{d-1} x [0,H].
struct Window {
    double L = 0.0, H = 0.0;
    void validate() const {
        if (!(L > 0.0) || !(H > 0.0)) throw InvalidParams("Window: L and H must be > 0");
    }
};

namespace detail {

// Regularized incomplete beta I_x(a,b), continued-fraction form.
inline double betacf(double a, double b, double x) {
    const double eps = 1e-15, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

inline double betainc_reg(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double bt = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta_fn(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

/// Height law of the ball process: h = 1-|x| follows Beta(delta+1, d).
inline double ball_height_cdf(const ModelParams& p, double h) {
    return betainc_reg(p.delta + 1.0, static_cast<double>(p.d), h);
}

namespace detail {

// Inverse of the annulus-conditioned height CDF by bisection (cold path,
// used for delta > 0 only).
inline double height_quantile_conditioned(const ModelParams& p, double eps, double u) {
    double target = u * betainc_reg(p.delta + 1.0, p.d, eps);
    double lo = 0.0, hi = eps;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (betainc_reg(p.delta + 1.0, p.d, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline P3 uniform_sphere3(RngStream& rng) {
    for (;;) {
        double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0), z = rng.uniform(-1.0, 1.0);
        double n2 = x * x + y * y + z * z;
        if (n2 > 1e-12 && n2 <= 1.0) {
            double n = std::sqrt(n2);
            return {x / n, y / n, z / n};
        }
    }
}

inline VecD uniform_sphere(int d, RngStream& rng) {
    VecD u(d);
    double n2;
    do {
        n2 = 0.0;
        for (auto& c : u) {
            c = rng.normal();
            n2 += c * c;
        }
    } while (n2 < 1e-24);
    double n = std::sqrt(n2);
    for (auto& c : u) c /= n;
    return u;
}

}  // namespace detail

/// Full ball process sampler, any d >= 2.  Count is Poisson with mean
/// lambda d kappa_d B(d, delta+1); direction uniform, 1-r ~ Beta(delta+1,d).
inline std::vector<VecD> sample_ball_process(const ModelParams& p, RngStream& rng) {
    p.validate();
    const double mean = ball_process_mean(p);
    check_resource_guard(mean, "sample_ball_process");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<VecD> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        VecD u = detail::uniform_sphere(p.d, rng);
        double h = rng.beta(p.delta + 1.0, static_cast<double>(p.d));
        double r = 1.0 - h;
        for (auto& c : u) c *= r;
        pts.push_back(std::move(u));
    }
    return pts;
}

/// Annulus cutoff eps such that P[any hull functional sees the removed
/// interior] is below ~exp(-margin): lambda * cap(eps/2) >= margin, using the
/// parabolic cap area scale (4 sqrt2 /3) (eps/2)^{3/2} valid for small eps.
inline double boundary_annulus_eps(double lambda, double margin = 40.0) {
    double e = 2.0 * std::pow(margin * 3.0 / (4.0 * std::sqrt(2.0) * lambda), 2.0 / 3.0);
    return std::min(1.0, e);
}

/// Ball process restricted to the annulus 1-|x| <= eps (exact restriction);
/// eps = 1 recovers the full process.  d = 2.
inline std::vector<P2> sample_disk_boundary(const ModelParams& p, double eps, RngStream& rng) {
    p.validate();
    if (p.d != 2) throw InvalidParams("sample_disk_boundary: d must be 2");
    const double frac = ball_height_cdf(p, eps);
    const double mean = ball_process_mean(p) * frac;
    check_resource_guard(mean, "sample_disk_boundary");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<P2> pts;
    pts.reserve(n);
    const bool unif = (p.delta == 0.0);
    const double full = 1.0 - (1.0 - eps) * (1.0 - eps);
    for (std::uint64_t i = 0; i < n; ++i) {
        double h;
        if (unif) {
            h = 1.0 - std::sqrt(1.0 - rng.uniform() * full);
        } else {
            h = detail::height_quantile_conditioned(p, eps, rng.uniform());
        }
        double r = 1.0 - h, t = rng.uniform(0.0, 2.0 * M_PI);
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return pts;
}

/// Ball process restricted to a spherical-cap neighbourhood of direction u0:
/// 1-|x| <= eps and angle(x,u0) <= width.  d = 2; u0 = (1,0).
inline std::vector<P2> sample_disk_cap(const ModelParams& p, double eps, double width,
                                       RngStream& rng) {
    p.validate();
    if (p.d != 2) throw InvalidParams("sample_disk_cap: d must be 2");
    const double frac = ball_height_cdf(p, eps) * std::min(width, M_PI) / M_PI;
    const double mean = ball_process_mean(p) * frac;
    check_resource_guard(mean, "sample_disk_cap");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<P2> pts;
    pts.reserve(n);
    const bool unif = (p.delta == 0.0);
    const double full = 1.0 - (1.0 - eps) * (1.0 - eps);
    const double w = std::min(width, M_PI);
    for (std::uint64_t i = 0; i < n; ++i) {
        double h = unif ? 1.0 - std::sqrt(1.0 - rng.uniform() * full)
                        : detail::height_quantile_conditioned(p, eps, rng.uniform());
        double r = 1.0 - h, t = rng.uniform(-w, w);
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return pts;
}

/// Ball process restricted to the annulus, d = 3.
inline std::vector<P3> sample_ball3_boundary(const ModelParams& p, double eps, RngStream& rng) {
    p.validate();
    if (p.d != 3) throw InvalidParams("sample_ball3_boundary: d must be 3");
    const double frac = ball_height_cdf(p, eps);
    const double mean = ball_process_mean(p) * frac;
    check_resource_guard(mean, "sample_ball3_boundary");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<P3> pts;
    pts.reserve(n);
    const bool unif = (p.delta == 0.0);
    const double full = 1.0 - std::pow(1.0 - eps, 3.0);
    for (std::uint64_t i = 0; i < n; ++i) {
        double h;
        if (unif) {
            h = 1.0 - std::cbrt(1.0 - rng.uniform() * full);
        } else {
            h = detail::height_quantile_conditioned(p, eps, rng.uniform());
        }
        P3 u = detail::uniform_sphere3(rng);
        pts.push_back((1.0 - h) * u);
    }
    return pts;
}

/// Half-space process on [-L,L]^{d-1} x [0,H]; count is Poisson with mean
/// (2L)^{d-1} H^{delta+1}/(delta+1), v uniform, h = H U^{1/(delta+1)}.
inline std::vector<HalfSpacePoint> sample_halfspace_process(int d, double delta,
                                                            const Window& w, RngStream& rng) {
    if (d < 2) throw InvalidParams("sample_halfspace_process: d must be >= 2");
    if (!(delta >= 0.0)) throw InvalidParams("sample_halfspace_process: delta must be >= 0");
    w.validate();
    const double mean = std::pow(2.0 * w.L, d - 1) * std::pow(w.H, delta + 1.0) / (delta + 1.0);
    check_resource_guard(mean, "sample_halfspace_process");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<HalfSpacePoint> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        HalfSpacePoint q;
        q.v.resize(d - 1);
        for (auto& c : q.v) c = rng.uniform(-w.L, w.L);
        q.h = w.H * std::pow(rng.uniform(), 1.0 / (delta + 1.0));
        pts.push_back(std::move(q));
    }
    return pts;
}

/// Spatial-1D fast path (d = 2): germs (v,h) as P2 {x=v, y=h}.
inline std::vector<P2> sample_germs1(double delta, const Window& w, RngStream& rng) {
    w.validate();
    const double mean = 2.0 * w.L * std::pow(w.H, delta + 1.0) / (delta + 1.0);
    check_resource_guard(mean, "sample_germs1");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<P2> g;
    g.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        g.push_back({rng.uniform(-w.L, w.L), w.H * std::pow(rng.uniform(), 1.0 / (delta + 1.0))});
    return g;
}

/// Spatial-2D fast path (d = 3): germs (v1,v2,h) as P3 {x=v1, y=v2, z=h}.
inline std::vector<P3> sample_germs2(double delta, const Window& w, RngStream& rng) {
    w.validate();
    const double mean = 4.0 * w.L * w.L * std::pow(w.H, delta + 1.0) / (delta + 1.0);
    check_resource_guard(mean, "sample_germs2");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<P3> g;
    g.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        g.push_back({rng.uniform(-w.L, w.L), rng.uniform(-w.L, w.L),
                     w.H * std::pow(rng.uniform(), 1.0 / (delta + 1.0))});
    return g;
}

struct RadialPoint {
    VecD dir;   // unit direction
    double r;   // distance in (1, r_max]
};

/// Dual radial process: intensity lambda |x|^{alpha-d} outside the unit
/// ball, truncated at r_max.  Count Poisson with mean
/// lambda d kappa_d (r_max^alpha - 1)/alpha; radial density prop. r^{alpha-1}.
inline std::vector<RadialPoint> sample_dual_radial_process(int d, double alpha, double lambda,
                                                           double r_max, RngStream& rng) {
    if (d < 2) throw InvalidParams("sample_dual_radial_process: d must be >= 2");
    if (!(alpha >= 1.0)) throw InvalidParams("sample_dual_radial_process: alpha must be >= 1");
    if (!(r_max > 1.0)) throw InvalidParams("sample_dual_radial_process: r_max must be > 1");
    const double ra = std::pow(r_max, alpha);
    const double mean = lambda * sphere_surface(d) * (ra - 1.0) / alpha;
    check_resource_guard(mean, "sample_dual_radial_process");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<RadialPoint> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        RadialPoint q;
        q.dir = detail::uniform_sphere(d, rng);
        q.r = std::pow(1.0 + rng.uniform() * (ra - 1.0), 1.0 / alpha);
        pts.push_back(std::move(q));
    }
    return pts;
}

/// Same restricted to a shell (r_lo, r_hi]; used by the adaptive zero-cell
/// construction when the truncation radius is doubled.
inline std::vector<RadialPoint> sample_dual_radial_shell(int d, double alpha, double lambda,
                                                         double r_lo, double r_hi,
                                                         RngStream& rng) {
    if (!(r_hi > r_lo) || !(r_lo >= 1.0))
        throw InvalidParams("sample_dual_radial_shell: need 1 <= r_lo < r_hi");
    const double plo = std::pow(r_lo, alpha), phi = std::pow(r_hi, alpha);
    const double mean = lambda * sphere_surface(d) * (phi - plo) / alpha;
    check_resource_guard(mean, "sample_dual_radial_shell");
    const std::uint64_t n = rng.poisson(mean);
    std::vector<RadialPoint> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        RadialPoint q;
        q.dir = detail::uniform_sphere(d, rng);
        q.r = std::pow(plo + rng.uniform() * (phi - plo), 1.0 / alpha);
        pts.push_back(std::move(q));
    }
    return pts;
}

}  // namespace ballhull
