#pragma once

// Exponential chart on S_{d-1}, the scaling map between the ball picture and
// formal space-time, rescaled defect functions and rescaled face measures.

#include <vector>

#include "core.hpp"
#include "geom.hpp"
#include "hull2.hpp"
#include "hull3.hpp"

namespace ballhull {

// ---------------------------------------------------------------------------
// d = 2: the chart is angle addition on the circle; tangent vectors are
// scalars.
// ---------------------------------------------------------------------------

struct ExpChart2 {
    double base_angle = 0.0;  // angle of u0, default u0 = (1,0)
};

inline P2 exp_map2(const ExpChart2& chart, double v) { return unit_dir(chart.base_angle + v); }

/// Inverse chart, valued in (-pi, pi); the antipode is rejected rather than
/// assigned an arbitrary value.
inline double exp_map2_inv(const ExpChart2& chart, P2 u) {
    double t = wrap_angle(angle_of(u) - chart.base_angle);
    if (t > M_PI) t -= two_pi();
    if (std::fabs(std::fabs(t) - M_PI) < 1e-14)
        throw AntipodeUndefined("exp_map2_inv: direction is the antipode of the chart base");
    return t;
}

/// T^lambda: x -> (lambda^beta exp^{-1}(x/|x|), lambda^gamma (1-|x|)).
inline P2 rescale_forward2(double lambda, const ModelParams& p, const ExpChart2& chart, P2 x) {
    double r = norm(x);
    if (r == 0.0) throw InvalidParams("rescale_forward2: x must be nonzero");
    auto e = scaling_exponents(p);
    double v = exp_map2_inv(chart, {x.x / r, x.y / r});
    return {std::pow(lambda, e.beta) * v, std::pow(lambda, e.gamma) * (1.0 - r)};
}

inline P2 rescale_inverse2(double lambda, const ModelParams& p, const ExpChart2& chart, P2 vh) {
    auto e = scaling_exponents(p);
    double v = vh.x * std::pow(lambda, -e.beta);
    double r = 1.0 - vh.y * std::pow(lambda, -e.gamma);
    P2 u = exp_map2(chart, v);
    return {r * u.x, r * u.y};
}

/// Rescaled defect support: s_hat(v) = lambda^gamma s(exp(lambda^{-beta} v)).
inline double rescaled_support2(double lambda, const ModelParams& p, const ExpChart2& chart,
                                const Polytope2& hull, double v) {
    auto e = scaling_exponents(p);
    double theta = chart.base_angle + v * std::pow(lambda, -e.beta);
    return std::pow(lambda, e.gamma) * defect_support2(hull, theta);
}

inline double rescaled_radius2(double lambda, const ModelParams& p, const ExpChart2& chart,
                               const Polytope2& hull, double v) {
    auto e = scaling_exponents(p);
    double theta = chart.base_angle + v * std::pow(lambda, -e.beta);
    return std::pow(lambda, e.gamma) * defect_radius2(hull, theta);
}

/// Images of the k-face tops under T^lambda (k in {0,1}).
inline std::vector<P2> rescaled_face_measure2(double lambda, const ModelParams& p,
                                              const ExpChart2& chart, const Polytope2& hull,
                                              int k) {
    std::vector<P2> out;
    for (const auto& t : face_tops2(hull, k))
        out.push_back(rescale_forward2(lambda, p, chart, hull.v[t.vertex]));
    return out;
}

// ---------------------------------------------------------------------------
// d = 3: geodesic chart on the 2-sphere.
// ---------------------------------------------------------------------------

struct ExpChart3 {
    P3 base{1.0, 0.0, 0.0};
    // orthonormal tangent frame at base
    P3 t1{0.0, 1.0, 0.0};
    P3 t2{0.0, 0.0, 1.0};
};

inline P3 exp_map3(const ExpChart3& chart, P2 v) {
    double r = std::sqrt(v.x * v.x + v.y * v.y);
    if (r == 0.0) return chart.base;
    P3 dir = (v.x / r) * chart.t1 + (v.y / r) * chart.t2;
    return std::cos(r) * chart.base + std::sin(r) * dir;
}

inline P2 exp_map3_inv(const ExpChart3& chart, P3 u) {
    double c = std::clamp(dot(u, chart.base), -1.0, 1.0);
    double ang = std::acos(c);
    if (std::fabs(ang - M_PI) < 1e-14)
        throw AntipodeUndefined("exp_map3_inv: direction is the antipode of the chart base");
    if (ang == 0.0) return {0.0, 0.0};
    P3 tang = u - c * chart.base;
    double tn = norm(tang);
    if (tn < 1e-300) return {0.0, 0.0};
    return {ang * dot(tang, chart.t1) / tn, ang * dot(tang, chart.t2) / tn};
}

inline P3 rescale_forward3_point(double lambda, const ModelParams& p, const ExpChart3& chart,
                                 P3 x) {
    double r = norm(x);
    if (r == 0.0) throw InvalidParams("rescale_forward3_point: x must be nonzero");
    auto e = scaling_exponents(p);
    P2 v = exp_map3_inv(chart, (1.0 / r) * x);
    double sb = std::pow(lambda, e.beta);
    return {sb * v.x, sb * v.y, std::pow(lambda, e.gamma) * (1.0 - r)};
}

inline P3 rescale_inverse3_point(double lambda, const ModelParams& p, const ExpChart3& chart,
                                 P3 vh) {
    auto e = scaling_exponents(p);
    P2 v{vh.x * std::pow(lambda, -e.beta), vh.y * std::pow(lambda, -e.beta)};
    double r = 1.0 - vh.z * std::pow(lambda, -e.gamma);
    P3 u = exp_map3(chart, v);
    return r * u;
}

inline double rescaled_support3(double lambda, const ModelParams& p, const ExpChart3& chart,
                                const Polytope3& hull, P2 v) {
    auto e = scaling_exponents(p);
    double sb = std::pow(lambda, -e.beta);
    P3 u = exp_map3(chart, {v.x * sb, v.y * sb});
    return std::pow(lambda, e.gamma) * defect_support3(hull, u);
}

inline double rescaled_radius3(double lambda, const ModelParams& p, const ExpChart3& chart,
                               const Polytope3& hull, P2 v) {
    auto e = scaling_exponents(p);
    double sb = std::pow(lambda, -e.beta);
    P3 u = exp_map3(chart, {v.x * sb, v.y * sb});
    return std::pow(lambda, e.gamma) * defect_radius3(hull, u);
}

/// Rescaled intensity of the image process on a box [v0,v1] x [h0,h1]
/// (d = 2, where the chart Jacobian is 1): integral of
/// (1 - lambda^{-gamma} h)^{d-1} h^delta dv dh.
inline double rescaled_intensity_mass2(double lambda, const ModelParams& p, double v0, double v1,
                                       double h0, double h1) {
    auto e = scaling_exponents(p);
    double lg = std::pow(lambda, -e.gamma);
    // integral over h of (1 - lg h) h^delta = H(h) with closed form
    auto prim = [&](double h) {
        return std::pow(h, p.delta + 1.0) / (p.delta + 1.0) -
               lg * std::pow(h, p.delta + 2.0) / (p.delta + 2.0);
    };
    return (v1 - v0) * (prim(h1) - prim(h0));
}

}  // namespace ballhull
