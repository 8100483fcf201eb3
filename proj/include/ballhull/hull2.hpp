#pragma once

// Planar convex hull of a ball sample and the finite-intensity functionals
// built on it: defect support/radius functions, flower identity, face tops,
// external angles, intrinsic volumes, Kubota estimate, projection avoidance,
// arc-integrated width/volume processes, sup statistic and the per-vertex
// score decomposition.

#include <algorithm>
#include <vector>

#include "core.hpp"
#include "geom.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace ballhull {

constexpr double kOrientEps = 1e-12;  // orientation filter on unit-scale data

inline double two_pi() { return 2.0 * M_PI; }

inline double wrap_angle(double t) {
    t = std::fmod(t, two_pi());
    return t < 0.0 ? t + two_pi() : t;
}

struct Polytope2 {
    std::vector<P2> v;  // hull vertices, CCW; when the origin is inside,
                        // vertex 0 has the smallest angle in [0,2pi)
    bool contains_origin = false;

    // derived data, valid only when contains_origin.  vang is increasing
    // (radial sectors); nang is increasing (normal fan).  The two sequences
    // need not interleave: a barely extreme vertex can have its normal cone
    // angularly displaced from its own direction.
    std::vector<double> vang;   // direction angle of vertex i, unwrapped from vang[0]
    std::vector<double> nang;   // outward normal angle of edge i = (v_i, v_{i+1}),
                                // unwrapped cyclically from nang[0]
    std::vector<double> edist;  // distance from origin to the line of edge i

    int n() const { return static_cast<int>(v.size()); }
};

namespace detail {
inline bool lex_less(P2 a, P2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
}  // namespace detail

/// Monotone-chain hull; collinear boundary points are not vertices.
/// Throws DegenerateInput when all points are (numerically) collinear.
inline Polytope2 convex_hull2(std::vector<P2> pts) {
    if (pts.size() < 3) throw DegenerateInput("convex_hull2: need at least 3 points");
    std::sort(pts.begin(), pts.end(), detail::lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](P2 a, P2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const int m = static_cast<int>(pts.size());
    if (m < 3) throw DegenerateInput("convex_hull2: fewer than 3 distinct points");
    std::vector<P2> h(2 * m);
    int k = 0;
    for (int i = 0; i < m; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= kOrientEps) --k;
        h[k++] = pts[i];
    }
    for (int i = m - 2, t = k + 1; i >= 0; --i) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= kOrientEps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) throw DegenerateInput("convex_hull2: input is collinear");

    Polytope2 poly;
    poly.v = std::move(h);
    const int n = poly.n();
    poly.contains_origin = true;
    for (int i = 0; i < n; ++i) {
        if (cross(poly.v[i], poly.v[(i + 1) % n]) <= 0.0) {
            poly.contains_origin = false;
            break;
        }
    }
    if (!poly.contains_origin) return poly;

    int start = 0;
    double best = wrap_angle(angle_of(poly.v[0]));
    for (int i = 1; i < n; ++i) {
        double a = wrap_angle(angle_of(poly.v[i]));
        if (a < best) {
            best = a;
            start = i;
        }
    }
    std::rotate(poly.v.begin(), poly.v.begin() + start, poly.v.end());

    poly.vang.resize(n);
    poly.nang.resize(n);
    poly.edist.resize(n);
    double prev = best;
    for (int i = 0; i < n; ++i) {
        double a = wrap_angle(angle_of(poly.v[i]));
        while (a < prev - 1e-15) a += two_pi();
        poly.vang[i] = a;
        prev = a;
    }
    for (int i = 0; i < n; ++i) {
        P2 a = poly.v[i], b = poly.v[(i + 1) % n];
        P2 e = b - a;
        double na = wrap_angle(angle_of(P2{e.y, -e.x}));  // outward normal, CCW order
        if (i == 0) {
            poly.nang[i] = na;
        } else {
            poly.nang[i] = poly.nang[i - 1] + wrap_angle(na - poly.nang[i - 1]);
        }
        poly.edist[i] = cross(a, b) / norm(b - a);
    }
    return poly;
}

inline double support2(const Polytope2& h, P2 u) {
    double best = -1e300;
    for (const P2& p : h.v) best = std::max(best, dot(p, u));
    return best;
}

inline double support2(const Polytope2& h, double theta) { return support2(h, unit_dir(theta)); }

/// s(u) = 1 - h_K(u).
inline double defect_support2(const Polytope2& h, double theta) {
    return 1.0 - support2(h, theta);
}

namespace detail {

inline void require_origin(const Polytope2& h, const char* who) {
    if (!h.contains_origin) throw OriginOutside(std::string(who) + ": origin outside hull");
}

// Unwraps t into [vang[0], vang[0]+2pi).
inline double unwrap_into_turn(const Polytope2& h, double t) {
    return h.vang[0] + wrap_angle(t - h.vang[0]);
}

}  // namespace detail

/// Index of the edge whose radial sector [vang[i], vang[i+1]) contains t.
inline int edge_sector2(const Polytope2& h, double t) {
    detail::require_origin(h, "edge_sector2");
    const int n = h.n();
    double u = detail::unwrap_into_turn(h, t);
    int lo = 0, hi = n - 1;
    while (lo < hi) {  // find last i with vang[i] <= u
        int mid = (lo + hi + 1) / 2;
        if (h.vang[mid] <= u)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

/// Radial extent of the hull along direction theta (origin must be inside).
inline double radial2(const Polytope2& h, double theta) {
    detail::require_origin(h, "radial2");
    int e = edge_sector2(h, theta);
    P2 a = h.v[e], b = h.v[(e + 1) % h.n()];
    P2 u = unit_dir(theta);
    double denom = cross(u, b - a);
    if (std::fabs(denom) < 1e-300) return std::min(norm(a), norm(b));
    return cross(a, b) / denom;
}

inline double defect_radius2(const Polytope2& h, double theta) {
    return 1.0 - radial2(h, theta);
}

/// Radius-vector function of the Voronoi flower of a point set, clamped at 0.
inline double flower_radius(const std::vector<P2>& pts, double theta) {
    P2 u = unit_dir(theta);
    double best = 0.0;
    for (const P2& p : pts) best = std::max(best, dot(p, u));
    return best;
}

/// Flower radius-vector equals the hull support function (both clamped).
inline bool flower_support_identity_check(const std::vector<P2>& pts, const Polytope2& hull,
                                          double theta, double tol = 1e-12) {
    double f = flower_radius(pts, theta);
    double s = std::max(0.0, support2(hull, theta));
    return std::fabs(f - s) <= tol;
}

struct FaceTop2 {
    int face = 0;    // vertex index (k=0) or edge index (k=1)
    int vertex = 0;  // index of Top(f) in hull.v
};

/// Top(f): farthest point of the closed face from the origin; for edges the
/// endpoint of larger norm.  Exact ties (probability zero under the model)
/// go to the CCW-first endpoint.
inline std::vector<FaceTop2> face_tops2(const Polytope2& h, int k) {
    if (k != 0 && k != 1) throw InvalidParams("face_tops2: k must be 0 or 1");
    const int n = h.n();
    std::vector<FaceTop2> tops;
    tops.reserve(n);
    if (k == 0) {
        for (int i = 0; i < n; ++i) tops.push_back({i, i});
        return tops;
    }
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        tops.push_back({i, norm2(h.v[j]) > norm2(h.v[i]) ? j : i});
    }
    return tops;
}

struct ExternalAngles2 {
    std::vector<double> vertex;  // exterior turning angle / 2pi
    double edge = 0.5;
};

inline ExternalAngles2 external_angles2(const Polytope2& h) {
    const int n = h.n();
    ExternalAngles2 ea;
    ea.vertex.resize(n);
    for (int i = 0; i < n; ++i) {
        P2 a = h.v[(i + n - 1) % n], b = h.v[i], c = h.v[(i + 1) % n];
        P2 e1 = b - a, e2 = c - b;
        ea.vertex[i] = std::atan2(cross(e1, e2), dot(e1, e2)) / two_pi();
    }
    return ea;
}

inline double perimeter2(const Polytope2& h) {
    double s = 0.0;
    for (int i = 0; i < h.n(); ++i) s += norm(h.v[(i + 1) % h.n()] - h.v[i]);
    return s;
}

inline double area2(const Polytope2& h) {
    double s = 0.0;
    for (int i = 0; i < h.n(); ++i) s += cross(h.v[i], h.v[(i + 1) % h.n()]);
    return 0.5 * s;
}

/// V_0 = 1 (Gauss-Bonnet), V_1 = perimeter / 2.
inline double intrinsic_volume2(const Polytope2& h, int k) {
    if (k == 0) return 1.0;
    if (k == 1) return 0.5 * perimeter2(h);
    throw InvalidParams("intrinsic_volume2: k must be 0 or 1");
}

// ---------------------------------------------------------------------------
// Arc integrals of the defect support function.
//
// On the normal cone of vertex i, i.e. between the outward normals of its
// two incident edges, the support function is the single branch
//   h_K(t) = |v_i| cos(t - theta_i).
// The antiderivative of 1 - h_K is t - |v_i| sin(t - theta_i), so arc
// integrals are exact.  An accumulated antiderivative F over one turn of the
// normal fan makes W(a,b) = F(b) - F(a) with O(log n) lookups, and the
// per-vertex score decomposition telescopes exactly to the total.
// ---------------------------------------------------------------------------

struct SupportArcTable {
    std::vector<double> bp;   // n+1 normal-fan breakpoints spanning one turn
    std::vector<int> vtx;     // active vertex on [bp[j], bp[j+1]]
    std::vector<double> cum;  // integral of (1 - h_K) from bp[0] to bp[j]
    double total = 0.0;       // integral over the full turn
};

inline SupportArcTable support_arc_table(const Polytope2& h) {
    detail::require_origin(h, "support_arc_table");
    const int n = h.n();
    SupportArcTable tab;
    tab.bp.reserve(n + 1);
    tab.vtx.reserve(n);
    for (int i = 0; i < n; ++i) {
        tab.bp.push_back(h.nang[i]);         // cone of vertex i+1 starts here
        tab.vtx.push_back((i + 1) % n);
    }
    tab.bp.push_back(h.nang[0] + two_pi());
    tab.cum.resize(tab.bp.size());
    tab.cum[0] = 0.0;
    for (std::size_t j = 0; j + 1 < tab.bp.size(); ++j) {
        int i = tab.vtx[j];
        double r = norm(h.v[i]), av = angle_of(h.v[i]);
        double a = tab.bp[j], b = tab.bp[j + 1];
        tab.cum[j + 1] = tab.cum[j] + (b - a) - r * (std::sin(b - av) - std::sin(a - av));
    }
    tab.total = tab.cum.back();
    return tab;
}

namespace detail {

// Antiderivative of (1 - h_K) at t, relative to bp[0], extended periodically
// (adds total per full turn).
inline double w_antideriv(const Polytope2& h, const SupportArcTable& tab, double t) {
    double turns = std::floor((t - tab.bp.front()) / two_pi());
    double u = t - turns * two_pi();
    if (u >= tab.bp.back()) {  // rounding at the seam
        u = tab.bp.back();
    }
    auto it = std::upper_bound(tab.bp.begin(), tab.bp.end(), u);
    std::size_t j = (it == tab.bp.begin()) ? 0 : (it - tab.bp.begin() - 1);
    if (j >= tab.vtx.size()) j = tab.vtx.size() - 1;
    int i = tab.vtx[j];
    double r = norm(h.v[i]), av = angle_of(h.v[i]);
    double a = tab.bp[j];
    double piece = (u - a) - r * (std::sin(u - av) - std::sin(a - av));
    return turns * tab.total + tab.cum[j] + piece;
}

}  // namespace detail

/// W process: integral of the defect support function over the arc [a,b].
inline double W_process2(const Polytope2& h, const SupportArcTable& tab, double a, double b) {
    if (b < a) std::swap(a, b);
    return detail::w_antideriv(h, tab, b) - detail::w_antideriv(h, tab, a);
}

inline double W_process2(const Polytope2& h, double a, double b) {
    SupportArcTable tab = support_arc_table(h);
    return W_process2(h, tab, a, b);
}

/// V process: integral of the defect radius function over the arc [a,b] by
/// adaptive Simpson split at vertex directions.
inline double V_process2(const Polytope2& h, double a, double b, double abs_tol = 1e-10) {
    detail::require_origin(h, "V_process2");
    if (b < a) std::swap(a, b);
    const int n = h.n();
    std::vector<double> breaks;
    for (int i = 0; i < n; ++i) {
        for (double s = h.vang[i] - 2.0 * two_pi(); s < b; s += two_pi())
            if (s > a) breaks.push_back(s);
    }
    QuadratureSpec spec;
    spec.abs_tol = abs_tol;
    spec.max_depth = 40;
    return integrate_pieces([&](double t) { return 1.0 - radial2(h, t); }, a, b, breaks, spec);
}

inline double W_total2(const Polytope2& h) {
    SupportArcTable tab = support_arc_table(h);
    return tab.total;
}
inline double V_total2(const Polytope2& h, double abs_tol = 1e-10) {
    return V_process2(h, 0.0, two_pi(), abs_tol);
}

/// S = sup_u s(u) = 1 - min over edges of the origin-to-edge-line distance.
inline double sup_defect_support2(const Polytope2& h) {
    detail::require_origin(h, "sup_defect_support2");
    double m = 1e300;
    for (double d : h.edist) m = std::min(m, d);
    return 1.0 - m;
}

struct MonteCarloValue {
    double value = 0.0;
    double stderr_ = 0.0;
};

/// V_1 as the Grassmannian average of projection lengths (Kubota).  Uses a
/// quasi-uniform direction grid under random rotations; the spread over the
/// rotated blocks provides the standard error.
inline MonteCarloValue kubota_V1(const Polytope2& h, int n_directions, RngStream& rng) {
    if (n_directions < 8) n_directions = 8;
    const int blocks = 8, per = std::max(1, n_directions / blocks);
    const double coef = 0.5 * M_PI;  // 2! kappa_2 / (1! kappa_1 * 1! kappa_1)
    double bsum = 0.0, bsq = 0.0;
    for (int b = 0; b < blocks; ++b) {
        double rot = rng.uniform(0.0, M_PI);
        double acc = 0.0;
        for (int j = 0; j < per; ++j) {
            P2 u = unit_dir(rot + M_PI * j / per);
            acc += support2(h, u) + support2(h, P2{-u.x, -u.y});  // projection length
        }
        double est = coef * acc / per;
        bsum += est;
        bsq += est * est;
    }
    MonteCarloValue out;
    out.value = bsum / blocks;
    double var = std::max(0.0, bsq / blocks - out.value * out.value);
    out.stderr_ = std::sqrt(var / blocks);
    return out;
}

/// Projection avoidance for d=2, k=1: G(lin[x],1) = {lin[x]}, so this is the
/// indicator that x falls outside the hull's projection onto its own line.
inline double projection_avoidance2(const Polytope2& h, P2 x) {
    double r = norm(x);
    if (r == 0.0) return 0.0;
    P2 u = {x.x / r, x.y / r};
    bool inside = (r <= support2(h, u)) && (-r <= support2(h, P2{-u.x, -u.y}));
    return inside ? 0.0 : 1.0;
}

struct VertexScores2 {
    std::vector<double> xi_s, xi_r;    // per hull vertex
    std::vector<double> xi_f0, xi_f1;  // face counts topped at the vertex
    double W = 0.0, V = 0.0;           // totals accumulated from the same pieces
};

/// Score decomposition: each edge sector [vang_i, vang_{i+1}] contributes its
/// integral of 1-h_K (resp. 1-rho_K) to Top(edge).  Sums reproduce W and V.
inline VertexScores2 vertex_scores2(const Polytope2& h, double abs_tol = 1e-13) {
    detail::require_origin(h, "vertex_scores2");
    const int n = h.n();
    VertexScores2 sc;
    sc.xi_s.assign(n, 0.0);
    sc.xi_r.assign(n, 0.0);
    sc.xi_f0.assign(n, 1.0);
    sc.xi_f1.assign(n, 0.0);
    SupportArcTable tab = support_arc_table(h);
    auto tops = face_tops2(h, 1);
    QuadratureSpec spec;
    spec.abs_tol = abs_tol;
    spec.max_depth = 44;
    for (int i = 0; i < n; ++i) {
        double a = h.vang[i];
        double b = (i + 1 < n) ? h.vang[i + 1] : h.vang[0] + two_pi();
        int top = tops[i].vertex;
        sc.xi_f1[top] += 1.0;
        double ws = W_process2(h, tab, a, b);
        double vs = integrate([&](double t) { return 1.0 - radial2(h, t); }, a, b, spec);
        sc.xi_s[top] += ws;
        sc.xi_r[top] += vs;
        sc.W += ws;
        sc.V += vs;
    }
    return sc;
}

struct SteinerResult {
    double mc_volume = 0.0;
    double mc_stderr = 0.0;
    double polynomial = 0.0;
};

/// Distance from a point to the hull (0 inside).
inline double distance_to_hull2(const Polytope2& h, P2 p) {
    const int n = h.n();
    bool inside = true;
    double best = 1e300;
    for (int i = 0; i < n; ++i) {
        P2 a = h.v[i], b = h.v[(i + 1) % n];
        if (cross(b - a, p - a) < 0.0) inside = false;
        P2 e = b - a;
        double t = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
        best = std::min(best, norm(p - (a + t * e)));
    }
    return inside ? 0.0 : best;
}

/// Local Steiner formula over the full boundary: Monte Carlo collar volume
/// vs eps^2 kappa_2 V_0 + eps kappa_1 V_1.
inline SteinerResult steiner_check2(const Polytope2& h, double eps, int n_mc, RngStream& rng) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const P2& p : h.v) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    xmin -= eps;
    xmax += eps;
    ymin -= eps;
    ymax += eps;
    const double box = (xmax - xmin) * (ymax - ymin);
    std::uint64_t hit = 0;
    for (int i = 0; i < n_mc; ++i) {
        P2 p{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
        double dist = distance_to_hull2(h, p);
        if (dist > 0.0 && dist <= eps) ++hit;
    }
    SteinerResult out;
    double frac = static_cast<double>(hit) / n_mc;
    out.mc_volume = frac * box;
    out.mc_stderr = box * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) / n_mc);
    out.polynomial = eps * eps * ball_volume(2) + eps * ball_volume(1) * intrinsic_volume2(h, 1);
    return out;
}

}  // namespace ballhull
