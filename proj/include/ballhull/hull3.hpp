#pragma once

// Incremental 3D convex hull with the full face lattice (vertices, edges
// with dihedral data, triangular facets), external angles, intrinsic
// volumes, radial/support evaluations and the Steiner collar check.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "geom.hpp"
#include "rng.hpp"

namespace ballhull {

constexpr double kOrientEps3 = 1e-12;  // visibility filter on unit-scale data

struct Facet3 {
    int a, b, c;    // vertex indices, outward orientation
    P3 n;           // unit outward normal
    double off;     // plane offset: <n, x> = off on the facet
};

struct Edge3 {
    int u, v;       // endpoint indices, u < v
    int f1, f2;     // adjacent facets
};

struct Polytope3 {
    std::vector<P3> v;       // extreme points only
    std::vector<int> orig;   // index of v[i] in the input point list
    std::vector<Facet3> fac;
    std::vector<Edge3> edge;
    bool contains_origin = false;

    int f0() const { return static_cast<int>(v.size()); }
    int f1() const { return static_cast<int>(edge.size()); }
    int f2() const { return static_cast<int>(fac.size()); }
};

namespace detail {

inline double orient3(const P3& a, const P3& b, const P3& c, const P3& p) {
    return dot(cross(b - a, c - a), p - a);
}

struct RawFacet {
    int a, b, c;
    bool alive = true;
};

}  // namespace detail

/// Incremental hull; general-position input (random samples).  Throws
/// DegenerateInput if all points are coplanar.
inline Polytope3 convex_hull3(const std::vector<P3>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw DegenerateInput("convex_hull3: need at least 4 points");

    // initial simplex: spread pair, then max-area, then max-volume
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n; ++i)
        if (pts[i].x < pts[i0].x || (pts[i].x == pts[i0].x && pts[i].y < pts[i0].y)) i0 = i;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = norm2(pts[i] - pts[i0]);
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best <= 1e-24) throw DegenerateInput("convex_hull3: all points coincide");
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= 1e-24) throw DegenerateInput("convex_hull3: all points collinear");
    best = 0.0;
    double bestabs = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = detail::orient3(pts[i0], pts[i1], pts[i2], pts[i]);
        if (std::fabs(d) > bestabs) {
            bestabs = std::fabs(d);
            best = d;
            i3 = i;
        }
    }
    if (bestabs <= 1e-18) throw DegenerateInput("convex_hull3: all points coplanar");
    if (best > 0.0) std::swap(i1, i2);  // orient so that i3 is below (a,b,c)

    std::vector<detail::RawFacet> fac;
    fac.push_back({i0, i1, i2});
    fac.push_back({i0, i2, i3});
    fac.push_back({i2, i1, i3});
    fac.push_back({i1, i0, i3});
    const P3 inner = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
    for (auto& f : fac)  // orient all outward w.r.t. the interior point
        if (detail::orient3(pts[f.a], pts[f.b], pts[f.c], inner) > 0.0) std::swap(f.b, f.c);

    const double eps_vis = kOrientEps3;
    std::vector<int> visible;
    std::map<std::pair<int, int>, int> edge_count;
    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        visible.clear();
        for (int f = 0; f < static_cast<int>(fac.size()); ++f) {
            if (!fac[f].alive) continue;
            if (detail::orient3(pts[fac[f].a], pts[fac[f].b], pts[fac[f].c], pts[p]) > eps_vis)
                visible.push_back(f);
        }
        if (visible.empty()) continue;
        edge_count.clear();
        auto add_edge = [&](int u, int v) {
            auto key = std::minmax(u, v);
            edge_count[{key.first, key.second}] += 1;
        };
        for (int f : visible) {
            add_edge(fac[f].a, fac[f].b);
            add_edge(fac[f].b, fac[f].c);
            add_edge(fac[f].c, fac[f].a);
        }
        // horizon edges appear once in the visible region; keep the visible
        // facet's traversal direction for the replacement facet
        for (int f : visible) fac[f].alive = false;
        for (int f : visible) {
            int vs[4] = {fac[f].a, fac[f].b, fac[f].c, fac[f].a};
            for (int e = 0; e < 3; ++e) {
                auto key = std::minmax(vs[e], vs[e + 1]);
                if (edge_count[{key.first, key.second}] == 1) {
                    detail::RawFacet nf{vs[e], vs[e + 1], p};
                    if (detail::orient3(pts[nf.a], pts[nf.b], pts[nf.c], inner) > 0.0)
                        std::swap(nf.b, nf.c);
                    fac.push_back(nf);
                }
            }
        }
    }

    // compact into the polytope structure
    Polytope3 poly;
    std::vector<int> remap(n, -1);
    for (auto& f : fac) {
        if (!f.alive) continue;
        for (int idx : {f.a, f.b, f.c}) {
            if (remap[idx] < 0) {
                remap[idx] = static_cast<int>(poly.v.size());
                poly.v.push_back(pts[idx]);
                poly.orig.push_back(idx);
            }
        }
        Facet3 out;
        out.a = remap[f.a];
        out.b = remap[f.b];
        out.c = remap[f.c];
        P3 nr = cross(poly.v[out.b] - poly.v[out.a], poly.v[out.c] - poly.v[out.a]);
        out.n = normalized(nr);
        out.off = dot(out.n, poly.v[out.a]);
        poly.fac.push_back(out);
    }

    std::map<std::pair<int, int>, std::pair<int, int>> emap;
    for (int f = 0; f < poly.f2(); ++f) {
        int vs[4] = {poly.fac[f].a, poly.fac[f].b, poly.fac[f].c, poly.fac[f].a};
        for (int e = 0; e < 3; ++e) {
            auto key = std::minmax(vs[e], vs[e + 1]);
            auto it = emap.find({key.first, key.second});
            if (it == emap.end())
                emap[{key.first, key.second}] = {f, -1};
            else
                it->second.second = f;
        }
    }
    for (auto& [key, fs] : emap) {
        if (fs.second < 0) throw DegenerateInput("convex_hull3: open edge (degenerate input)");
        poly.edge.push_back({key.first, key.second, fs.first, fs.second});
    }

    poly.contains_origin = true;
    for (auto& f : poly.fac)
        if (f.off <= 0.0) {
            poly.contains_origin = false;
            break;
        }
    return poly;
}

inline double support3(const Polytope3& h, P3 u) {
    double best = -1e300;
    for (const P3& p : h.v) best = std::max(best, dot(p, u));
    return best;
}

inline double defect_support3(const Polytope3& h, P3 u) { return 1.0 - support3(h, u); }

inline double radial3(const Polytope3& h, P3 u) {
    if (!h.contains_origin) throw OriginOutside("radial3: origin outside hull");
    double best = 1e300;
    for (const Facet3& f : h.fac) {
        double den = dot(f.n, u);
        if (den > 1e-300) best = std::min(best, f.off / den);
    }
    return best;
}

inline double defect_radius3(const Polytope3& h, P3 u) { return 1.0 - radial3(h, u); }

inline double sup_defect_support3(const Polytope3& h) {
    if (!h.contains_origin) throw OriginOutside("sup_defect_support3: origin outside hull");
    double m = 1e300;
    for (const Facet3& f : h.fac) m = std::min(m, f.off);
    return 1.0 - m;
}

struct ExternalAngles3 {
    std::vector<double> vertex;  // normal-cone solid angle / 4pi
    std::vector<double> edge;    // exterior dihedral / 2pi, aligned with edge list
    double facet = 0.5;
};

namespace detail {

// Solid angle of the convex spherical polygon with the given ordered
// vertices (unit vectors), by a fan of van Oosterom-Strackee triangles.
inline double spherical_polygon_area(const std::vector<P3>& ns) {
    double total = 0.0;
    for (std::size_t j = 1; j + 1 < ns.size(); ++j) {
        double num = dot(ns[0], cross(ns[j], ns[j + 1]));
        double den = 1.0 + dot(ns[0], ns[j]) + dot(ns[j], ns[j + 1]) + dot(ns[j + 1], ns[0]);
        total += 2.0 * std::atan2(num, den);
    }
    return std::fabs(total);
}

}  // namespace detail

inline ExternalAngles3 external_angles3(const Polytope3& h) {
    ExternalAngles3 ea;
    ea.edge.resize(h.edge.size());
    for (std::size_t e = 0; e < h.edge.size(); ++e) {
        const Facet3 &f1 = h.fac[h.edge[e].f1], &f2 = h.fac[h.edge[e].f2];
        double c = std::clamp(dot(f1.n, f2.n), -1.0, 1.0);
        ea.edge[e] = std::acos(c) / (2.0 * M_PI);  // angle between outward normals
    }

    // cyclic facet order around each vertex via edge adjacency
    const int nv = h.f0();
    std::vector<std::vector<std::pair<int, int>>> vedges(nv);  // (edge idx, other endpoint)
    for (int e = 0; e < h.f1(); ++e) {
        vedges[h.edge[e].u].push_back({e, h.edge[e].v});
        vedges[h.edge[e].v].push_back({e, h.edge[e].u});
    }
    ea.vertex.assign(nv, 0.0);
    for (int vi = 0; vi < nv; ++vi) {
        const auto& inc = vedges[vi];
        if (inc.size() < 3) throw DegenerateInput("external_angles3: vertex of degree < 3");
        // walk the facet cycle: from edge e enter one adjacent facet, leave by
        // the facet's other edge at vi
        std::vector<P3> ns;
        int e0 = inc[0].first;
        int f = h.edge[e0].f1;
        int e = e0;
        do {
            ns.push_back(h.fac[f].n);
            // find the other edge of facet f incident to vi
            int enext = -1;
            for (auto& [ei, other] : inc) {
                if (ei == e) continue;
                if (h.edge[ei].f1 == f || h.edge[ei].f2 == f) {
                    enext = ei;
                    break;
                }
            }
            if (enext < 0) throw DegenerateInput("external_angles3: broken facet cycle");
            e = enext;
            f = (h.edge[e].f1 == f) ? h.edge[e].f2 : h.edge[e].f1;
        } while (e != e0 || f != h.edge[e0].f1);
        ea.vertex[vi] = detail::spherical_polygon_area(ns) / (4.0 * M_PI);
    }
    return ea;
}

inline double facet_area(const Polytope3& h, const Facet3& f) {
    return 0.5 * norm(cross(h.v[f.b] - h.v[f.a], h.v[f.c] - h.v[f.a]));
}

inline double surface_area3(const Polytope3& h) {
    double s = 0.0;
    for (const auto& f : h.fac) s += facet_area(h, f);
    return s;
}

/// V_0 = 1; V_1 = sum over edges of length x exterior dihedral / 2pi;
/// V_2 = surface / 2.
inline double intrinsic_volume3(const Polytope3& h, int k) {
    if (k == 0) return 1.0;
    if (k == 2) return 0.5 * surface_area3(h);
    if (k != 1) throw InvalidParams("intrinsic_volume3: k must be 0, 1 or 2");
    ExternalAngles3 ea = external_angles3(h);
    double s = 0.0;
    for (std::size_t e = 0; e < h.edge.size(); ++e)
        s += norm(h.v[h.edge[e].u] - h.v[h.edge[e].v]) * ea.edge[e];
    return s;
}

inline double volume3(const Polytope3& h) {
    double s = 0.0;
    for (const auto& f : h.fac) s += dot(h.v[f.a], cross(h.v[f.b], h.v[f.c]));
    return s / 6.0;
}

struct FaceTop3 {
    int face = 0;    // index into the facet/edge/vertex list
    int vertex = 0;  // index of Top(f) in hull.v
};

inline std::vector<FaceTop3> face_tops3(const Polytope3& h, int k) {
    std::vector<FaceTop3> tops;
    auto pick = [&](std::initializer_list<int> idx) {
        int best = *idx.begin();
        for (int i : idx)
            if (norm2(h.v[i]) > norm2(h.v[best])) best = i;
        return best;
    };
    if (k == 0) {
        for (int i = 0; i < h.f0(); ++i) tops.push_back({i, i});
    } else if (k == 1) {
        for (int e = 0; e < h.f1(); ++e) tops.push_back({e, pick({h.edge[e].u, h.edge[e].v})});
    } else if (k == 2) {
        for (int f = 0; f < h.f2(); ++f)
            tops.push_back({f, pick({h.fac[f].a, h.fac[f].b, h.fac[f].c})});
    } else {
        throw InvalidParams("face_tops3: k must be in {0,1,2}");
    }
    return tops;
}

namespace detail {

inline double point_triangle_distance(const P3& p, const P3& a, const P3& b, const P3& c) {
    // Ericson, Real-Time Collision Detection, closest point on triangle
    P3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return norm(p - a);
    P3 bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return norm(p - b);
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double t = d1 / (d1 - d3);
        return norm(p - (a + t * ab));
    }
    P3 cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return norm(p - c);
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double t = d2 / (d2 - d6);
        return norm(p - (a + t * ac));
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return norm(p - (b + t * (c - b)));
    }
    double denom = 1.0 / (va + vb + vc);
    double s = vb * denom, t = vc * denom;
    return norm(p - (a + s * ab + t * ac));
}

}  // namespace detail

inline double distance_to_hull3(const Polytope3& h, const P3& p) {
    bool inside = true;
    for (const auto& f : h.fac)
        if (dot(f.n, p) > f.off) {
            inside = false;
            break;
        }
    if (inside) return 0.0;
    double best = 1e300;
    for (const auto& f : h.fac)
        best = std::min(best, detail::point_triangle_distance(p, h.v[f.a], h.v[f.b], h.v[f.c]));
    return best;
}

struct SteinerResult3 {
    double mc_volume = 0.0;
    double mc_stderr = 0.0;
    double polynomial = 0.0;
};

/// Collar volume vs eps^3 kappa_3 V_0 + eps^2 kappa_2 V_1 + eps kappa_1 V_2.
inline SteinerResult3 steiner_check3(const Polytope3& h, double eps, int n_mc, RngStream& rng) {
    P3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const P3& p : h.v) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    lo = lo - P3{eps, eps, eps};
    hi = hi + P3{eps, eps, eps};
    const double box = (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    std::uint64_t hits = 0;
    for (int i = 0; i < n_mc; ++i) {
        P3 p{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y), rng.uniform(lo.z, hi.z)};
        double dist = distance_to_hull3(h, p);
        if (dist > 0.0 && dist <= eps) ++hits;
    }
    SteinerResult3 out;
    double frac = static_cast<double>(hits) / n_mc;
    out.mc_volume = frac * box;
    out.mc_stderr = box * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) / n_mc);
    out.polynomial = eps * eps * eps * ball_volume(3) + eps * eps * ball_volume(2) * intrinsic_volume3(h, 1) +
                     eps * ball_volume(1) * intrinsic_volume3(h, 2);
    return out;
}

}  // namespace ballhull
