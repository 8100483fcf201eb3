#pragma once

// Paraboloid growth process Psi and hull process Phi on the half-space
// R^{d-1} x R_+, for spatial dimension 1 (germs P2 {v,h}) and 2 (germs P3
// {v1,v2,h}).  Extreme points and faces come from the lifting transform
// (v,h) -> (v, h + |v|^2/2), under which translates of the downward
// paraboloid become lower half-spaces, so Vertices(Phi) is the lower convex
// hull of the lifted germs.

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "core.hpp"
#include "geom.hpp"
#include "hull3.hpp"
#include "samplers.hpp"
#include "stats.hpp"

namespace ballhull {

inline double kInf() { return std::numeric_limits<double>::infinity(); }

// ---------------------------------------------------------------------------
// spatial dimension 1
// ---------------------------------------------------------------------------

/// Boundary of the growth process: min over germs of h + (v - v_g)^2 / 2.
inline double psi_boundary1(const std::vector<P2>& germs, double v) {
    if (germs.empty()) throw Error("psi_boundary1: no germs");
    double best = kInf();
    for (const P2& g : germs) {
        double dv = v - g.x;
        best = std::min(best, g.y + 0.5 * dv * dv);
    }
    return best;
}

/// Indices of the extreme germs (paraboloid appears on the Psi boundary),
/// computed exactly as the lower convex hull of the lifted germs; the result
/// is sorted by spatial coordinate.
inline std::vector<int> extreme_indices1(const std::vector<P2>& germs) {
    const int n = static_cast<int>(germs.size());
    if (n == 0) return {};
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        return germs[a].x < germs[b].x || (germs[a].x == germs[b].x && germs[a].y < germs[b].y);
    });
    auto lift = [&](int i) { return P2{germs[i].x, germs[i].y + 0.5 * germs[i].x * germs[i].x}; };
    std::vector<int> hull;
    for (int k = 0; k < n; ++k) {
        int i = ord[k];
        if (!hull.empty() && germs[hull.back()].x == germs[i].x) continue;  // keep the lower
        while (hull.size() >= 2) {
            P2 a = lift(hull[hull.size() - 2]), b = lift(hull.back()), c = lift(i);
            if (cross(b - a, c - a) <= 0.0)  // b on or above the chord: not extreme
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    return hull;
}

struct HullFace1 {
    int i, j;              // vertex indices into verts (j = i+1)
    double apex_v, apex_h;  // apex of the downward parabola through the pair
};

/// The paraboloid hull process for spatial dimension 1.
struct HullProcess1 {
    std::vector<P2> verts;        // Vertices(Phi) = ext(Psi), sorted by v
    std::vector<double> lifted;   // lifted heights of verts
    std::vector<HullFace1> faces; // consecutive pairs

    /// Boundary of Phi at v; +infinity outside the spatial span of the hull.
    double boundary(double v) const {
        if (verts.empty()) return kInf();
        if (v < verts.front().x || v > verts.back().x) return kInf();
        auto it = std::lower_bound(verts.begin(), verts.end(), v,
                                   [](const P2& p, double val) { return p.x < val; });
        std::size_t j = it - verts.begin();
        if (j == 0) return verts[0].y;
        std::size_t i = j - 1;
        if (j >= verts.size()) return verts.back().y;
        double t = (v - verts[i].x) / (verts[j].x - verts[i].x);
        double lift_v = lifted[i] + t * (lifted[j] - lifted[i]);
        return lift_v - 0.5 * v * v;
    }
};

inline HullProcess1 hull_process1(const std::vector<P2>& germs) {
    auto idx = extreme_indices1(germs);
    HullProcess1 hp;
    hp.verts.reserve(idx.size());
    for (int i : idx) hp.verts.push_back(germs[i]);
    hp.lifted.reserve(idx.size());
    for (const P2& p : hp.verts) hp.lifted.push_back(p.y + 0.5 * p.x * p.x);
    for (std::size_t i = 0; i + 1 < hp.verts.size(); ++i) {
        const P2 &x = hp.verts[i], &y = hp.verts[i + 1];
        double theta = y.x - x.x;
        double av = 0.5 * (x.x + y.x) - (x.y - y.y) / theta;
        double ah = x.y + 0.5 * (av - x.x) * (av - x.x);
        hp.faces.push_back({static_cast<int>(i), static_cast<int>(i + 1), av, ah});
    }
    return hp;
}

/// Top of a face: the endpoint with the smaller height (lexicographic
/// tie-break on the spatial coordinate).
inline std::vector<P2> face_tops1(const HullProcess1& hp) {
    std::vector<P2> tops;
    tops.reserve(hp.faces.size());
    for (const auto& f : hp.faces) {
        const P2 &a = hp.verts[f.i], &b = hp.verts[f.j];
        tops.push_back(b.y < a.y ? b : a);
    }
    return tops;
}

struct DualityReport {
    double max_err_psi_from_vertices = 0.0;  // Psi = Vertices(Phi) + upward paraboloids
    double max_err_phi_from_apexes = 0.0;    // cl(Phi^c) = ext-dir(Psi) + downward paraboloids
    bool extreme_equals_vertices = true;     // ext(Psi) == Vertices(Phi), by construction ids
};

/// Grid checks of the two duality identities on [lo, hi].
inline DualityReport duality_checks1(const std::vector<P2>& germs, double lo, double hi,
                                     int grid) {
    HullProcess1 hp = hull_process1(germs);
    DualityReport rep;
    for (int k = 0; k <= grid; ++k) {
        double v = lo + (hi - lo) * k / grid;
        double full = psi_boundary1(germs, v);
        double from_verts = psi_boundary1(hp.verts, v);
        rep.max_err_psi_from_vertices =
            std::max(rep.max_err_psi_from_vertices, std::fabs(full - from_verts));
        double phi = hp.boundary(v);
        double rec = -kInf();
        for (const auto& f : hp.faces) {
            double dv = v - f.apex_v;
            rec = std::max(rec, f.apex_h - 0.5 * dv * dv);
        }
        if (std::isfinite(phi))
            rep.max_err_phi_from_apexes =
                std::max(rep.max_err_phi_from_apexes, std::fabs(phi - rec));
    }
    return rep;
}

struct PairSample {
    double theta;   // spatial gap > 0
    double h1, h2;  // heights of the left and right extreme point
};

/// Consecutive extreme pairs whose spatial coordinates both lie in
/// [lo, hi] (the interior margin discipline).
inline std::vector<PairSample> typical_pairs1(const std::vector<P2>& germs, double lo,
                                              double hi) {
    auto idx = extreme_indices1(germs);
    std::vector<PairSample> out;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        const P2 &a = germs[idx[k]], &b = germs[idx[k + 1]];
        if (a.x < lo || b.x > hi) continue;
        out.push_back({b.x - a.x, a.y, b.y});
    }
    return out;
}

/// Area between the v-axis and the downward unit parabola through x and y:
/// (4 sqrt2 / 3) [ (h1+h2)/2 + (h1-h2)^2/(2 theta^2) + theta^2/8 ]^{3/2}.
inline double parabola_cap_area(P2 x, P2 y) {
    if (x.x == y.x) throw InvalidParams("parabola_cap_area: equal spatial coordinates");
    double theta = std::fabs(y.x - x.x);
    double c = 0.5 * (x.y + y.y) + 0.5 * (x.y - y.y) * (x.y - y.y) / (theta * theta) +
               theta * theta / 8.0;
    return 4.0 * std::sqrt(2.0) / 3.0 * std::pow(c, 1.5);
}

// ---------------------------------------------------------------------------
// spatial dimension 2
// ---------------------------------------------------------------------------

inline double psi_boundary2(const std::vector<P3>& germs, P2 v) {
    if (germs.empty()) throw Error("psi_boundary2: no germs");
    double best = kInf();
    for (const P3& g : germs) {
        double dx = v.x - g.x, dy = v.y - g.y;
        best = std::min(best, g.z + 0.5 * (dx * dx + dy * dy));
    }
    return best;
}

struct HullFace2 {
    int a, b, c;        // germ indices
    double gx, gy, g0;  // lifted supporting plane z = gx v1 + gy v2 + g0
    double apex_h;      // apex height: g0 + (gx^2+gy^2)/2, apex at (gx, gy)
};

struct HullProcess2 {
    const std::vector<P3>* germs = nullptr;  // backing germ list
    std::vector<int> vert_idx;               // indices of Vertices(Phi) in the germ list
    std::vector<HullFace2> faces;            // lower facets of the lifted hull

    /// Boundary of Phi at v; +infinity outside the projected hull of the
    /// vertices.  Inside, the lifted lower-hull function is the max of the
    /// facet supporting planes.
    double boundary(P2 v) const {
        bool covered = false;
        for (const auto& f : faces) {
            P2 a{(*germs)[f.a].x, (*germs)[f.a].y};
            P2 b{(*germs)[f.b].x, (*germs)[f.b].y};
            P2 c{(*germs)[f.c].x, (*germs)[f.c].y};
            double d1 = cross(b - a, v - a), d2 = cross(c - b, v - b), d3 = cross(a - c, v - c);
            bool neg = d1 < -1e-12 || d2 < -1e-12 || d3 < -1e-12;
            bool pos = d1 > 1e-12 || d2 > 1e-12 || d3 > 1e-12;
            if (!(neg && pos)) {
                covered = true;
                break;
            }
        }
        if (!covered) return kInf();
        double lift = -kInf();
        for (const auto& f : faces) lift = std::max(lift, f.gx * v.x + f.gy * v.y + f.g0);
        return lift - 0.5 * (v.x * v.x + v.y * v.y);
    }
};

inline HullProcess2 hull_process2(const std::vector<P3>& germs) {
    if (germs.size() < 3) throw DegenerateInput("hull_process2: need at least 3 germs");
    std::vector<P3> lifted(germs.size());
    for (std::size_t i = 0; i < germs.size(); ++i) {
        const P3& g = germs[i];
        lifted[i] = {g.x, g.y, g.z + 0.5 * (g.x * g.x + g.y * g.y)};
    }
    Polytope3 hull = convex_hull3(lifted);
    HullProcess2 hp;
    hp.germs = &germs;
    std::set<int> vset;
    for (const Facet3& f : hull.fac) {
        if (f.n.z >= -1e-12) continue;  // keep lower facets only
        HullFace2 out;
        out.a = hull.orig[f.a];
        out.b = hull.orig[f.b];
        out.c = hull.orig[f.c];
        // plane <n, x> = off with n.z < 0  =>  z = (off - nx x - ny y)/nz
        out.gx = -f.n.x / f.n.z;
        out.gy = -f.n.y / f.n.z;
        out.g0 = f.off / f.n.z;
        out.apex_h = out.g0 + 0.5 * (out.gx * out.gx + out.gy * out.gy);
        hp.faces.push_back(out);
        vset.insert(out.a);
        vset.insert(out.b);
        vset.insert(out.c);
    }
    hp.vert_idx.assign(vset.begin(), vset.end());
    return hp;
}

/// Grid duality checks for spatial dimension 2 over [lo,hi]^2.
inline DualityReport duality_checks2(const std::vector<P3>& germs, double lo, double hi,
                                     int grid) {
    HullProcess2 hp = hull_process2(germs);
    std::vector<P3> verts;
    for (int i : hp.vert_idx) verts.push_back(germs[i]);
    DualityReport rep;
    for (int kx = 0; kx <= grid; ++kx) {
        for (int ky = 0; ky <= grid; ++ky) {
            P2 v{lo + (hi - lo) * kx / grid, lo + (hi - lo) * ky / grid};
            double full = psi_boundary2(germs, v);
            double from_verts = psi_boundary2(verts, v);
            rep.max_err_psi_from_vertices =
                std::max(rep.max_err_psi_from_vertices, std::fabs(full - from_verts));
            double phi = hp.boundary(v);
            double rec = -kInf();
            for (const auto& f : hp.faces) {
                double dx = v.x - f.gx, dy = v.y - f.gy;
                rec = std::max(rec, f.apex_h - 0.5 * (dx * dx + dy * dy));
            }
            if (std::isfinite(phi))
                rep.max_err_phi_from_apexes =
                    std::max(rep.max_err_phi_from_apexes, std::fabs(phi - rec));
        }
    }
    return rep;
}

/// Tops of the lower facets: vertex with the smallest height coordinate.
inline std::vector<P3> face_tops2(const std::vector<P3>& germs, const HullProcess2& hp) {
    std::vector<P3> tops;
    tops.reserve(hp.faces.size());
    for (const auto& f : hp.faces) {
        P3 best = germs[f.a];
        if (germs[f.b].z < best.z) best = germs[f.b];
        if (germs[f.c].z < best.z) best = germs[f.c];
        tops.push_back(best);
    }
    return tops;
}

// ---------------------------------------------------------------------------
// stabilization radius
// ---------------------------------------------------------------------------

namespace detail {

// Faces of Phi meeting the germ with index gi, as sorted coordinate pairs.
inline std::vector<std::pair<double, double>> faces_at1(const std::vector<P2>& germs,
                                                        double vx) {
    HullProcess1 hp = hull_process1(germs);
    std::vector<std::pair<double, double>> out;
    for (const auto& f : hp.faces) {
        if (hp.verts[f.i].x == vx || hp.verts[f.j].x == vx)
            out.push_back({hp.verts[f.i].x, hp.verts[f.j].x});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Smallest radius on a grid such that the faces of Phi meeting the extreme
/// germ are unchanged when the germs are restricted to the cylinder of that
/// radius (and remain unchanged for every larger grid radius).
inline double stabilization_radius1(const std::vector<P2>& germs, P2 x, double r_step = 0.25,
                                    double r_max = 1e300) {
    double span = 0.0;
    for (const P2& g : germs) span = std::max(span, std::fabs(g.x - x.x));
    r_max = std::min(r_max, span);
    auto ref = detail::faces_at1(germs, x.x);
    if (ref.empty()) throw InvalidParams("stabilization_radius1: germ is not extreme");
    int steps = static_cast<int>(std::ceil(r_max / r_step));
    double smallest = r_max;
    for (int k = steps; k >= 1; --k) {
        double r = k * r_step;
        std::vector<P2> sub;
        for (const P2& g : germs)
            if (std::fabs(g.x - x.x) <= r) sub.push_back(g);
        if (sub.size() < 2) break;
        if (detail::faces_at1(sub, x.x) == ref)
            smallest = r;
        else
            break;
    }
    return smallest;
}

// ---------------------------------------------------------------------------
// variance density from the boundary covariance (Lemma-style integral)
// ---------------------------------------------------------------------------

struct SigmaEstimate {
    double sigma2 = 0.0;
    double stderr_ = 0.0;
    double v_cut = 0.0;  // where the covariance tail was cut
};

enum class BoundaryKind { growth, hull };  // dPsi or dPhi

/// sigma^2 = int_R Cov(dB(0), dB(v)) dv for the chosen boundary process,
/// estimated from i.i.d. germ windows on a grid with trapezoid integration
/// and a tail cut where |cov| < 2 stderr.  Spatial dimension 1.
inline SigmaEstimate sigma_from_covariance1(double delta, BoundaryKind kind, const Window& w,
                                            double grid_step, int n_rep, std::uint64_t seed,
                                            const char* stream_name, double margin) {
    const int J = static_cast<int>(std::floor((w.L - margin) / grid_step));
    if (J < 4) throw WindowTooSmall("sigma_from_covariance1: window too small for the margin");
    std::vector<std::vector<double>> vals(J + 1, std::vector<double>(n_rep));
    for (int r = 0; r < n_rep; ++r) {
        RngStream rng(seed, stream_hash(stream_name, r));
        auto germs = sample_germs1(delta, w, rng);
        if (germs.empty()) {
            for (int j = 0; j <= J; ++j) vals[j][r] = w.H;  // empty window: boundary at cap
            continue;
        }
        if (kind == BoundaryKind::growth) {
            for (int j = 0; j <= J; ++j) vals[j][r] = psi_boundary1(germs, j * grid_step);
        } else {
            HullProcess1 hp = hull_process1(germs);
            for (int j = 0; j <= J; ++j) {
                double b = hp.boundary(j * grid_step);
                vals[j][r] = std::isfinite(b) ? b : w.H;
            }
        }
    }
    // block the replicates for an honest stderr of the integrated estimate
    const int B = 20;
    std::vector<double> block_sigma;
    std::vector<double> cov(J + 1), cov_se(J + 1);
    {
        // pooled covariances for the tail cut
        std::vector<double> m(J + 1);
        for (int j = 0; j <= J; ++j) m[j] = sample_mean(vals[j]);
        for (int j = 0; j <= J; ++j) {
            std::vector<double> prod(n_rep);
            for (int r = 0; r < n_rep; ++r) prod[r] = (vals[0][r] - m[0]) * (vals[j][r] - m[j]);
            auto e = estimate_moments(prod);
            cov[j] = e.mean;
            cov_se[j] = e.mean_stderr;
        }
    }
    int cut = J;
    for (int j = 1; j <= J; ++j) {
        if (std::fabs(cov[j]) < 2.0 * cov_se[j]) {
            cut = j;
            break;
        }
    }
    if (cut == J && std::fabs(cov[J]) >= 2.0 * cov_se[J])
        throw WindowTooSmall("sigma_from_covariance1: covariance not decayed at the grid end");
    auto integrate_blocks = [&](int b, int nb) {
        int lo = b * n_rep / nb, hi = (b + 1) * n_rep / nb;
        std::vector<double> m(cut + 1);
        for (int j = 0; j <= cut; ++j) {
            double s = 0.0;
            for (int r = lo; r < hi; ++r) s += vals[j][r];
            m[j] = s / (hi - lo);
        }
        double integral = 0.0;
        for (int j = 0; j <= cut; ++j) {
            double c = 0.0;
            for (int r = lo; r < hi; ++r) c += (vals[0][r] - m[0]) * (vals[j][r] - m[j]);
            c /= (hi - lo - 1);
            double wgt = (j == 0 || j == cut) ? 0.5 : 1.0;
            integral += wgt * c;
        }
        // trapezoid of the even extension: 2 (c0/2 + c1 + ... + c_cut/2) step
        return 2.0 * integral * grid_step;
    };
    for (int b = 0; b < B; ++b) block_sigma.push_back(integrate_blocks(b, B));
    auto e = estimate_moments(block_sigma);
    SigmaEstimate out;
    out.sigma2 = e.mean;
    out.stderr_ = e.mean_stderr;
    out.v_cut = cut * grid_step;
    return out;
}

}  // namespace ballhull
