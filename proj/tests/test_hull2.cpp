#include <catch2/catch_amalgamated.hpp>

#include "ballhull/hull2.hpp"
#include "ballhull/quadrature.hpp"
#include "ballhull/samplers.hpp"
#include "ballhull/stats.hpp"

using namespace ballhull;

namespace {

std::vector<P2> square_pts(double a) {
    return {{a, a}, {-a, a}, {-a, -a}, {a, -a}};
}

std::vector<P2> random_disk(std::uint64_t stream, double lam = 60.0, double delta = 0.0) {
    ModelParams p{2, lam, delta};
    RngStream rng(2024, stream);
    for (int tries = 0; tries < 50; ++tries) {
        auto pts = sample_disk_boundary(p, 1.0, rng);
        if (pts.size() < 4) continue;
        auto h = convex_hull2(pts);
        if (h.contains_origin) return pts;
    }
    FAIL("could not draw a sample whose hull contains the origin");
    return {};
}

// O(n^4) brute force: a point is extreme iff no triangle of other points
// contains it.
bool brute_extreme(const std::vector<P2>& pts, std::size_t idx) {
    const P2 q = pts[idx];
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (i == idx || j == idx || k == idx) continue;
                P2 a = pts[i], b = pts[j], c = pts[k];
                double d1 = cross(b - a, q - a);
                double d2 = cross(c - b, q - b);
                double d3 = cross(a - c, q - c);
                bool neg = d1 < 0 || d2 < 0 || d3 < 0;
                bool pos = d1 > 0 || d2 > 0 || d3 > 0;
                if (!(neg && pos)) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("square plus center point hulls to the square") {
    auto pts = square_pts(0.5);
    pts.push_back({0.0, 0.0});
    auto h = convex_hull2(pts);
    REQUIRE(h.n() == 4);
    CHECK(h.contains_origin);
}

TEST_CASE("hull matches brute-force extreme point oracle") {
    ModelParams p{2, 14.0, 0.0};
    for (std::uint64_t s = 0; s < 12; ++s) {
        RngStream rng(7, s);
        auto raw = sample_ball_process(p, rng);
        if (raw.size() < 5) continue;
        std::vector<P2> pts;
        for (auto& v : raw) pts.push_back({v[0], v[1]});
        auto h = convex_hull2(pts);
        std::size_t n_extreme = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (brute_extreme(pts, i)) ++n_extreme;
        CHECK(n_extreme == static_cast<std::size_t>(h.n()));
    }
}

TEST_CASE("collinear input is rejected") {
    std::vector<P2> pts = {{0, 0}, {0.5, 0.5}, {0.9, 0.9}, {0.2, 0.2}};
    CHECK_THROWS_AS(convex_hull2(pts), DegenerateInput);
}

TEST_CASE("defect support examples") {
    auto h = convex_hull2(square_pts(0.4));
    CHECK(defect_support2(h, 0.0) == Catch::Approx(1.0 - 0.4).margin(1e-14));

    auto tri = convex_hull2({{1.0, 0.0}, {-0.3, 0.6}, {-0.3, -0.6}});
    CHECK(defect_support2(tri, 0.0) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("defect radius examples and domination") {
    auto h = convex_hull2(square_pts(0.4));
    CHECK(defect_radius2(h, 0.0) == Catch::Approx(1.0 - 0.4).margin(1e-13));
    // toward a vertex: r = 1 - |x|
    CHECK(defect_radius2(h, M_PI / 4.0) ==
          Catch::Approx(1.0 - 0.4 * std::sqrt(2.0)).margin(1e-13));

    auto pts = random_disk(1);
    auto hull = convex_hull2(pts);
    RngStream rng(5, 5);
    for (int i = 0; i < 300; ++i) {
        double t = rng.uniform(0.0, 2.0 * M_PI);
        double s = defect_support2(hull, t), r = defect_radius2(hull, t);
        CHECK(s >= 0.0);
        CHECK(r >= s - 1e-13);
        CHECK(r <= 1.0 + 1e-13);
    }
}

TEST_CASE("origin-outside raises") {
    auto h = convex_hull2({{0.5, 0.1}, {0.8, 0.2}, {0.7, 0.4}, {0.5, 0.35}});
    REQUIRE_FALSE(h.contains_origin);
    CHECK_THROWS_AS(radial2(h, 0.0), OriginOutside);
    CHECK_THROWS_AS(sup_defect_support2(h), OriginOutside);
}

TEST_CASE("flower radius-vector equals support function") {
    auto pts = random_disk(2);
    auto hull = convex_hull2(pts);
    RngStream rng(6, 6);
    for (int i = 0; i < 100; ++i)
        CHECK(flower_support_identity_check(pts, hull, rng.uniform(0.0, 2.0 * M_PI)));

    // single point, direction at and orthogonal to it
    std::vector<P2> one = {{0.3, 0.4}};
    CHECK(flower_radius(one, std::atan2(0.4, 0.3)) == Catch::Approx(0.5).margin(1e-14));
    CHECK(flower_radius(one, std::atan2(0.4, 0.3) + M_PI / 2.0) ==
          Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("face tops") {
    auto pts = random_disk(3);
    auto hull = convex_hull2(pts);
    auto t0 = face_tops2(hull, 0);
    auto t1 = face_tops2(hull, 1);
    CHECK(t0.size() == static_cast<std::size_t>(hull.n()));  // f_0
    CHECK(t1.size() == static_cast<std::size_t>(hull.n()));  // f_1 = f_0 in the plane
    for (auto& ft : t0) CHECK(ft.vertex == ft.face);
    for (auto& ft : t1) {
        int i = ft.face, j = (ft.face + 1) % hull.n();
        CHECK(norm2(hull.v[ft.vertex]) >=
              std::max(norm2(hull.v[i]), norm2(hull.v[j])) - 1e-15);
    }
}

TEST_CASE("external angles sum to one; regular polygon splits evenly") {
    auto pts = random_disk(4);
    auto hull = convex_hull2(pts);
    auto ea = external_angles2(hull);
    double sum = 0.0;
    for (double a : ea.vertex) {
        CHECK(a > 0.0);
        sum += a;
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));

    std::vector<P2> gon;
    const int n = 9;
    for (int i = 0; i < n; ++i) gon.push_back(unit_dir(2.0 * M_PI * i / n + 0.37));
    auto hg = convex_hull2(gon);
    auto eg = external_angles2(hg);
    for (double a : eg.vertex) CHECK(a == Catch::Approx(1.0 / n).margin(1e-12));
}

TEST_CASE("intrinsic volumes and Kubota") {
    auto h = convex_hull2(square_pts(0.4));  // side 0.8
    CHECK(intrinsic_volume2(h, 0) == 1.0);
    CHECK(intrinsic_volume2(h, 1) == Catch::Approx(2.0 * 0.8).margin(1e-13));

    RngStream rng(8, 8);
    auto kub = kubota_V1(h, 4096, rng);
    CHECK(std::fabs(kub.value - 1.6) < 3.0 * kub.stderr_ + 1e-6);

    // fine polygon approximates the disk of radius a: V1 -> pi a
    std::vector<P2> gon;
    for (int i = 0; i < 400; ++i) gon.push_back(0.6 * unit_dir(2.0 * M_PI * i / 400));
    auto hg = convex_hull2(gon);
    auto kg = kubota_V1(hg, 4096, rng);
    CHECK(std::fabs(kg.value - M_PI * 0.6) < 3.0 * kg.stderr_ + 1e-3);
}

TEST_CASE("projection avoidance indicator and Kubota representation") {
    auto pts = random_disk(5, 80.0);
    auto hull = convex_hull2(pts);
    CHECK(projection_avoidance2(hull, P2{0.0, 0.01}) == 0.0);
    double big = 0.0;
    for (auto& p : hull.v) big = std::max(big, norm(p));
    CHECK(projection_avoidance2(hull, 1.001 * std::min(1.0 / 1.001, big) * unit_dir(0.3)) ==
          (big < 1.0 ? 1.0 : 0.0));

    // (1/kappa_1) * C(1,0) * int_{B\K} |x|^{-1} theta_1(x) dx = pi - V_1(K)
    RngStream rng(9, 9);
    const int n_mc = 400000;
    std::vector<double> vals(n_mc);
    for (int i = 0; i < n_mc; ++i) {
        P2 x;
        do {
            x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        } while (norm2(x) > 1.0);
        double r = norm(x);
        vals[i] = (r > 0.0 && distance_to_hull2(hull, x) > 0.0)
                      ? projection_avoidance2(hull, x) / r
                      : 0.0;
    }
    auto e = estimate_moments(vals);
    double integral = e.mean * M_PI;  // over the unit disk
    double lhs = 0.5 * integral;
    double rhs = M_PI - intrinsic_volume2(hull, 1);
    CHECK(std::fabs(lhs - rhs) < 3.0 * 0.5 * M_PI * e.mean_stderr + 1e-4);
}

TEST_CASE("width and volume arc processes") {
    // square inscribed in the unit circle: vertices at distance 1
    std::vector<P2> sq;
    for (int i = 0; i < 4; ++i) sq.push_back(unit_dir(M_PI / 4.0 + i * M_PI / 2.0));
    auto h = convex_hull2(sq);

    CHECK(W_process2(h, 0.0, 0.0) == 0.0);
    CHECK(V_process2(h, 0.3, 0.3) == 0.0);

    double w_closed = W_total2(h);
    CHECK(w_closed == Catch::Approx(2.0 * M_PI - 4.0 * std::sqrt(2.0)).margin(1e-12));

    // cross-check the closed form against plain quadrature
    QuadratureSpec spec;
    spec.abs_tol = 1e-11;
    std::vector<double> breaks;
    for (double a : h.vang) breaks.push_back(a);
    for (double a : h.nang) breaks.push_back(a);
    double w_quad =
        integrate_pieces([&](double t) { return defect_support2(h, t); }, 0.0, 2.0 * M_PI,
                         breaks, spec);
    CHECK(std::fabs(w_closed - w_quad) < 1e-9);

    // W = 2pi - perimeter in the plane
    CHECK(w_closed == Catch::Approx(2.0 * M_PI - perimeter2(h)).margin(1e-12));

    double v_total = V_total2(h);
    CHECK(w_closed <= v_total);

    // partial arcs on a random hull against direct quadrature
    auto hull = convex_hull2(random_disk(6));
    SupportArcTable tab = support_arc_table(hull);
    RngStream rng(10, 10);
    for (int i = 0; i < 20; ++i) {
        double a = rng.uniform(-M_PI, M_PI), b = a + rng.uniform(0.0, M_PI);
        double closed = W_process2(hull, tab, a, b);
        std::vector<double> brk;
        for (int j = 0; j < hull.n(); ++j)
            for (double s = hull.vang[j] - 3.0 * two_pi(); s < b; s += two_pi())
                if (s > a) brk.push_back(s);
        for (int j = 0; j < hull.n(); ++j)
            for (double s = hull.nang[j] - 3.0 * two_pi(); s < b; s += two_pi())
                if (s > a) brk.push_back(s);
        double quad = integrate_pieces([&](double t) { return defect_support2(hull, t); }, a, b,
                                       brk, spec);
        CHECK(std::fabs(closed - quad) < 1e-9);
    }
}

TEST_CASE("sup defect support") {
    auto h = convex_hull2(square_pts(0.45));
    CHECK(sup_defect_support2(h) == Catch::Approx(1.0 - 0.45).margin(1e-13));

    std::vector<P2> gon;
    const int n = 11;
    for (int i = 0; i < n; ++i) gon.push_back(unit_dir(2.0 * M_PI * i / n + 0.1));
    auto hg = convex_hull2(gon);
    CHECK(sup_defect_support2(hg) == Catch::Approx(1.0 - std::cos(M_PI / n)).margin(1e-13));

    auto hull = convex_hull2(random_disk(7));
    double s_exact = sup_defect_support2(hull);
    double s_grid = 0.0;
    const int g = 10000;
    for (int i = 0; i < g; ++i)
        s_grid = std::max(s_grid, defect_support2(hull, 2.0 * M_PI * i / g));
    CHECK(s_grid <= s_exact + 1e-13);
    CHECK(s_exact - s_grid < 2.0 * M_PI / g);  // kink maximum: linear in grid resolution
}

TEST_CASE("vertex scores reproduce the totals") {
    // symmetric diamond with exactly tied norms: four equal xi_r values
    std::vector<P2> sq = {{0.8, 0.0}, {0.0, 0.8}, {-0.8, 0.0}, {0.0, -0.8}};
    auto hs = convex_hull2(sq);
    auto sc = vertex_scores2(hs);
    for (int i = 1; i < 4; ++i) CHECK(sc.xi_r[i] == Catch::Approx(sc.xi_r[0]).epsilon(1e-9));

    for (std::uint64_t s = 0; s < 8; ++s) {
        auto hull = convex_hull2(random_disk(100 + s, 120.0));
        auto v = vertex_scores2(hull);
        double sum_s = 0.0, sum_r = 0.0, sum_f0 = 0.0, sum_f1 = 0.0;
        for (int i = 0; i < hull.n(); ++i) {
            sum_s += v.xi_s[i];
            sum_r += v.xi_r[i];
            sum_f0 += v.xi_f0[i];
            sum_f1 += v.xi_f1[i];
        }
        double W = W_total2(hull);
        double V = V_total2(hull, 1e-12);
        CHECK(std::fabs(sum_s - W) / W < 1e-9);
        CHECK(std::fabs(sum_r - V) / V < 1e-9);
        CHECK(sum_f0 == static_cast<double>(hull.n()));
        CHECK(sum_f1 == static_cast<double>(hull.n()));
    }
}

TEST_CASE("monotonicity: adding a point never increases the defects") {
    auto pts = random_disk(8);
    auto hull = convex_hull2(pts);
    auto more = pts;
    more.push_back({0.55, -0.61});
    auto hull2 = convex_hull2(more);
    for (int i = 0; i < 200; ++i) {
        double t = 2.0 * M_PI * i / 200.0;
        CHECK(defect_support2(hull2, t) <= defect_support2(hull, t) + 1e-13);
        CHECK(defect_radius2(hull2, t) <= defect_radius2(hull, t) + 1e-13);
    }
}

TEST_CASE("Steiner collar for the square and a random hull") {
    auto h = convex_hull2(square_pts(0.4));  // side 0.8, V1 = 1.6
    RngStream rng(11, 11);
    double eps = 0.1;
    auto st = steiner_check2(h, eps, 300000, rng);
    double exact = 4.0 * 0.8 * eps + M_PI * eps * eps;
    CHECK(st.polynomial == Catch::Approx(exact).margin(1e-12));
    CHECK(std::fabs(st.mc_volume - st.polynomial) < 3.0 * st.mc_stderr);

    auto st0 = steiner_check2(h, 0.0, 1000, rng);
    CHECK(st0.mc_volume == 0.0);
    CHECK(st0.polynomial == 0.0);

    auto hull = convex_hull2(random_disk(9));
    auto str = steiner_check2(hull, 0.05, 300000, rng);
    CHECK(std::fabs(str.mc_volume - str.polynomial) < 3.0 * str.mc_stderr);
}
