#include <catch2/catch_amalgamated.hpp>

#include "ballhull/core.hpp"

using namespace ballhull;

TEST_CASE("scaling exponents match the closed forms") {
    auto e = scaling_exponents({2, 1.0, 0.0});
    CHECK(e.beta == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e.gamma == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(e.zeta == Catch::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(e.tau == Catch::Approx(1.0 / 3.0).epsilon(1e-15));

    e = scaling_exponents({3, 1.0, 0.0});
    CHECK(e.beta == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(e.gamma == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(e.zeta == Catch::Approx(1.5).epsilon(1e-15));
    CHECK(e.tau == Catch::Approx(0.5).epsilon(1e-15));

    e = scaling_exponents({2, 1.0, 1.0});
    CHECK(e.beta == Catch::Approx(0.2).epsilon(1e-15));
    CHECK(e.gamma == Catch::Approx(0.4).epsilon(1e-15));
    CHECK(e.zeta == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(e.tau == Catch::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("exponent identities hold across the parameter range") {
    for (int d = 2; d <= 9; ++d) {
        for (double delta : {0.0, 0.25, 0.5, 1.0, 2.0, 3.5, 7.0}) {
            auto e = scaling_exponents({d, 1.0, delta});
            CHECK(std::fabs(e.beta * (d - 1) + e.gamma * (1.0 + delta) - 1.0) < 1e-14);
            CHECK(e.gamma == 2.0 * e.beta);
            CHECK(std::fabs(e.zeta - (d + 3.0) / (d + 1.0 + 2.0 * delta)) < 1e-14);
        }
    }
}

TEST_CASE("ball volumes") {
    CHECK(ball_volume(0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(ball_volume(1) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(ball_volume(2) == Catch::Approx(M_PI).epsilon(1e-14));
    CHECK(ball_volume(3) == Catch::Approx(4.0 * M_PI / 3.0).epsilon(1e-13));
    CHECK(sphere_surface(2) == Catch::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(sphere_surface(3) == Catch::Approx(4.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("ball process mean") {
    CHECK(ball_process_mean({2, 100.0, 0.0}) == Catch::Approx(100.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(scaling_exponents({1, 1.0, 0.0}), InvalidParams);
    CHECK_THROWS_AS(scaling_exponents({2, -1.0, 0.0}), InvalidParams);
    CHECK_THROWS_AS(scaling_exponents({2, 1.0, -0.5}), InvalidParams);
    ModelParams p{5, 1.0, 0.0};
    CHECK_THROWS_AS(p.require_hull_dim(), InvalidParams);
}
