#pragma once

// Model parameters, scaling exponents and dimensional constants shared by
// every other header.

#include <cmath>
#include <stdexcept>
#include <string>

namespace ballhull {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidParams : Error {
    using Error::Error;
};
struct ResourceGuard : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};
struct OriginOutside : Error {
    using Error::Error;
};
struct AntipodeUndefined : Error {
    using Error::Error;
};
struct WindowTooSmall : Error {
    using Error::Error;
};
struct QuadratureError : Error {
    using Error::Error;
};

/// Intensity model: lambda * (1-|x|)^delta on the unit ball of dimension d.
struct ModelParams {
    int d = 2;
    double lambda = 1.0;
    double delta = 0.0;

    void validate() const {
        if (d < 2) throw InvalidParams("ModelParams: d must be >= 2");
        if (!(lambda > 0.0)) throw InvalidParams("ModelParams: lambda must be > 0");
        if (!(delta >= 0.0)) throw InvalidParams("ModelParams: delta must be >= 0");
    }
    void require_hull_dim() const {
        if (d != 2 && d != 3)
            throw InvalidParams("hull/geometry operations support d in {2,3} only");
    }
};

/// beta = 1/(d+1+2 delta), gamma = 2 beta, zeta = beta(d-1)+2 gamma,
/// tau = beta(d-1).  Computed on demand, never cached next to the params.
struct ScalingExponents {
    double beta, gamma, zeta, tau;
};

inline ScalingExponents scaling_exponents(const ModelParams& p) {
    p.validate();
    const double beta = 1.0 / (p.d + 1 + 2.0 * p.delta);
    ScalingExponents e;
    e.beta = beta;
    e.gamma = 2.0 * beta;
    e.zeta = beta * (p.d - 1) + 2.0 * e.gamma;
    e.tau = beta * (p.d - 1);
    return e;
}

/// kappa_j, the volume of the j-dimensional unit ball.
inline double ball_volume(int j) {
    if (j < 0) throw InvalidParams("ball_volume: j must be >= 0");
    return std::pow(M_PI, 0.5 * j) / std::tgamma(1.0 + 0.5 * j);
}

/// Surface measure of S_{d-1}, i.e. d * kappa_d.
inline double sphere_surface(int d) { return d * ball_volume(d); }

inline double log_beta_fn(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta_fn(double a, double b) { return std::exp(log_beta_fn(a, b)); }

/// Mean number of points of the ball process: lambda * d kappa_d * B(d, delta+1).
inline double ball_process_mean(const ModelParams& p) {
    return p.lambda * sphere_surface(p.d) * beta_fn(static_cast<double>(p.d), p.delta + 1.0);
}

constexpr double kMaxExpectedPoints = 1e9;

inline void check_resource_guard(double expected_points, const char* what) {
    if (!(expected_points <= kMaxExpectedPoints))
        throw ResourceGuard(std::string(what) + ": expected point count " +
                            std::to_string(expected_points) + " exceeds 1e9");
}

}  // namespace ballhull
