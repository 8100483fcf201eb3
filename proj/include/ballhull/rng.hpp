#pragma once

// Deterministic per-stream random generator.  Replicate k of experiment e
// draws from stream_id = stream_hash(e, k), so results do not depend on how
// replicates are distributed over workers.

#include <cstdint>
#include <cmath>
#include <string_view>

#include "core.hpp"

namespace ballhull {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

/// xoshiro256++ seeded from (seed, stream_id); identical pair => identical
/// sample sequence regardless of scheduling.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
        std::uint64_t sm = seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL);
        for (auto& w : s_) w = detail::splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0,1); never returns 0 or 1.
    double uniform() {
        double u = (next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-54;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        // Marsaglia polar method; second value is not cached to keep the
        // stream state a pure function of the draw count.
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    /// Marsaglia-Tsang for a >= 1, with the u^{1/a} boost below 1.
    double gamma(double a) {
        if (!(a > 0.0)) throw InvalidParams("gamma: shape must be > 0");
        if (a < 1.0) {
            double u = uniform();
            return gamma(a + 1.0) * std::pow(u, 1.0 / a);
        }
        const double d = a - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        double x = gamma(a);
        double y = gamma(b);
        return x / (x + y);
    }

    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) throw InvalidParams("poisson: mean must be >= 0");
        if (mean == 0.0) return 0;
        if (mean < 30.0) {
            // inversion by multiplication
            double l = std::exp(-mean), p = 1.0;
            std::uint64_t k = 0;
            do {
                ++k;
                p *= uniform();
            } while (p > l);
            return k - 1;
        }
        return poisson_ptrs(mean);
    }

  private:
    // Hoermann's PTRS transformed rejection, valid for mean >= 10.
    std::uint64_t poisson_ptrs(double mu) {
        const double smu = std::sqrt(mu);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mu = std::log(mu);
        for (;;) {
            double u = uniform() - 0.5;
            double v = uniform();
            double us = 0.5 - std::fabs(u);
            double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
            if (k < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                k * log_mu - mu - std::lgamma(k + 1.0))
                return static_cast<std::uint64_t>(k);
        }
    }

    std::uint64_t seed_, stream_id_;
    std::uint64_t s_[4];
};

/// stream_id for replicate k of the named experiment (FNV-1a over the name,
/// then mixed with k).
inline std::uint64_t stream_hash(std::string_view experiment, std::uint64_t k) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : experiment) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = h ^ (k * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return detail::splitmix64(s);
}

}  // namespace ballhull
