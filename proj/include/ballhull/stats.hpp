#pragma once

// Estimators and goodness-of-fit helpers for the experiment harness:
// pairwise-summation moments, Kolmogorov-Smirnov distance against a
// reference CDF, and (weighted) least squares for variance-scaling slopes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "core.hpp"

namespace ballhull {

namespace detail {

inline double pairwise_sum(const double* a, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

}  // namespace detail

inline double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : detail::pairwise_sum(v.data(), v.size());
}

/// Mean/variance with standard errors; the variance stderr uses the fourth
/// central moment.
struct Estimate {
    double mean = 0.0;
    double variance = 0.0;
    double mean_stderr = 0.0;
    double var_stderr = 0.0;
    std::size_t n = 0;
};

inline Estimate estimate_moments(const std::vector<double>& x) {
    Estimate e;
    e.n = x.size();
    if (e.n < 2) throw InvalidParams("estimate_moments: need n >= 2");
    const double n = static_cast<double>(e.n);
    e.mean = pairwise_sum(x) / n;
    std::vector<double> c2(x.size()), c4(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - e.mean;
        c2[i] = d * d;
        c4[i] = d * d * d * d;
    }
    double m2 = pairwise_sum(c2) / n;
    double m4 = pairwise_sum(c4) / n;
    e.variance = m2 * n / (n - 1.0);
    e.mean_stderr = std::sqrt(e.variance / n);
    double var_of_var = (m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n;
    e.var_stderr = std::sqrt(std::max(var_of_var, 0.0));
    return e;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double gumbel_cdf(double t) { return std::exp(-std::exp(-t)); }

struct KSResult {
    double statistic = 1.0;
    std::size_t n = 0;
    std::string reference;
};

/// Two-sided KS distance of the sample against a reference CDF.
inline KSResult ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf,
                             std::string reference = "") {
    if (sample.empty()) throw InvalidParams("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    KSResult r;
    r.statistic = d;
    r.n = sample.size();
    r.reference = std::move(reference);
    return r;
}

/// KS of the sample standardized by its own mean and standard deviation,
/// against the standard normal.
inline KSResult ks_standardized_normal(const std::vector<double>& sample) {
    Estimate e = estimate_moments(sample);
    double sd = std::sqrt(e.variance);
    std::vector<double> z(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) z[i] = (sample[i] - e.mean) / sd;
    return ks_statistic(std::move(z), [](double t) { return normal_cdf(t); }, "normal");
}

struct LineFit {
    double slope = 0.0, intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Weighted least squares y ~ a + b x with weights w = 1/se^2.
inline LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                                 const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw InvalidParams("weighted_line_fit: bad inputs");
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ybar - f.slope * xbar;
    f.slope_stderr = std::sqrt(1.0 / sxx);
    return f;
}

inline double sample_covariance(const std::vector<double>& a, const std::vector<double>& b,
                                double mean_a, double mean_b) {
    if (a.size() != b.size() || a.empty()) throw InvalidParams("sample_covariance: bad inputs");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - mean_a) * (b[i] - mean_b);
    return pairwise_sum(prod) / static_cast<double>(a.size());
}

inline double sample_mean(const std::vector<double>& a) {
    return pairwise_sum(a) / static_cast<double>(a.size());
}

}  // namespace ballhull
