#pragma once

// Test-side numerical oracles, kept independent of the library's own
// quadrature and samplers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Composite Simpson rule.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 4096) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Cumulative distribution sampled on a uniform grid (trapezoid rule),
// normalized to end at 1.
struct GridCdf {
    double lo = 0.0, hi = 0.0;
    std::vector<double> F;

    static GridCdf build(const std::function<double(double)>& density, double lo,
                         double hi, int points = 20001) {
        GridCdf c;
        c.lo = lo;
        c.hi = hi;
        c.F.resize(points);
        const double h = (hi - lo) / (points - 1);
        double acc = 0.0;
        double prev = density(lo);
        c.F[0] = 0.0;
        for (int i = 1; i < points; ++i) {
            const double cur = density(lo + i * h);
            acc += 0.5 * (prev + cur) * h;
            c.F[i] = acc;
            prev = cur;
        }
        for (double& v : c.F) v /= acc;
        return c;
    }

    double operator()(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        const double t = (x - lo) / (hi - lo) * (F.size() - 1);
        const int i = static_cast<int>(t);
        const double d = t - i;
        return F[i] * (1.0 - d) + F[i + 1] * d;
    }

    // Quantile by binary search on the grid.
    double quantile(double u) const {
        const auto it = std::lower_bound(F.begin(), F.end(), u);
        if (it == F.begin()) return lo;
        if (it == F.end()) return hi;
        const int i = static_cast<int>(it - F.begin());
        const double f0 = F[i - 1], f1 = F[i];
        const double h = (hi - lo) / (F.size() - 1);
        const double d = (f1 > f0) ? (u - f0) / (f1 - f0) : 0.0;
        return lo + (i - 1 + d) * h;
    }
};

// Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        ks = std::max(ks, std::fabs(F - static_cast<double>(i) / n));
        ks = std::max(ks, std::fabs(F - static_cast<double>(i + 1) / n));
    }
    return ks;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

inline double skewness(const std::vector<double>& v) {
    const double m = mean(v);
    double s2 = 0.0, s3 = 0.0;
    for (double x : v) {
        const double d = x - m;
        s2 += d * d;
        s3 += d * d * d;
    }
    s2 /= static_cast<double>(v.size());
    s3 /= static_cast<double>(v.size());
    return s3 / std::pow(s2, 1.5);
}

}  // namespace oracle
