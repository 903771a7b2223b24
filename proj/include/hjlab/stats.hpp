#ifndef HJLAB_STATS_HPP
#define HJLAB_STATS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hjlab {

/// Mean, unbiased variance and standard error of a sample.
struct MeanSE {
    double mean = 0.0;
    double var = 0.0; // unbiased (n-1)
    double se = std::numeric_limits<double>::quiet_NaN();
    std::size_t n = 0;
};

inline MeanSE mean_se(const std::vector<double>& x)
{
    MeanSE r;
    r.n = x.size();
    if (r.n == 0) throw std::invalid_argument("mean_se: empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    r.mean = s / static_cast<double>(r.n);
    if (r.n < 2) return r; // se stays NaN, caller flags it
    double ss = 0.0;
    for (double v : x) {
        const double d = v - r.mean;
        ss += d * d;
    }
    r.var = ss / static_cast<double>(r.n - 1);
    r.se = std::sqrt(r.var / static_cast<double>(r.n));
    return r;
}

/// Population variance (divide by n); pairs with mean-of-squares identities.
inline double pop_variance(const std::vector<double>& x)
{
    const MeanSE m = mean_se(x);
    if (m.n < 2) return 0.0;
    return m.var * static_cast<double>(m.n - 1) / static_cast<double>(m.n);
}

/// Central moment of given order about the sample mean.
inline double central_moment(const std::vector<double>& x, int order)
{
    const MeanSE m = mean_se(x);
    double s = 0.0;
    for (double v : x) {
        double d = v - m.mean;
        double acc = 1.0;
        for (int k = 0; k < order; ++k) acc *= d;
        s += acc;
    }
    return s / static_cast<double>(x.size());
}

/// Asymptotic standard error of the sample variance: sqrt((m4 - var^2)/n).
inline double se_of_variance(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double v = pop_variance(x);
    const double m4 = central_moment(x, 4);
    const double num = m4 - v * v;
    return std::sqrt(std::max(num, 0.0) / static_cast<double>(n));
}

/// Unbiased sample covariance of two aligned samples.
inline double covariance(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("covariance: size mismatch or too few samples");
    const double ma = mean_se(a).mean;
    const double mb = mean_se(b).mean;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
    return s / static_cast<double>(a.size() - 1);
}

/// Delta-method standard error of g(mean of columns), given the gradient of
/// g at the sample means: se^2 = grad^T Cov grad / n.
inline double delta_method_se(const std::vector<std::vector<double>>& cols,
                              const std::vector<double>& grad)
{
    if (cols.size() != grad.size() || cols.empty())
        throw std::invalid_argument("delta_method_se: column/gradient mismatch");
    const std::size_t n = cols[0].size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double acc = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t k = 0; k < cols.size(); ++k)
            acc += grad[j] * grad[k] * covariance(cols[j], cols[k]);
    return std::sqrt(std::max(acc, 0.0) / static_cast<double>(n));
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need at least two points");
    const double mx = mean_se(x).mean;
    const double my = mean_se(y).mean;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return sxy / sxx;
}

} // namespace hjlab

#endif
