#ifndef HJLAB_OPTIMIZE_HPP
#define HJLAB_OPTIMIZE_HPP

#include <cmath>
#include <functional>

namespace hjlab {

struct MaxResult {
    double arg = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Maximizes f on [lo, hi]: coarse scan over scan_points equispaced nodes,
/// then golden-section refinement of the best node's neighborhood down to
/// width tol. The scan replaces only on strict improvement, so ties resolve
/// to the smallest argument.
inline MaxResult maximize_scalar(const std::function<double(double)>& f,
                                 double lo, double hi,
                                 int scan_points = 129, double tol = 1e-10)
{
    MaxResult r;
    if (hi <= lo) {
        r.arg = lo;
        r.value = f(lo);
        return r;
    }
    int best = 0;
    double best_val = -HUGE_VAL;
    for (int i = 0; i < scan_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (scan_points - 1);
        const double v = f(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double step = (hi - lo) / (scan_points - 1);
    double a = std::max(lo, lo + (best - 1) * step);
    double b = std::min(hi, lo + (best + 1) * step);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int it = 0;
    while (b - a > tol && it < 200) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        ++it;
    }
    r.arg = 0.5 * (a + b);
    r.value = f(r.arg);
    r.iterations = it;
    if (best_val > r.value) { // refinement never loses to the scan
        r.value = best_val;
        r.arg = lo + best * step;
    }
    return r;
}

} // namespace hjlab

#endif
