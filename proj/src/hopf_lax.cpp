#include "hjlab/hopf_lax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hjlab/optimize.hpp"

namespace hjlab {

namespace {

#ifdef NDEBUG
constexpr int kScanPoints = 129;
#else
constexpr int kScanPoints = 257; // denser scan in debug builds to catch missed maxima
#endif

} // namespace

HopfLaxResult hopf_lax_eval(const PsiCurve& curve, double t, double h)
{
    if (t < 0.0 || h < 0.0) throw std::domain_error("hopf_lax_eval: t and h must be >= 0");

    HopfLaxResult out;
    if (t == 0.0) {
        out.value = curve.value(h);
        out.maximizer = h;
        out.bracket_lo = out.bracket_hi = h;
        out.extrapolated = h > curve.h_max();
        return out;
    }

    const double L = curve.lipschitz();
    const double lo = std::max(0.0, h - 4.0 * t * L);
    const double hi = h + 4.0 * t * L;
    const double inv8t = 1.0 / (8.0 * t);

    const MaxResult m = maximize_scalar(
        [&](double hp) {
            const double d = h - hp;
            return curve.value(hp) - d * d * inv8t;
        },
        lo, hi, kScanPoints);

    out.value = m.value;
    out.maximizer = m.arg;
    out.iterations = m.iterations;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.extrapolated = hi > curve.h_max();
    return out;
}

PsiCurve hopf_lax_slice(const PsiCurve& curve, double t, double h_hi, int n_points)
{
    if (!(t > 0.0)) throw std::domain_error("hopf_lax_slice: t must be positive");
    if (n_points < 2) throw std::invalid_argument("hopf_lax_slice: need at least two points");

    std::vector<double> h(n_points), v(n_points), d(n_points);
    for (int i = 0; i < n_points; ++i) {
        h[i] = h_hi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const HopfLaxResult r = hopf_lax_eval(curve, t, h[i]);
        v[i] = r.value;
        // envelope derivative d_h f = (h* - h)/(4t), nonnegative since psi' >= 0
        d[i] = std::max(0.0, (r.maximizer - h[i]) / (4.0 * t));
    }
    return PsiCurve::from_samples(std::move(h), std::move(v), std::move(d),
                                  curve.lipschitz(), "hopf-lax slice of " + curve.source());
}

double dpp_check(const PsiCurve& curve, double t, double s, double h)
{
    if (!(t > 0.0) || !(s > 0.0)) throw std::domain_error("dpp_check: t and s must be positive");
    if (h < 0.0) throw std::domain_error("dpp_check: h must be >= 0");

    const double lhs = hopf_lax_eval(curve, t + s, h).value;

    const double L = curve.lipschitz();
    const double h_hi = h + 4.0 * s * L + 1.0;
    const PsiCurve slice = hopf_lax_slice(curve, t, h_hi, 2001);
    const double rhs = hopf_lax_eval(slice, s, h).value;

    return std::fabs(lhs - rhs);
}

std::pair<double, double> variational_forms(const PsiCurve& curve, double t, double h)
{
    if (!(t > 0.0)) throw std::domain_error("variational_forms: t must be positive");
    if (h < 0.0) throw std::domain_error("variational_forms: h must be >= 0");

    const double L = curve.lipschitz();
    const double lo = std::max(0.0, h - 4.0 * t * L);
    const double hi = h + 4.0 * t * L;

    // H(p) = 2 p^2, H*(q) = q^2 / 8
    const MaxResult m1 = maximize_scalar(
        [&](double hp) {
            const double q = (h - hp) / t;
            return curve.value(hp) - t * (q * q / 8.0);
        },
        lo, hi, kScanPoints);

    const MaxResult m2 = maximize_scalar(
        [&](double hp) {
            const double p = (h - hp) / (4.0 * t); // closed-form inner infimum
            return curve.value(hp) - p * (h - hp) + t * 2.0 * p * p;
        },
        lo, hi, kScanPoints);

    return {m1.value, m2.value};
}

} // namespace hjlab
