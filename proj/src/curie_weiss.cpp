#include "hjlab/curie_weiss.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hjlab/optimize.hpp"
#include "hjlab/util.hpp"

namespace hjlab {

CWRecord cw_free_energy(int N, double t, double h)
{
    if (N < 1) throw std::invalid_argument("cw_free_energy: N must be >= 1");
    if (t < 0.0) throw std::domain_error("cw_free_energy: t must be >= 0");
    if (!std::isfinite(t) || !std::isfinite(h))
        throw std::domain_error("cw_free_energy: non-finite arguments");

    // spin-flip symmetry made exact: evaluate at |h|, flip <m> back
    const double hsign = h < 0.0 ? -1.0 : 1.0;
    h = std::fabs(h);

    const double n = static_cast<double>(N);
    const double lgn = std::lgamma(n + 1.0);

    std::vector<double> lw(N + 1);
    double mx = -HUGE_VAL;
    for (int k = 0; k <= N; ++k) {
        const double m = 2.0 * k - n;
        lw[k] = lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * M_LN2
                + t * m * m / n + h * m;
        mx = std::max(mx, lw[k]);
    }

    double z = 0.0;
    for (int k = 0; k <= N; ++k) {
        lw[k] = std::exp(lw[k] - mx);
        z += lw[k];
    }

    double m1 = 0.0;
    for (int k = 0; k <= N; ++k) m1 += lw[k] / z * (2.0 * k - n);
    double var = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double d = (2.0 * k - n) - m1;
        var += lw[k] / z * d * d;
    }

    CWRecord r;
    r.N = N;
    r.t = t;
    r.h = hsign * h;
    r.F = (mx + std::log(z)) / n;
    r.dF_dt = (var + m1 * m1) / (n * n);
    r.dF_dh = hsign * m1 / n;
    r.d2F_dh2 = var / n;
    return r;
}

std::pair<double, double> cw_identity_check(int N, double t, double h, double fd_delta)
{
    if (!(fd_delta > 0.0)) throw std::invalid_argument("cw_identity_check: fd_delta must be positive");
    if (!(t > fd_delta)) throw std::invalid_argument("cw_identity_check: need t > fd_delta for centered differences");
    if (t - fd_delta == t || h + fd_delta == h)
        throw std::invalid_argument("cw_identity_check: fd step underflows");

    const CWRecord r = cw_free_energy(N, t, h);
    const double residual_exact =
        std::fabs(r.dF_dt - r.dF_dh * r.dF_dh - r.d2F_dh2 / static_cast<double>(N));

    const double f0 = r.F;
    const double ftp = cw_free_energy(N, t + fd_delta, h).F;
    const double ftm = cw_free_energy(N, t - fd_delta, h).F;
    const double fhp = cw_free_energy(N, t, h + fd_delta).F;
    const double fhm = cw_free_energy(N, t, h - fd_delta).F;

    const double fd_t = (ftp - ftm) / (2.0 * fd_delta);
    const double fd_h = (fhp - fhm) / (2.0 * fd_delta);
    const double fd_hh = (fhp - 2.0 * f0 + fhm) / (fd_delta * fd_delta);

    const double residual_fd = std::fabs(fd_t - fd_h * fd_h - fd_hh / static_cast<double>(N));
    return {residual_exact, residual_fd};
}

double cw_limit_eval(double t, double h)
{
    if (t < 0.0) throw std::domain_error("cw_limit_eval: t must be >= 0");
    if (t == 0.0) return log_cosh(h);

    // |tanh| <= 1 bounds the maximizer: |h* - h| <= 2t
    const double lo = h - 2.0 * t;
    const double hi = h + 2.0 * t;
    const MaxResult m = maximize_scalar(
        [&](double hp) {
            const double d = h - hp;
            return log_cosh(hp) - d * d / (4.0 * t);
        },
        lo, hi);
    return m.value;
}

} // namespace hjlab
