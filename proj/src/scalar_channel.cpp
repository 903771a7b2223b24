#include "hjlab/scalar_channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hjlab/quadrature.hpp"

namespace hjlab {

namespace {

void check_uniform_grid(const std::vector<double>& h)
{
    if (h.size() < 2) throw std::invalid_argument("PsiCurve: need at least two nodes");
    if (h.front() != 0.0) throw std::invalid_argument("PsiCurve: grid must start at h=0");
    const double dx = h[1] - h[0];
    if (dx <= 0.0) throw std::invalid_argument("PsiCurve: grid must be increasing");
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double step = h[i] - h[i - 1];
        if (std::fabs(step - dx) > 1e-9 * dx)
            throw std::invalid_argument("PsiCurve: grid must be uniform");
    }
}

} // namespace

PsiCurve PsiCurve::from_samples(std::vector<double> h_grid,
                                std::vector<double> psi_values,
                                std::vector<double> psi_prime_values,
                                double lip,
                                std::string source,
                                int quad_order)
{
    check_uniform_grid(h_grid);
    if (psi_values.size() != h_grid.size() || psi_prime_values.size() != h_grid.size())
        throw std::invalid_argument("PsiCurve: value arrays must match the grid");

    PsiCurve c;
    c.h_ = std::move(h_grid);
    c.psi_ = std::move(psi_values);
    c.dpsi_ = std::move(psi_prime_values);
    c.dx_ = c.h_[1] - c.h_[0];
    c.lip_ = lip;
    c.source_ = std::move(source);
    c.quad_order_ = quad_order;

    // Slope limiting (de Boor-Swartz): 0 <= m_i <= 3*min(adjacent secants)
    // keeps the Hermite interpolant monotone on nondecreasing data while
    // leaving accurate slopes of a smooth function untouched.
    const std::size_t n = c.h_.size();
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (c.psi_[i + 1] - c.psi_[i]) / c.dx_;
    c.slope_ = c.dpsi_;
    for (std::size_t i = 0; i < n; ++i) {
        const double dl = i == 0 ? sec[0] : sec[i - 1];
        const double dr = i + 1 == n ? sec[n - 2] : sec[i];
        const double cap = 3.0 * std::min(dl, dr);
        if (cap <= 0.0) {
            c.slope_[i] = 0.0;
        } else {
            c.slope_[i] = std::clamp(c.slope_[i], 0.0, cap);
        }
    }
    return c;
}

double PsiCurve::value(double h) const
{
    if (h < 0.0) throw std::domain_error("PsiCurve::value: h must be >= 0");
    if (h >= h_.back())
        return psi_.back() + slope_.back() * (h - h_.back());

    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(h / dx_), h_.size() - 2);
    const double u = (h - h_[i]) / dx_;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * psi_[i] + h10 * dx_ * slope_[i] + h01 * psi_[i + 1] + h11 * dx_ * slope_[i + 1];
}

namespace {

// log sum_x w_x exp(g_x) with max shift; g built from (sh*z + h*xbar)*x - h*x^2/2
double scalar_logz(const DiscretePrior& p, double a, double h)
{
    double mx = -HUGE_VAL;
    const int k = p.size();
    for (int x = 0; x < k; ++x) {
        const double v = p.value(x);
        const double g = p.log_weight(x) + a * v - 0.5 * h * v * v;
        mx = std::max(mx, g);
    }
    double s = 0.0;
    for (int x = 0; x < k; ++x) {
        const double v = p.value(x);
        const double g = p.log_weight(x) + a * v - 0.5 * h * v * v;
        s += std::exp(g - mx);
    }
    return mx + std::log(s);
}

// posterior mean <x> for the same field
double scalar_mean(const DiscretePrior& p, double a, double h)
{
    double mx = -HUGE_VAL;
    const int k = p.size();
    for (int x = 0; x < k; ++x) {
        const double v = p.value(x);
        const double g = p.log_weight(x) + a * v - 0.5 * h * v * v;
        mx = std::max(mx, g);
    }
    double z = 0.0, num = 0.0;
    for (int x = 0; x < k; ++x) {
        const double v = p.value(x);
        const double g = p.log_weight(x) + a * v - 0.5 * h * v * v;
        const double w = std::exp(g - mx);
        z += w;
        num += w * v;
    }
    return num / z;
}

} // namespace

double psi(const DiscretePrior& p, double h, int quad_order)
{
    if (h < 0.0) throw std::domain_error("psi: h must be >= 0");
    if (quad_order < 1) throw std::invalid_argument("psi: quad_order must be >= 1");
    const GaussHermite gh(quad_order);
    const double sh = std::sqrt(h);
    double acc = 0.0;
    for (int a = 0; a < p.size(); ++a) {
        const double xb = p.value(a);
        double inner = 0.0;
        for (int q = 0; q < gh.order(); ++q)
            inner += gh.weight[q] * scalar_logz(p, sh * gh.node[q] + h * xb, h);
        acc += p.weight(a) * inner;
    }
    return acc;
}

double psi_prime(const DiscretePrior& p, double h, int quad_order)
{
    if (h < 0.0) throw std::domain_error("psi_prime: h must be >= 0");
    if (quad_order < 1) throw std::invalid_argument("psi_prime: quad_order must be >= 1");
    const GaussHermite gh(quad_order);
    const double sh = std::sqrt(h);
    double acc = 0.0;
    for (int a = 0; a < p.size(); ++a) {
        const double xb = p.value(a);
        double inner = 0.0;
        for (int q = 0; q < gh.order(); ++q)
            inner += gh.weight[q] * scalar_mean(p, sh * gh.node[q] + h * xb, h);
        acc += p.weight(a) * inner * xb;
    }
    return 0.5 * acc;
}

PsiCurve tabulate_psi(const DiscretePrior& p, double h_max, int n_points, int quad_order)
{
    if (!(h_max > 0.0)) throw std::invalid_argument("tabulate_psi: h_max must be positive");
    if (n_points < 2) throw std::invalid_argument("tabulate_psi: need at least two points");

    const GaussHermite gh(quad_order);
    std::vector<double> h(n_points), v(n_points), d(n_points);
    for (int i = 0; i < n_points; ++i)
        h[i] = h_max * static_cast<double>(i) / static_cast<double>(n_points - 1);

    for (int i = 0; i < n_points; ++i) {
        const double sh = std::sqrt(h[i]);
        double accv = 0.0, accd = 0.0;
        for (int a = 0; a < p.size(); ++a) {
            const double xb = p.value(a);
            double iv = 0.0, id = 0.0;
            for (int q = 0; q < gh.order(); ++q) {
                const double field = sh * gh.node[q] + h[i] * xb;
                iv += gh.weight[q] * scalar_logz(p, field, h[i]);
                id += gh.weight[q] * scalar_mean(p, field, h[i]);
            }
            accv += p.weight(a) * iv;
            accd += p.weight(a) * id * xb;
        }
        v[i] = accv;
        d[i] = 0.5 * accd;
    }

    const double lip = p.bound() * p.bound();
    const double b2 = lip;
    if (std::fabs(v[0]) > 1e-12)
        throw std::runtime_error("tabulate_psi: psi(0) deviates from 0 beyond tolerance");
    for (int i = 0; i < n_points; ++i) {
        if (d[i] < -1e-12) throw std::runtime_error("tabulate_psi: negative psi'");
        if (d[i] > b2 + 1e-9) throw std::runtime_error("tabulate_psi: psi' exceeds bound^2");
        if (v[i] > b2 * h[i] + 1e-9) throw std::runtime_error("tabulate_psi: psi exceeds bound^2*h");
        if (i > 0 && v[i] < v[i - 1] - 1e-12)
            throw std::runtime_error("tabulate_psi: psi not nondecreasing");
        d[i] = std::max(d[i], 0.0);
    }

    return PsiCurve::from_samples(std::move(h), std::move(v), std::move(d),
                                  lip, p.descriptor(), quad_order);
}

} // namespace hjlab
