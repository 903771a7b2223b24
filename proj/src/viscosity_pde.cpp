#include "hjlab/viscosity_pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hjlab/util.hpp"

namespace hjlab {

namespace {

struct Hamiltonian {
    int p;
    double c; // 2^{p-1}
    double value(double q) const { return c * powi(q, p); }
    double speed(double q) const { return static_cast<double>(p) * c * powi(std::fabs(q), p - 1); }
};

} // namespace

HJGrid solve_hj(const PsiCurve& curve, int p, double t_max, double h_max,
                double dh, double cfl, int n_slices)
{
    if (p < 1) throw std::invalid_argument("solve_hj: p must be >= 1");
    if (!(dh > 0.0)) throw std::invalid_argument("solve_hj: dh must be positive");
    if (!(cfl > 0.0) || cfl > 0.9) throw std::invalid_argument("solve_hj: cfl must be in (0, 0.9]");
    if (!(h_max > 0.0) || t_max < 0.0) throw std::invalid_argument("solve_hj: bad domain");
    if (n_slices < 2) throw std::invalid_argument("solve_hj: need at least two slices");

    const Hamiltonian ham{p, std::ldexp(1.0, p - 1)};
    const double L = curve.lipschitz();
    const double qcap = L * (1.0 + 1e-3) + 1e-12; // gradient bound assumed by the step size
    const double theta = std::max(ham.speed(qcap), 1e-12);

    const int n_rep = static_cast<int>(std::floor(h_max / dh + 0.5)) + 1;
    const int n_pad = static_cast<int>(std::ceil((theta * t_max) / dh)) + 4;
    const int n_tot = n_rep + n_pad;

    std::vector<double> f(n_tot), fn(n_tot);
    for (int j = 0; j < n_tot; ++j) f[j] = curve.value(j * dh);

    HJGrid out;
    out.p = p;
    out.cfl = cfl;
    out.dh = dh;
    {
        std::ostringstream os;
        os << "local-lax-friedrichs p=" << p << " cfl=" << cfl << " dh=" << format_g17(dh);
        out.scheme = os.str();
    }
    out.h_grid.resize(n_rep);
    for (int j = 0; j < n_rep; ++j) out.h_grid[j] = j * dh;
    out.t_grid.resize(n_slices);
    out.values.reserve(n_slices);
    out.values.emplace_back(f.begin(), f.begin() + n_rep);
    out.t_grid[0] = 0.0;

    const double slice_dt = t_max / static_cast<double>(n_slices - 1);
    const double dt_cfl = cfl * dh / theta;
    const int steps_per = std::max(1, static_cast<int>(std::ceil(slice_dt / dt_cfl)));
    const double dt = slice_dt / steps_per;
    const double inv_dh = 1.0 / dh;

    for (int s = 1; s < n_slices; ++s) {
        for (int step = 0; step < steps_per; ++step) {
            for (int j = 0; j < n_tot; ++j) {
                const double fm = (j == 0) ? f[1] : f[j - 1];
                const double fp = (j == n_tot - 1) ? 2.0 * f[j] - f[j - 1] : f[j + 1];
                const double a = (f[j] - fm) * inv_dh;
                const double b = (fp - f[j]) * inv_dh;
                const double qm = std::max(std::fabs(a), std::fabs(b));
                if (qm > qcap) {
                    std::ostringstream os;
                    os << "solve_hj: CFL violation, gradient " << qm << " exceeds bound "
                       << qcap << " at t=" << out.t_grid[s - 1] + step * dt
                       << " h=" << j * dh;
                    throw std::runtime_error(os.str());
                }
                const double alpha = ham.speed(qm);
                fn[j] = f[j] + dt * (ham.value(0.5 * (a + b)) + 0.5 * alpha * (b - a));
            }
            f.swap(fn);
        }
        for (int j = 0; j < n_rep; ++j)
            if (!std::isfinite(f[j]))
                throw std::runtime_error("solve_hj: non-finite value in slice");
        out.t_grid[s] = s * slice_dt;
        out.values.emplace_back(f.begin(), f.begin() + n_rep);
    }
    return out;
}

std::pair<double, double> comparison_check(const HJGrid& u, const HJGrid& v)
{
    if (u.t_grid.size() != v.t_grid.size() || u.h_grid.size() != v.h_grid.size())
        throw std::invalid_argument("comparison_check: grid shape mismatch");
    for (std::size_t i = 0; i < u.t_grid.size(); ++i)
        if (std::fabs(u.t_grid[i] - v.t_grid[i]) > 1e-12)
            throw std::invalid_argument("comparison_check: t grids differ");
    for (std::size_t j = 0; j < u.h_grid.size(); ++j)
        if (std::fabs(u.h_grid[j] - v.h_grid[j]) > 1e-12)
            throw std::invalid_argument("comparison_check: h grids differ");

    double lhs = -HUGE_VAL, rhs = -HUGE_VAL;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        for (std::size_t j = 0; j < u.values[i].size(); ++j) {
            const double d = u.values[i][j] - v.values[i][j];
            lhs = std::max(lhs, d);
            if (i == 0) rhs = std::max(rhs, d);
        }
    return {lhs, rhs};
}

HJGrid make_barrier_grid(double C, const std::vector<double>& t_grid,
                         const std::vector<double>& h_grid)
{
    if (!(C > 0.0)) throw std::invalid_argument("make_barrier_grid: C must be positive");
    if (t_grid.empty() || h_grid.empty())
        throw std::invalid_argument("make_barrier_grid: empty grid");
    if (t_grid.back() * 8.0 * C >= 1.0)
        throw std::domain_error("make_barrier_grid: barrier blows up before t_max");

    HJGrid g;
    g.t_grid = t_grid;
    g.h_grid = h_grid;
    g.p = 2;
    g.scheme = "barrier C*h^2/(1-8*C*t)";
    for (double t : t_grid) {
        std::vector<double> row;
        row.reserve(h_grid.size());
        for (double h : h_grid) row.push_back(C * h * h / (1.0 - 8.0 * C * t));
        g.values.push_back(std::move(row));
    }
    return g;
}

double hj_value(const HJGrid& g, double t, double h)
{
    const double teps = 1e-12 * std::max(1.0, std::fabs(g.t_grid.back()));
    const double heps = 1e-12 * std::max(1.0, std::fabs(g.h_grid.back()));
    if (t < g.t_grid.front() - teps || t > g.t_grid.back() + teps ||
        h < g.h_grid.front() - heps || h > g.h_grid.back() + heps)
        throw std::domain_error("hj_value: point outside grid");

    auto locate = [](const std::vector<double>& grid, double x) {
        const auto it = std::upper_bound(grid.begin(), grid.end(), x);
        std::size_t i = (it == grid.begin()) ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
        i = std::min(i, grid.size() - 2);
        return i;
    };
    const std::size_t i = g.t_grid.size() == 1 ? 0 : locate(g.t_grid, t);
    const std::size_t j = g.h_grid.size() == 1 ? 0 : locate(g.h_grid, h);
    const double ut = g.t_grid.size() == 1 ? 0.0
        : std::clamp((t - g.t_grid[i]) / (g.t_grid[i + 1] - g.t_grid[i]), 0.0, 1.0);
    const double uh = g.h_grid.size() == 1 ? 0.0
        : std::clamp((h - g.h_grid[j]) / (g.h_grid[j + 1] - g.h_grid[j]), 0.0, 1.0);

    const std::size_t i2 = std::min(i + 1, g.t_grid.size() - 1);
    const std::size_t j2 = std::min(j + 1, g.h_grid.size() - 1);
    const double v00 = g.values[i][j], v01 = g.values[i][j2];
    const double v10 = g.values[i2][j], v11 = g.values[i2][j2];
    return (1 - ut) * ((1 - uh) * v00 + uh * v01) + ut * ((1 - uh) * v10 + uh * v11);
}

} // namespace hjlab
