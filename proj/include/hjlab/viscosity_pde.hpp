#ifndef HJLAB_VISCOSITY_PDE_HPP
#define HJLAB_VISCOSITY_PDE_HPP

#include <string>
#include <utility>
#include <vector>

#include "hjlab/scalar_channel.hpp"

namespace hjlab {

/// Numerical solution of d_t f = 2^{p-1} (d_h f)^p on a (t,h) grid.
/// values[i][j] = f(t_grid[i], h_grid[j]); slice 0 is the initial condition.
struct HJGrid {
    std::vector<double> t_grid;
    std::vector<double> h_grid;
    std::vector<std::vector<double>> values;
    int p = 2;
    std::string scheme;
    double cfl = 0.0;
    double dh = 0.0;
};

/// Explicit monotone finite-difference solver. Numerical Hamiltonian is
/// local Lax-Friedrichs: H((a+b)/2) plus dissipation (alpha/2)(b-a) with
/// alpha = max |H'| over the two one-sided gradients a, b. Boundary at h=0
/// is the reflection ghost f(-dh) = f(dh) (discrete Neumann, equivalent to
/// evolving the even extension); the right boundary extends linearly and is
/// pushed out by (max speed)*t_max of padding so the reported window
/// [0, h_max] stays causally clean. dt is fixed from a global speed bound,
/// cfl * dh / max|H'|, and a runtime check aborts if any local gradient
/// exceeds the bound the step size was derived from.
HJGrid solve_hj(const PsiCurve& curve, int p, double t_max, double h_max,
                double dh, double cfl, int n_slices = 41);

/// (max over the grid of u-v, max over the t=0 slice of u-v). The
/// comparison-principle assertion downstream is lhs <= rhs + tolerance.
/// Rejects grids that do not match.
std::pair<double, double> comparison_check(const HJGrid& u, const HJGrid& v);

/// Grid filled with the supersolution barrier C h^2 / (1 - 8 C t), defined
/// for t < 1/(8C); used to check that solutions stay below it.
HJGrid make_barrier_grid(double C, const std::vector<double>& t_grid,
                         const std::vector<double>& h_grid);

/// Bilinear interpolation of the grid solution; throws outside the grid.
double hj_value(const HJGrid& g, double t, double h);

} // namespace hjlab

#endif
