#ifndef HJLAB_SCALAR_CHANNEL_HPP
#define HJLAB_SCALAR_CHANNEL_HPP

#include <string>
#include <vector>

#include "hjlab/prior.hpp"

namespace hjlab {

/// Tabulation of the scalar-channel free energy psi and its derivative on a
/// uniform h-grid starting at 0. Evaluation between nodes uses a monotone
/// (slope-limited) cubic Hermite interpolant; beyond the last node the curve
/// continues linearly with its final slope. Immutable after construction.
class PsiCurve {
public:
    /// Builds a curve from samples; used by tabulate_psi and by synthetic
    /// test curves. `lip` is the Lipschitz bound handed to optimizers.
    static PsiCurve from_samples(std::vector<double> h_grid,
                                 std::vector<double> psi_values,
                                 std::vector<double> psi_prime_values,
                                 double lip,
                                 std::string source,
                                 int quad_order = 0);

    double value(double h) const;

    int size() const { return static_cast<int>(h_.size()); }
    double h_max() const { return h_.back(); }
    double lipschitz() const { return lip_; }
    const std::vector<double>& grid() const { return h_; }
    const std::vector<double>& values() const { return psi_; }
    const std::vector<double>& prime_values() const { return dpsi_; }
    const std::string& source() const { return source_; }
    int quad_order() const { return quad_order_; }

private:
    PsiCurve() = default;

    std::vector<double> h_, psi_, dpsi_;
    std::vector<double> slope_; // limited interpolation slopes
    double dx_ = 0.0;
    double lip_ = 0.0;
    std::string source_;
    int quad_order_ = 0;
};

/// Free energy of the scalar Gaussian channel with prior P at signal
/// strength h: E log sum_x w(x) exp(sqrt(h) z x + h x xbar - h x^2/2), the
/// Gaussian expectation done by Gauss-Hermite quadrature of the given order.
double psi(const DiscretePrior& p, double h, int quad_order);

/// d psi / dh. Computed as (1/2) E<x xbar> under the scalar posterior, which
/// is the derivative after Gaussian integration by parts and one replica
/// exchange; finite at h = 0 where it equals mean(P)^2 / 2.
double psi_prime(const DiscretePrior& p, double h, int quad_order);

/// Tabulates psi and psi' on a uniform grid [0, h_max] with n_points nodes
/// and validates the curve invariants (psi(0)=0, monotone, slope bounds).
PsiCurve tabulate_psi(const DiscretePrior& p, double h_max, int n_points, int quad_order);

} // namespace hjlab

#endif
