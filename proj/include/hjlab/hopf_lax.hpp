#ifndef HJLAB_HOPF_LAX_HPP
#define HJLAB_HOPF_LAX_HPP

#include <utility>

#include "hjlab/scalar_channel.hpp"

namespace hjlab {

struct HopfLaxResult {
    double value = 0.0;
    double maximizer = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool extrapolated = false; // search left the tabulated range of psi
};

/// Hopf-Lax value f(t,h) = sup_{h'>=0} psi(h') - (h-h')^2/(8t), the unique
/// Lipschitz viscosity solution of d_t f = 2 (d_h f)^2 with data psi.
/// At t = 0 returns psi(h). The search bracket is
/// [max(0, h - 4 t L), h + 4 t L] with L the curve's Lipschitz bound, from
/// the first-order condition psi'(h*) = (h* - h)/(4t); a coarse scan guards
/// against multiple local maxima before golden-section refinement. Ties go
/// to the smallest maximizer; only `value` is contractual.
HopfLaxResult hopf_lax_eval(const PsiCurve& curve, double t, double h);

/// Tabulates h -> f(t,h) on [0, h_hi] with envelope slopes
/// (maximizer - h)/(4t), producing a curve usable as initial data for a
/// second Hopf-Lax step.
PsiCurve hopf_lax_slice(const PsiCurve& curve, double t, double h_hi, int n_points);

/// Dynamic programming residual |f(t+s,h) - sup_{h'}(f(t,h') - (h-h')^2/(8s))|,
/// the inner sup evaluated through a tabulation of f(t,.).
double dpp_check(const PsiCurve& curve, double t, double s, double h);

/// The two equivalent variational forms of f(t,h): the convex-dual form
/// sup(psi - t H*((h-h')/t)) with H*(q) = q^2/8, and the sup-inf form with
/// the inner infimum over p solved in closed form at p = (h-h')/(4t),
/// H(p) = 2 p^2. Both must match hopf_lax_eval.
std::pair<double, double> variational_forms(const PsiCurve& curve, double t, double h);

} // namespace hjlab

#endif
