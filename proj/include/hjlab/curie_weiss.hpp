#ifndef HJLAB_CURIE_WEISS_HPP
#define HJLAB_CURIE_WEISS_HPP

#include <utility>

namespace hjlab {

/// Enriched Curie-Weiss free energy at one (N,t,h) together with its exact
/// derivatives, all taken from magnetization moments under the same weights:
/// dF_dt = <m^2>/N^2, dF_dh = <m>/N, d2F_dh2 = Var(m)/N.
/// Convention note: this model's nonlinearity is (d_h F)^2 with unit
/// coefficient (not 2), and the matching limit penalty is (h-h')^2/(4t).
struct CWRecord {
    int N = 0;
    double t = 0.0, h = 0.0;
    double F = 0.0;
    double dF_dt = 0.0;
    double dF_dh = 0.0;
    double d2F_dh2 = 0.0;
};

/// F = (1/N) log sum_k binom(N,k) 2^-N exp(t m^2/N + h m) with m = 2k - N.
/// Magnetization counts keep the sum at N+1 terms; binomials go through
/// log-gamma and the exponentials through a max shift, so N up to ~10^4 is
/// fine.
CWRecord cw_free_energy(int N, double t, double h);

/// Returns (residual_exact, residual_fd) for the identity
/// dF/dt - (dF/dh)^2 - (1/N) d2F/dh2 = 0: first from the moment-based
/// derivatives (zero up to floating point), then with all three derivatives
/// replaced by central finite differences of F at step fd_delta.
std::pair<double, double> cw_identity_check(int N, double t, double h, double fd_delta);

/// Limit free energy: sup_{h' in R} (log cosh h' - (h-h')^2/(4t)), the
/// Hopf-Lax solution of d_t f = (d_h f)^2 with data log cosh. At t = 0
/// returns log cosh h.
double cw_limit_eval(double t, double h);

} // namespace hjlab

#endif
