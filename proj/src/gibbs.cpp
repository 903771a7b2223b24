#include "hjlab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hjlab/rng.hpp"
#include "hjlab/stats.hpp"
#include "hjlab/util.hpp"

namespace hjlab {

namespace {

void validate_params(const ModelParams& params)
{
    if (params.N < 1) throw std::invalid_argument("gibbs: N must be >= 1");
    if (params.p < 1) throw std::invalid_argument("gibbs: p must be >= 1");
    if (!std::isfinite(params.t) || !std::isfinite(params.h) || params.t < 0.0 || params.h < 0.0)
        throw std::invalid_argument("gibbs: t and h must be finite and >= 0");
}

long checked_pow(long base, int exp, long cap, const char* what, int max_n)
{
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) {
            std::ostringstream os;
            os << what << ": budget exceeded, maximal admissible N is " << max_n;
            throw std::invalid_argument(os.str());
        }
        r *= base;
    }
    if (r > cap) {
        std::ostringstream os;
        os << what << ": budget exceeded, maximal admissible N is " << max_n;
        throw std::invalid_argument(os.str());
    }
    return r;
}

/// Loopless reflected mixed-radix Gray walk: every step changes one site's
/// digit by +-1 and the walk visits all k^N configurations.
class GrayWalker {
public:
    GrayWalker(int n, int k) : n_(n), k_(k), a_(n, 0), f_(n + 1), o_(n, 1)
    {
        std::iota(f_.begin(), f_.end(), 0);
    }

    bool step(int& site, int& from, int& to)
    {
        if (k_ == 1) return false;
        const int j = f_[0];
        f_[0] = 0;
        if (j == n_) return false;
        site = j;
        from = a_[j];
        a_[j] += o_[j];
        to = a_[j];
        if (a_[j] == 0 || a_[j] == k_ - 1) {
            o_[j] = -o_[j];
            f_[j] = f_[j + 1];
            f_[j + 1] = j + 1;
        }
        return true;
    }

private:
    int n_, k_;
    std::vector<int> a_, f_, o_;
};

/// Full contraction W : x^{tensor p} by repeated last-mode contraction.
double contract_full(const std::vector<double>& W, const std::vector<double>& x,
                     int N, int p, std::vector<double>& buf_a, std::vector<double>& buf_b)
{
    if (p == 1) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += W[j] * x[j];
        return s;
    }
    long len = static_cast<long>(W.size());
    const double* cur = W.data();
    std::vector<double>* out = &buf_a;
    std::vector<double>* spare = &buf_b;
    for (int m = p; m >= 2; --m) {
        const long rows = len / N;
        out->resize(rows);
        for (long r = 0; r < rows; ++r) {
            double s = 0.0;
            const double* row = cur + r * N;
            for (int j = 0; j < N; ++j) s += row[j] * x[j];
            (*out)[r] = s;
        }
        cur = out->data();
        len = rows;
        std::swap(out, spare);
    }
    return cur[0];
}

} // namespace

DisorderSample sample_disorder(const ModelParams& params, std::uint64_t seed,
                               const GibbsBudget& budget)
{
    validate_params(params);
    const int max_n = static_cast<int>(std::floor(
        std::pow(static_cast<double>(budget.max_tensor), 1.0 / params.p)));
    const long wlen = checked_pow(params.N, params.p, budget.max_tensor,
                                  "sample_disorder", max_n);

    DisorderSample s;
    s.seed = seed;
    Rng rng(seed);
    s.xbar.resize(params.N);
    for (int i = 0; i < params.N; ++i) s.xbar[i] = params.prior.sample(rng);
    s.W.resize(wlen);
    for (long i = 0; i < wlen; ++i) s.W[i] = rng.gaussian();
    s.z.resize(params.N);
    for (int i = 0; i < params.N; ++i) s.z[i] = rng.gaussian();
    return s;
}

ConfigTable::ConfigTable(const ModelParams& params, const DisorderSample& sample,
                         const GibbsBudget& budget)
{
    validate_params(params);
    N_ = params.N;
    p_ = params.p;
    k_ = params.prior.size();
    const int max_n = k_ > 1
        ? static_cast<int>(std::floor(std::log(static_cast<double>(budget.max_configs)) /
                                      std::log(static_cast<double>(k_))))
        : N_;
    K_ = checked_pow(k_, N_, budget.max_configs, "gibbs_enumerate", max_n);
    if (static_cast<long>(sample.W.size()) != checked_pow(N_, p_, budget.max_tensor, "gibbs_enumerate", N_) ||
        static_cast<int>(sample.xbar.size()) != N_ || static_cast<int>(sample.z.size()) != N_)
        throw std::invalid_argument("gibbs_enumerate: sample shape does not match params");

    atom_val_.resize(k_);
    std::vector<double> atom_lw(k_);
    for (int a = 0; a < k_; ++a) {
        atom_val_[a] = params.prior.value(a);
        atom_lw[a] = params.prior.log_weight(a);
    }

    logw.reserve(K_);
    wterm.reserve(K_);
    tpoly.reserve(K_);
    s1.reserve(K_);
    s2.reserve(K_);
    zx.reserve(K_);

    const double v0 = atom_val_[0];
    std::vector<double> x(N_, v0);
    double cs1 = 0.0, czx = 0.0;
    for (int i = 0; i < N_; ++i) {
        cs1 += v0 * sample.xbar[i];
        czx += v0 * sample.z[i];
    }
    double cs2 = N_ * v0 * v0;
    double clogw = N_ * atom_lw[0];

    const double nfac = std::pow(static_cast<double>(N_), -0.5 * (p_ - 1));
    const double tsc = std::pow(static_cast<double>(N_), 1.0 - static_cast<double>(p_));

    // running contraction state
    double S = 0.0;
    std::vector<double> rowdot, coldot, buf_a, buf_b;
    if (p_ == 1) {
        for (int j = 0; j < N_; ++j) S += sample.W[j] * x[j];
    } else if (p_ == 2) {
        rowdot.assign(N_, 0.0);
        coldot.assign(N_, 0.0);
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) {
                rowdot[i] += sample.W[static_cast<long>(i) * N_ + j] * x[j];
                coldot[i] += sample.W[static_cast<long>(j) * N_ + i] * x[j];
            }
        for (int i = 0; i < N_; ++i) S += x[i] * rowdot[i];
    } else {
        S = contract_full(sample.W, x, N_, p_, buf_a, buf_b);
    }

    auto push = [&] {
        logw.push_back(clogw);
        wterm.push_back(nfac * S);
        tpoly.push_back(tsc * (powi(cs1, p_) - 0.5 * powi(cs2, p_)));
        s1.push_back(cs1);
        s2.push_back(cs2);
        zx.push_back(czx);
    };
    push();

    GrayWalker walk(N_, k_);
    int j, da, db;
    while (walk.step(j, da, db)) {
        const double vold = atom_val_[da];
        const double vnew = atom_val_[db];
        const double d = vnew - vold;
        cs1 += d * sample.xbar[j];
        cs2 += vnew * vnew - vold * vold;
        czx += d * sample.z[j];
        clogw += atom_lw[db] - atom_lw[da];
        if (p_ == 1) {
            S += d * sample.W[j];
        } else if (p_ == 2) {
            S += d * (rowdot[j] + coldot[j]) + sample.W[static_cast<long>(j) * N_ + j] * d * d;
            for (int i = 0; i < N_; ++i) {
                rowdot[i] += sample.W[static_cast<long>(i) * N_ + j] * d;
                coldot[i] += sample.W[static_cast<long>(j) * N_ + i] * d;
            }
        } else {
            x[j] = vnew;
            S = contract_full(sample.W, x, N_, p_, buf_a, buf_b);
        }
        push();
    }
}

namespace {

double max_exponent(const ConfigTable& tb, double st, double t, double sh, double h)
{
    double mx = -HUGE_VAL;
    const long K = tb.configs();
    for (long c = 0; c < K; ++c) {
        const double e = tb.logw[c] + st * tb.wterm[c] + t * tb.tpoly[c] +
                         sh * tb.zx[c] + h * (tb.s1[c] - 0.5 * tb.s2[c]);
        mx = std::max(mx, e);
    }
    return mx;
}

} // namespace

double eval_free_energy(const ConfigTable& tb, double t, double h)
{
    const double st = std::sqrt(t), sh = std::sqrt(h);
    const double mx = max_exponent(tb, st, t, sh, h);
    double z = 0.0;
    const long K = tb.configs();
    for (long c = 0; c < K; ++c) {
        const double e = tb.logw[c] + st * tb.wterm[c] + t * tb.tpoly[c] +
                         sh * tb.zx[c] + h * (tb.s1[c] - 0.5 * tb.s2[c]);
        z += std::exp(e - mx);
    }
    return (mx + std::log(z)) / tb.sites();
}

SampleStats eval_sample(const ConfigTable& tb, double t, double h)
{
    const int N = tb.sites();
    const int p = tb.order();
    const double st = std::sqrt(t), sh = std::sqrt(h);
    const double mx = max_exponent(tb, st, t, sh, h);

    double Z = 0.0, A1 = 0.0, A2 = 0.0, Ap = 0.0, As2 = 0.0, Azx = 0.0;
    double Awt = 0.0, Atp = 0.0, Ahp2 = 0.0;
    std::vector<double> asite(N, 0.0);
    std::vector<double> x(N, tb.atom_value(0));

    GrayWalker walk(N, tb.radix());
    const long K = tb.configs();
    for (long c = 0; c < K; ++c) {
        if (c > 0) {
            int j, da, db;
            walk.step(j, da, db);
            x[j] = tb.atom_value(db);
        }
        const double e = tb.logw[c] + st * tb.wterm[c] + t * tb.tpoly[c] +
                         sh * tb.zx[c] + h * (tb.s1[c] - 0.5 * tb.s2[c]);
        const double g = std::exp(e - mx);
        Z += g;
        A1 += g * tb.s1[c];
        A2 += g * tb.s1[c] * tb.s1[c];
        if (p > 2) Ap += g * powi(tb.s1[c], p);
        As2 += g * tb.s2[c];
        Azx += g * tb.zx[c];
        Awt += g * tb.wterm[c];
        Atp += g * tb.tpoly[c];
        if (h > 0.0) {
            const double hp = tb.zx[c] / (2.0 * sh) + tb.s1[c] - 0.5 * tb.s2[c];
            Ahp2 += g * hp * hp;
        }
        for (int i = 0; i < N; ++i) asite[i] += g * x[i];
    }

    SampleStats r;
    r.F = (mx + std::log(Z)) / N;
    r.m1 = A1 / Z;
    r.m2 = A2 / Z;
    r.mp = (p == 1) ? r.m1 : (p == 2 ? r.m2 : Ap / Z);
    r.zxm = Azx / Z;
    for (int i = 0; i < N; ++i) {
        const double ai = asite[i] / Z;
        r.q2 += ai * ai;
    }
    if (t > 0.0) r.dtF = ((Awt / Z) / (2.0 * st) + Atp / Z) / N;
    if (h > 0.0) {
        const double hp1 = r.zxm / (2.0 * sh) + r.m1 - 0.5 * As2 / Z;
        r.dhF = hp1 / N;
        r.d2hF = (Ahp2 / Z - hp1 * hp1) / N - r.zxm / (4.0 * N * h * sh);
    }
    return r;
}

GibbsReport assemble_report(const std::vector<SampleStats>& recs, const ModelParams& params)
{
    const int n = static_cast<int>(recs.size());
    if (n == 0) throw std::invalid_argument("assemble_report: no samples");
    const double N = params.N;
    const double Np = std::pow(N, params.p);

    std::vector<double> F(n), m1(n), m2(n), mp(n), q2(n), d2h(n);
    for (int s = 0; s < n; ++s) {
        F[s] = recs[s].F;
        m1[s] = recs[s].m1;
        m2[s] = recs[s].m2;
        mp[s] = recs[s].mp;
        q2[s] = recs[s].q2;
        d2h[s] = recs[s].d2hF;
    }

    GibbsReport rep;
    rep.n_samples = n;
    rep.se_valid = n >= 2;

    const MeanSE mf = mean_se(F);
    rep.F_bar = mf.mean;
    rep.F_se = mf.se;
    rep.F_var = mf.var;

    const MeanSE mmp = mean_se(mp);
    rep.dt_F = mmp.mean / (2.0 * Np);
    rep.dt_F_se = mmp.se / (2.0 * Np);

    const MeanSE mm1 = mean_se(m1);
    rep.dh_F = mm1.mean / (2.0 * N);
    rep.dh_F_se = mm1.se / (2.0 * N);
    rep.overlap1 = mm1.mean / N;
    rep.overlap1_se = mm1.se / N;

    const MeanSE mq2 = mean_se(q2);
    rep.overlap2 = mq2.mean / N;
    rep.overlap2_se = mq2.se / N;

    const MeanSE mm2 = mean_se(m2);
    rep.overlap_var = (mm2.mean - mm1.mean * mm1.mean) / (N * N);
    if (rep.se_valid)
        rep.overlap_var_se = delta_method_se({m2, m1},
                                             {1.0 / (N * N), -2.0 * mm1.mean / (N * N)});

    if (params.h > 0.0) {
        const MeanSE md = mean_se(d2h);
        rep.dh2_F = md.mean;
        rep.dh2_F_se = md.se;
    } else {
        rep.dh2_F = std::numeric_limits<double>::quiet_NaN();
        rep.dh2_F_se = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

namespace {

std::vector<SampleStats> collect_samples(const ModelParams& params, int n_samples,
                                         std::uint64_t base_seed, int threads,
                                         const GibbsBudget& budget)
{
    if (n_samples < 1) throw std::invalid_argument("gibbs: n_samples must be >= 1");
    std::vector<SampleStats> recs(n_samples);
    parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t s) {
        const DisorderSample d = sample_disorder(params, split_seed(base_seed, s), budget);
        const ConfigTable tab(params, d, budget);
        recs[s] = eval_sample(tab, params.t, params.h);
    });
    return recs;
}

} // namespace

GibbsReport free_energy_stats(const ModelParams& params, int n_samples,
                              std::uint64_t base_seed, int threads, const GibbsBudget& budget)
{
    return assemble_report(collect_samples(params, n_samples, base_seed, threads, budget), params);
}

std::vector<NishimoriRow> nishimori_check(const ModelParams& params, int n_samples,
                                          std::uint64_t base_seed, int threads,
                                          const GibbsBudget& budget)
{
    if (n_samples < 2) throw std::invalid_argument("nishimori_check: need at least two samples");
    const int N = params.N;
    struct Pair6 { double l1, r1, l2, r2, l3, r3; };
    std::vector<Pair6> rec(n_samples);

    parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t s) {
        const DisorderSample d = sample_disorder(params, split_seed(base_seed, s), budget);
        const ConfigTable tb(params, d, budget);

        const double st = std::sqrt(params.t), sh = std::sqrt(params.h);
        const double mx = max_exponent(tb, st, params.t, sh, params.h);
        double Z = 0.0, A1 = 0.0, A2 = 0.0;
        std::vector<double> a(N, 0.0), M(static_cast<std::size_t>(N) * N, 0.0);
        std::vector<double> x(N, tb.atom_value(0));
        GrayWalker walk(N, tb.radix());
        for (long c = 0; c < tb.configs(); ++c) {
            if (c > 0) {
                int j, da, db;
                walk.step(j, da, db);
                x[j] = tb.atom_value(db);
            }
            const double e = tb.logw[c] + st * tb.wterm[c] + params.t * tb.tpoly[c] +
                             sh * tb.zx[c] + params.h * (tb.s1[c] - 0.5 * tb.s2[c]);
            const double g = std::exp(e - mx);
            Z += g;
            A1 += g * tb.s1[c];
            A2 += g * tb.s1[c] * tb.s1[c];
            for (int i = 0; i < N; ++i) {
                a[i] += g * x[i];
                for (int j2 = i; j2 < N; ++j2) M[static_cast<std::size_t>(i) * N + j2] += g * x[i] * x[j2];
            }
        }
        for (int i = 0; i < N; ++i) {
            a[i] /= Z;
            for (int j2 = i; j2 < N; ++j2) {
                M[static_cast<std::size_t>(i) * N + j2] /= Z;
                M[static_cast<std::size_t>(j2) * N + i] = M[static_cast<std::size_t>(i) * N + j2];
            }
        }

        Pair6 pr{};
        for (int i = 0; i < N; ++i) pr.l1 += a[i] * a[i];
        pr.r1 = A1 / Z;
        for (int i = 0; i < N; ++i)
            for (int j2 = 0; j2 < N; ++j2) {
                const double mij = M[static_cast<std::size_t>(i) * N + j2];
                pr.l2 += mij * mij;
                pr.l3 += mij * a[i] * a[j2];
                pr.r3 += mij * a[i] * d.xbar[j2];
            }
        pr.r2 = A2 / Z;
        rec[s] = pr;
    });

    auto make_row = [&](const char* name, auto getl, auto getr) {
        std::vector<double> l(n_samples), r(n_samples), diff(n_samples);
        for (int s = 0; s < n_samples; ++s) {
            l[s] = getl(rec[s]);
            r[s] = getr(rec[s]);
            diff[s] = l[s] - r[s];
        }
        NishimoriRow row;
        row.observable = name;
        row.replica_mean = mean_se(l).mean;
        row.truth_mean = mean_se(r).mean;
        const MeanSE d = mean_se(diff);
        row.diff = d.mean;
        row.diff_se = d.se;
        return row;
    };

    return {
        make_row("x.y", [](const Pair6& p) { return p.l1; }, [](const Pair6& p) { return p.r1; }),
        make_row("(x.y)^2", [](const Pair6& p) { return p.l2; }, [](const Pair6& p) { return p.r2; }),
        make_row("(x.y)(x.y')", [](const Pair6& p) { return p.l3; }, [](const Pair6& p) { return p.r3; }),
    };
}

HJResidualReport assemble_hj_residual(const std::vector<SampleStats>& recs,
                                      const ModelParams& params, double C_const)
{
    const int n = static_cast<int>(recs.size());
    if (n < 2) throw std::invalid_argument("hj_residual: need at least two samples");
    const double N = params.N;
    const int p = params.p;
    const double Np = std::pow(N, p);
    const double coef = std::ldexp(1.0, p - 1); // 2^{p-1}

    HJResidualReport out;
    out.n_samples = n;
    out.hamiltonian_route_t = params.t > 0.0;
    out.hamiltonian_route_h = params.h > 0.0;

    std::vector<double> a(n), b(n), c(n), d(n);
    for (int s = 0; s < n; ++s) {
        c[s] = recs[s].mp / (2.0 * Np);
        d[s] = recs[s].m1 / (2.0 * N);
        a[s] = out.hamiltonian_route_t ? recs[s].dtF : c[s];
        b[s] = out.hamiltonian_route_h ? recs[s].dhF : d[s];
    }
    const double am = mean_se(a).mean, bm = mean_se(b).mean;
    const double cm = mean_se(c).mean, dm = mean_se(d).mean;

    out.lhs = am - coef * powi(bm, p);
    out.rhs = cm - coef * powi(dm, p);
    out.diff = out.lhs - out.rhs;
    out.lhs_se = delta_method_se({a, b}, {1.0, -p * coef * powi(bm, p - 1)});
    out.diff_se = delta_method_se({a, b, c, d},
                                  {1.0, -p * coef * powi(bm, p - 1),
                                   -1.0, p * coef * powi(dm, p - 1)});

    if (params.h > 0.0) {
        const double C = C_const > 0.0 ? C_const : 10.0 * powi(params.prior.bound(), 4);
        std::vector<double> d2(n);
        for (int s = 0; s < n; ++s) d2[s] = recs[s].d2hF;
        const double d2m = mean_se(d2).mean;
        const double varb = pop_variance(b);
        out.bound_d2h = 2.0 / N * d2m;
        out.bound_var = 2.0 * varb;
        out.bound_c = C / N * (1.0 / params.h + 1.0 / std::sqrt(params.h));
        out.bound_total = out.bound_d2h + out.bound_var + out.bound_c;
        if (p == 2) {
            out.bound_ok = out.lhs <= out.bound_total + 3.0 * out.lhs_se;
        } else {
            const double rhs_sq = C * (d2m / N + varb + (1.0 / params.h + 1.0 / std::sqrt(params.h)) / N);
            out.bound_ok = out.lhs * out.lhs <= rhs_sq + 3.0 * out.lhs_se * std::fabs(out.lhs);
        }
    }
    return out;
}

HJResidualReport hj_residual_report(const ModelParams& params, int n_samples,
                                    std::uint64_t base_seed, int threads, double C_const,
                                    const GibbsBudget& budget)
{
    return assemble_hj_residual(collect_samples(params, n_samples, base_seed, threads, budget),
                                params, C_const);
}

FBarGrid fbar_grid(const DiscretePrior& prior, int p, int N,
                   const std::vector<double>& t_list, const std::vector<double>& h_list,
                   int n_samples, std::uint64_t base_seed, int threads, bool full,
                   const GibbsBudget& budget)
{
    if (t_list.empty() || h_list.empty())
        throw std::invalid_argument("fbar_grid: empty grid");
    if (n_samples < 1) throw std::invalid_argument("fbar_grid: n_samples must be >= 1");

    FBarGrid out;
    out.N = N;
    out.p = p;
    out.t_list = t_list;
    out.h_list = h_list;
    const std::size_t P = t_list.size() * h_list.size();

    ModelParams base{N, p, 0.0, 0.0, prior};
    // disorder is shared across the (t,h) grid: one sample, one table, all points
    std::vector<SampleStats> flat(full ? P * n_samples : 0);
    std::vector<double> flatF(full ? 0 : P * n_samples);
    parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t s) {
        const DisorderSample d = sample_disorder(base, split_seed(base_seed, s), budget);
        const ConfigTable tb(base, d, budget);
        std::size_t pt = 0;
        for (double t : t_list)
            for (double h : h_list) {
                if (full)
                    flat[pt * n_samples + s] = eval_sample(tb, t, h);
                else
                    flatF[pt * n_samples + s] = eval_free_energy(tb, t, h);
                ++pt;
            }
    });

    out.points.resize(P);
    std::size_t pt = 0;
    for (double t : t_list)
        for (double h : h_list) {
            GridPointStats& g = out.points[pt];
            g.t = t;
            g.h = h;
            std::vector<double> F(n_samples);
            if (full) {
                std::vector<SampleStats> recs(flat.begin() + pt * n_samples,
                                              flat.begin() + (pt + 1) * n_samples);
                for (int s = 0; s < n_samples; ++s) F[s] = recs[s].F;
                ModelParams mp{N, p, t, h, prior};
                g.report = assemble_report(recs, mp);
                if (n_samples >= 2) g.residual = assemble_hj_residual(recs, mp);
                g.has_report = true;
            } else {
                std::copy(flatF.begin() + pt * n_samples, flatF.begin() + (pt + 1) * n_samples,
                          F.begin());
            }
            const MeanSE m = mean_se(F);
            g.F_mean = m.mean;
            g.F_se = m.se;
            g.F_var = m.var;
            g.F_var_pop = pop_variance(F);
            g.F_var_se = se_of_variance(F);
            ++pt;
        }
    return out;
}

ConcentrationReport concentration_report(const DiscretePrior& prior, int p, double M,
                                         const std::vector<int>& N_list, int grid_points,
                                         int n_samples, std::uint64_t base_seed, int threads,
                                         const GibbsBudget& budget)
{
    if (N_list.empty()) throw std::invalid_argument("concentration_report: empty N list");
    if (grid_points < 2) throw std::invalid_argument("concentration_report: need grid_points >= 2");
    if (!(M > 0.0)) throw std::invalid_argument("concentration_report: M must be positive");

    std::vector<double> axis(grid_points);
    for (int i = 0; i < grid_points; ++i)
        axis[i] = M * static_cast<double>(i) / static_cast<double>(grid_points - 1);

    ConcentrationReport rep;
    rep.N_list = N_list;
    rep.grid_axis = axis;

    std::vector<double> logN, logV;
    for (int N : N_list) {
        const FBarGrid g = fbar_grid(prior, p, N, axis, axis, n_samples, base_seed, threads,
                                     /*full=*/false, budget);
        std::vector<ConcentrationPoint> pts;
        double mv = 0.0;
        for (const auto& q : g.points) {
            pts.push_back({q.t, q.h, q.F_var, q.F_var_se});
            mv = std::max(mv, q.F_var);
        }
        rep.points.push_back(std::move(pts));
        rep.max_var.push_back(mv);
        if (mv > 0.0) {
            logN.push_back(std::log(static_cast<double>(N)));
            logV.push_back(std::log(mv));
        }
    }
    rep.slope = logN.size() >= 2 ? fit_slope(logN, logV)
                                 : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

} // namespace hjlab
