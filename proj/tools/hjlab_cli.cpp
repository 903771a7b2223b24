// Command-line front end: psi, hopflax, pde, finite-n, curie-weiss, sweep,
// report, plots. CSV goes to stdout unless --out names a file (or, for
// sweep/report/plots, a bundle directory).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hjlab/config.hpp"
#include "hjlab/curie_weiss.hpp"
#include "hjlab/gibbs.hpp"
#include "hjlab/hopf_lax.hpp"
#include "hjlab/sweep.hpp"
#include "hjlab/util.hpp"
#include "hjlab/viscosity_pde.hpp"

namespace {

using namespace hjlab;

void emit(const std::string& text, const std::string& out_file)
{
    if (out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_file);
    f << text;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::string csv_row(const std::vector<double>& vals)
{
    std::string s;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ",";
        s += format_g17(vals[i]);
    }
    s += "\n";
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hamilton-Jacobi laboratory for rank-one and tensor estimation"};
    app.require_subcommand(1);

    int threads = default_threads();
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--seed", seed_flag, "override the base seed")->each([&](const std::string&) {
        seed_set = true;
    });

    std::string prior_spec = "rademacher", out_file, config_path, out_dir = ".";
    int quad_order = 61, points = 401, grid = 9, p_order = 2, slices = 41;
    double h_max = 4.0, t_max = 1.0, dh = 0.002, cfl = 0.5;
    std::vector<int> n_list = {10, 100, 1000};

    auto* c_psi = app.add_subcommand("psi", "tabulate the scalar-channel free energy");
    c_psi->add_option("--prior", prior_spec);
    c_psi->add_option("--h-max", h_max);
    c_psi->add_option("--points", points);
    c_psi->add_option("--quad-order", quad_order);
    c_psi->add_option("--out", out_file);

    auto* c_hl = app.add_subcommand("hopflax", "evaluate the variational limit free energy (p=2)");
    c_hl->add_option("--prior", prior_spec);
    c_hl->add_option("--t-max", t_max);
    c_hl->add_option("--h-max", h_max);
    c_hl->add_option("--grid", grid);
    c_hl->add_option("--quad-order", quad_order);
    c_hl->add_option("--psi-points", points);
    c_hl->add_option("--out", out_file);

    auto* c_pde = app.add_subcommand("pde", "solve the limit equation by the monotone scheme");
    c_pde->add_option("--prior", prior_spec);
    c_pde->add_option("--p", p_order);
    c_pde->add_option("--t-max", t_max);
    c_pde->add_option("--h-max", h_max);
    c_pde->add_option("--dh", dh);
    c_pde->add_option("--cfl", cfl);
    c_pde->add_option("--slices", slices);
    c_pde->add_option("--quad-order", quad_order);
    c_pde->add_option("--psi-points", points);
    c_pde->add_option("--out", out_file);

    auto* c_fn = app.add_subcommand("finite-n", "finite-N Gibbs statistics over the config grid");
    c_fn->add_option("--config", config_path)->required();
    c_fn->add_option("--out", out_file);

    auto* c_cw = app.add_subcommand("curie-weiss", "Curie-Weiss free energy and identity residuals");
    c_cw->add_option("--N", n_list);
    c_cw->add_option("--grid", grid);
    c_cw->add_option("--t-max", t_max);
    c_cw->add_option("--h-max", h_max);
    c_cw->add_option("--out", out_file);

    auto* c_sweep = app.add_subcommand("sweep", "run the full pipeline into a bundle directory");
    c_sweep->add_option("--config", config_path)->required();
    c_sweep->add_option("--out", out_dir)->required();

    auto* c_rep = app.add_subcommand("report", "convergence report for a sweep bundle");
    c_rep->add_option("--out", out_dir)->required();

    auto* c_plots = app.add_subcommand("plots", "emit gnuplot scripts for a sweep bundle");
    c_plots->add_option("--out", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    std::string stage = app.get_subcommands().front()->get_name();
    try {
        if (*c_psi) {
            const PsiCurve curve = tabulate_psi(make_prior(prior_spec), h_max, points, quad_order);
            std::string text = "h,psi,psi_prime\n";
            for (int i = 0; i < curve.size(); ++i)
                text += csv_row({curve.grid()[i], curve.values()[i], curve.prime_values()[i]});
            emit(text, out_file);
        } else if (*c_hl) {
            const DiscretePrior prior = make_prior(prior_spec);
            const double lip = prior.bound() * prior.bound();
            const double h_tab = h_max + 4.0 * t_max * lip + 1.0;
            const PsiCurve curve = tabulate_psi(prior, h_tab, points, quad_order);
            std::string text = "t,h,f,maximizer\n";
            bool warned = false;
            for (double t : linspace(0.0, t_max, grid))
                for (double h : linspace(0.0, h_max, grid)) {
                    const HopfLaxResult r = hopf_lax_eval(curve, t, h);
                    if (r.extrapolated && !warned) {
                        std::cerr << "hopflax: search bracket left the tabulated range, "
                                     "psi extrapolated linearly\n";
                        warned = true;
                    }
                    text += csv_row({t, h, r.value, r.maximizer});
                }
            emit(text, out_file);
        } else if (*c_pde) {
            const DiscretePrior prior = make_prior(prior_spec);
            const double lip = prior.bound() * prior.bound();
            const double speed = p_order * std::ldexp(1.0, p_order - 1) * std::pow(lip, p_order - 1);
            const PsiCurve curve =
                tabulate_psi(prior, h_max + speed * t_max + 1.0, points, quad_order);
            const HJGrid g = solve_hj(curve, p_order, t_max, h_max, dh, cfl, slices);
            std::string text = "t,h,f\n";
            for (std::size_t i = 0; i < g.t_grid.size(); ++i)
                for (std::size_t j = 0; j < g.h_grid.size(); ++j)
                    text += csv_row({g.t_grid[i], g.h_grid[j], g.values[i][j]});
            emit(text, out_file);
        } else if (*c_fn) {
            ExperimentConfig cfg = parse_config_file(config_path);
            if (seed_set) cfg.base_seed = seed_flag;
            emit(finite_n_csv_text(cfg, threads), out_file);
        } else if (*c_cw) {
            std::string text = "N,t,h,F,residual_exact,residual_fd,f_limit\n";
            for (int N : n_list)
                for (double t : linspace(0.05, t_max, grid))
                    for (double h : linspace(0.05, h_max, grid)) {
                        const CWRecord r = cw_free_energy(N, t, h);
                        const auto res = cw_identity_check(N, t, h, 1e-4);
                        text += csv_row({static_cast<double>(N), t, h, r.F, res.first,
                                         res.second, cw_limit_eval(t, h)});
                    }
            emit(text, out_file);
        } else if (*c_sweep) {
            ExperimentConfig cfg = parse_config_file(config_path);
            if (seed_set) cfg.base_seed = seed_flag;
            run_sweep(cfg, out_dir, threads);
        } else if (*c_rep) {
            const ConvergenceReport rep = convergence_report(out_dir);
            std::printf("limit solver: %s\n", rep.limit_solver.c_str());
            std::printf("%6s  %22s  %22s\n", "N", "sup |F_bar - f|", "sup E(F_N - f)^2");
            for (const auto& row : rep.rows)
                std::printf("%6d  %22.6e  %22.6e\n", row.N, row.sup_abs_dev, row.sup_msd);
            std::printf("mean-square discrepancy strictly decreasing in N: %s\n",
                        rep.msd_strictly_decreasing ? "yes" : "no");
        } else if (*c_plots) {
            const PlotsResult res = emit_plots(out_dir);
            for (const auto& w : res.warnings) std::cerr << "plots: " << w << "\n";
            for (const auto& s : res.scripts) std::cout << s << "\n";
        }
    } catch (const StageError& e) {
        std::cerr << "hjlab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hjlab: stage '" << stage << "' failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
