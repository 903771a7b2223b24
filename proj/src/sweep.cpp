#include "hjlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hjlab/curie_weiss.hpp"
#include "hjlab/gibbs.hpp"
#include "hjlab/hopf_lax.hpp"
#include "hjlab/util.hpp"
#include "hjlab/viscosity_pde.hpp"

namespace fs = std::filesystem;

namespace hjlab {

namespace {

constexpr const char* kVersion = "hjlab 0.1.0";

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct CsvWriter {
    std::ostringstream os;
    explicit CsvWriter(const std::string& hash, const std::string& header)
    {
        os << "# config_hash=" << hash << "\n" << header << "\n";
    }
    void row(const std::vector<double>& vals)
    {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) os << ",";
            os << format_g17(vals[i]);
        }
        os << "\n";
    }
};

struct Csv {
    std::vector<std::string> cols;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const
    {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return i;
        throw std::runtime_error("csv: missing column " + name);
    }
};

Csv read_csv(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    Csv csv;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> items;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) items.push_back(item);
        if (!have_header) {
            csv.cols = items;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(items.size());
        for (const auto& s : items) row.push_back(std::strtod(s.c_str(), nullptr));
        csv.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv: no header in " + path.string());
    return csv;
}

double char_speed(int p, double lip)
{
    return p * std::ldexp(1.0, p - 1) * std::pow(lip, p - 1);
}

} // namespace

std::string finite_n_csv_text(const ExperimentConfig& cfg, int threads)
{
    cfg.validate();
    const DiscretePrior prior = make_prior(cfg.prior_spec);
    const std::vector<double> t_list = linspace(0.0, cfg.M, cfg.grid_points);
    const std::vector<double> h_list = linspace(0.0, cfg.M, cfg.grid_points);
    GibbsBudget budget;
    budget.max_configs = 1L << cfg.budget_log2;

    CsvWriter w(cfg.hash_hex(),
                "N,t,h,n_samples,F_bar,F_se,F_var,dt_F,dt_F_se,dh_F,dh_F_se,"
                "dh2_F,dh2_F_se,overlap1,overlap1_se,overlap2,overlap2_se,"
                "overlap_var,overlap_var_se,residual_lhs,residual_lhs_se,"
                "residual_rhs,residual_diff,residual_diff_se,bound_d2h,bound_var,"
                "bound_c,bound_total,bound_ok");
    for (int N : cfg.N_list) {
        const FBarGrid g = fbar_grid(prior, cfg.p, N, t_list, h_list, cfg.n_samples,
                                     cfg.base_seed, threads, /*full=*/true, budget);
        for (const auto& pt : g.points) {
            const GibbsReport& r = pt.report;
            const HJResidualReport& q = pt.residual;
            w.row({static_cast<double>(N), pt.t, pt.h,
                   static_cast<double>(r.n_samples), r.F_bar, r.F_se, r.F_var,
                   r.dt_F, r.dt_F_se, r.dh_F, r.dh_F_se, r.dh2_F, r.dh2_F_se,
                   r.overlap1, r.overlap1_se, r.overlap2, r.overlap2_se,
                   r.overlap_var, r.overlap_var_se, q.lhs, q.lhs_se, q.rhs,
                   q.diff, q.diff_se, q.bound_d2h, q.bound_var, q.bound_c,
                   q.bound_total, q.bound_ok ? 1.0 : 0.0});
        }
    }
    return w.os.str();
}

void run_sweep(const ExperimentConfig& cfg, const std::string& out_dir, int threads)
{
    cfg.validate();
    fs::create_directories(out_dir);
    const std::string hash = cfg.hash_hex();

    std::string stage = "prior";
    try {
        const DiscretePrior prior = make_prior(cfg.prior_spec);
        const double lip = prior.bound() * prior.bound();
        const double t_lim = cfg.t_limit();
        const double h_tab = cfg.h_max > 0.0
            ? cfg.h_max
            : cfg.M + char_speed(cfg.p, lip) * t_lim + 1.0;

        stage = "scalar_channel";
        const PsiCurve curve = tabulate_psi(prior, h_tab, cfg.psi_points, cfg.quad_order);
        {
            CsvWriter w(hash, "h,psi,psi_prime");
            for (int i = 0; i < curve.size(); ++i)
                w.row({curve.grid()[i], curve.values()[i], curve.prime_values()[i]});
            write_text(fs::path(out_dir) / "psi.csv", w.os.str());
        }

        const std::vector<double> t_list = linspace(0.0, cfg.M, cfg.grid_points);
        const std::vector<double> h_list = linspace(0.0, cfg.M, cfg.grid_points);

        stage = "limit";
        std::string solver;
        {
            CsvWriter w(hash, "t,h,f,maximizer");
            if (cfg.p == 2) {
                solver = "hopflax";
                for (double t : t_list)
                    for (double h : h_list) {
                        const HopfLaxResult r = hopf_lax_eval(curve, t, h);
                        w.row({t, h, r.value, r.maximizer});
                    }
            } else {
                solver = "pde";
                const HJGrid g = solve_hj(curve, cfg.p, t_lim, cfg.M, cfg.dh, cfg.cfl);
                for (double t : t_list)
                    for (double h : h_list)
                        w.row({t, h, hj_value(g, t, h),
                               std::numeric_limits<double>::quiet_NaN()});
            }
            write_text(fs::path(out_dir) / "limit.csv", w.os.str());
        }

        stage = "finite_n";
        GibbsBudget budget;
        budget.max_configs = 1L << cfg.budget_log2;
        write_text(fs::path(out_dir) / "finite_n.csv", finite_n_csv_text(cfg, threads));

        stage = "concentration";
        {
            const ConcentrationReport rep = concentration_report(
                prior, cfg.p, cfg.M, cfg.N_list, cfg.concentration_points, cfg.n_samples,
                cfg.base_seed, threads, budget);
            CsvWriter w(hash, "N,t,h,var,var_se");
            for (std::size_t i = 0; i < rep.N_list.size(); ++i)
                for (const auto& pt : rep.points[i])
                    w.row({static_cast<double>(rep.N_list[i]), pt.t, pt.h, pt.var, pt.var_se});
            write_text(fs::path(out_dir) / "concentration.csv", w.os.str());
        }

        if (cfg.curie_weiss) {
            stage = "curie_weiss";
            CsvWriter w(hash, "N,t,h,F,residual_exact,residual_fd,f_limit");
            const std::vector<double> grid = linspace(0.05, 2.0, 10);
            for (int N : cfg.cw_N)
                for (double t : grid)
                    for (double h : grid) {
                        const CWRecord r = cw_free_energy(N, t, h);
                        const auto res = cw_identity_check(N, t, h, 1e-4);
                        w.row({static_cast<double>(N), t, h, r.F, res.first, res.second,
                               cw_limit_eval(t, h)});
                    }
            write_text(fs::path(out_dir) / "curie_weiss.csv", w.os.str());
        }

        stage = "manifest";
        {
            std::ostringstream os;
            os << "# " << kVersion << " sweep manifest\n"
               << "config_hash = " << hash << "\n"
               << "limit_solver = " << solver << "\n"
               << "seed_rule = split_seed(base_seed, sample_index)\n"
               << "prior_resolved = " << prior.descriptor() << "\n"
               << "psi_h_max = " << format_g17(h_tab) << "\n"
               << "--- config ---\n"
               << cfg.canonical();
            write_text(fs::path(out_dir) / "manifest.txt", os.str());
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

ConvergenceReport convergence_report(const std::string& out_dir)
{
    try {
        const Csv fin = read_csv(fs::path(out_dir) / "finite_n.csv");
        const Csv lim = read_csv(fs::path(out_dir) / "limit.csv");

        ConvergenceReport rep;
        {
            std::ifstream in(fs::path(out_dir) / "manifest.txt");
            std::string line;
            while (in && std::getline(in, line))
                if (line.rfind("limit_solver = ", 0) == 0)
                    rep.limit_solver = line.substr(15);
        }

        // limit values keyed by (t,h)
        const std::size_t lt = lim.col("t"), lh = lim.col("h"), lf = lim.col("f");
        auto key = [](double t, double h) {
            return std::make_pair(std::llround(t * 1e9), std::llround(h * 1e9));
        };
        std::map<std::pair<long long, long long>, double> fmap;
        for (const auto& r : lim.rows) fmap[key(r[lt], r[lh])] = r[lf];

        const std::size_t cN = fin.col("N"), ct = fin.col("t"), ch = fin.col("h");
        const std::size_t cF = fin.col("F_bar"), cV = fin.col("F_var"), cn = fin.col("n_samples");

        std::map<int, ConvergenceRow> acc;
        for (const auto& r : fin.rows) {
            const auto it = fmap.find(key(r[ct], r[ch]));
            if (it == fmap.end())
                throw std::runtime_error("finite-N grid point not covered by the limit solution");
            const double f = it->second;
            const double n = r[cn];
            const double var_pop = r[cV] * (n - 1.0) / n;
            const double dev = std::fabs(r[cF] - f);
            const double msd = var_pop + (r[cF] - f) * (r[cF] - f);
            ConvergenceRow& row = acc[static_cast<int>(r[cN])];
            row.N = static_cast<int>(r[cN]);
            row.sup_abs_dev = std::max(row.sup_abs_dev, dev);
            row.sup_msd = std::max(row.sup_msd, msd);
        }
        for (const auto& [N, row] : acc) rep.rows.push_back(row);

        rep.msd_strictly_decreasing = rep.rows.size() >= 2;
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (!(rep.rows[i].sup_msd < rep.rows[i - 1].sup_msd))
                rep.msd_strictly_decreasing = false;

        std::string hash = "unknown";
        {
            std::ifstream in(fs::path(out_dir) / "manifest.txt");
            std::string line;
            while (in && std::getline(in, line))
                if (line.rfind("config_hash = ", 0) == 0) hash = line.substr(14);
        }
        CsvWriter w(hash, "N,sup_abs_dev,sup_msd");
        for (const auto& row : rep.rows)
            w.row({static_cast<double>(row.N), row.sup_abs_dev, row.sup_msd});
        write_text(fs::path(out_dir) / "convergence.csv", w.os.str());
        return rep;
    } catch (const std::exception& e) {
        throw StageError("report", e.what());
    }
}

namespace {

struct Figure {
    const char* script;
    const char* needs;
    std::string body;
};

} // namespace

PlotsResult emit_plots(const std::string& out_dir)
{
    PlotsResult res;
    std::vector<Figure> figs;

    figs.push_back({"fig_fbar_vs_limit.gp", "finite_n.csv",
                    "# finite-N free energy against the limit solution\n"
                    "set datafile separator ','\n"
                    "set key autotitle columnhead\n"
                    "set key top left\n"
                    "set xlabel 'h'\n"
                    "set ylabel 'free energy at largest t'\n"
                    "tmax = system(\"awk -F, 'NR>2{print $2}' finite_n.csv | sort -g | tail -1\") + 0\n"
                    "nmax = system(\"awk -F, 'NR>2{print $1}' finite_n.csv | sort -g | tail -1\") + 0\n"
                    "plot 'finite_n.csv' using (abs($2-tmax)<1e-9 && abs($1-nmax)<1e-9 ? $3 : 1/0):5 "
                    "with points pt 7 title sprintf('F_N, N=%d', int(nmax)), \\\n"
                    "     'limit.csv' using (abs($1-tmax)<1e-9 ? $2 : 1/0):3 with lines title 'f'\n"});

    figs.push_back({"fig_residual_vs_n.gp", "finite_n.csv",
                    "# approximate-HJ residual against N (largest grid point)\n"
                    "set datafile separator ','\n"
                    "set key autotitle columnhead\n"
                    "set logscale xy\n"
                    "set xlabel 'N'\n"
                    "set ylabel '|lhs - rhs|'\n"
                    "plot 'finite_n.csv' using 1:(abs($23) > 0 ? abs($23) : 1/0) "
                    "with points pt 7 title 'residual'\n"});

    figs.push_back({"fig_concentration_vs_n.gp", "concentration.csv",
                    "# concentration of the free energy: Var(F_N) against N\n"
                    "set datafile separator ','\n"
                    "set key autotitle columnhead\n"
                    "set logscale xy\n"
                    "set xlabel 'N'\n"
                    "set ylabel 'Var(F_N)'\n"
                    "plot 'concentration.csv' using 1:($4 > 0 ? $4 : 1/0) "
                    "with points pt 7 title 'grid Var'\n"});

    figs.push_back({"fig_curie_weiss.gp", "curie_weiss.csv",
                    "# Curie-Weiss identity residuals\n"
                    "set datafile separator ','\n"
                    "set key autotitle columnhead\n"
                    "set logscale y\n"
                    "set xlabel 'row index'\n"
                    "set ylabel 'residual'\n"
                    "plot 'curie_weiss.csv' using 0:5 with points pt 7 title 'exact', \\\n"
                    "     'curie_weiss.csv' using 0:6 with points pt 6 title 'finite difference'\n"});

    for (const auto& f : figs) {
        if (!fs::exists(fs::path(out_dir) / f.needs)) {
            res.warnings.push_back(std::string("skipping ") + f.script + ": missing " + f.needs);
            continue;
        }
        write_text(fs::path(out_dir) / f.script, f.body);
        res.scripts.push_back(f.script);
    }
    return res;
}

} // namespace hjlab
