#ifndef HJLAB_CONFIG_HPP
#define HJLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hjlab {

/// Sweep configuration, read from a flat "key = value" text file
/// ('#' starts a comment, lists are comma-separated). Unknown keys are
/// rejected so typos cannot silently fall back to defaults.
struct ExperimentConfig {
    std::string prior_spec = "rademacher";
    int p = 2;
    std::vector<int> N_list = {4, 8};
    double M = 1.0;       // (t,h) grid covers [0,M]^2
    int grid_points = 3;  // nodes per axis, including 0 and M
    int n_samples = 1000;
    std::uint64_t base_seed = 20240612;
    int budget_log2 = 22; // max enumerated configurations per sample

    // limit-solver settings
    double dh = 0.002;
    double cfl = 0.5;
    int quad_order = 61;
    int psi_points = 401;
    double h_max = 0.0; // psi tabulation extent; 0 = derive from M and t_max
    double t_max = 0.0; // 0 = use M

    bool curie_weiss = false;
    std::vector<int> cw_N = {10, 100, 1000};
    int concentration_points = 3;
    double residual_c = 0.0; // 0 = default 10*bound(P)^4

    double t_limit() const { return t_max > 0.0 ? t_max : M; }

    void validate() const;

    /// Canonical text form (fixed key order, normalized values); re-parsing
    /// it yields the same configuration.
    std::string canonical() const;

    /// FNV-1a hash of the canonical form, as 16 hex digits.
    std::string hash_hex() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

} // namespace hjlab

#endif
