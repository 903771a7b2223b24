#include "hjlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hjlab/util.hpp"

namespace hjlab {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s, const std::string& key)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t pos = 0;
        const int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("config: bad integer in " + key);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

bool parse_bool(const std::string& s, const std::string& key)
{
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument("config: bad boolean for " + key);
}

std::string join_ints(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

void ExperimentConfig::validate() const
{
    if (p < 1) throw std::invalid_argument("config: p must be >= 1");
    if (N_list.empty()) throw std::invalid_argument("config: N list is empty");
    for (int n : N_list)
        if (n < 1) throw std::invalid_argument("config: N entries must be >= 1");
    if (!(M >= 1.0)) throw std::invalid_argument("config: M must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("config: grid_points must be >= 2");
    if (n_samples < 2) throw std::invalid_argument("config: n_samples must be >= 2");
    if (budget_log2 < 1 || budget_log2 > 30)
        throw std::invalid_argument("config: budget_log2 out of range");
    if (!(dh > 0.0)) throw std::invalid_argument("config: dh must be positive");
    if (!(cfl > 0.0) || cfl > 0.9) throw std::invalid_argument("config: cfl must be in (0,0.9]");
    if (quad_order < 1) throw std::invalid_argument("config: quad_order must be >= 1");
    if (psi_points < 2) throw std::invalid_argument("config: psi_points must be >= 2");
    if (h_max < 0.0 || t_max < 0.0) throw std::invalid_argument("config: negative extent");
    if (concentration_points < 2)
        throw std::invalid_argument("config: concentration_points must be >= 2");
    for (int n : cw_N)
        if (n < 1) throw std::invalid_argument("config: cw_N entries must be >= 1");
}

std::string ExperimentConfig::canonical() const
{
    std::ostringstream os;
    os << "prior = " << prior_spec << "\n"
       << "p = " << p << "\n"
       << "N = " << join_ints(N_list) << "\n"
       << "M = " << format_g17(M) << "\n"
       << "grid_points = " << grid_points << "\n"
       << "n_samples = " << n_samples << "\n"
       << "base_seed = " << base_seed << "\n"
       << "budget_log2 = " << budget_log2 << "\n"
       << "dh = " << format_g17(dh) << "\n"
       << "cfl = " << format_g17(cfl) << "\n"
       << "quad_order = " << quad_order << "\n"
       << "psi_points = " << psi_points << "\n"
       << "h_max = " << format_g17(h_max) << "\n"
       << "t_max = " << format_g17(t_max) << "\n"
       << "curie_weiss = " << (curie_weiss ? "true" : "false") << "\n"
       << "cw_N = " << join_ints(cw_N) << "\n"
       << "concentration_points = " << concentration_points << "\n"
       << "residual_c = " << format_g17(residual_c) << "\n";
    return os.str();
}

std::string ExperimentConfig::hash_hex() const
{
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

ExperimentConfig parse_config_text(const std::string& text)
{
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty())
            throw std::invalid_argument("config: empty value for " + key);

        if (key == "prior") cfg.prior_spec = val;
        else if (key == "p") cfg.p = std::stoi(val);
        else if (key == "N") cfg.N_list = parse_int_list(val, key);
        else if (key == "M") cfg.M = std::stod(val);
        else if (key == "grid_points") cfg.grid_points = std::stoi(val);
        else if (key == "n_samples") cfg.n_samples = std::stoi(val);
        else if (key == "base_seed") cfg.base_seed = std::stoull(val);
        else if (key == "budget_log2") cfg.budget_log2 = std::stoi(val);
        else if (key == "dh") cfg.dh = std::stod(val);
        else if (key == "cfl") cfg.cfl = std::stod(val);
        else if (key == "quad_order") cfg.quad_order = std::stoi(val);
        else if (key == "psi_points") cfg.psi_points = std::stoi(val);
        else if (key == "h_max") cfg.h_max = std::stod(val);
        else if (key == "t_max") cfg.t_max = std::stod(val);
        else if (key == "curie_weiss") cfg.curie_weiss = parse_bool(val, key);
        else if (key == "cw_N") cfg.cw_N = parse_int_list(val, key);
        else if (key == "concentration_points") cfg.concentration_points = std::stoi(val);
        else if (key == "residual_c") cfg.residual_c = std::stod(val);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace hjlab
