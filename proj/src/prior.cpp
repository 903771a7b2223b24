#include "hjlab/prior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hjlab/util.hpp"

namespace hjlab {

DiscretePrior::DiscretePrior(std::vector<PriorAtom> atoms)
{
    if (atoms.empty()) throw std::invalid_argument("prior: empty atom list");
    double sum = 0.0;
    for (const auto& a : atoms) {
        if (!std::isfinite(a.value) || !std::isfinite(a.weight))
            throw std::invalid_argument("prior: non-finite atom");
        if (a.weight < 0.0)
            throw std::invalid_argument("prior: negative weight");
        sum += a.weight;
    }
    if (sum <= 0.0) throw std::invalid_argument("prior: all weights zero");

    for (const auto& a : atoms) {
        if (a.weight == 0.0) continue; // zero-mass atoms would break log-weight enumeration
        atoms_.push_back({a.value, a.weight / sum});
    }

    double cum = 0.0;
    for (const auto& a : atoms_) {
        bound_ = std::max(bound_, std::fabs(a.value));
        mean_ += a.weight * a.value;
        second_ += a.weight * a.value * a.value;
        log_w_.push_back(std::log(a.weight));
        cum += a.weight;
        cum_.push_back(cum);
    }
    cum_.back() = 1.0;
}

int DiscretePrior::sample_index(double u) const
{
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum_.begin(),
                                                     static_cast<std::ptrdiff_t>(cum_.size()) - 1));
}

std::string DiscretePrior::descriptor() const
{
    std::ostringstream os;
    os << "atoms:[";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) os << ",";
        os << "(" << format_g17(atoms_[i].value) << "," << format_g17(atoms_[i].weight) << ")";
    }
    os << "]";
    return os.str();
}

namespace {

std::vector<double> parse_number_list(const std::string& s)
{
    std::vector<double> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stod(cur));
    return out;
}

// "atoms:[(v,w),(v,w),...]" or bare "[[v,w],[v,w]]"
std::vector<PriorAtom> parse_atom_list(const std::string& body)
{
    std::vector<PriorAtom> atoms;
    std::vector<double> pair;
    std::string cur;
    auto flush_num = [&] {
        if (!cur.empty()) {
            pair.push_back(std::stod(cur));
            cur.clear();
        }
    };
    for (char c : body) {
        if (c == '(' || c == '[' || c == ' ') {
            continue;
        } else if (c == ',' ) {
            flush_num();
        } else if (c == ')' || c == ']') {
            flush_num();
            if (pair.size() == 2) {
                atoms.push_back({pair[0], pair[1]});
                pair.clear();
            } else if (!pair.empty()) {
                throw std::invalid_argument("prior: malformed atom pair");
            }
        } else {
            cur += c;
        }
    }
    if (atoms.empty()) throw std::invalid_argument("prior: no atoms parsed from '" + body + "'");
    return atoms;
}

} // namespace

DiscretePrior make_prior(std::vector<PriorAtom> atoms)
{
    return DiscretePrior(std::move(atoms));
}

DiscretePrior make_prior(const std::string& spec)
{
    if (spec == "rademacher")
        return DiscretePrior({{-1.0, 0.5}, {1.0, 0.5}});

    const auto colon = spec.find(':');
    const std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

    if (head == "uniform") {
        const auto vals = parse_number_list(body);
        if (vals.empty()) throw std::invalid_argument("prior: uniform needs values");
        std::vector<PriorAtom> atoms;
        for (double v : vals) atoms.push_back({v, 1.0 / static_cast<double>(vals.size())});
        return DiscretePrior(std::move(atoms));
    }
    if (head == "binary") {
        const double q = std::stod(body);
        if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("prior: binary parameter must be in (0,1)");
        return DiscretePrior({{0.0, 1.0 - q}, {1.0, q}});
    }
    if (head == "atoms" || spec.front() == '[')
        return DiscretePrior(parse_atom_list(head == "atoms" ? body : spec));

    throw std::invalid_argument("prior: unknown spec '" + spec + "'");
}

std::pair<double, double> prior_moments(const DiscretePrior& p)
{
    return {p.mean(), p.second_moment()};
}

DiscretePrior quantize_prior(const std::function<double(double)>& quantile, int k)
{
    if (k < 1) throw std::invalid_argument("quantize_prior: k must be positive");
    std::vector<PriorAtom> atoms;
    for (int i = 0; i < k; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
        atoms.push_back({quantile(u), 1.0 / static_cast<double>(k)});
    }
    return DiscretePrior(std::move(atoms));
}

} // namespace hjlab
