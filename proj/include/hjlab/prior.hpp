#ifndef HJLAB_PRIOR_HPP
#define HJLAB_PRIOR_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hjlab/rng.hpp"

namespace hjlab {

struct PriorAtom {
    double value = 0.0;
    double weight = 0.0;
};

/// Bounded discrete probability measure: atoms with positive weights that
/// sum to one, plus the support bound max|value|. Immutable after
/// construction, safe for concurrent reads.
class DiscretePrior {
public:
    /// Validates and normalizes. Rejects empty lists, negative weights and
    /// non-finite entries; drops exact-zero-weight atoms.
    explicit DiscretePrior(std::vector<PriorAtom> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    double value(int i) const { return atoms_[i].value; }
    double weight(int i) const { return atoms_[i].weight; }
    double log_weight(int i) const { return log_w_[i]; }
    double bound() const { return bound_; }
    const std::vector<PriorAtom>& atoms() const { return atoms_; }

    double mean() const { return mean_; }
    double second_moment() const { return second_; }

    /// Index of the atom selected by a uniform(0,1) draw (CDF inversion).
    int sample_index(double u) const;
    double sample(Rng& rng) const { return atoms_[sample_index(rng.uniform())].value; }

    /// Canonical text form, e.g. "rademacher" resolves to
    /// "atoms:[(-1,0.5),(1,0.5)]". Used in manifests and curve metadata.
    std::string descriptor() const;

private:
    std::vector<PriorAtom> atoms_;
    std::vector<double> log_w_;
    std::vector<double> cum_;
    double bound_ = 0.0;
    double mean_ = 0.0;
    double second_ = 0.0;
};

/// Builds a prior from a spec string:
///   "rademacher"            atoms (-1,1/2), (+1,1/2)
///   "uniform:v1,v2,...,vk"  equal weights on the listed values
///   "binary:q"              P(x=1)=q, P(x=0)=1-q
///   "atoms:[(v,w),(v,w)]"   explicit list (weights normalized)
DiscretePrior make_prior(const std::string& spec);
DiscretePrior make_prior(std::vector<PriorAtom> atoms);

/// (mean, second moment) of the prior.
std::pair<double, double> prior_moments(const DiscretePrior& p);

/// Quantizes a bounded distribution given by its quantile function into k
/// atoms, uniform in quantile: atom i sits at quantile (i+1/2)/k, weight 1/k.
DiscretePrior quantize_prior(const std::function<double(double)>& quantile, int k);

} // namespace hjlab

#endif
