#ifndef HJLAB_QUADRATURE_HPP
#define HJLAB_QUADRATURE_HPP

#include <vector>

namespace hjlab {

/// Gauss-Hermite rule rescaled to the standard normal measure:
/// E[g(Z)] with Z ~ N(0,1) is approximated by sum_i weight[i] * g(node[i]),
/// exact for polynomials of degree <= 2*order-1. Nodes and weights come from
/// the Golub-Welsch eigendecomposition of the Jacobi matrix.
class GaussHermite {
public:
    explicit GaussHermite(int order);

    int order() const { return static_cast<int>(node.size()); }

    std::vector<double> node;   // abscissae for N(0,1)
    std::vector<double> weight; // positive, sums to 1

    template <class F>
    double expect(F&& g) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < node.size(); ++i) s += weight[i] * g(node[i]);
        return s;
    }
};

} // namespace hjlab

#endif
