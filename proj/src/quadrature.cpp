#include "hjlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hjlab {

GaussHermite::GaussHermite(int order)
{
    if (order < 1) throw std::invalid_argument("GaussHermite: order must be >= 1");

    // Jacobi matrix of the (physicists') Hermite recurrence: zero diagonal,
    // off-diagonal beta_k = sqrt(k/2). Eigenvalues are the nodes y_i and the
    // squared first eigenvector components are the weights over sqrt(pi).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = std::sqrt(0.5 * static_cast<double>(k));
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("GaussHermite: eigensolver failed");

    node.resize(order);
    weight.resize(order);
    for (int i = 0; i < order; ++i) {
        // change of variables z = sqrt(2) y maps exp(-y^2) to the N(0,1) density
        node[i] = std::sqrt(2.0) * es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weight[i] = v0 * v0;
    }

    // the rule is symmetric by theory; enforce it against eigensolver noise
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double a = 0.5 * (node[j] - node[i]);
        node[i] = -a;
        node[j] = a;
        const double w = 0.5 * (weight[i] + weight[j]);
        weight[i] = weight[j] = w;
    }
    if (order % 2 == 1) node[order / 2] = 0.0;

    double s = 0.0;
    for (double w : weight) s += w;
    for (double& w : weight) w /= s;
}

} // namespace hjlab
