#ifndef IMIN_TESTS_HELPERS_HPP
#define IMIN_TESTS_HELPERS_HPP

#include <vector>

#include <Eigen/Dense>

#include "imin/model.hpp"

namespace imin::testing {

/// Nodes on a line at the given coordinates, PathLoss model.
inline Instance line_instance(const std::vector<double>& coords, double alpha = 2.0,
                              double beta = 1.0, double xi_max = 100.0) {
    std::vector<Node> nodes(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) {
        nodes[i].id = static_cast<int>(i);
        nodes[i].position = Eigen::VectorXd::Constant(1, coords[i]);
        nodes[i].xi_max = xi_max;
    }
    return Instance(std::move(nodes), PathLoss{alpha}, beta);
}

/// Nodes at the given planar points, PathLoss model.
inline Instance planar_instance(const std::vector<std::pair<double, double>>& points,
                                double alpha = 2.0, double beta = 1.0,
                                double xi_max = 100.0) {
    std::vector<Node> nodes(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        nodes[i].id = static_cast<int>(i);
        Eigen::VectorXd p(2);
        p << points[i].first, points[i].second;
        nodes[i].position = p;
        nodes[i].xi_max = xi_max;
    }
    return Instance(std::move(nodes), PathLoss{alpha}, beta);
}

/// Explicit-gain instance from a dense matrix.
inline Instance gain_instance(const Eigen::MatrixXd& gain, double beta = 1.0,
                              double xi_max = 100.0) {
    std::vector<Node> nodes(gain.rows());
    for (Eigen::Index i = 0; i < gain.rows(); ++i) {
        nodes[i].id = static_cast<int>(i);
        nodes[i].xi_max = xi_max;
    }
    return Instance(std::move(nodes), ExplicitGain{gain}, beta);
}

/// Uniform all-ones gain between distinct nodes: every pair is symmetric and
/// equally cheap, which makes the first-iteration cover problem maximally
/// contended.
inline Instance uniform_gain_instance(int n, double beta = 1.0, double xi_max = 100.0) {
    Eigen::MatrixXd gain = Eigen::MatrixXd::Ones(n, n);
    gain.diagonal().setZero();
    return gain_instance(gain, beta, xi_max);
}

}  // namespace imin::testing

#endif
