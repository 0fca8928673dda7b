#pragma once

#include <Eigen/Dense>

namespace slowres {

double mse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Root-mean-square error normalized by the target's standard deviation,
/// pooled over all channels and samples.
double nrmse(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target);

/// Entropy-based effective rank of a matrix (exp of the entropy of the
/// normalized singular-value distribution); 0 for the zero matrix.
double effective_rank(const Eigen::MatrixXd& m);

} // namespace slowres
