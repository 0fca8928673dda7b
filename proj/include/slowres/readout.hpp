#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace slowres {

struct RidgeSolution {
    Eigen::MatrixXd w_out; // k x N
    double alpha = 0.0;
};

/// Closed-form ridge readout W = Y Phi^T (Phi Phi^T + alpha I)^-1, computed
/// with a stable linear solve. phi is N x K (states in columns), y is k x K.
/// alpha == 0 requires Phi Phi^T to be invertible.
RidgeSolution ridge_fit(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& y, double alpha);

/// Recurrent weights constrained to {-1, 0, +1}.
struct TernaryMatrix {
    Eigen::MatrixXi entries;

    Eigen::MatrixXd as_real() const { return entries.cast<double>(); }
    bool valid() const {
        return ((entries.array() >= -1) && (entries.array() <= 1)).all();
    }
};

/// Per-row least squares min ||w R - x_row||^2 over w in {-1,0,+1}^N.
/// Rows are solved independently: each starts from the sign-thresholded
/// full-precision solution and runs coordinate descent until no single-entry
/// move improves the residual.
TernaryMatrix ternary_fit(const Eigen::MatrixXd& r, const Eigen::MatrixXd& x);

/// Rounds predictions to {0,1}; ties at the threshold go to 1.
std::vector<int> binarize(const std::vector<double>& predictions, double threshold);

/// Binary classification counts and ratios. Ratios whose denominator is zero
/// are reported as absent rather than 0.
struct Metrics {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    std::optional<double> accuracy;
    std::optional<double> sensitivity;
    std::optional<double> precision;
    std::optional<double> f1;
};

Metrics classify_metrics(const std::vector<int>& pred, const std::vector<int>& truth);

/// JSON object with the four counts and four ratios (null when undefined).
std::string metrics_to_json(const Metrics& m);

} // namespace slowres
