#include "slowres/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace slowres {

double mse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mse: shape mismatch");
    if (a.size() == 0) throw std::invalid_argument("mse: empty input");
    return (a - b).squaredNorm() / static_cast<double>(a.size());
}

double nrmse(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw std::invalid_argument("nrmse: shape mismatch");
    if (target.size() == 0) throw std::invalid_argument("nrmse: empty input");
    const double rmse = std::sqrt((pred - target).squaredNorm() /
                                  static_cast<double>(target.size()));
    const double mean = target.mean();
    const double var =
        (target.array() - mean).square().sum() / static_cast<double>(target.size());
    const double sd = std::sqrt(var);
    if (sd == 0.0) return rmse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return rmse / sd;
}

double effective_rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double total = sv.sum();
    if (total <= 0.0) return 0.0;
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double p = sv(i) / total;
        if (p > 0.0) entropy -= p * std::log(p);
    }
    return std::exp(entropy);
}

} // namespace slowres
