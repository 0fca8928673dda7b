#include "slowres/readout.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace slowres {

RidgeSolution ridge_fit(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& y, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("ridge_fit: alpha must be nonnegative");
    if (phi.cols() < 1) throw std::invalid_argument("ridge_fit: need at least one sample");
    if (y.cols() != phi.cols())
        throw std::invalid_argument("ridge_fit: phi and y sample counts differ");

    const Eigen::Index n = phi.rows();
    Eigen::MatrixXd gram = phi * phi.transpose();
    gram.diagonal().array() += alpha;
    const Eigen::MatrixXd rhs = phi * y.transpose(); // N x k

    Eigen::MatrixXd solution;
    if (alpha == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        if (!lu.isInvertible())
            throw std::runtime_error(
                "ridge_fit: states matrix is rank deficient; use alpha > 0");
        solution = lu.solve(rhs);
    } else {
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success) {
            // alpha too small relative to the Gram scale; LDLT still applies.
            Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
            if (ldlt.info() != Eigen::Success)
                throw std::runtime_error("ridge_fit: Gram factorization failed");
            solution = ldlt.solve(rhs);
        } else {
            solution = llt.solve(rhs);
        }
    }
    (void)n;
    return RidgeSolution{solution.transpose(), alpha};
}

namespace {

// Best ternary value for coordinate j given the rest of the row: minimizes
// q*w_j^2 - 2*g*w_j with q = G(j,j) and g the residual correlation.
int best_ternary_value(double q, double g) {
    double best_obj = 0.0; // w_j = 0
    int best = 0;
    for (int cand : {-1, 1}) {
        const double obj = q - 2.0 * g * cand;
        if (obj < best_obj - 1e-15 * (std::abs(obj) + std::abs(best_obj))) {
            best_obj = obj;
            best = cand;
        }
    }
    return best;
}

} // namespace

TernaryMatrix ternary_fit(const Eigen::MatrixXd& r, const Eigen::MatrixXd& x) {
    if (r.cols() != x.cols())
        throw std::invalid_argument("ternary_fit: r and x sample counts differ");
    const Eigen::Index n = r.rows();
    const Eigen::Index rows = x.rows();

    const Eigen::MatrixXd gram = r * r.transpose(); // N x N
    const Eigen::MatrixXd corr = x * r.transpose(); // rows x N

    // Full-precision row solutions for initialization; the small diagonal
    // guard keeps the solve defined on degenerate harvests.
    Eigen::MatrixXd reg = gram;
    const double guard = 1e-12 * std::max(1.0, gram.trace() / std::max<Eigen::Index>(n, 1));
    reg.diagonal().array() += guard;
    const Eigen::MatrixXd w_full = reg.ldlt().solve(corr.transpose()).transpose(); // rows x N

    TernaryMatrix out;
    out.entries = Eigen::MatrixXi::Zero(rows, n);

    for (Eigen::Index i = 0; i < rows; ++i) {
        // Sign threshold at half the row's largest magnitude.
        const double cut = 0.5 * w_full.row(i).cwiseAbs().maxCoeff();
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        if (cut > 0.0) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double v = w_full(i, j);
                if (std::abs(v) >= cut) w(j) = v > 0.0 ? 1.0 : -1.0;
            }
        }

        // Coordinate descent on q(w) = w^T G w - 2 c w; strict improvement
        // only, so the sweep terminates and stays deterministic.
        Eigen::VectorXd gw = gram * w;
        bool improved = true;
        while (improved) {
            improved = false;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double old = w(j);
                const double q = gram(j, j);
                // correlation of coordinate j with the residual excluding j
                const double g = corr(i, j) - (gw(j) - q * old);
                const int cand = best_ternary_value(q, g);
                const double delta_old = q * old * old - 2.0 * g * old;
                const double delta_new = q * cand * cand - 2.0 * g * cand;
                if (delta_new < delta_old - 1e-12 * (1.0 + std::abs(delta_old))) {
                    w(j) = cand;
                    gw += gram.col(j) * (cand - old);
                    improved = true;
                }
            }
        }
        for (Eigen::Index j = 0; j < n; ++j)
            out.entries(i, j) = static_cast<int>(w(j));
    }
    return out;
}

std::vector<int> binarize(const std::vector<double>& predictions, double threshold) {
    std::vector<int> out;
    out.reserve(predictions.size());
    for (double v : predictions) out.push_back(v >= threshold ? 1 : 0);
    return out;
}

Metrics classify_metrics(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("classify_metrics: length mismatch");
    Metrics m;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred[i] != 0;
        const bool t = truth[i] != 0;
        if (p && t) ++m.tp;
        else if (p && !t) ++m.fp;
        else if (!p && t) ++m.fn;
        else ++m.tn;
    }
    const long total = m.tp + m.tn + m.fp + m.fn;
    if (total > 0) m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(total);
    if (m.tp + m.fn > 0)
        m.sensitivity = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    if (m.tp + m.fp > 0)
        m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    if (2 * m.tp + m.fp + m.fn > 0)
        m.f1 = static_cast<double>(2 * m.tp) / static_cast<double>(2 * m.tp + m.fp + m.fn);
    return m;
}

std::string metrics_to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["tn"] = m.tn;
    j["fn"] = m.fn;
    auto ratio = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    j["accuracy"] = ratio(m.accuracy);
    j["sensitivity"] = ratio(m.sensitivity);
    j["precision"] = ratio(m.precision);
    j["f1"] = ratio(m.f1);
    return j.dump(2) + "\n";
}

} // namespace slowres
