#include "slowres/esn.hpp"

#include "slowres/csv.hpp"
#include "slowres/rng.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace slowres {

void EsnParams::validate() const {
    if (!(leak_lambda > 0.0)) throw std::invalid_argument("EsnParams: leak_lambda must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("EsnParams: dt must be positive");
    if (dt * leak_lambda > 1.0 + 1e-12)
        throw std::invalid_argument("EsnParams: dt * leak_lambda must not exceed 1");
}

std::optional<double> power_iteration_radius(const Eigen::MatrixXd& a, int max_iters,
                                             double rel_tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("power_iteration_radius: square matrix required");
    const Eigen::Index n = a.rows();
    if (n == 0) return 0.0;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd y = a * x;
        const double norm = y.norm();
        if (norm == 0.0) return 0.0; // start vector annihilated: treat as radius 0
        if (prev >= 0.0 && std::abs(norm - prev) <= rel_tol * norm) return norm;
        prev = norm;
        x = y / norm;
    }
    return std::nullopt;
}

double spectral_radius(const Eigen::MatrixXd& a) {
    if (auto est = power_iteration_radius(a)) return *est;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_radius: eigensolver failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

EsnWeights esn_generate(Eigen::Index n, Eigen::Index m, double target_spectral_radius,
                        double input_scaling, double density, std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("esn_generate: n and m must be >= 1");
    if (!(target_spectral_radius > 0.0))
        throw std::invalid_argument("esn_generate: spectral radius target must be positive");
    if (!(density > 0.0) || density > 1.0)
        throw std::invalid_argument("esn_generate: density must be in (0, 1]");
    if (input_scaling < 0.0)
        throw std::invalid_argument("esn_generate: input_scaling must be nonnegative");

    Rng rng(seed);
    EsnWeights out;
    out.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (rng.uniform01() < density) out.w(i, j) = rng.uniform(-1.0, 1.0);

    out.w_in = Eigen::MatrixXd::Zero(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            out.w_in(i, j) = rng.uniform(-input_scaling, input_scaling);

    const double raw_radius = spectral_radius(out.w);
    if (raw_radius == 0.0)
        throw std::runtime_error(
            "esn_generate: raw draw has spectral radius 0; increase density (or n)");
    out.w *= target_spectral_radius / raw_radius;
    out.spectral_radius = spectral_radius(out.w);
    out.input_scaling = input_scaling;
    out.density = density;
    out.seed = seed;
    return out;
}

namespace {

void check_esn_dims(const EsnWeights& weights, const SampledSignal& input) {
    if (weights.w.rows() != weights.w.cols())
        throw std::invalid_argument("esn_run: w must be square");
    if (weights.w_in.rows() != weights.w.rows())
        throw std::invalid_argument("esn_run: w_in rows must match reservoir size");
    if (input.channels() != weights.input_dim())
        throw std::invalid_argument("esn_run: input channel count must match w_in");
}

void check_state_finite(const Eigen::VectorXd& x, double t) {
    if (!x.allFinite())
        throw std::runtime_error("esn_run: non-finite state at t = " + std::to_string(t));
}

} // namespace

SampledSignal esn_run(const EsnWeights& weights, const EsnParams& params,
                      const SampledSignal& input, double duration, double sample_every,
                      const Eigen::VectorXd* x0) {
    params.validate();
    check_esn_dims(weights, input);
    if (!(duration > 0.0)) throw std::invalid_argument("esn_run: duration must be positive");
    if (!input.covers(duration))
        throw std::invalid_argument("esn_run: input signal shorter than duration");

    const Eigen::Index n = weights.size();
    const double dt = params.dt;
    const auto n_steps = static_cast<long long>(std::ceil(duration / dt - 1e-9));
    const auto stride = std::max<long long>(1, std::llround(sample_every / dt));
    const auto n_samples = n_steps / stride;

    Eigen::VectorXd x = x0 ? *x0 : Eigen::VectorXd::Zero(n);
    if (x.size() != n) throw std::invalid_argument("esn_run: x0 dimension mismatch");

    Eigen::MatrixXd samples(n, n_samples);
    Eigen::Index sample_idx = 0;
    const bool aligned = std::abs(input.dt - dt) < 1e-12 && std::abs(input.t0) < 1e-12;
    for (long long k = 0; k < n_steps; ++k) {
        const double t = dt * static_cast<double>(k);
        const Eigen::VectorXd u =
            (aligned && k < input.samples()) ? input.values.col(k) : input.at(t);
        x += dt * (-params.leak_lambda * x + (weights.w_in * u + weights.w * x).array().tanh().matrix());
        if ((k + 1) % stride == 0 && sample_idx < n_samples) {
            check_state_finite(x, dt * static_cast<double>(k + 1));
            samples.col(sample_idx++) = x;
        }
    }
    check_state_finite(x, duration);
    return SampledSignal(dt * static_cast<double>(stride), dt * static_cast<double>(stride),
                         std::move(samples));
}

SampledSignal esn_run_discrete(const EsnWeights& weights, double leak_a,
                               const SampledSignal& input, const Eigen::VectorXd* x0) {
    if (!(leak_a > 0.0) || leak_a > 1.0)
        throw std::invalid_argument("esn_run_discrete: leak must be in (0, 1]");
    check_esn_dims(weights, input);
    const Eigen::Index n = weights.size();
    Eigen::VectorXd x = x0 ? *x0 : Eigen::VectorXd::Zero(n);
    if (x.size() != n) throw std::invalid_argument("esn_run_discrete: x0 dimension mismatch");

    Eigen::MatrixXd samples(n, input.samples());
    for (Eigen::Index k = 0; k < input.samples(); ++k) {
        x = (1.0 - leak_a) * x +
            leak_a * (weights.w_in * input.values.col(k) + weights.w * x).array().tanh().matrix();
        samples.col(k) = x;
    }
    if (input.samples() > 0) check_state_finite(x, input.end_time());
    return SampledSignal(input.t0, input.dt, std::move(samples));
}

EsnPreset esn_preset(const std::string& name) {
    if (name == "ecg-baseline") {
        EsnPreset p;
        p.name = name;
        p.leak_a = 0.99;
        p.spectral_radius = 0.9;
        p.ridge_alpha = 1e-6;
        p.input_scaling = 1.0;
        p.density = 0.1;
        p.size = 200;
        return p;
    }
    throw std::invalid_argument("unknown ESN preset: " + name);
}

void esn_save_weights(const EsnWeights& weights, const std::string& path_prefix) {
    nlohmann::ordered_json meta;
    meta["n"] = weights.size();
    meta["m"] = weights.input_dim();
    meta["spectral_radius"] = weights.spectral_radius;
    meta["input_scaling"] = weights.input_scaling;
    meta["density"] = weights.density;
    meta["seed"] = weights.seed;
    csv::write_text_file(path_prefix + ".meta.json", meta.dump(2) + "\n");
    csv::write_matrix_triplets_file(path_prefix + ".win.csv", weights.w_in);
    csv::write_matrix_triplets_file(path_prefix + ".w.csv", weights.w);
}

EsnWeights esn_load_weights(const std::string& path_prefix) {
    const auto meta = nlohmann::json::parse(csv::read_text_file(path_prefix + ".meta.json"));
    EsnWeights out;
    out.w_in = csv::read_matrix_triplets_file(path_prefix + ".win.csv");
    out.w = csv::read_matrix_triplets_file(path_prefix + ".w.csv");
    out.spectral_radius = meta.at("spectral_radius").get<double>();
    out.input_scaling = meta.at("input_scaling").get<double>();
    out.density = meta.at("density").get<double>();
    out.seed = meta.at("seed").get<std::uint64_t>();
    if (out.w.rows() != meta.at("n").get<Eigen::Index>() ||
        out.w_in.cols() != meta.at("m").get<Eigen::Index>())
        throw std::runtime_error("esn_load_weights: metadata does not match matrices");
    return out;
}

} // namespace slowres
