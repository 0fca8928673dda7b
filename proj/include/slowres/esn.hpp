#pragma once

#include "slowres/signal.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace slowres {

/// Continuous-time leaky-integrator parameters:
/// dx/dt = -leak_lambda * x + tanh(w_in u + w x), Euler-discretized with dt.
struct EsnParams {
    double leak_lambda = 1.0; // 1/seconds
    double dt = 1e-3;

    void validate() const;
};

struct EsnWeights {
    Eigen::MatrixXd w_in; // N x m
    Eigen::MatrixXd w;    // N x N
    double spectral_radius = 0.0; // achieved rho(w)
    double input_scaling = 0.0;
    double density = 0.0;
    std::uint64_t seed = 0;

    Eigen::Index size() const { return w.rows(); }
    Eigen::Index input_dim() const { return w_in.cols(); }
};

/// Plain power-iteration estimate from a fixed deterministic start vector;
/// empty when the growth factor has not settled to rel_tol within max_iters
/// (random reservoir draws often carry complex or clustered dominant
/// eigenvalues, where the plain iteration cannot converge).
std::optional<double> power_iteration_radius(const Eigen::MatrixXd& a, int max_iters = 200,
                                             double rel_tol = 1e-10);

/// Spectral radius: the power-iteration estimate when it converges, otherwise
/// a dense eigensolver.
double spectral_radius(const Eigen::MatrixXd& a);

/// Random reservoir draw: w sparse uniform in [-1,1] rescaled to the target
/// spectral radius, w_in dense uniform in [-input_scaling, input_scaling].
/// Deterministic in seed.
EsnWeights esn_generate(Eigen::Index n, Eigen::Index m, double target_spectral_radius,
                        double input_scaling, double density, std::uint64_t seed);

/// Euler-discretized continuous-time run from x(0) = 0; the returned signal
/// holds the state samples every `sample_every` seconds.
SampledSignal esn_run(const EsnWeights& weights, const EsnParams& params,
                      const SampledSignal& input, double duration, double sample_every,
                      const Eigen::VectorXd* x0 = nullptr);

/// Standard discrete-time leaky update on the input's own grid:
/// x[k] = (1 - leak_a) x[k-1] + leak_a * tanh(w_in u[k] + w x[k-1]).
SampledSignal esn_run_discrete(const EsnWeights& weights, double leak_a,
                               const SampledSignal& input, const Eigen::VectorXd* x0 = nullptr);

/// Hyperparameters of the software PVC-detection baseline.
struct EsnPreset {
    std::string name;
    double leak_a = 0.0;          // discrete leak, pinned update form
    double spectral_radius = 0.0;
    double ridge_alpha = 0.0;
    double input_scaling = 1.0;
    double density = 0.1;
    Eigen::Index size = 200;
};

/// Known preset names: "ecg-baseline" (leak 0.99, spectral radius 0.9,
/// ridge alpha 1e-6).
EsnPreset esn_preset(const std::string& name);

/// Triplet-CSV serialization of both weight matrices plus a metadata header.
void esn_save_weights(const EsnWeights& weights, const std::string& path_prefix);
EsnWeights esn_load_weights(const std::string& path_prefix);

} // namespace slowres
