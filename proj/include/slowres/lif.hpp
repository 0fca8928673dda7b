#pragma once

#include "slowres/signal.hpp"
#include "slowres/spikes.hpp"

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <vector>

namespace slowres {

/// Leaky integrate-and-fire parameters. Resting potential is 0 and membrane
/// resistance is 1, so they do not appear here.
struct LifParams {
    double tau_v = 20e-3;  // membrane time constant, seconds
    double tau_r = 5e-3;   // synaptic time constant, seconds
    double theta = 1.0;    // firing threshold above rest
    double i_0 = 0.9;      // constant bias current, just below rheobase
    double dt = 1e-4;      // integration step, seconds

    /// Defaults with i_0 pinned to 0.9 * theta (steady-state input gain is 1,
    /// so the rheobase current equals theta).
    static LifParams defaults(double theta = 1.0) {
        LifParams p;
        p.theta = theta;
        p.i_0 = 0.9 * theta;
        return p;
    }

    void validate() const;
};

struct LifWeights {
    Eigen::MatrixXd w_in; // N x m
    Eigen::MatrixXd w;    // N x N

    Eigen::Index size() const { return w.rows(); }
    Eigen::Index input_dim() const { return w_in.cols(); }
    void validate() const;
};

struct LifState {
    Eigen::VectorXd v;
    Eigen::VectorXd r;
    double t = 0.0;

    static LifState zero(Eigen::Index n) {
        return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.0};
    }
};

/// One forward-Euler step. A neuron whose updated potential exceeds theta is
/// reported as fired, its potential is reduced by theta (reset by
/// subtraction) and its synaptic current is bumped by 1/tau_r, the Euler
/// weight of a unit Dirac impulse; the bump reaches other neurons' potentials
/// from the next step on.
/// When `inject` is present it replaces the recurrent term w * r.
std::vector<int> lif_step(LifState& state, const LifParams& params, const LifWeights& weights,
                          const Eigen::VectorXd& u, const Eigen::VectorXd* inject = nullptr);

struct SimTrace {
    std::vector<double> sample_times;
    Eigen::MatrixXd r_samples; // N x K
    SpikeTrain spikes;
    std::optional<Eigen::MatrixXd> v_samples;

    /// CSV with header "time,n0,n1,...", one row per sample of r.
    void write_csv(std::ostream& os) const;
};

/// Run options shared by the signal- and spike-driven entry points.
struct LifRunOptions {
    double duration = 0.0;
    double sample_every = 1e-3;
    const SampledSignal* inject = nullptr; // N channels replacing w * r
    bool record_v = false;
};

/// Deterministic clocked simulation; identical arguments give bit-identical
/// traces. The input signal is sampled with zero-order hold and must cover
/// [0, duration].
SimTrace lif_run(const LifWeights& weights, const LifParams& params,
                 const SampledSignal& input, const LifRunOptions& options);

/// Spike-driven variant: each input spike acts through w_in as a unit impulse
/// held for one step (height 1/dt), so total injected charge per spike is
/// independent of dt.
SimTrace lif_run(const LifWeights& weights, const LifParams& params,
                 const SpikeTrain& input_spikes, int input_dim, const LifRunOptions& options);

/// Response of the synaptic-current subsystem alone to an externally given
/// spike train, using the same recurrence as the full simulation. Exposed so
/// superposition and coupling conventions are checkable in isolation.
Eigen::MatrixXd lif_current_response(const SpikeTrain& spikes, const LifParams& params,
                                     int n_neurons, double duration, double sample_every);

} // namespace slowres
