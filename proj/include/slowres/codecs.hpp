#pragma once

#include "slowres/signal.hpp"
#include "slowres/spikes.hpp"

#include <Eigen/Dense>
#include <vector>

namespace slowres {

/// Delta-threshold encoder. Per channel, a reference level starts at the first
/// sample; a sample deviating from the reference by >= threshold emits an up
/// or down spike and steps the reference by +-threshold (staircase tracking).
/// At most one spike per channel per sample.
UpDownSpikes delta_encode(const SampledSignal& signal, double threshold);

/// Causal exponential-kernel smoothing: per neuron,
/// y(t) = sum over spikes with t_f <= t of exp(-(t - t_f)/tau_s).
/// n_neurons fixes the output row count (neurons indexed 0..n_neurons-1).
SampledSignal exp_smooth(const SpikeTrain& spikes, double tau_s,
                         double t0, double dt, Eigen::Index n_samples, int n_neurons);

/// Inverse of delta_encode up to quantization: cumulative +-threshold steps
/// from `initial`, sampled on the given grid.
SampledSignal staircase_reconstruct(const UpDownSpikes& spikes, double threshold,
                                    const Eigen::VectorXd& initial,
                                    double t0, double dt, Eigen::Index n_samples);

} // namespace slowres
