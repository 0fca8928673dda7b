#include "slowres/codecs.hpp"

#include <cmath>
#include <stdexcept>

namespace slowres {

UpDownSpikes delta_encode(const SampledSignal& signal, double threshold) {
    if (threshold <= 0.0)
        throw std::invalid_argument("delta_encode: threshold must be positive");
    if (!signal.values.allFinite())
        throw std::invalid_argument("delta_encode: non-finite sample");

    UpDownSpikes out;
    const Eigen::Index n = signal.samples();
    if (n == 0) return out;

    std::vector<SpikeEvent> up, down;
    for (Eigen::Index c = 0; c < signal.channels(); ++c) {
        double ref = signal.values(c, 0);
        for (Eigen::Index k = 1; k < n; ++k) {
            const double v = signal.values(c, k);
            const double t = signal.t0 + signal.dt * static_cast<double>(k);
            if (v - ref >= threshold) {
                up.push_back({static_cast<int>(c), t});
                ref += threshold;
            } else if (ref - v >= threshold) {
                down.push_back({static_cast<int>(c), t});
                ref -= threshold;
            }
        }
    }
    out.up = SpikeTrain::from_events(std::move(up));
    out.down = SpikeTrain::from_events(std::move(down));
    return out;
}

SampledSignal exp_smooth(const SpikeTrain& spikes, double tau_s,
                         double t0, double dt, Eigen::Index n_samples, int n_neurons) {
    if (tau_s <= 0.0) throw std::invalid_argument("exp_smooth: tau_s must be positive");
    if (n_neurons < 1) throw std::invalid_argument("exp_smooth: need at least one neuron");

    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n_neurons, n_samples);
    const double decay = std::exp(-dt / tau_s);
    const auto& events = spikes.events();
    std::size_t next = 0;
    Eigen::VectorXd state = Eigen::VectorXd::Zero(n_neurons);
    for (Eigen::Index k = 0; k < n_samples; ++k) {
        const double t = t0 + dt * static_cast<double>(k);
        if (k > 0) state *= decay;
        // Newly arrived spikes enter with their exact decayed contribution, so
        // the recursion reproduces the kernel sum on any sample grid.
        while (next < events.size() && events[next].time <= t + 1e-12) {
            const SpikeEvent& e = events[next];
            if (e.neuron < 0 || e.neuron >= n_neurons)
                throw std::invalid_argument("exp_smooth: spike neuron index out of range");
            state(e.neuron) += std::exp(-(t - e.time) / tau_s);
            ++next;
        }
        y.col(k) = state;
    }
    return SampledSignal(t0, dt, std::move(y));
}

SampledSignal staircase_reconstruct(const UpDownSpikes& spikes, double threshold,
                                    const Eigen::VectorXd& initial,
                                    double t0, double dt, Eigen::Index n_samples) {
    if (threshold <= 0.0)
        throw std::invalid_argument("staircase_reconstruct: threshold must be positive");
    const auto n_channels = static_cast<int>(initial.size());
    Eigen::MatrixXd y(n_channels, n_samples);
    Eigen::VectorXd level = initial;
    const auto& ups = spikes.up.events();
    const auto& downs = spikes.down.events();
    std::size_t iu = 0, id = 0;
    for (Eigen::Index k = 0; k < n_samples; ++k) {
        const double t = t0 + dt * static_cast<double>(k);
        while (iu < ups.size() && ups[iu].time <= t + 1e-12) {
            if (ups[iu].neuron < 0 || ups[iu].neuron >= n_channels)
                throw std::invalid_argument("staircase_reconstruct: channel out of range");
            level(ups[iu].neuron) += threshold;
            ++iu;
        }
        while (id < downs.size() && downs[id].time <= t + 1e-12) {
            if (downs[id].neuron < 0 || downs[id].neuron >= n_channels)
                throw std::invalid_argument("staircase_reconstruct: channel out of range");
            level(downs[id].neuron) -= threshold;
            ++id;
        }
        y.col(k) = level;
    }
    return SampledSignal(t0, dt, std::move(y));
}

} // namespace slowres
