#include "slowres/lif.hpp"

#include "slowres/csv.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slowres {

void LifParams::validate() const {
    if (!(tau_v > 0.0) || !(tau_r > 0.0))
        throw std::invalid_argument("LifParams: time constants must be positive");
    if (!(theta > 0.0)) throw std::invalid_argument("LifParams: theta must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("LifParams: dt must be positive");
    if (dt > std::min(tau_v, tau_r) / 10.0 + 1e-15)
        throw std::invalid_argument("LifParams: dt must be at most min(tau_v, tau_r)/10");
    if (!std::isfinite(i_0)) throw std::invalid_argument("LifParams: i_0 must be finite");
}

void LifWeights::validate() const {
    if (w.rows() != w.cols()) throw std::invalid_argument("LifWeights: w must be square");
    if (w_in.rows() != w.rows())
        throw std::invalid_argument("LifWeights: w_in row count must match network size");
    if (!w.allFinite() || !w_in.allFinite())
        throw std::invalid_argument("LifWeights: non-finite weight");
}

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what, double t) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i)))
            throw std::runtime_error(std::string("lif: non-finite ") + what + " at neuron " +
                                     std::to_string(i) + ", t = " + std::to_string(t));
}

} // namespace

std::vector<int> lif_step(LifState& state, const LifParams& params, const LifWeights& weights,
                          const Eigen::VectorXd& u, const Eigen::VectorXd* inject) {
    params.validate();
    weights.validate();
    const Eigen::Index n = weights.size();
    if (state.v.size() != n || state.r.size() != n)
        throw std::invalid_argument("lif_step: state dimension mismatch");
    if (u.size() != weights.input_dim())
        throw std::invalid_argument("lif_step: input dimension mismatch");
    if (inject && inject->size() != n)
        throw std::invalid_argument("lif_step: inject dimension mismatch");

    Eigen::VectorXd current = weights.w_in * u;
    if (inject)
        current += *inject;
    else
        current.noalias() += weights.w * state.r;
    current.array() += params.i_0;

    state.v += (params.dt / params.tau_v) * (current - state.v);
    state.r *= 1.0 - params.dt / params.tau_r;

    std::vector<int> fired;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (state.v(i) > params.theta) {
            state.v(i) -= params.theta;
            state.r(i) += 1.0 / params.tau_r;
            fired.push_back(static_cast<int>(i));
        }
    }
    state.t += params.dt;
    check_finite(state.v, "membrane potential", state.t);
    check_finite(state.r, "synaptic current", state.t);
    return fired;
}

namespace {

// Shared clocked loop. `input_at` yields w_in * u(t) for the step starting
// at time t.
template <typename InputFn>
SimTrace run_loop(const LifWeights& weights, const LifParams& params, InputFn&& input_at,
                  const LifRunOptions& options) {
    params.validate();
    weights.validate();
    if (!(options.duration > 0.0)) throw std::invalid_argument("lif_run: duration must be positive");
    if (options.inject) {
        if (options.inject->channels() != weights.size())
            throw std::invalid_argument("lif_run: inject channel count must equal network size");
        if (!options.inject->covers(options.duration))
            throw std::invalid_argument("lif_run: inject signal shorter than duration");
    }

    const Eigen::Index n = weights.size();
    const double dt = params.dt;
    const auto n_steps = static_cast<long long>(std::ceil(options.duration / dt - 1e-9));
    const auto stride = std::max<long long>(1, std::llround(options.sample_every / dt));
    const auto n_samples = n_steps / stride;

    // Sparse recurrence pays off for the distance-dependent topologies, which
    // run a few percent dense.
    const bool use_sparse = [&] {
        const Eigen::Index nnz = (weights.w.array() != 0.0).count();
        return n >= 64 && nnz * 4 < n * n;
    }();
    Eigen::SparseMatrix<double> w_sparse;
    if (use_sparse) w_sparse = weights.w.sparseView();

    SimTrace trace;
    trace.r_samples.resize(n, n_samples);
    trace.sample_times.reserve(n_samples);
    if (options.record_v) trace.v_samples.emplace(n, n_samples);

    LifState state = LifState::zero(n);
    const double leak_v = dt / params.tau_v;
    const double keep_r = 1.0 - dt / params.tau_r;
    const double bump_r = 1.0 / params.tau_r;

    Eigen::VectorXd current(n);
    std::vector<SpikeEvent> events;
    Eigen::Index sample_idx = 0;
    for (long long k = 0; k < n_steps; ++k) {
        const double t = dt * static_cast<double>(k);
        current = input_at(t, k);
        if (options.inject)
            current += options.inject->at(t);
        else if (use_sparse)
            current.noalias() += w_sparse * state.r;
        else
            current.noalias() += weights.w * state.r;
        current.array() += params.i_0;

        state.v += leak_v * (current - state.v);
        state.r *= keep_r;
        const double t_next = dt * static_cast<double>(k + 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (state.v(i) > params.theta) {
                state.v(i) -= params.theta;
                state.r(i) += bump_r;
                events.push_back({static_cast<int>(i), t_next});
            }
        }
        state.t = t_next;

        if ((k + 1) % stride == 0 && sample_idx < n_samples) {
            check_finite(state.v, "membrane potential", state.t);
            trace.sample_times.push_back(t_next);
            trace.r_samples.col(sample_idx) = state.r;
            if (trace.v_samples) trace.v_samples->col(sample_idx) = state.v;
            ++sample_idx;
        }
    }
    check_finite(state.v, "membrane potential", state.t);
    check_finite(state.r, "synaptic current", state.t);
    trace.spikes = SpikeTrain::from_events(std::move(events));
    return trace;
}

} // namespace

SimTrace lif_run(const LifWeights& weights, const LifParams& params,
                 const SampledSignal& input, const LifRunOptions& options) {
    if (input.channels() != weights.input_dim())
        throw std::invalid_argument("lif_run: input channel count must match w_in");
    if (!input.covers(options.duration))
        throw std::invalid_argument("lif_run: input signal shorter than duration");

    // Fast path when the input grid matches the simulation grid.
    const bool aligned = std::abs(input.dt - params.dt) < 1e-12 && std::abs(input.t0) < 1e-12;
    return run_loop(
        weights, params,
        [&](double t, long long k) -> Eigen::VectorXd {
            if (aligned && k < input.samples()) return weights.w_in * input.values.col(k);
            return weights.w_in * input.at(t);
        },
        options);
}

SimTrace lif_run(const LifWeights& weights, const LifParams& params,
                 const SpikeTrain& input_spikes, int input_dim, const LifRunOptions& options) {
    if (input_dim != weights.input_dim())
        throw std::invalid_argument("lif_run: input dimension must match w_in");

    const auto& events = input_spikes.events();
    std::size_t next = 0;
    Eigen::VectorXd u(input_dim);
    const double height = 1.0 / params.dt;
    return run_loop(
        weights, params,
        [&](double t, long long) -> Eigen::VectorXd {
            u.setZero();
            // spikes landing in [t, t + dt)
            while (next < events.size() && events[next].time < t + params.dt - 1e-12) {
                const SpikeEvent& e = events[next];
                if (e.time >= t - 1e-12) {
                    if (e.neuron < 0 || e.neuron >= input_dim)
                        throw std::invalid_argument("lif_run: input spike channel out of range");
                    u(e.neuron) += height;
                }
                ++next;
            }
            return weights.w_in * u;
        },
        options);
}

Eigen::MatrixXd lif_current_response(const SpikeTrain& spikes, const LifParams& params,
                                     int n_neurons, double duration, double sample_every) {
    params.validate();
    const double dt = params.dt;
    const auto n_steps = static_cast<long long>(std::ceil(duration / dt - 1e-9));
    const auto stride = std::max<long long>(1, std::llround(sample_every / dt));
    const auto n_samples = n_steps / stride;

    Eigen::MatrixXd out(n_neurons, n_samples);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n_neurons);
    const double keep_r = 1.0 - dt / params.tau_r;
    const double bump_r = 1.0 / params.tau_r;
    const auto& events = spikes.events();
    std::size_t next = 0;
    Eigen::Index sample_idx = 0;
    for (long long k = 0; k < n_steps; ++k) {
        const double t_next = dt * static_cast<double>(k + 1);
        r *= keep_r;
        // A spike stamped t arrives with the step that ends at t, matching the
        // full simulation's bump-then-sample order.
        while (next < events.size() && events[next].time <= t_next + 1e-12) {
            const SpikeEvent& e = events[next];
            if (e.neuron < 0 || e.neuron >= n_neurons)
                throw std::invalid_argument("lif_current_response: neuron index out of range");
            r(e.neuron) += bump_r;
            ++next;
        }
        if ((k + 1) % stride == 0 && sample_idx < n_samples) {
            out.col(sample_idx) = r;
            ++sample_idx;
        }
    }
    return out;
}

void SimTrace::write_csv(std::ostream& os) const {
    os << "time";
    for (Eigen::Index i = 0; i < r_samples.rows(); ++i) os << ",n" << i;
    os << "\n";
    for (Eigen::Index k = 0; k < r_samples.cols(); ++k) {
        os << csv::format_double(sample_times[static_cast<std::size_t>(k)]);
        for (Eigen::Index i = 0; i < r_samples.rows(); ++i)
            os << ',' << csv::format_double(r_samples(i, k));
        os << "\n";
    }
}

} // namespace slowres
