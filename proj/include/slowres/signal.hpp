#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slowres {

/// Regularly sampled multi-channel signal. Row c of `values` holds channel c,
/// column k holds the sample at time t0 + k*dt.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 0.0;
    Eigen::MatrixXd values; // channels x samples

    SampledSignal() = default;
    SampledSignal(double t0_, double dt_, Eigen::MatrixXd values_)
        : t0(t0_), dt(dt_), values(std::move(values_)) {
        if (dt <= 0.0)
            throw std::invalid_argument("SampledSignal: dt must be positive");
        if (!values.allFinite())
            throw std::invalid_argument("SampledSignal: non-finite sample");
    }

    Eigen::Index channels() const { return values.rows(); }
    Eigen::Index samples() const { return values.cols(); }
    double end_time() const {
        return samples() == 0 ? t0 : t0 + dt * static_cast<double>(samples() - 1);
    }

    /// True when the sampled grid spans [0, duration].
    bool covers(double duration) const {
        return samples() > 0 && t0 <= 1e-12 && end_time() >= duration - 1e-9;
    }

    /// Zero-order-hold sample at time t, clamped to the signal's extent.
    Eigen::VectorXd at(double t) const {
        if (samples() == 0)
            throw std::runtime_error("SampledSignal::at on empty signal");
        auto idx = static_cast<Eigen::Index>(std::floor((t - t0) / dt + 1e-9));
        if (idx < 0) idx = 0;
        if (idx >= samples()) idx = samples() - 1;
        return values.col(idx);
    }
};

} // namespace slowres
