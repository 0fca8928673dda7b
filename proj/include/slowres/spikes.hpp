#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slowres {

struct SpikeEvent {
    int neuron = 0;
    double time = 0.0;

    friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Time-sorted spike events, ties broken by neuron index.
class SpikeTrain {
public:
    SpikeTrain() = default;

    /// Takes an arbitrary event list and sorts it into canonical order.
    static SpikeTrain from_events(std::vector<SpikeEvent> events) {
        SpikeTrain t;
        t.events_ = std::move(events);
        std::sort(t.events_.begin(), t.events_.end(), order);
        return t;
    }

    /// Appends an event that must not precede the current tail.
    void push(int neuron, double time) {
        if (!events_.empty() && order({neuron, time}, events_.back()))
            throw std::invalid_argument("SpikeTrain::push out of order");
        events_.push_back({neuron, time});
    }

    const std::vector<SpikeEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    /// Merge preserving canonical order.
    friend SpikeTrain merge(const SpikeTrain& a, const SpikeTrain& b) {
        SpikeTrain out;
        out.events_.resize(a.size() + b.size());
        std::merge(a.events_.begin(), a.events_.end(), b.events_.begin(), b.events_.end(),
                   out.events_.begin(), order);
        return out;
    }

    friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

private:
    static bool order(const SpikeEvent& x, const SpikeEvent& y) {
        if (x.time != y.time) return x.time < y.time;
        return x.neuron < y.neuron;
    }

    std::vector<SpikeEvent> events_;
};

/// Spikes from a two-channel delta encoder: `up` for increases, `down` for
/// decreases. Channel identity is carried by which train an event sits in;
/// the neuron index inside each train is the source channel of the signal.
struct UpDownSpikes {
    SpikeTrain up;
    SpikeTrain down;
};

} // namespace slowres
