#pragma once

#include "slowres/spikes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slowres::dynapse {

// ---------------------------------------------------------------------------
// Spike-event files
// ---------------------------------------------------------------------------

/// One stimulus event of the FPGA spike generator. The encoded integer packs
/// neuron(8 bits) | chip(2 bits) | core mask(4 bits); waits count microseconds
/// (one unit = 90 ISI bases, one ISI base = 1/90 MHz).
struct Event {
    int neuron_id = 0;      // 0..255
    int chip_id = 0;        // 0..3
    int core_mask = 0;      // 4-bit one-hot-or-more mask, nonzero
    std::uint64_t wait_units = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

std::uint32_t encode_event(const Event& e);
Event decode_event(std::uint32_t value, std::uint64_t wait_units = 0);

std::uint64_t seconds_to_units(double seconds);
double units_to_seconds(std::uint64_t units);

/// One "E,T" pair per line.
std::string write_spike_file(const std::vector<Event>& events);
std::vector<Event> parse_spike_file(const std::string& text);

// ---------------------------------------------------------------------------
// NetParser connectivity files
// ---------------------------------------------------------------------------

enum class SynapseType : int {
    SlowInhibitory = 0,
    FastInhibitory = 1,
    SlowExcitatory = 2,
    FastExcitatory = 3,
};

struct NeuronAddress {
    int chip = 0;   // 0..3
    int core = 0;   // 0..3
    int neuron = 0; // 0..255

    friend auto operator<=>(const NeuronAddress&, const NeuronAddress&) = default;
};

struct ConnectionLine {
    NeuronAddress pre;
    SynapseType type = SynapseType::SlowInhibitory;
    int cams = 1; // 1..64
    NeuronAddress post;

    friend bool operator==(const ConnectionLine&, const ConnectionLine&) = default;
};

/// Grammar: U{chip:2}-C{core:2}-N{neuron:3}->{type}-{cams}-U..-C..-N..
std::string write_netparser_line(const ConnectionLine& line);
std::string write_netparser(const std::vector<ConnectionLine>& lines);
ConnectionLine parse_netparser_line(const std::string& line);
std::vector<ConnectionLine> parse_netparser(const std::string& text);

enum class SynapseRole { Input, Recurrent };

/// Fast synapses carry inputs, slow synapses carry recurrent traffic.
SynapseType synapse_speed_assign(SynapseRole role, bool excitatory);

/// Per-neuron CAM usage; the budget covers fan-in plus fan-out.
struct CamUsage {
    NeuronAddress neuron;
    int fan_in = 0;
    int fan_out = 0;
    int total() const { return fan_in + fan_out; }
};

struct CamReport {
    std::vector<CamUsage> usage;       // every neuron that appears in any line
    std::vector<CamUsage> violations;  // entries with total() > budget
    int budget = 64;
};

CamReport check_cam_budget(const std::vector<ConnectionLine>& lines, int budget = 64);

// ---------------------------------------------------------------------------
// Bias tables
// ---------------------------------------------------------------------------

struct BiasValue {
    int coarse = 0; // 0..7
    int fine = 0;   // 0..255

    friend bool operator==(const BiasValue&, const BiasValue&) = default;
};

/// The 25-parameter bias namespace, kept in the canonical listing order so
/// serialization is stable.
class BiasTable {
public:
    static const std::vector<std::string>& parameter_names();

    BiasValue get(const std::string& name) const;
    void set(const std::string& name, BiasValue v);

    friend bool operator==(const BiasTable&, const BiasTable&) = default;

private:
    std::vector<BiasValue> values_{std::vector<BiasValue>(25)};
};

/// name is "default" or "tuned".
BiasTable bias_preset(const std::string& name);

/// Sets the four fast-synapse THR/TAU parameters to coarse 7, fine 0.
BiasTable apply_heuristic1(BiasTable table);

/// One "NAME,coarse,fine" line per parameter, canonical order.
std::string write_bias_table(const BiasTable& table);
BiasTable parse_bias_table(const std::string& text);

// ---------------------------------------------------------------------------
// DPI synapse model
// ---------------------------------------------------------------------------

struct DpiParams {
    double i_th = 0.0;
    double i_tau = 0.0;
    double i_in = 0.0;
    double i_out = 0.0;
    double c = 0.0;
    double u_t = 0.0;
    double kappa = 0.0;
};

/// dI_out/dt of the first-order DPI response with tau = C*U_T/(kappa*I_tau).
double dpi_rate(const DpiParams& p);

// ---------------------------------------------------------------------------
// Bridges to the simulator's spike trains
// ---------------------------------------------------------------------------

/// Spike train -> event list. Each spike's neuron index becomes the event
/// neuron id; waits are successive time differences rounded to microseconds
/// (first wait measured from t = 0).
std::vector<Event> events_from_spiketrain(const SpikeTrain& spikes, int chip_id, int core_mask);
SpikeTrain spiketrain_from_events(const std::vector<Event>& events);

} // namespace slowres::dynapse
