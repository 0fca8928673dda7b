#include "slowres/dynapse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace slowres::dynapse {

namespace {

void check_event_fields(int neuron_id, int chip_id, int core_mask) {
    if (neuron_id < 0 || neuron_id > 255)
        throw std::invalid_argument("event neuron_id out of range 0..255");
    if (chip_id < 0 || chip_id > 3)
        throw std::invalid_argument("event chip_id out of range 0..3");
    if (core_mask < 1 || core_mask > 15)
        throw std::invalid_argument("event core_mask must be a nonzero 4-bit mask");
}

[[noreturn]] void line_error(std::size_t lineno, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + what);
}

} // namespace

std::uint32_t encode_event(const Event& e) {
    check_event_fields(e.neuron_id, e.chip_id, e.core_mask);
    return (static_cast<std::uint32_t>(e.neuron_id) << 6) |
           (static_cast<std::uint32_t>(e.chip_id) << 4) |
           static_cast<std::uint32_t>(e.core_mask);
}

Event decode_event(std::uint32_t value, std::uint64_t wait_units) {
    if (value >= (1u << 14))
        throw std::invalid_argument("encoded event value exceeds 14 bits");
    Event e;
    e.neuron_id = static_cast<int>(value >> 6);
    e.chip_id = static_cast<int>((value >> 4) & 0x3u);
    e.core_mask = static_cast<int>(value & 0xFu);
    e.wait_units = wait_units;
    if (e.core_mask == 0)
        throw std::invalid_argument("encoded event has empty core mask");
    return e;
}

std::uint64_t seconds_to_units(double seconds) {
    if (seconds < 0.0 || !std::isfinite(seconds))
        throw std::invalid_argument("wait time must be finite and nonnegative");
    return static_cast<std::uint64_t>(std::llround(seconds * 1e6));
}

double units_to_seconds(std::uint64_t units) {
    return static_cast<double>(units) * 1e-6;
}

std::string write_spike_file(const std::vector<Event>& events) {
    std::string out;
    for (const Event& e : events) {
        out += std::to_string(encode_event(e));
        out += ',';
        out += std::to_string(e.wait_units);
        out += '\n';
    }
    return out;
}

std::vector<Event> parse_spike_file(const std::string& text) {
    std::vector<Event> events;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) line_error(lineno, "empty line in spike file");
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            line_error(lineno, "expected 'E,T' pair");
        std::uint64_t value = 0, wait = 0;
        try {
            std::size_t used = 0;
            value = std::stoull(line.substr(0, comma), &used);
            if (used != comma) line_error(lineno, "trailing characters after event code");
            const std::string wait_str = line.substr(comma + 1);
            wait = std::stoull(wait_str, &used);
            if (used != wait_str.size()) line_error(lineno, "trailing characters after wait");
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            line_error(lineno, "malformed integer");
        }
        if (value >= (1u << 14)) line_error(lineno, "event code exceeds 14 bits");
        try {
            events.push_back(decode_event(static_cast<std::uint32_t>(value), wait));
        } catch (const std::exception& ex) {
            line_error(lineno, ex.what());
        }
    }
    return events;
}

// ---------------------------------------------------------------------------
// NetParser
// ---------------------------------------------------------------------------

namespace {

void check_address(const NeuronAddress& a) {
    if (a.chip < 0 || a.chip > 3) throw std::invalid_argument("chip id out of range 0..3");
    if (a.core < 0 || a.core > 3) throw std::invalid_argument("core id out of range 0..3");
    if (a.neuron < 0 || a.neuron > 255)
        throw std::invalid_argument("neuron id out of range 0..255");
}

void check_line(const ConnectionLine& line) {
    check_address(line.pre);
    check_address(line.post);
    const int t = static_cast<int>(line.type);
    if (t < 0 || t > 3) throw std::invalid_argument("synapse type out of range 0..3");
    if (line.cams < 1 || line.cams > 64)
        throw std::invalid_argument("cams out of range 1..64");
}

// Parses a fixed-width decimal field; returns -1 on malformed input.
int fixed_int(const std::string& s, std::size_t pos, std::size_t width) {
    if (pos + width > s.size()) return -1;
    int v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return -1;
        v = v * 10 + (c - '0');
    }
    return v;
}

// Parses "U##-C##-N###" at pos; advances pos past it.
NeuronAddress parse_address(const std::string& s, std::size_t& pos, std::size_t lineno) {
    if (pos >= s.size() || s[pos] != 'U') line_error(lineno, "expected 'U' in neuron address");
    const int chip = fixed_int(s, pos + 1, 2);
    if (chip < 0) line_error(lineno, "bad chip field");
    pos += 3;
    if (pos + 1 >= s.size() || s[pos] != '-' || s[pos + 1] != 'C')
        line_error(lineno, "expected '-C' in neuron address");
    const int core = fixed_int(s, pos + 2, 2);
    if (core < 0) line_error(lineno, "bad core field");
    pos += 4;
    if (pos + 1 >= s.size() || s[pos] != '-' || s[pos + 1] != 'N')
        line_error(lineno, "expected '-N' in neuron address");
    const int neuron = fixed_int(s, pos + 2, 3);
    if (neuron < 0) line_error(lineno, "bad neuron field");
    pos += 5;
    return {chip, core, neuron};
}

ConnectionLine parse_line_at(const std::string& line, std::size_t lineno) {
    std::size_t pos = 0;
    ConnectionLine out;
    out.pre = parse_address(line, pos, lineno);
    if (pos + 1 >= line.size() || line[pos] != '-' || line[pos + 1] != '>')
        line_error(lineno, "expected '->' after pre-synaptic address");
    pos += 2;
    if (pos >= line.size() || line[pos] < '0' || line[pos] > '3')
        line_error(lineno, "synapse type must be 0, 1, 2, or 3");
    out.type = static_cast<SynapseType>(line[pos] - '0');
    ++pos;
    if (pos >= line.size() || line[pos] != '-') line_error(lineno, "expected '-' after type");
    ++pos;
    std::size_t cams_end = pos;
    while (cams_end < line.size() && line[cams_end] >= '0' && line[cams_end] <= '9') ++cams_end;
    if (cams_end == pos) line_error(lineno, "bad cams field");
    out.cams = std::stoi(line.substr(pos, cams_end - pos));
    if (out.cams < 1 || out.cams > 64) line_error(lineno, "cams out of range 1..64");
    pos = cams_end;
    if (pos >= line.size() || line[pos] != '-') line_error(lineno, "expected '-' after cams");
    ++pos;
    out.post = parse_address(line, pos, lineno);
    if (pos != line.size()) line_error(lineno, "trailing characters");
    try {
        check_line(out);
    } catch (const std::exception& ex) {
        line_error(lineno, ex.what());
    }
    return out;
}

} // namespace

std::string write_netparser_line(const ConnectionLine& line) {
    check_line(line);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "U%02d-C%02d-N%03d->%d-%d-U%02d-C%02d-N%03d",
                  line.pre.chip, line.pre.core, line.pre.neuron, static_cast<int>(line.type),
                  line.cams, line.post.chip, line.post.core, line.post.neuron);
    return buf;
}

std::string write_netparser(const std::vector<ConnectionLine>& lines) {
    std::string out;
    for (const ConnectionLine& line : lines) {
        out += write_netparser_line(line);
        out += '\n';
    }
    return out;
}

ConnectionLine parse_netparser_line(const std::string& line) {
    return parse_line_at(line, 1);
}

std::vector<ConnectionLine> parse_netparser(const std::string& text) {
    std::vector<ConnectionLine> lines;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(parse_line_at(line, lineno));
    }
    return lines;
}

SynapseType synapse_speed_assign(SynapseRole role, bool excitatory) {
    if (role == SynapseRole::Input)
        return excitatory ? SynapseType::FastExcitatory : SynapseType::FastInhibitory;
    return excitatory ? SynapseType::SlowExcitatory : SynapseType::SlowInhibitory;
}

CamReport check_cam_budget(const std::vector<ConnectionLine>& lines, int budget) {
    std::map<NeuronAddress, CamUsage> usage;
    for (const ConnectionLine& line : lines) {
        auto& pre = usage.try_emplace(line.pre, CamUsage{line.pre, 0, 0}).first->second;
        pre.fan_out += line.cams;
        auto& post = usage.try_emplace(line.post, CamUsage{line.post, 0, 0}).first->second;
        post.fan_in += line.cams;
    }
    CamReport report;
    report.budget = budget;
    for (const auto& [addr, u] : usage) {
        report.usage.push_back(u);
        if (u.total() > budget) report.violations.push_back(u);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Bias tables
// ---------------------------------------------------------------------------

namespace {

struct PresetRow {
    const char* name;
    BiasValue def;
    BiasValue tuned;
};

// Appendix-order default/tuned values; the tuned table differs from the
// default only on the four fast-synapse THR/TAU rows.
constexpr PresetRow kPresetRows[25] = {
    {"IF_AHTAU_N", {7, 35}, {7, 35}},
    {"IF_AHTHR_N", {7, 1}, {7, 1}},
    {"IF_AHW_P", {7, 1}, {7, 1}},
    {"IF_BUF_P", {3, 80}, {3, 80}},
    {"IF_CASC_N", {7, 1}, {7, 1}},
    {"IF_DC_P", {7, 0}, {7, 0}},
    {"IF_NMDA_N", {7, 0}, {7, 0}},
    {"IF_RFR_N", {4, 60}, {4, 60}},
    {"IF_TAU1_N", {7, 130}, {7, 130}},
    {"IF_TAU2_N", {0, 100}, {0, 100}},
    {"IF_THR_N", {7, 130}, {7, 130}},
    {"NPDPIE_TAU_F_P", {4, 36}, {7, 0}},
    {"NPDPIE_TAU_S_P", {5, 38}, {5, 38}},
    {"NPDPIE_THR_F_P", {2, 200}, {7, 0}},
    {"NPDPIE_THR_S_P", {2, 200}, {2, 200}},
    {"NPDPII_TAU_F_P", {5, 41}, {7, 0}},
    {"NPDPII_TAU_S_P", {5, 41}, {5, 41}},
    {"NPDPII_THR_F_P", {0, 150}, {7, 0}},
    {"NPDPII_THR_S_P", {7, 150}, {7, 150}},
    {"PS_WEIGHT_EXC_F_N", {0, 30}, {0, 30}},
    {"PS_WEIGHT_EXC_S_N", {0, 100}, {0, 100}},
    {"PS_WEIGHT_INH_F_N", {0, 100}, {0, 100}},
    {"PS_WEIGHT_INH_S_N", {0, 114}, {0, 114}},
    {"PULSE_PWLK_P", {2, 112}, {2, 112}},
    {"R2R_P", {4, 85}, {4, 85}},
};

std::size_t name_index(const std::string& name) {
    for (std::size_t i = 0; i < 25; ++i)
        if (name == kPresetRows[i].name) return i;
    throw std::invalid_argument("unknown bias parameter: " + name);
}

void check_bias(BiasValue v) {
    if (v.coarse < 0 || v.coarse > 7)
        throw std::invalid_argument("bias coarse value out of range 0..7");
    if (v.fine < 0 || v.fine > 255)
        throw std::invalid_argument("bias fine value out of range 0..255");
}

} // namespace

const std::vector<std::string>& BiasTable::parameter_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const PresetRow& row : kPresetRows) v.emplace_back(row.name);
        return v;
    }();
    return names;
}

BiasValue BiasTable::get(const std::string& name) const {
    return values_[name_index(name)];
}

void BiasTable::set(const std::string& name, BiasValue v) {
    check_bias(v);
    values_[name_index(name)] = v;
}

BiasTable bias_preset(const std::string& name) {
    BiasTable t;
    if (name == "default") {
        for (const PresetRow& row : kPresetRows) t.set(row.name, row.def);
    } else if (name == "tuned") {
        for (const PresetRow& row : kPresetRows) t.set(row.name, row.tuned);
    } else {
        throw std::invalid_argument("unknown bias preset: " + name);
    }
    return t;
}

BiasTable apply_heuristic1(BiasTable table) {
    for (const char* name :
         {"NPDPIE_THR_F_P", "NPDPIE_TAU_F_P", "NPDPII_THR_F_P", "NPDPII_TAU_F_P"})
        table.set(name, {7, 0});
    return table;
}

std::string write_bias_table(const BiasTable& table) {
    std::string out;
    for (const std::string& name : BiasTable::parameter_names()) {
        const BiasValue v = table.get(name);
        out += name;
        out += ',';
        out += std::to_string(v.coarse);
        out += ',';
        out += std::to_string(v.fine);
        out += '\n';
    }
    return out;
}

BiasTable parse_bias_table(const std::string& text) {
    BiasTable table;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    std::size_t seen = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = [&] {
            std::vector<std::string> f;
            std::string cur;
            for (char c : line) {
                if (c == ',') {
                    f.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            f.push_back(cur);
            return f;
        }();
        if (fields.size() != 3) line_error(lineno, "expected 'NAME,coarse,fine'");
        try {
            table.set(fields[0], {std::stoi(fields[1]), std::stoi(fields[2])});
        } catch (const std::exception& ex) {
            line_error(lineno, ex.what());
        }
        ++seen;
    }
    if (seen != BiasTable::parameter_names().size())
        throw std::runtime_error("bias table must list all 25 parameters");
    return table;
}

double dpi_rate(const DpiParams& p) {
    for (double v : {p.i_th, p.i_tau, p.i_in, p.c, p.u_t, p.kappa})
        if (!(v > 0.0)) throw std::invalid_argument("DPI parameters must be positive");
    const double tau = p.c * p.u_t / (p.kappa * p.i_tau);
    return (1.0 / tau) * ((p.i_th / p.i_tau) * p.i_in - p.i_out);
}

// ---------------------------------------------------------------------------
// Spike-train bridge
// ---------------------------------------------------------------------------

std::vector<Event> events_from_spiketrain(const SpikeTrain& spikes, int chip_id, int core_mask) {
    std::vector<Event> out;
    out.reserve(spikes.size());
    std::uint64_t prev_units = 0;
    for (const SpikeEvent& s : spikes.events()) {
        if (s.time < 0.0)
            throw std::invalid_argument("spike times must be nonnegative for export");
        const std::uint64_t t_units = seconds_to_units(s.time);
        Event e;
        e.neuron_id = s.neuron;
        e.chip_id = chip_id;
        e.core_mask = core_mask;
        e.wait_units = t_units - std::min(prev_units, t_units);
        prev_units = t_units;
        check_event_fields(e.neuron_id, e.chip_id, e.core_mask);
        out.push_back(e);
    }
    return out;
}

SpikeTrain spiketrain_from_events(const std::vector<Event>& events) {
    std::vector<SpikeEvent> out;
    out.reserve(events.size());
    std::uint64_t t_units = 0;
    for (const Event& e : events) {
        t_units += e.wait_units;
        out.push_back({e.neuron_id, units_to_seconds(t_units)});
    }
    return SpikeTrain::from_events(std::move(out));
}

} // namespace slowres::dynapse
