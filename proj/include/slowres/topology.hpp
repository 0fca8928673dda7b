#pragma once

#include "slowres/dynapse.hpp"
#include "slowres/lif.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace slowres {

enum class NeuronKind { Excitatory, Inhibitory };

struct GridCoord {
    int x = 0;
    int y = 0;

    friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

/// Distance-dependent connectivity over a 16x16 grid. A pre neuron of class c
/// connects to any other neuron with probability
/// min(C_c * exp(-d^2 / (2 lambda_c^2)), 1), where d^2 is the squared grid
/// distance; the post neuron's class never enters the decision.
struct TopologyParams {
    int grid = 16;
    double frac_exc = 0.8;
    double c_exc = 0.3;
    double lambda_exc = 2.0;
    double c_inh = 2.0;
    double lambda_inh = 2.0;
    std::uint64_t seed = 0;

    void validate() const;
    int neuron_count() const { return grid * grid; }
};

struct Synapse {
    GridCoord pre;
    GridCoord post;
    int sign = 0; // +1 excitatory, -1 inhibitory

    friend bool operator==(const Synapse&, const Synapse&) = default;
};

struct SpatialTopology {
    int grid = 16;
    std::vector<NeuronKind> kinds;  // index = y * grid + x
    std::vector<Synapse> synapses;  // ordered pairs, pre != post

    int index(GridCoord c) const { return c.y * grid + c.x; }
    GridCoord coord(int index) const { return {index % grid, index / grid}; }
    int neuron_count() const { return grid * grid; }

    friend bool operator==(const SpatialTopology&, const SpatialTopology&) = default;
};

double connection_probability(const TopologyParams& params, NeuronKind pre_kind, int d2);

SpatialTopology topo_generate(const TopologyParams& params);

/// Recurrent weight matrix with w(post, pre) = sign * magnitude per synapse.
Eigen::MatrixXd topo_to_weights(const SpatialTopology& topology, double magnitude);

struct TopologyStats {
    int excitatory_count = 0;
    double excitatory_fraction = 0.0;
    /// d^2 -> (connected ordered pairs, total ordered pairs), split by pre kind.
    std::map<int, std::pair<long, long>> exc_by_d2;
    std::map<int, std::pair<long, long>> inh_by_d2;
};

TopologyStats topo_stats(const SpatialTopology& topology);

/// NetParser export. Grid indices map onto chip 0 core-major: neuron k lives
/// at core k/256, neuron-id k%256. Recurrent synapses take slow types, sign
/// selects excitatory vs inhibitory; every connection uses one CAM.
std::vector<dynapse::ConnectionLine> topo_to_netparser(const SpatialTopology& topology);

} // namespace slowres
