#include "slowres/topology.hpp"

#include "slowres/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace slowres {

void TopologyParams::validate() const {
    if (grid < 1) throw std::invalid_argument("TopologyParams: grid must be positive");
    if (!(frac_exc > 0.0) || !(frac_exc < 1.0))
        throw std::invalid_argument("TopologyParams: frac_exc must be in (0, 1)");
    if (!(c_exc > 0.0) || !(c_inh > 0.0) || !(lambda_exc > 0.0) || !(lambda_inh > 0.0))
        throw std::invalid_argument("TopologyParams: C and lambda constants must be positive");
}

double connection_probability(const TopologyParams& params, NeuronKind pre_kind, int d2) {
    const double c = pre_kind == NeuronKind::Excitatory ? params.c_exc : params.c_inh;
    const double lambda = pre_kind == NeuronKind::Excitatory ? params.lambda_exc : params.lambda_inh;
    return std::min(c * std::exp(-static_cast<double>(d2) / (2.0 * lambda * lambda)), 1.0);
}

SpatialTopology topo_generate(const TopologyParams& params) {
    params.validate();
    const int n = params.neuron_count();
    const int n_exc = static_cast<int>(std::lround(params.frac_exc * n));

    SpatialTopology topo;
    topo.grid = params.grid;
    topo.kinds.assign(n, NeuronKind::Inhibitory);
    for (int i = 0; i < n_exc; ++i) topo.kinds[i] = NeuronKind::Excitatory;

    Rng rng(params.seed);
    shuffle(topo.kinds, rng);

    // Ordered pairs; self-pairs excluded (an inhibitory self-loop would fire
    // with probability 1 at distance 0).
    for (int pre = 0; pre < n; ++pre) {
        const GridCoord pc = topo.coord(pre);
        const NeuronKind kind = topo.kinds[pre];
        const int sign = kind == NeuronKind::Excitatory ? 1 : -1;
        for (int post = 0; post < n; ++post) {
            if (post == pre) continue;
            const GridCoord qc = topo.coord(post);
            const int dx = pc.x - qc.x;
            const int dy = pc.y - qc.y;
            const double p = connection_probability(params, kind, dx * dx + dy * dy);
            if (rng.uniform01() < p) topo.synapses.push_back({pc, qc, sign});
        }
    }
    return topo;
}

Eigen::MatrixXd topo_to_weights(const SpatialTopology& topology, double magnitude) {
    if (!(magnitude > 0.0))
        throw std::invalid_argument("topo_to_weights: magnitude must be positive");
    const int n = topology.neuron_count();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (const Synapse& s : topology.synapses)
        w(topology.index(s.post), topology.index(s.pre)) = s.sign * magnitude;
    return w;
}

TopologyStats topo_stats(const SpatialTopology& topology) {
    TopologyStats stats;
    const int n = topology.neuron_count();
    for (NeuronKind k : topology.kinds)
        if (k == NeuronKind::Excitatory) ++stats.excitatory_count;
    stats.excitatory_fraction = static_cast<double>(stats.excitatory_count) / n;

    // Count the universe of ordered pairs per squared distance and pre kind.
    for (int pre = 0; pre < n; ++pre) {
        const GridCoord pc = topology.coord(pre);
        auto& by_d2 = topology.kinds[pre] == NeuronKind::Excitatory ? stats.exc_by_d2
                                                                    : stats.inh_by_d2;
        for (int post = 0; post < n; ++post) {
            if (post == pre) continue;
            const GridCoord qc = topology.coord(post);
            const int dx = pc.x - qc.x;
            const int dy = pc.y - qc.y;
            ++by_d2[dx * dx + dy * dy].second;
        }
    }
    for (const Synapse& s : topology.synapses) {
        const int pre = topology.index(s.pre);
        auto& by_d2 = topology.kinds[pre] == NeuronKind::Excitatory ? stats.exc_by_d2
                                                                    : stats.inh_by_d2;
        const int dx = s.pre.x - s.post.x;
        const int dy = s.pre.y - s.post.y;
        ++by_d2[dx * dx + dy * dy].first;
    }
    return stats;
}

std::vector<dynapse::ConnectionLine> topo_to_netparser(const SpatialTopology& topology) {
    std::vector<dynapse::ConnectionLine> lines;
    lines.reserve(topology.synapses.size());
    auto address = [&](GridCoord c) {
        const int idx = topology.index(c);
        return dynapse::NeuronAddress{0, idx / 256, idx % 256};
    };
    for (const Synapse& s : topology.synapses) {
        dynapse::ConnectionLine line;
        line.pre = address(s.pre);
        line.post = address(s.post);
        line.type = dynapse::synapse_speed_assign(dynapse::SynapseRole::Recurrent, s.sign > 0);
        line.cams = 1;
        lines.push_back(line);
    }
    return lines;
}

} // namespace slowres
