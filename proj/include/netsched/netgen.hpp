#pragma once

#include <cstdint>

#include "netsched/types.hpp"

namespace netsched {

enum class GraphFamily { Line, Ring, Star, ErdosRenyi, BarabasiAlbert, WattsStrogatz };
enum class WeightMode { Unit, UniformRandom };

GraphFamily family_from_string(const std::string& name);
std::string to_string(GraphFamily family);

struct GeneratorConfig {
    GraphFamily family = GraphFamily::ErdosRenyi;
    int n = 0;
    double edge_weight = 1.0;   ///< deterministic families (line/ring/star)
    double edge_prob = 0.0;     ///< ER edge probability p
    int attach_count = 1;       ///< BA links added per new node (m_a)
    int ring_neighbors = 2;     ///< WS lattice neighbors (even)
    double rewire_prob = 0.0;   ///< WS rewiring probability beta
    WeightMode weight_mode = WeightMode::Unit;
    bool directed = false;      ///< ER only; the other families are undirected
    std::uint64_t seed = 0;
};

/// Raw connectivity: relative interaction strengths before conversion to
/// dynamics. c(i, j) is the weight of the edge from node j to node i.
struct RawConnectivity {
    Matrix c;
    bool directed = false;
};

/// Deterministic or seeded random connectivity. Identical configs (seed
/// included) produce identical matrices. Throws ConfigError on invalid
/// parameters.
RawConnectivity generate(const GeneratorConfig& config);

/// Transmission conversion: each node's incoming weights are normalized to
/// sum to 1 (row-stochastic A). Rows with no incoming edges receive a unit
/// self-loop so that powers remain well defined.
NetworkMatrix transmission(const RawConnectivity& raw);

/// Induction conversion: A = expm(tau * (C/rho(C) - leak * I)), the sampled
/// continuous-time response. The exponential series creates long-distance
/// couplings absent from C. rho(C) = 0 leaves C unscaled.
NetworkMatrix induction(const RawConnectivity& raw, double tau = 1.0, double leak = 1.0);

/// A / rho(A). Throws ConfigError when rho(A) = 0 (nilpotent dynamics have
/// no spectral scale; rescale manually instead).
NetworkMatrix normalize_spectral(const NetworkMatrix& net);

}  // namespace netsched
