#include "netsched/netgen.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "netsched/rng.hpp"
#include "netsched/spectral.hpp"

namespace netsched {

namespace {

double edge_weight(Rng& rng, const GeneratorConfig& config) {
    return config.weight_mode == WeightMode::Unit ? 1.0 : rng.uniform();
}

void add_undirected(Matrix& c, int i, int j, double w) {
    c(i, j) += w;
    c(j, i) += w;
}

Matrix generate_deterministic(const GeneratorConfig& config) {
    const int n = config.n;
    Matrix c = Matrix::Zero(n, n);
    switch (config.family) {
        case GraphFamily::Line:
            for (int i = 0; i + 1 < n; ++i) add_undirected(c, i, i + 1, config.edge_weight);
            break;
        case GraphFamily::Ring:
            if (n == 1) break;
            if (n == 2) {
                add_undirected(c, 0, 1, config.edge_weight);
                break;
            }
            for (int i = 0; i < n; ++i) add_undirected(c, i, (i + 1) % n, config.edge_weight);
            break;
        case GraphFamily::Star:
            for (int leaf = 1; leaf < n; ++leaf) add_undirected(c, 0, leaf, config.edge_weight);
            break;
        default:
            break;
    }
    return c;
}

Matrix generate_erdos_renyi(const GeneratorConfig& config, Rng& rng) {
    const int n = config.n;
    Matrix c = Matrix::Zero(n, n);
    if (config.directed) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (rng.uniform() < config.edge_prob) c(j, i) = edge_weight(rng, config);
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform() < config.edge_prob)
                    add_undirected(c, i, j, edge_weight(rng, config));
    }
    return c;
}

Matrix generate_barabasi_albert(const GeneratorConfig& config, Rng& rng) {
    const int n = config.n;
    const int m_a = config.attach_count;
    Matrix c = Matrix::Zero(n, n);
    std::vector<int> degree(n, 0);
    // Seed core: complete graph on m_a + 1 nodes.
    const int core = std::min(m_a + 1, n);
    for (int i = 0; i < core; ++i)
        for (int j = i + 1; j < core; ++j) {
            add_undirected(c, i, j, edge_weight(rng, config));
            ++degree[i];
            ++degree[j];
        }
    for (int v = core; v < n; ++v) {
        std::vector<int> targets;
        long total = std::accumulate(degree.begin(), degree.begin() + v, 0L);
        while (static_cast<int>(targets.size()) < std::min(m_a, v)) {
            int chosen = -1;
            if (total > 0) {
                // Preferential attachment over nodes not yet linked to v.
                long pick = static_cast<long>(rng.below(static_cast<std::uint64_t>(total)));
                for (int u = 0; u < v; ++u) {
                    if (std::find(targets.begin(), targets.end(), u) != targets.end()) continue;
                    pick -= degree[u];
                    if (pick < 0) {
                        chosen = u;
                        break;
                    }
                }
            }
            if (chosen < 0) {
                for (int u = 0; u < v && chosen < 0; ++u)
                    if (std::find(targets.begin(), targets.end(), u) == targets.end()) chosen = u;
            }
            targets.push_back(chosen);
            total -= degree[chosen];
        }
        for (int u : targets) {
            add_undirected(c, v, u, edge_weight(rng, config));
            ++degree[v];
            ++degree[u];
        }
    }
    return c;
}

Matrix generate_watts_strogatz(const GeneratorConfig& config, Rng& rng) {
    const int n = config.n;
    const int half = config.ring_neighbors / 2;
    // Track adjacency as an unweighted set first, then weight the edges.
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    auto connect = [&](int a, int b) { adj[a][b] = adj[b][a] = true; };
    auto disconnect = [&](int a, int b) { adj[a][b] = adj[b][a] = false; };
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= half; ++d) connect(i, (i + d) % n);
    for (int i = 0; i < n; ++i) {
        for (int d = 1; d <= half; ++d) {
            const int far = (i + d) % n;
            if (!adj[i][far]) continue;  // already rewired away
            if (rng.uniform() >= config.rewire_prob) continue;
            // Rewire the far endpoint; resample on self-loops and duplicates.
            int candidate = -1;
            for (int attempt = 0; attempt < 16 * n; ++attempt) {
                const int pick = rng.index(n);
                if (pick != i && !adj[i][pick]) {
                    candidate = pick;
                    break;
                }
            }
            if (candidate < 0) continue;  // node saturated; keep the lattice edge
            disconnect(i, far);
            connect(i, candidate);
        }
    }
    Matrix c = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj[i][j]) add_undirected(c, i, j, edge_weight(rng, config));
    return c;
}

void validate(const GeneratorConfig& config) {
    if (config.n < 1) throw ConfigError("generate: node count must be positive");
    switch (config.family) {
        case GraphFamily::Line:
        case GraphFamily::Ring:
        case GraphFamily::Star:
            if (config.edge_weight <= 0.0)
                throw ConfigError("generate: edge weight must be positive");
            break;
        case GraphFamily::ErdosRenyi:
            if (config.edge_prob < 0.0 || config.edge_prob > 1.0)
                throw ConfigError("generate: edge probability must lie in [0, 1]");
            break;
        case GraphFamily::BarabasiAlbert:
            if (config.attach_count < 1)
                throw ConfigError("generate: attachment count must be at least 1");
            break;
        case GraphFamily::WattsStrogatz:
            if (config.ring_neighbors < 2 || config.ring_neighbors % 2 != 0)
                throw ConfigError("generate: ring neighbor count must be even and >= 2");
            if (config.ring_neighbors >= config.n)
                throw ConfigError("generate: ring neighbor count must be below n");
            if (config.rewire_prob < 0.0 || config.rewire_prob > 1.0)
                throw ConfigError("generate: rewiring probability must lie in [0, 1]");
            break;
    }
}

}  // namespace

GraphFamily family_from_string(const std::string& name) {
    if (name == "line") return GraphFamily::Line;
    if (name == "ring") return GraphFamily::Ring;
    if (name == "star") return GraphFamily::Star;
    if (name == "er") return GraphFamily::ErdosRenyi;
    if (name == "ba") return GraphFamily::BarabasiAlbert;
    if (name == "ws") return GraphFamily::WattsStrogatz;
    throw ConfigError("unknown graph family '" + name + "' (expected line|ring|star|er|ba|ws)");
}

std::string to_string(GraphFamily family) {
    switch (family) {
        case GraphFamily::Line: return "line";
        case GraphFamily::Ring: return "ring";
        case GraphFamily::Star: return "star";
        case GraphFamily::ErdosRenyi: return "er";
        case GraphFamily::BarabasiAlbert: return "ba";
        case GraphFamily::WattsStrogatz: return "ws";
    }
    return "unknown";
}

RawConnectivity generate(const GeneratorConfig& config) {
    validate(config);
    Rng rng(config.seed);
    Matrix c;
    bool directed = false;
    switch (config.family) {
        case GraphFamily::Line:
        case GraphFamily::Ring:
        case GraphFamily::Star:
            c = generate_deterministic(config);
            break;
        case GraphFamily::ErdosRenyi:
            c = generate_erdos_renyi(config, rng);
            directed = config.directed;
            break;
        case GraphFamily::BarabasiAlbert:
            c = generate_barabasi_albert(config, rng);
            break;
        case GraphFamily::WattsStrogatz:
            c = generate_watts_strogatz(config, rng);
            break;
    }
    return RawConnectivity{std::move(c), directed};
}

NetworkMatrix transmission(const RawConnectivity& raw) {
    const int n = static_cast<int>(raw.c.rows());
    if ((raw.c.array() < 0.0).any())
        throw ConfigError("transmission: connectivity must be nonnegative");
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double sum = raw.c.row(i).sum();
        if (sum > 0.0)
            a.row(i) = raw.c.row(i) / sum;
        else
            a(i, i) = 1.0;  // isolated inputs: hold the state
    }
    return NetworkMatrix(std::move(a));
}

NetworkMatrix induction(const RawConnectivity& raw, double tau, double leak) {
    if (tau <= 0.0) throw ConfigError("induction: sampling interval must be positive");
    if (leak < 0.0) throw ConfigError("induction: leak rate must be nonnegative");
    if ((raw.c.array() < 0.0).any())
        throw ConfigError("induction: connectivity must be nonnegative");
    const double rho = netsched::spectral_radius(raw.c);
    Matrix generator = rho > 0.0 ? Matrix(raw.c / rho) : raw.c;
    generator.diagonal().array() -= leak;
    const Matrix a = (tau * generator).exp();
    // The generator has nonnegative off-diagonal entries, so the sampled
    // response is entrywise nonnegative; clamp roundoff dust.
    return NetworkMatrix(a.cwiseMax(0.0));
}

NetworkMatrix normalize_spectral(const NetworkMatrix& net) {
    const double rho = spectral_radius(net.adjacency());
    if (rho <= 0.0)
        throw ConfigError(
            "normalize_spectral: spectral radius is zero (nilpotent dynamics); "
            "rescale by a norm instead");
    return NetworkMatrix::from_dynamics(net.adjacency() / rho);
}

}  // namespace netsched
