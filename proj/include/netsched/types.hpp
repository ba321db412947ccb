#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "netsched/errors.hpp"

namespace netsched {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense weighted adjacency of the network dynamics x(k+1) = A x(k) + B(k) u(k).
/// Entry a(i, j) is the weight of the edge from node j to node i, so row i
/// collects the incoming weights of node i and column i its outgoing weights.
class NetworkMatrix {
public:
    /// Wraps a square nonnegative matrix. Throws DimensionError if not
    /// square, ConfigError if any entry is negative.
    explicit NetworkMatrix(Matrix a) : a_(std::move(a)) {
        require_square(a_);
        if ((a_.array() < 0.0).any())
            throw ConfigError("NetworkMatrix: negative entry in adjacency matrix");
    }

    /// Wraps arbitrary square dynamics. Manipulated matrices may carry
    /// negative couplings; callers should surface has_negative_entries().
    static NetworkMatrix from_dynamics(Matrix a) {
        require_square(a);
        return NetworkMatrix(std::move(a), unchecked_tag{});
    }

    int size() const { return static_cast<int>(a_.rows()); }
    const Matrix& adjacency() const { return a_; }
    bool has_negative_entries() const { return (a_.array() < 0.0).any(); }

private:
    struct unchecked_tag {};
    NetworkMatrix(Matrix a, unchecked_tag) : a_(std::move(a)) {}

    static void require_square(const Matrix& a) {
        if (a.rows() != a.cols() || a.rows() < 1)
            throw DimensionError("NetworkMatrix: adjacency must be square with n >= 1");
    }

    Matrix a_;
};

/// Which node(s) receive the control input at each time step. Node indices
/// are 0-based. Within one step the m indices are distinct.
class ControlSchedule {
public:
    ControlSchedule(int horizon, int inputs_per_step, std::vector<std::vector<int>> nodes)
        : horizon_(horizon), inputs_per_step_(inputs_per_step), nodes_(std::move(nodes)) {
        if (horizon_ < 1 || inputs_per_step_ < 1)
            throw ConfigError("ControlSchedule: horizon and inputs per step must be positive");
        if (static_cast<int>(nodes_.size()) != horizon_)
            throw DimensionError("ControlSchedule: node list length must equal horizon");
        for (auto& step : nodes_) {
            if (static_cast<int>(step.size()) != inputs_per_step_)
                throw DimensionError("ControlSchedule: each step must list exactly m nodes");
            for (std::size_t a = 0; a < step.size(); ++a) {
                if (step[a] < 0)
                    throw DimensionError("ControlSchedule: node index must be nonnegative");
                for (std::size_t b = a + 1; b < step.size(); ++b)
                    if (step[a] == step[b])
                        throw ConfigError("ControlSchedule: duplicate node within a time step");
            }
        }
    }

    /// Same node set at every step (the TICS shape).
    static ControlSchedule constant(int horizon, std::vector<int> nodes) {
        return ControlSchedule(horizon, static_cast<int>(nodes.size()),
                               std::vector<std::vector<int>>(horizon, nodes));
    }

    /// Single-input schedule from one node index per step.
    static ControlSchedule single(std::vector<int> node_per_step) {
        std::vector<std::vector<int>> steps;
        steps.reserve(node_per_step.size());
        for (int v : node_per_step) steps.push_back({v});
        return ControlSchedule(static_cast<int>(node_per_step.size()), 1, std::move(steps));
    }

    int horizon() const { return horizon_; }
    int inputs_per_step() const { return inputs_per_step_; }
    const std::vector<int>& nodes_at(int k) const { return nodes_.at(k); }
    const std::vector<std::vector<int>>& nodes() const { return nodes_; }

    /// Throws DimensionError if any scheduled node index is >= n.
    void validate_for(int n) const {
        for (const auto& step : nodes_)
            for (int v : step)
                if (v >= n)
                    throw DimensionError("ControlSchedule: node index " + std::to_string(v) +
                                         " out of range for network of size " + std::to_string(n));
    }

    bool operator==(const ControlSchedule& other) const {
        return horizon_ == other.horizon_ && inputs_per_step_ == other.inputs_per_step_ &&
               nodes_ == other.nodes_;
    }

private:
    int horizon_;
    int inputs_per_step_;
    std::vector<std::vector<int>> nodes_;
};

/// Finite-horizon controllability Gramian. Symmetric positive semidefinite
/// by construction; consumers re-check symmetry before eigen-analysis.
struct Gramian {
    Matrix w;
};

enum class MetricKind { Trace, TraceInverseInverse, Determinant, MinEigenvalue };

inline std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Trace: return "trace";
        case MetricKind::TraceInverseInverse: return "trinv";
        case MetricKind::Determinant: return "det";
        case MetricKind::MinEigenvalue: return "mineig";
    }
    return "unknown";
}

inline MetricKind metric_from_string(const std::string& name) {
    if (name == "trace") return MetricKind::Trace;
    if (name == "trinv") return MetricKind::TraceInverseInverse;
    if (name == "det") return MetricKind::Determinant;
    if (name == "mineig") return MetricKind::MinEigenvalue;
    throw ConfigError("unknown metric '" + name + "' (expected trace|trinv|det|mineig)");
}

}  // namespace netsched
