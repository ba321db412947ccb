#include "netsched/gramian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netsched {

namespace {

void require_schedule_matches(const NetworkMatrix& net, const ControlSchedule& schedule) {
    schedule.validate_for(net.size());
}

Matrix symmetrized(const Matrix& w) { return 0.5 * (w + w.transpose()); }

void require_symmetric(const Matrix& w) {
    const double scale = w.norm();
    const double asym = (w - w.transpose()).norm();
    if (asym > kSymmetryTolerance * std::max(scale, 1e-300))
        throw DimensionError("Gramian: matrix is asymmetric beyond tolerance");
}

}  // namespace

Matrix input_matrix(const ControlSchedule& schedule, int k, int n) {
    if (k < 0 || k >= schedule.horizon())
        throw DimensionError("input_matrix: time index out of range");
    const auto& nodes = schedule.nodes_at(k);
    Matrix b = Matrix::Zero(n, static_cast<int>(nodes.size()));
    for (std::size_t c = 0; c < nodes.size(); ++c) {
        if (nodes[c] >= n)
            throw DimensionError("input_matrix: scheduled node " + std::to_string(nodes[c]) +
                                 " out of range for network of size " + std::to_string(n));
        b(nodes[c], static_cast<int>(c)) = 1.0;
    }
    return b;
}

Gramian gramian(const NetworkMatrix& net, const ControlSchedule& schedule) {
    require_schedule_matches(net, schedule);
    const int n = net.size();
    const Matrix& a = net.adjacency();
    // W <- A W A^T + B(j) B(j)^T over j = 0..K-1 accumulates exactly
    // sum_k A^k B(K-1-k) B(K-1-k)^T (A^T)^k.
    Matrix w = Matrix::Zero(n, n);
    for (int j = 0; j < schedule.horizon(); ++j) {
        w = a * w * a.transpose();
        for (int node : schedule.nodes_at(j)) w(node, node) += 1.0;
    }
    return Gramian{symmetrized(w)};
}

Vector gramian_eigenvalues(const Gramian& w) {
    require_symmetric(w.w);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(w.w), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double metric(const Gramian& w, MetricKind kind) {
    if (kind == MetricKind::Trace) {
        require_symmetric(w.w);
        return w.w.trace();
    }
    const Vector ev = gramian_eigenvalues(w);
    const double lambda_max = std::max(ev.maxCoeff(), 0.0);
    const double singular = kSingularThresholdFactor * lambda_max;
    switch (kind) {
        case MetricKind::Determinant:
            return ev.prod();
        case MetricKind::MinEigenvalue:
            return ev.minCoeff() > 0.0 ? ev.minCoeff() : 0.0;
        case MetricKind::TraceInverseInverse: {
            double sum = 0.0;
            for (int i = 0; i < ev.size(); ++i) {
                if (ev[i] <= singular) return 0.0;  // limit value for singular Gramians
                sum += 1.0 / ev[i];
            }
            return 1.0 / sum;
        }
        case MetricKind::Trace:
            break;
    }
    return w.w.trace();
}

MinEnergyControl min_energy_control(const NetworkMatrix& net, const ControlSchedule& schedule,
                                    const Vector& x_f) {
    const int n = net.size();
    if (x_f.size() != n)
        throw DimensionError("min_energy_control: target state has wrong dimension");
    schedule.validate_for(n);
    const int horizon = schedule.horizon();

    // Assemble and solve the Gramian in extended precision, from the same
    // propagated basis columns that form the inputs. A double-precision
    // quadratic form only determines the energy to eps * cond, which would
    // break the identity sum u*^2 = x_f^T W^-1 x_f near the condition cap.
    using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    PowerCache cache(net.adjacency());
    LongMatrix w_long = LongMatrix::Zero(n, n);
    for (int k = 0; k < horizon; ++k) {
        const Matrix& propagated = cache.power(horizon - 1 - k);  // A^{K-1-k}
        for (int node : schedule.nodes_at(k)) {
            const LongVector column = propagated.col(node).cast<long double>();
            w_long.noalias() += column * column.transpose();
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(w_long.cast<double>());
    const Vector ev = solver.eigenvalues();
    const double lambda_max = std::max(ev.maxCoeff(), 0.0);
    const double lambda_min = ev.minCoeff();
    if (lambda_max <= 0.0 || lambda_min <= lambda_max / kConditionCap)
        throw ControllabilityError(
            "min_energy_control: Gramian not invertible at horizon " +
                std::to_string(schedule.horizon()) + " (lambda_min = " +
                std::to_string(lambda_min) + ")",
            lambda_min);

    const LongVector rhs_long = x_f.cast<long double>();
    const LongVector y = Eigen::LDLT<LongMatrix>(w_long).solve(rhs_long);

    MinEnergyControl result;
    result.inputs.reserve(horizon);
    for (int k = 0; k < horizon; ++k) {
        const Matrix& propagated = cache.power(horizon - 1 - k);  // A^{K-1-k}
        const auto& nodes = schedule.nodes_at(k);
        Vector u(static_cast<Eigen::Index>(nodes.size()));
        for (std::size_t c = 0; c < nodes.size(); ++c)
            u[static_cast<Eigen::Index>(c)] = static_cast<double>(
                propagated.col(nodes[c]).cast<long double>().dot(y));
        result.inputs.push_back(std::move(u));
    }
    result.energy = static_cast<double>(rhs_long.dot(y));  // x_f^T W^-1 x_f = sum u*(k)^2
    return result;
}

std::vector<Vector> simulate(const NetworkMatrix& net, const ControlSchedule& schedule,
                             const Vector& x0, const std::vector<Vector>& inputs) {
    const int n = net.size();
    if (x0.size() != n) throw DimensionError("simulate: initial state has wrong dimension");
    if (static_cast<int>(inputs.size()) != schedule.horizon())
        throw DimensionError("simulate: input sequence length must equal the horizon");
    require_schedule_matches(net, schedule);

    std::vector<Vector> trajectory;
    trajectory.reserve(schedule.horizon() + 1);
    trajectory.push_back(x0);
    Vector x = x0;
    for (int k = 0; k < schedule.horizon(); ++k) {
        const auto& nodes = schedule.nodes_at(k);
        if (inputs[k].size() != static_cast<Eigen::Index>(nodes.size()))
            throw DimensionError("simulate: input at step " + std::to_string(k) +
                                 " has wrong dimension");
        Vector next = net.adjacency() * x;
        for (std::size_t c = 0; c < nodes.size(); ++c)
            next[nodes[c]] += inputs[k][static_cast<Eigen::Index>(c)];
        x = std::move(next);
        trajectory.push_back(x);
    }
    return trajectory;
}

ReachabilityEllipsoid reachability_ellipsoid(const Gramian& w) {
    require_symmetric(w.w);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(w.w));
    const int n = static_cast<int>(w.w.rows());

    // SelfAdjointEigenSolver sorts ascending; the ellipsoid reports the
    // longest axis first.
    ReachabilityEllipsoid out;
    out.axes = Matrix(n, n);
    out.lengths = Vector(n);
    for (int i = 0; i < n; ++i) {
        const int src = n - 1 - i;
        out.axes.col(i) = solver.eigenvectors().col(src);
        out.lengths[i] = std::sqrt(std::max(solver.eigenvalues()[src], 0.0));
    }
    return out;
}

}  // namespace netsched
