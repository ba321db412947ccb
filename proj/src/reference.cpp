#include "netsched/reference.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace netsched::ref {

namespace {

/// Local metric evaluation so the reference path shares no code with the
/// library's metric(): straight eigenvalue formulas, same singular rules.
double metric_of(const Matrix& w, MetricKind kind) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (w + w.transpose()),
                                                 Eigen::EigenvaluesOnly);
    const Vector ev = solver.eigenvalues();
    switch (kind) {
        case MetricKind::Trace:
            return ev.sum();
        case MetricKind::Determinant:
            return ev.prod();
        case MetricKind::MinEigenvalue:
            return ev.minCoeff() > 0.0 ? ev.minCoeff() : 0.0;
        case MetricKind::TraceInverseInverse: {
            const double singular = 1e-12 * std::max(ev.maxCoeff(), 0.0);
            double sum = 0.0;
            for (int i = 0; i < ev.size(); ++i) {
                if (ev[i] <= singular) return 0.0;
                sum += 1.0 / ev[i];
            }
            return 1.0 / sum;
        }
    }
    return ev.sum();
}

Matrix basis_columns(const std::vector<int>& nodes, int n) {
    Matrix b = Matrix::Zero(n, static_cast<int>(nodes.size()));
    for (std::size_t c = 0; c < nodes.size(); ++c) b(nodes[c], static_cast<int>(c)) = 1.0;
    return b;
}

}  // namespace

Matrix matrix_power(const Matrix& a, int k) {
    Matrix p = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) p = a * p;
    return p;
}

Gramian gramian(const NetworkMatrix& net, const ControlSchedule& schedule) {
    schedule.validate_for(net.size());
    const int n = net.size();
    const int horizon = schedule.horizon();
    Matrix w = Matrix::Zero(n, n);
    for (int k = 0; k < horizon; ++k) {
        const Matrix ak = matrix_power(net.adjacency(), k);
        const Matrix term = ak * basis_columns(schedule.nodes_at(horizon - 1 - k), n);
        w += term * term.transpose();
    }
    return Gramian{w};
}

Matrix profile(const NetworkMatrix& net, int horizon) {
    const int n = net.size();
    Matrix r(n, horizon);
    for (int k = 0; k < horizon; ++k) {
        const Matrix ak = matrix_power(net.adjacency(), k);
        const Matrix gram = ak.transpose() * ak;
        for (int i = 0; i < n; ++i) r(i, k) = gram(i, i);
    }
    return r;
}

SchedulePick exhaustive_schedule(const NetworkMatrix& net, int horizon, MetricKind kind,
                                 bool constant_only) {
    const int n = net.size();
    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<int> best(horizon, 0);

    auto evaluate = [&](const std::vector<int>& nodes) {
        const double value =
            metric_of(ref::gramian(net, ControlSchedule::single(nodes)).w, kind);
        if (value > best_value ||
            (value == best_value &&
             std::lexicographical_compare(nodes.begin(), nodes.end(), best.begin(), best.end()))) {
            best_value = value;
            best = nodes;
        }
    };

    if (constant_only) {
        for (int i = 0; i < n; ++i) evaluate(std::vector<int>(horizon, i));
    } else {
        std::vector<int> odometer(horizon, 0);
        while (true) {
            evaluate(odometer);
            int pos = horizon - 1;
            while (pos >= 0 && ++odometer[pos] == n) odometer[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return SchedulePick{ControlSchedule::single(best), best_value};
}

double spectral_radius(const Matrix& a) {
    Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
    double rho = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        rho = std::max(rho, std::abs(solver.eigenvalues()[i]));
    return rho;
}

}  // namespace netsched::ref
