#include "netsched/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace netsched {

namespace {

constexpr int kDenseSizeLimit = 600;
constexpr double kPowerIterTol = 1e-13;
constexpr int kPowerIterMax = 20000;
constexpr double kDominanceGap = 1e-9;  // relative modulus gap for "strictly dominant"

struct DenseResult {
    double rho;
    bool dominant_simple_real_positive;
    Eigen::VectorXcd dominant_right;
};

DenseResult dense_dominant(const Matrix& a) {
    Eigen::EigenSolver<Matrix> solver(a);
    const auto& vals = solver.eigenvalues();
    int top = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (std::abs(vals[i]) > std::abs(vals[top])) top = i;
    const double rho = std::abs(vals[top]);
    bool ok = rho > 0.0 && std::abs(vals[top].imag()) <= 1e-12 * rho && vals[top].real() > 0.0;
    if (ok) {
        for (int i = 0; i < vals.size(); ++i) {
            if (i == top) continue;
            if (std::abs(vals[i]) >= rho * (1.0 - kDominanceGap)) {
                ok = false;
                break;
            }
        }
    }
    return {rho, ok, solver.eigenvectors().col(top)};
}

/// Direction-converging power iteration. Returns true when successive
/// normalized iterates stabilize, which for a nonnegative matrix certifies
/// a real, positive, strictly dominant eigenvalue.
bool power_iterate(const Matrix& a, Vector& x, double& rayleigh) {
    const int n = static_cast<int>(a.rows());
    x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Vector y(n);
    for (int it = 0; it < kPowerIterMax; ++it) {
        y.noalias() = a * x;
        const double norm = y.norm();
        if (norm == 0.0) {
            rayleigh = 0.0;
            return false;
        }
        y /= norm;
        const double delta = (y - x).norm();
        x = y;
        if (delta < kPowerIterTol) {
            rayleigh = x.dot(a * x);
            return true;
        }
    }
    rayleigh = x.dot(a * x);
    return false;
}

/// rho(A) for nonnegative A via the shift trick: A + I is aperiodic whenever
/// A is irreducible, and rho(A + I) = rho(A) + 1.
bool shifted_rho(const Matrix& a, double& rho) {
    Matrix shifted = a;
    shifted.diagonal().array() += 1.0;
    Vector x;
    double r = 0.0;
    if (!power_iterate(shifted, x, r)) return false;
    rho = std::max(0.0, r - 1.0);
    return true;
}

}  // namespace

double spectral_radius(const Matrix& a) {
    if (a.rows() <= kDenseSizeLimit || (a.array() < 0.0).any())
        return dense_dominant(a).rho;
    double rho = 0.0;
    if (shifted_rho(a, rho)) return rho;
    return dense_dominant(a).rho;  // iteration stalled (e.g. defective dominant block)
}

SpectralInfo spectral_analysis(const Matrix& a) {
    SpectralInfo info;
    const int n = static_cast<int>(a.rows());
    const bool nonnegative = !(a.array() < 0.0).any();

    if (n <= kDenseSizeLimit || !nonnegative) {
        const DenseResult res = dense_dominant(a);
        info.rho = res.rho;
        if (!res.dominant_simple_real_positive) return info;
        // Right eigenvector from the solver, left one from A^T.
        Eigen::EigenSolver<Matrix> left_solver(a.transpose());
        const auto& lvals = left_solver.eigenvalues();
        int match = 0;
        for (int i = 1; i < lvals.size(); ++i)
            if (std::abs(lvals[i] - std::complex<double>(info.rho, 0.0)) <
                std::abs(lvals[match] - std::complex<double>(info.rho, 0.0)))
                match = i;
        Vector v = res.dominant_right.real();
        Vector u = left_solver.eigenvectors().col(match).real();
        if (v.norm() == 0.0 || u.norm() == 0.0) return info;
        v /= v.norm();
        if (v.sum() < 0.0) v = -v;
        const double s = u.dot(v);
        if (std::abs(s) < 1e-12 * u.norm()) return info;
        u /= s;
        info.perron_right = v;
        info.perron_left = u;
        info.perron_valid = true;
        return info;
    }

    // Large nonnegative matrix: unshifted iterations on A and A^T converge
    // in direction only under strict dominance, which is exactly the
    // condition for perron_valid.
    Vector v, u;
    double r_right = 0.0;
    double r_left = 0.0;
    const bool right_ok = power_iterate(a, v, r_right);
    const bool left_ok = power_iterate(a.transpose(), u, r_left);
    if (right_ok && left_ok) {
        info.rho = 0.5 * (r_right + r_left);
        const double s = u.dot(v);
        if (s > 1e-12) {
            info.perron_right = v;
            info.perron_left = u / s;
            info.perron_valid = true;
        }
        return info;
    }
    if (!shifted_rho(a, info.rho)) info.rho = dense_dominant(a).rho;
    return info;
}

}  // namespace netsched
