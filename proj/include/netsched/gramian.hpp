#pragma once

#include <utility>
#include <vector>

#include "netsched/power_cache.hpp"
#include "netsched/types.hpp"

namespace netsched {

/// Eigenvalues below singular_threshold_factor * lambda_max are treated as
/// zero when inverting or classifying Gramians.
inline constexpr double kSingularThresholdFactor = 1e-12;

/// Gramians whose condition number exceeds this cap are reported as not
/// invertible for control synthesis.
inline constexpr double kConditionCap = 1e9;

/// Relative symmetry tolerance accepted by metric() and the ellipsoid.
inline constexpr double kSymmetryTolerance = 1e-10;

/// n x m input matrix B(k): columns are the canonical basis vectors of the
/// nodes controlled at step k. Throws DimensionError on out-of-range nodes.
Matrix input_matrix(const ControlSchedule& schedule, int k, int n);

/// Finite-horizon controllability Gramian
///   W_K = sum_{k=0}^{K-1} A^k B(K-1-k) B(K-1-k)^T (A^T)^k,
/// assembled by the recursion W <- A W A^T + B(j) B(j)^T over j = 0..K-1 and
/// symmetrized. Throws DimensionError on schedule/network mismatch.
Gramian gramian(const NetworkMatrix& net, const ControlSchedule& schedule);

/// Gramian-based controllability measure. Trace sums the eigenvalues;
/// Determinant multiplies them; MinEigenvalue clamps tiny negatives to 0;
/// TraceInverseInverse returns (sum 1/lambda_i)^-1, or 0 (its limit) when
/// any eigenvalue is at or below the singular threshold. Throws
/// DimensionError when w is asymmetric beyond tolerance.
double metric(const Gramian& w, MetricKind kind);

struct MinEnergyControl {
    std::vector<Vector> inputs;  ///< u*(k) for k = 0..K-1, each of size m
    double energy = 0.0;         ///< x_f^T W^-1 x_f
};

/// Minimum-energy input sequence steering the state from 0 to x_f:
///   u*(k) = B(k)^T (A^T)^{K-1-k} W_K^{-1} x_f.
/// Throws ControllabilityError (carrying lambda_min) when the Gramian
/// condition number exceeds kConditionCap.
MinEnergyControl min_energy_control(const NetworkMatrix& net, const ControlSchedule& schedule,
                                    const Vector& x_f);

/// Forward simulation of x(k+1) = A x(k) + B(k) u(k); returns x(0..K).
std::vector<Vector> simulate(const NetworkMatrix& net, const ControlSchedule& schedule,
                             const Vector& x0, const std::vector<Vector>& inputs);

struct ReachabilityEllipsoid {
    Matrix axes;     ///< orthonormal axis directions, one per column
    Vector lengths;  ///< sqrt(lambda_i), sorted descending
};

/// Axes of the unit-energy reachable set {x : x^T W^-1 x <= 1}.
ReachabilityEllipsoid reachability_ellipsoid(const Gramian& w);

/// Eigenvalues of the symmetrized Gramian, ascending. Shared by metric(),
/// synthesis and the ellipsoid.
Vector gramian_eigenvalues(const Gramian& w);

}  // namespace netsched
