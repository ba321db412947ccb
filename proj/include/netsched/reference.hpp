#pragma once

#include <cstdint>

#include "netsched/scheduling.hpp"
#include "netsched/types.hpp"

namespace netsched::ref {

/// Serial reference implementations, kept deliberately naive and independent
/// of the optimized code paths. They serve as oracles in the test suites and
/// as the baseline side of the benchmark tool. Nothing here shares power
/// caches, recursions or OpenMP kernels with the main library.

/// Plain repeated multiplication, no caching.
Matrix matrix_power(const Matrix& a, int k);

/// Term-by-term Gramian: W = sum_k A^k B(K-1-k) B(K-1-k)^T (A^T)^k with each
/// power recomputed from scratch.
Gramian gramian(const NetworkMatrix& net, const ControlSchedule& schedule);

/// Communicability via the full product (A^k)^T A^k per k, serial loops.
Matrix profile(const NetworkMatrix& net, int horizon);

/// Odometer enumeration of all single-input schedules (or all constant
/// ones), evaluating every Gramian from scratch. No prefix sharing, no
/// parallelism.
SchedulePick exhaustive_schedule(const NetworkMatrix& net, int horizon, MetricKind kind,
                                 bool constant_only);

/// Dense-eigensolver spectral radius, any size.
double spectral_radius(const Matrix& a);

}  // namespace netsched::ref
