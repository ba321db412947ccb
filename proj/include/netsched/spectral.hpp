#pragma once

#include <optional>

#include "netsched/types.hpp"

namespace netsched {

/// Dominant-eigenpair analysis of a dynamics matrix.
struct SpectralInfo {
    double rho = 0.0;              ///< spectral radius
    bool perron_valid = false;     ///< left/right pair below is reliable
    Vector perron_left;            ///< u1, normalized so that u1^T v1 = 1
    Vector perron_right;           ///< v1, normalized so that v1^T v1 = 1
};

/// Spectral radius. Uses a dense eigensolver for small or signed matrices
/// and a shifted power iteration for large nonnegative ones; falls back to
/// the dense solver whenever the iteration stalls.
double spectral_radius(const Matrix& a);

/// Dominant eigenpair analysis. perron_valid is true only when the dominant
/// eigenvalue is real, positive, simple and strictly dominant in modulus, so
/// that (A/rho)^k converges to v1 u1^T (irreducible aperiodic case).
SpectralInfo spectral_analysis(const Matrix& a);

}  // namespace netsched
