#pragma once

#include "netsched/netgen.hpp"
#include "netsched/rng.hpp"
#include "netsched/types.hpp"

namespace testutil {

using netsched::Matrix;
using netsched::NetworkMatrix;
using netsched::Rng;
using netsched::Vector;

/// Directed chain with ones on the subdiagonal: edge i -> i+1, head node 0.
inline NetworkMatrix chain(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i + 1, i) = 1.0;
    return NetworkMatrix(a);
}

/// Dense random matrix with entries uniform in [0, scale).
inline Matrix random_matrix(int n, Rng& rng, double scale = 1.0) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = scale * rng.uniform();
    return a;
}

/// Undirected uniform-sparsity connectivity, transmission-converted
/// (the random ensemble instance shape).
inline NetworkMatrix random_transmission(int n, Rng& rng) {
    const double p = rng.uniform();
    Matrix c = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) {
                const double w = rng.uniform();
                c(i, j) += w;
                c(j, i) += w;
            }
    return netsched::transmission(netsched::RawConnectivity{std::move(c), false});
}

/// Undirected unweighted star: node 0 is the hub.
inline Matrix star_connectivity(int n, double weight = 1.0) {
    Matrix c = Matrix::Zero(n, n);
    for (int leaf = 1; leaf < n; ++leaf) {
        c(0, leaf) = weight;
        c(leaf, 0) = weight;
    }
    return c;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testutil
