#pragma once

#include <cstdint>
#include <vector>

#include "netsched/scheduling.hpp"
#include "netsched/types.hpp"

namespace netsched {

/// Half-width of the bisection bracket, relative to ||A||_2. Each reported
/// minimum carries an infeasible witness scale within this distance.
inline constexpr double kBisectionToleranceFactor = 1e-4;

/// Search setup: which nodes are reachable for actuation and how hard to
/// look for a dynamics manipulation that makes the unconstrained optimal
/// TVCS use only those nodes.
struct ManifestProblem {
    NetworkMatrix net;
    std::vector<int> manifest;  ///< accessible node indices, nonempty
    int horizon = 10;
    int trials = 16;            ///< random search directions to try
    double norm_cap = 1.0;      ///< max allowed ||dA||_2 / ||A||_2
};

struct ManipulationResult {
    Matrix delta;                      ///< additive change, zero outside M x M
    double relative_norm = 0.0;        ///< ||dA||_2 / ||A||_2
    bool all_manifest = false;         ///< r(k) of A+dA lies in M for k = 1..K-1
    double tv_value_manipulated = 0.0; ///< trace TVCS of normalize_spectral(A+dA)
    double tv_value_constrained = 0.0; ///< M-constrained trace TVCS of normalize_spectral(A)
    double advantage_ratio = 0.0;      ///< manipulated / constrained
    bool negative_entries = false;     ///< A+dA left the nonnegative cone
    double certificate_scale = 0.0;    ///< largest relative scale verified infeasible
    int winning_trial = -1;            ///< trial index of the reported direction
};

/// Optimal trace TVCS restricted to manifest control nodes: step k actuates
/// the manifest node with the largest R_i(K-1-k).
SchedulePick constrained_tvcs_trace(const NetworkMatrix& net, const std::vector<int>& manifest,
                                    int horizon);

/// Randomized search for a small-norm perturbation of the manifest block
/// that pulls every optimal control node into the manifest set. Directions
/// mix dense random blocks with cycle-biased templates (a directed cycle
/// through the manifest nodes); each feasible direction is bisected down to
/// its minimal feasible scale. Deterministic in (problem, seed) and
/// independent of the worker count. The returned norm is an upper bound on
/// the true minimum. Throws ConfigError on an empty manifest set.
ManipulationResult find_min_manipulation(const ManifestProblem& problem, std::uint64_t seed);

struct ManipulationSweepRow {
    double fraction = 0.0;
    int replicates = 0;
    double mean_norm = 0.0;   ///< over successful replicates
    double std_norm = 0.0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double success_rate = 0.0;
};

/// Fraction sweep: for each manifest fraction, random transmission
/// networks of size n are spectrally normalized, a random manifest subset is
/// drawn, and the manipulation search is aggregated over replicates.
std::vector<ManipulationSweepRow> manipulation_sweep(int n, const std::vector<double>& fractions,
                                                     int replicates, int horizon,
                                                     std::uint64_t seed, int trials = 16,
                                                     double norm_cap = 1.0);

}  // namespace netsched
