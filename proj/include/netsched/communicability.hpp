#pragma once

#include <vector>

#include "netsched/power_cache.hpp"
#include "netsched/types.hpp"

namespace netsched {

/// Power used by the finite-k surrogate of the asymptotic communicability
/// when no strictly dominant Perron pair exists.
inline constexpr int kAsymptoticSurrogatePower = 200;

/// Per-node communicability R_i(k) = ((A^k)^T A^k)_{ii} for k = 0..K-1,
/// i.e. the squared weighted count of length-k paths leaving node i.
struct CommunicabilityProfile {
    Matrix r_values;              ///< n x K, r_values(i, k) = R_i(k)
    Vector r_inf;                 ///< asymptotic values (see asymptotic_communicability)
    bool r_inf_exact = false;     ///< false when the finite-k surrogate was used
    std::vector<int> argmax_seq;  ///< r(k) = argmax_i R_i(k), lowest index on ties
    double spectral_radius = 0.0;
};

/// Squared Euclidean norm of every column of p. The k-th power of A fed
/// through this kernel yields the R_i(k) profile column.
Vector squared_column_norms(const Matrix& p);

CommunicabilityProfile profile(const NetworkMatrix& net, int horizon);
CommunicabilityProfile profile(const NetworkMatrix& net, int horizon, PowerCache& cache);

struct AsymptoticCommunicability {
    Vector values;        ///< R_i(inf) = u_{1,i}^2 when exact, else surrogate
    bool exact = false;   ///< strict Perron dominance held
    double spectral_radius = 0.0;
};

/// R_i(inf): squared entries of the left Perron eigenvector u1 (normalized
/// u1^T v1 = 1, v1^T v1 = 1). When A is not irreducible and aperiodic the
/// Perron limit may not exist; the flagged fallback returns the normalized
/// profile R_i(k)/rho^{2k} at k = kAsymptoticSurrogatePower instead.
AsymptoticCommunicability asymptotic_communicability(const NetworkMatrix& net);

/// Which scale plays the "global" role in dominance reports.
enum class GlobalScale { HorizonEnd, Asymptotic };

struct DominanceReport {
    int leader = 0;            ///< argmax_i R_i(1)
    int runner_up_local = 0;   ///< argmax after removing the leader at k = 1
    int runner_up_global = 0;  ///< argmax after removing the leader at the global scale
    double dominance = 0.0;    ///< min relative gap across the two scales; negative
                               ///< when the leader is not the global argmax
    int local_k = 1;
    GlobalScale global_scale = GlobalScale::HorizonEnd;
    int global_k = 0;          ///< K-1 for HorizonEnd, -1 for Asymptotic
    bool global_exact = true;  ///< false when the asymptotic scale used the surrogate
};

/// Dominance of the locally leading node over the runner-up, measured at the
/// local scale k = 1 and at the chosen global scale. Throws DimensionError
/// for n < 2 (no runner-up exists).
DominanceReport dominance(const NetworkMatrix& net, int horizon,
                          GlobalScale scale = GlobalScale::HorizonEnd);
DominanceReport dominance(const NetworkMatrix& net, int horizon, GlobalScale scale,
                          PowerCache& cache);

/// Sufficient condition for chi > 0 under the trace metric: no node attains
/// the maximum communicability at both the local scale k = 1 and the global
/// scale k = K-1. Comparing the max-attaining sets (rather than tie-broken
/// argmax indices) keeps the condition sufficient on exactly tied profiles.
bool scale_heterogeneity_test(const NetworkMatrix& net, int horizon);
bool scale_heterogeneity_test(const CommunicabilityProfile& prof);

}  // namespace netsched
