#include "netsched/communicability.hpp"

#include <algorithm>
#include <cmath>

#include "netsched/spectral.hpp"

namespace netsched {

namespace {

int argmax_lowest_index(const Vector& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

/// Indices attaining the exact maximum of v.
std::vector<int> max_set(const Vector& v) {
    const double m = v.maxCoeff();
    std::vector<int> out;
    for (int i = 0; i < v.size(); ++i)
        if (v[i] == m) out.push_back(i);
    return out;
}

/// A^k via binary powering; used only for the high-power surrogate where
/// the incremental cache would need k dense matrices.
Matrix binary_power(Matrix base, int k) {
    Matrix result = Matrix::Identity(base.rows(), base.cols());
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

}  // namespace

Vector squared_column_norms(const Matrix& p) {
    const int n = static_cast<int>(p.cols());
    Vector out(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out[i] = p.col(i).squaredNorm();
    return out;
}

CommunicabilityProfile profile(const NetworkMatrix& net, int horizon, PowerCache& cache) {
    if (horizon < 1) throw ConfigError("profile: horizon must be at least 1");
    const int n = net.size();

    CommunicabilityProfile prof;
    prof.r_values = Matrix(n, horizon);
    prof.argmax_seq.resize(horizon);
    for (int k = 0; k < horizon; ++k) {
        prof.r_values.col(k) = squared_column_norms(cache.power(k));
        prof.argmax_seq[k] = argmax_lowest_index(prof.r_values.col(k));
    }

    const AsymptoticCommunicability tail = asymptotic_communicability(net);
    prof.r_inf = tail.values;
    prof.r_inf_exact = tail.exact;
    prof.spectral_radius = tail.spectral_radius;
    return prof;
}

CommunicabilityProfile profile(const NetworkMatrix& net, int horizon) {
    PowerCache cache(net.adjacency());
    return profile(net, horizon, cache);
}

AsymptoticCommunicability asymptotic_communicability(const NetworkMatrix& net) {
    const SpectralInfo info = spectral_analysis(net.adjacency());
    AsymptoticCommunicability out;
    out.spectral_radius = info.rho;
    if (info.perron_valid) {
        out.values = info.perron_left.array().square();
        out.exact = true;
        return out;
    }
    // Reducible or periodic dynamics: the Perron limit may not exist. Use the
    // normalized profile at a large finite k as the ranking surrogate.
    out.exact = false;
    const int n = net.size();
    if (info.rho <= 0.0) {
        out.values = Vector::Zero(n);  // nilpotent: no paths survive
        return out;
    }
    const Matrix high = binary_power(net.adjacency() / info.rho, kAsymptoticSurrogatePower);
    out.values = squared_column_norms(high);
    return out;
}

DominanceReport dominance(const NetworkMatrix& net, int horizon, GlobalScale scale) {
    PowerCache cache(net.adjacency());
    return dominance(net, horizon, scale, cache);
}

DominanceReport dominance(const NetworkMatrix& net, int horizon, GlobalScale scale,
                          PowerCache& cache) {
    if (horizon < 2) throw ConfigError("dominance: horizon must be at least 2");
    if (net.size() < 2) throw DimensionError("dominance: need at least two nodes for a runner-up");

    const Vector local = squared_column_norms(cache.power(1));

    DominanceReport report;
    report.local_k = 1;
    report.global_scale = scale;
    report.leader = argmax_lowest_index(local);

    Vector global;
    if (scale == GlobalScale::HorizonEnd) {
        global = squared_column_norms(cache.power(horizon - 1));
        report.global_k = horizon - 1;
        report.global_exact = true;
    } else {
        const AsymptoticCommunicability tail = asymptotic_communicability(net);
        global = tail.values;
        report.global_k = -1;
        report.global_exact = tail.exact;
    }

    auto runner_up = [&](const Vector& v) {
        int best = report.leader == 0 ? 1 : 0;
        for (int i = 0; i < v.size(); ++i) {
            if (i == report.leader) continue;
            if (v[i] > v[best]) best = i;
        }
        return best;
    };
    report.runner_up_local = runner_up(local);
    report.runner_up_global = runner_up(global);

    // Relative gap at one scale; all-zero scales count as fully tied.
    auto gap = [](const Vector& v, int leader, int other) {
        if (v[leader] <= 0.0) return 0.0;
        return (v[leader] - v[other]) / v[leader];
    };
    report.dominance = std::min(gap(local, report.leader, report.runner_up_local),
                                gap(global, report.leader, report.runner_up_global));
    return report;
}

bool scale_heterogeneity_test(const CommunicabilityProfile& prof) {
    const int horizon = static_cast<int>(prof.r_values.cols());
    if (horizon < 2) throw ConfigError("scale_heterogeneity_test: horizon must be at least 2");
    const std::vector<int> local = max_set(prof.r_values.col(1));
    const std::vector<int> global = max_set(prof.r_values.col(horizon - 1));
    for (int i : local)
        if (std::binary_search(global.begin(), global.end(), i)) return false;
    return true;
}

bool scale_heterogeneity_test(const NetworkMatrix& net, int horizon) {
    if (horizon < 2) throw ConfigError("scale_heterogeneity_test: horizon must be at least 2");
    PowerCache cache(net.adjacency());
    const Vector local = squared_column_norms(cache.power(1));
    const Vector global = squared_column_norms(cache.power(horizon - 1));
    const std::vector<int> local_set = max_set(local);
    const std::vector<int> global_set = max_set(global);
    for (int i : local_set)
        if (std::binary_search(global_set.begin(), global_set.end(), i)) return false;
    return true;
}

}  // namespace netsched
