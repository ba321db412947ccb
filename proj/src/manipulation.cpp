#include "netsched/manipulation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "netsched/netgen.hpp"
#include "netsched/rng.hpp"

namespace netsched {

namespace {

/// Induced 2-norm via the top eigenvalue of M^T M.
double spectral_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.transpose() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
}

/// argmax sequence r(k), k = 0..K-1, of a dynamics matrix (lowest index on
/// ties). Only the trace machinery is needed, so this stays local.
std::vector<int> argmax_sequence(const Matrix& a, int horizon) {
    std::vector<int> seq(horizon);
    Matrix p = Matrix::Identity(a.rows(), a.cols());
    for (int k = 0; k < horizon; ++k) {
        if (k > 0) p = a * p;
        const Vector d = squared_column_norms(p);
        int best = 0;
        for (int i = 1; i < d.size(); ++i)
            if (d[i] > d[best]) best = i;
        seq[k] = best;
    }
    return seq;
}

/// The all-manifest condition: every optimal control node r(k) for
/// k = 1..K-1 lies in the manifest set. r(0) is exempt because R_i(0) = 1
/// ties all nodes and the step-(K-1) control node is arbitrary.
bool all_manifest(const Matrix& a, int horizon, const std::vector<bool>& manifest_mask) {
    const std::vector<int> seq = argmax_sequence(a, horizon);
    for (int k = 1; k < horizon; ++k)
        if (!manifest_mask[seq[k]]) return false;
    return true;
}

int manifest_hits(const Matrix& a, int horizon, const std::vector<bool>& manifest_mask) {
    const std::vector<int> seq = argmax_sequence(a, horizon);
    int hits = 0;
    for (int k = 1; k < horizon; ++k)
        if (manifest_mask[seq[k]]) ++hits;
    return hits;
}

/// Random unit-norm direction supported on the manifest block. Odd trials
/// embed a directed cycle through the manifest nodes so the perturbation
/// carries paths of every length; even trials are dense random blocks.
Matrix make_direction(Rng& rng, int n, const std::vector<int>& manifest, bool cycle_biased) {
    Matrix d = Matrix::Zero(n, n);
    if (cycle_biased && manifest.size() >= 2) {
        std::vector<int> order = manifest;
        rng.shuffle(order);
        for (std::size_t idx = 0; idx < order.size(); ++idx) {
            const int from = order[idx];
            const int to = order[(idx + 1) % order.size()];
            d(to, from) = 0.5 + 0.5 * rng.uniform();
        }
        for (int from : manifest)
            for (int to : manifest)
                if (rng.uniform() < 0.3) d(to, from) += 0.2 * rng.uniform();
    } else {
        for (int from : manifest)
            for (int to : manifest) d(to, from) = rng.uniform();
    }
    if (manifest.size() == 1) d(manifest[0], manifest[0]) = 1.0;  // self-loop is the whole block
    const double norm = spectral_norm(d);
    if (norm > 0.0) d /= norm;
    return d;
}

struct TrialOutcome {
    bool feasible = false;
    double scale = std::numeric_limits<double>::infinity();  // minimal feasible scale
    double witness = 0.0;                                    // largest scale shown infeasible
    int hits_at_cap = -1;
    Matrix direction;
};

}  // namespace

SchedulePick constrained_tvcs_trace(const NetworkMatrix& net, const std::vector<int>& manifest,
                                    int horizon) {
    if (manifest.empty()) throw ConfigError("constrained_tvcs_trace: manifest set is empty");
    for (int i : manifest)
        if (i < 0 || i >= net.size())
            throw DimensionError("constrained_tvcs_trace: manifest node out of range");
    if (horizon < 1) throw ConfigError("constrained_tvcs_trace: horizon must be at least 1");

    PowerCache cache(net.adjacency());
    std::vector<int> sorted = manifest;
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::vector<int>> steps(horizon);
    double value = 0.0;
    for (int k = 0; k < horizon; ++k) {
        const Vector d = squared_column_norms(cache.power(k));
        int best = sorted.front();
        for (int i : sorted)
            if (d[i] > d[best]) best = i;
        steps[horizon - 1 - k] = {best};
        value += d[best];
    }
    return SchedulePick{ControlSchedule(horizon, 1, std::move(steps)), value};
}

ManipulationResult find_min_manipulation(const ManifestProblem& problem, std::uint64_t seed) {
    const NetworkMatrix& net = problem.net;
    const int n = net.size();
    if (problem.manifest.empty())
        throw ConfigError("find_min_manipulation: manifest set is empty");
    for (int i : problem.manifest)
        if (i < 0 || i >= n)
            throw DimensionError("find_min_manipulation: manifest node out of range");
    if (problem.horizon < 2)
        throw ConfigError("find_min_manipulation: horizon must be at least 2");
    if (problem.trials < 1) throw ConfigError("find_min_manipulation: trial budget must be positive");

    std::vector<bool> mask(n, false);
    for (int i : problem.manifest) mask[i] = true;

    const Matrix& a = net.adjacency();
    const double a_norm = spectral_norm(a);
    const double tolerance = kBisectionToleranceFactor * a_norm;

    ManipulationResult result;
    result.delta = Matrix::Zero(n, n);

    auto finish = [&](const Matrix& manipulated) {
        const NetworkMatrix changed = NetworkMatrix::from_dynamics(manipulated);
        result.negative_entries = changed.has_negative_entries();
        result.tv_value_manipulated =
            tvcs_trace(normalize_spectral(changed), problem.horizon).value;
        result.tv_value_constrained =
            constrained_tvcs_trace(normalize_spectral(net), problem.manifest, problem.horizon)
                .value;
        result.advantage_ratio = result.tv_value_manipulated / result.tv_value_constrained;
        return result;
    };

    if (all_manifest(a, problem.horizon, mask)) {
        result.all_manifest = true;  // nothing to manipulate
        return finish(a);
    }

    const double max_scale = problem.norm_cap * a_norm;
    std::vector<TrialOutcome> outcomes(problem.trials);

    // Trials are independent; each derives its own RNG stream from the trial
    // index, so the outcome array is the same for any worker count.
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < problem.trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        TrialOutcome& outcome = outcomes[trial];
        outcome.direction = make_direction(rng, n, problem.manifest, trial % 2 == 1);
        const Matrix at_cap = a + max_scale * outcome.direction;
        outcome.hits_at_cap = manifest_hits(at_cap, problem.horizon, mask);
        if (!all_manifest(at_cap, problem.horizon, mask)) continue;
        double lo = 0.0;  // infeasible: the unmanipulated schedule leaves M
        double hi = max_scale;
        while (hi - lo > 0.5 * tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (all_manifest(a + mid * outcome.direction, problem.horizon, mask))
                hi = mid;
            else
                lo = mid;
        }
        outcome.feasible = true;
        outcome.scale = hi;
        outcome.witness = lo;
    }

    int winner = -1;
    for (int trial = 0; trial < problem.trials; ++trial) {
        if (!outcomes[trial].feasible) continue;
        if (winner < 0 || outcomes[trial].scale < outcomes[winner].scale) winner = trial;
    }

    if (winner < 0) {
        // No success within the cap: report the best attempt at full scale.
        int best_attempt = 0;
        for (int trial = 1; trial < problem.trials; ++trial)
            if (outcomes[trial].hits_at_cap > outcomes[best_attempt].hits_at_cap)
                best_attempt = trial;
        result.delta = max_scale * outcomes[best_attempt].direction;
        result.relative_norm = problem.norm_cap;
        result.all_manifest = false;
        result.winning_trial = best_attempt;
        return finish(a + result.delta);
    }

    const TrialOutcome& best = outcomes[winner];
    result.delta = best.scale * best.direction;
    result.relative_norm = best.scale / a_norm;
    result.all_manifest = true;
    result.certificate_scale = best.witness / a_norm;
    result.winning_trial = winner;
    return finish(a + result.delta);
}

std::vector<ManipulationSweepRow> manipulation_sweep(int n, const std::vector<double>& fractions,
                                                     int replicates, int horizon,
                                                     std::uint64_t seed, int trials,
                                                     double norm_cap) {
    for (double fraction : fractions)
        if (fraction <= 0.0 || fraction > 1.0)
            throw ConfigError("manipulation_sweep: fractions must lie in (0, 1]");

    std::vector<ManipulationSweepRow> rows;
    for (std::size_t f = 0; f < fractions.size(); ++f) {
        const double fraction = fractions[f];
        const int manifest_size = std::max(1, static_cast<int>(std::lround(fraction * n)));

        std::vector<double> norms(replicates, 0.0);
        std::vector<double> ratios(replicates, 0.0);
        std::vector<bool> success(replicates, false);

#pragma omp parallel for schedule(dynamic)
        for (int rep = 0; rep < replicates; ++rep) {
            const std::uint64_t rep_seed =
                derive_seed(seed, (static_cast<std::uint64_t>(f) << 32) ^
                                      static_cast<std::uint64_t>(rep));
            Rng rng(rep_seed);
            // Random-connectivity instance at fixed n: uniform sparsity,
            // uniform weights, undirected, transmission-converted.
            const double p = rng.uniform();
            Matrix c = Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.uniform() < p) {
                        const double w = rng.uniform();
                        c(i, j) += w;
                        c(j, i) += w;
                    }
            const NetworkMatrix net = transmission(RawConnectivity{std::move(c), false});

            std::vector<int> nodes(n);
            std::iota(nodes.begin(), nodes.end(), 0);
            rng.shuffle(nodes);
            nodes.resize(manifest_size);

            ManifestProblem problem{net, nodes, horizon, trials, norm_cap};
            const ManipulationResult res = find_min_manipulation(problem, rng.bits());
            success[rep] = res.all_manifest;
            if (res.all_manifest) {
                norms[rep] = res.relative_norm;
                ratios[rep] = res.advantage_ratio;
            }
        }

        ManipulationSweepRow row;
        row.fraction = fraction;
        row.replicates = replicates;
        int ok = 0;
        double sum_n = 0.0, sum_n2 = 0.0, sum_r = 0.0, sum_r2 = 0.0;
        for (int rep = 0; rep < replicates; ++rep) {
            if (!success[rep]) continue;
            ++ok;
            sum_n += norms[rep];
            sum_n2 += norms[rep] * norms[rep];
            sum_r += ratios[rep];
            sum_r2 += ratios[rep] * ratios[rep];
        }
        row.success_rate = replicates > 0 ? static_cast<double>(ok) / replicates : 0.0;
        if (ok > 0) {
            row.mean_norm = sum_n / ok;
            row.mean_ratio = sum_r / ok;
            row.std_norm = std::sqrt(std::max(0.0, sum_n2 / ok - row.mean_norm * row.mean_norm));
            row.std_ratio =
                std::sqrt(std::max(0.0, sum_r2 / ok - row.mean_ratio * row.mean_ratio));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace netsched
