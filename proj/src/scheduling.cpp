#include "netsched/scheduling.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netsched/gramian.hpp"

namespace netsched {

namespace {

/// Indices of the m largest entries (ties toward the lowest index),
/// returned ascending, plus the selected sum.
std::pair<std::vector<int>, double> top_m(const Vector& d, int m) {
    std::vector<int> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return d[a] > d[b]; });
    std::vector<int> picked(order.begin(), order.begin() + m);
    double sum = 0.0;
    for (int i : picked) sum += d[i];
    std::sort(picked.begin(), picked.end());
    return {std::move(picked), sum};
}

void require_step_count(const NetworkMatrix& net, int horizon, int m) {
    if (horizon < 1) throw ConfigError("scheduling: horizon must be at least 1");
    if (m < 1 || m > net.size())
        throw ConfigError("scheduling: inputs per step must lie in [1, n]");
}

/// n^K, saturating at the budget sentinel to avoid overflow.
std::uint64_t schedule_count(int n, int horizon, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (int k = 0; k < horizon; ++k) {
        if (count > cap / static_cast<std::uint64_t>(n)) return cap + 1;
        count *= static_cast<std::uint64_t>(n);
    }
    return count;
}

bool lexicographically_before(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct BranchBest {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> schedule;
};

void consider(BranchBest& best, double value, const std::vector<int>& schedule) {
    if (value > best.value ||
        (value == best.value && lexicographically_before(schedule, best.schedule)))
        best = BranchBest{value, schedule};
}

/// Depth-first enumeration sharing the A W A^T propagation across all
/// children of a prefix: extending a prefix Gramian by node i only bumps
/// one diagonal entry of the propagated matrix.
void enumerate_suffixes(const Matrix& a, const Matrix& w_prefix, int depth, int horizon,
                        MetricKind kind, std::vector<int>& schedule, BranchBest& best) {
    const int n = static_cast<int>(a.rows());
    if (depth == horizon) {
        consider(best, metric(Gramian{w_prefix}, kind), schedule);
        return;
    }
    const Matrix propagated = a * w_prefix * a.transpose();
    for (int i = 0; i < n; ++i) {
        Matrix w_next = propagated;
        w_next(i, i) += 1.0;
        schedule[depth] = i;
        enumerate_suffixes(a, w_next, depth + 1, horizon, kind, schedule, best);
    }
    schedule[depth] = -1;
}

double regularized_metric(const Vector& spectrum_ascending, MetricKind kind) {
    const int n = static_cast<int>(spectrum_ascending.size());
    const double trace = spectrum_ascending.sum();
    // Partial Gramians are singular through most of the horizon; the
    // regularizer keeps the inverse/determinant scores comparable.
    const double reg = 1e-12 * trace / n;
    switch (kind) {
        case MetricKind::Trace:
            return trace;
        case MetricKind::MinEigenvalue:
            return spectrum_ascending[0] > 0.0 ? spectrum_ascending[0] : 0.0;
        case MetricKind::Determinant: {
            double det = 1.0;
            for (int i = 0; i < n; ++i) det *= spectrum_ascending[i] + reg;
            return det;
        }
        case MetricKind::TraceInverseInverse: {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double lam = spectrum_ascending[i] + reg;
                if (lam <= 0.0) return 0.0;
                sum += 1.0 / lam;
            }
            return 1.0 / sum;
        }
    }
    return trace;
}

/// -1 / 0 / +1 comparison of ascending spectra, lexicographic from the
/// smallest eigenvalue up.
int compare_spectra(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

}  // namespace

SchedulePick tvcs_trace(const NetworkMatrix& net, int horizon, int m, PowerCache& cache) {
    require_step_count(net, horizon, m);
    std::vector<std::vector<int>> steps(horizon);
    double value = 0.0;
    for (int k = 0; k < horizon; ++k) {
        auto [picked, sum] = top_m(squared_column_norms(cache.power(k)), m);
        steps[horizon - 1 - k] = std::move(picked);
        value += sum;
    }
    return SchedulePick{ControlSchedule(horizon, m, std::move(steps)), value};
}

SchedulePick tvcs_trace(const NetworkMatrix& net, int horizon, int m) {
    PowerCache cache(net.adjacency());
    return tvcs_trace(net, horizon, m, cache);
}

SchedulePick tics_trace(const NetworkMatrix& net, int horizon, int m, PowerCache& cache) {
    require_step_count(net, horizon, m);
    Vector cumulative = Vector::Zero(net.size());
    for (int k = 0; k < horizon; ++k) cumulative += squared_column_norms(cache.power(k));
    auto [picked, sum] = top_m(cumulative, m);
    return SchedulePick{ControlSchedule::constant(horizon, std::move(picked)), sum};
}

SchedulePick tics_trace(const NetworkMatrix& net, int horizon, int m) {
    PowerCache cache(net.adjacency());
    return tics_trace(net, horizon, m, cache);
}

SchedulePick exhaustive_schedule(const NetworkMatrix& net, int horizon, MetricKind kind,
                                 bool constant_only, std::uint64_t budget) {
    require_step_count(net, horizon, 1);
    const int n = net.size();

    if (constant_only) {
        if (static_cast<std::uint64_t>(n) > budget)
            throw BudgetError("exhaustive_schedule: " + std::to_string(n) +
                              " constant schedules exceed the budget; use greedy_schedule");
        BranchBest best;
        for (int i = 0; i < n; ++i) {
            const ControlSchedule schedule = ControlSchedule::constant(horizon, {i});
            consider(best, metric(gramian(net, schedule), kind),
                     std::vector<int>(horizon, i));
        }
        return SchedulePick{ControlSchedule::single(best.schedule), best.value};
    }

    if (schedule_count(n, horizon, budget) > budget)
        throw BudgetError("exhaustive_schedule: n^K exceeds the budget of " +
                          std::to_string(budget) + " evaluations; use greedy_schedule");

    // Parallel over the first step's node; each branch enumerates its
    // suffixes serially, and the branch results are reduced in index order
    // so the outcome does not depend on the worker count.
    std::vector<BranchBest> branch_best(n);
    const Matrix& a = net.adjacency();
#pragma omp parallel for schedule(dynamic)
    for (int first = 0; first < n; ++first) {
        std::vector<int> schedule(horizon, -1);
        schedule[0] = first;
        Matrix w = Matrix::Zero(n, n);
        w(first, first) += 1.0;
        enumerate_suffixes(a, w, 1, horizon, kind, schedule, branch_best[first]);
    }
    BranchBest best;
    for (const BranchBest& candidate : branch_best)
        consider(best, candidate.value, candidate.schedule);
    return SchedulePick{ControlSchedule::single(best.schedule), best.value};
}

SchedulePick greedy_schedule(const NetworkMatrix& net, int horizon, MetricKind kind, int m) {
    require_step_count(net, horizon, m);
    const int n = net.size();
    PowerCache cache(net.adjacency());

    Matrix accumulated = Matrix::Zero(n, n);  // contributions mapped to the final horizon
    std::vector<std::vector<int>> steps(horizon);
    for (int step = 0; step < horizon; ++step) {
        const Matrix& reach = cache.power(horizon - 1 - step);  // candidate columns
        std::vector<int> chosen;
        Matrix step_base = accumulated;
        for (int pick = 0; pick < m; ++pick) {
            int best_node = -1;
            double best_score = -std::numeric_limits<double>::infinity();
            Vector best_spectrum;
            for (int i = 0; i < n; ++i) {
                if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
                double score;
                Vector spectrum;
                if (kind == MetricKind::Trace) {
                    score = step_base.trace() + reach.col(i).squaredNorm();
                } else {
                    Matrix w = step_base;
                    w.noalias() += reach.col(i) * reach.col(i).transpose();
                    spectrum = gramian_eigenvalues(Gramian{std::move(w)});
                    score = regularized_metric(spectrum, kind);
                }
                bool better = score > best_score;
                if (!better && score == best_score && kind != MetricKind::Trace)
                    better = compare_spectra(spectrum, best_spectrum) > 0;
                if (better) {
                    best_node = i;
                    best_score = score;
                    best_spectrum = spectrum;
                }
            }
            chosen.push_back(best_node);
            step_base.noalias() += reach.col(best_node) * reach.col(best_node).transpose();
        }
        std::sort(chosen.begin(), chosen.end());
        steps[step] = std::move(chosen);
        accumulated = std::move(step_base);
    }

    ControlSchedule schedule(horizon, m, std::move(steps));
    return SchedulePick{schedule, metric(gramian(net, schedule), kind)};
}

namespace {

/// Trace-metric chi with the TI/TV gap accumulated per scale, so exactly
/// tied instances yield chi = 0 without cancellation noise.
ChiReport chi_trace_closed_form(const NetworkMatrix& net, int horizon, int m,
                                PowerCache& cache) {
    std::vector<Vector> diagonals;
    diagonals.reserve(horizon);
    for (int k = 0; k < horizon; ++k)
        diagonals.push_back(squared_column_norms(cache.power(k)));

    SchedulePick tv = tvcs_trace(net, horizon, m, cache);
    SchedulePick ti = tics_trace(net, horizon, m, cache);

    double gap = 0.0;
    for (int k = 0; k < horizon; ++k) {
        const auto [nodes, best_sum] = top_m(diagonals[k], m);
        double ti_sum = 0.0;
        for (int i : ti.schedule.nodes_at(0)) ti_sum += diagonals[k][i];
        gap += best_sum - ti_sum;
    }

    if (ti.value <= 0.0)
        throw Error("chi_report: degenerate baseline (optimal TICS value is zero)");

    ChiReport report;
    report.metric = MetricKind::Trace;
    report.f_ti = ti.value;
    report.f_tv = tv.value;
    report.chi = gap / ti.value;
    report.schedule_ti = std::move(ti.schedule);
    report.schedule_tv = std::move(tv.schedule);
    report.solver = SolverKind::ClosedFormTrace;
    report.class_label = report.chi > kChiEpsilon ? 'V' : 'I';
    return report;
}

}  // namespace

ChiReport chi_report(const NetworkMatrix& net, int horizon, MetricKind kind, int m,
                     std::uint64_t budget) {
    PowerCache cache(net.adjacency());
    return chi_report(net, horizon, kind, m, budget, cache);
}

ChiReport chi_report(const NetworkMatrix& net, int horizon, MetricKind kind, int m,
                     std::uint64_t budget, PowerCache& cache) {
    require_step_count(net, horizon, m);
    if (kind == MetricKind::Trace) return chi_trace_closed_form(net, horizon, m, cache);

    if (m != 1)
        throw ConfigError("chi_report: non-trace metrics support a single input per step");

    SchedulePick ti = exhaustive_schedule(net, horizon, kind, /*constant_only=*/true, budget);
    if (ti.value <= 0.0)
        throw Error("chi_report: degenerate baseline (optimal TICS value is zero)");

    ChiReport report;
    report.metric = kind;
    report.f_ti = ti.value;
    report.schedule_ti = ti.schedule;

    const bool tv_exact =
        schedule_count(net.size(), horizon, budget) <= budget;
    if (tv_exact) {
        SchedulePick tv = exhaustive_schedule(net, horizon, kind, /*constant_only=*/false, budget);
        report.f_tv = tv.value;
        report.schedule_tv = std::move(tv.schedule);
        report.solver = SolverKind::Exhaustive;
    } else {
        SchedulePick tv = greedy_schedule(net, horizon, kind, m);
        // The constant optimum is itself a valid time-varying schedule, so
        // the reported lower bound never drops below the TI value.
        if (tv.value >= ti.value) {
            report.f_tv = tv.value;
            report.schedule_tv = std::move(tv.schedule);
        } else {
            report.f_tv = ti.value;
            report.schedule_tv = ti.schedule;
        }
        report.solver = SolverKind::Greedy;
        report.chi_is_lower_bound = true;
    }

    report.chi = (report.f_tv - report.f_ti) / report.f_ti;
    report.class_label = report.chi > kChiEpsilon ? 'V' : 'I';
    return report;
}

ChiHorizonSweep chi_vs_horizon(const NetworkMatrix& net, int max_horizon, MetricKind kind, int m,
                               std::uint64_t budget) {
    if (max_horizon < 2) throw ConfigError("chi_vs_horizon: horizon cap must be at least 2");
    require_step_count(net, 1, m);

    ChiHorizonSweep sweep;
    sweep.best_chi = -1.0;

    if (kind == MetricKind::Trace) {
        // One shared cache; every horizon reuses the same diagonals.
        PowerCache cache(net.adjacency());
        const int n = net.size();
        std::vector<Vector> diagonals;
        std::vector<double> best_step_sum;
        Vector cumulative = Vector::Zero(n);
        double tv_running = 0.0;
        for (int k = 0; k < max_horizon; ++k) {
            diagonals.push_back(squared_column_norms(cache.power(k)));
            const auto [nodes, sum] = top_m(diagonals[k], m);
            best_step_sum.push_back(sum);
            cumulative += diagonals[k];
            tv_running += sum;
            const int horizon = k + 1;
            if (horizon < 2) continue;
            const auto [ti_nodes, ti_value] = top_m(cumulative, m);
            if (ti_value <= 0.0)
                throw Error("chi_vs_horizon: degenerate baseline at horizon " +
                            std::to_string(horizon));
            double gap = 0.0;
            for (int j = 0; j < horizon; ++j) {
                double ti_sum = 0.0;
                for (int i : ti_nodes) ti_sum += diagonals[j][i];
                gap += best_step_sum[j] - ti_sum;
            }
            sweep.points.push_back({horizon, gap / ti_value});
        }
    } else {
        for (int horizon = 2; horizon <= max_horizon; ++horizon)
            sweep.points.push_back({horizon, chi_report(net, horizon, kind, m, budget).chi});
    }

    for (const auto& point : sweep.points) {
        if (point.chi > sweep.best_chi) {
            sweep.best_chi = point.chi;
            sweep.best_horizon = point.horizon;
        }
    }
    return sweep;
}

}  // namespace netsched
