#pragma once

#include <cstdint>
#include <vector>

#include "netsched/communicability.hpp"
#include "netsched/power_cache.hpp"
#include "netsched/types.hpp"

namespace netsched {

/// Relative threshold separating class V (chi > eps) from class I.
inline constexpr double kChiEpsilon = 1e-9;

/// Default cap on Gramian evaluations in the exhaustive solvers.
inline constexpr std::uint64_t kDefaultExhaustiveBudget = 2'000'000;

struct SchedulePick {
    ControlSchedule schedule;
    double value = 0.0;
};

/// Closed-form optimal time-varying schedule under the trace metric: step
/// K-1-k actuates the m nodes with the largest diagonal of (A^k)^T A^k
/// (ties broken toward the lowest index). For m = 1 this is exactly
/// iota*_k = r(K-1-k).
SchedulePick tvcs_trace(const NetworkMatrix& net, int horizon, int m = 1);
SchedulePick tvcs_trace(const NetworkMatrix& net, int horizon, int m, PowerCache& cache);

/// Closed-form optimal constant schedule under the trace metric: the m
/// nodes with the largest diagonal of sum_k (A^k)^T A^k.
SchedulePick tics_trace(const NetworkMatrix& net, int horizon, int m = 1);
SchedulePick tics_trace(const NetworkMatrix& net, int horizon, int m, PowerCache& cache);

/// Global maximizer of metric(gramian(.)) over all single-input schedules
/// (or all constant ones). Ties resolve to the lexicographically smallest
/// schedule; the result is independent of the worker count. Throws
/// BudgetError when the enumeration would exceed `budget` evaluations.
SchedulePick exhaustive_schedule(const NetworkMatrix& net, int horizon, MetricKind kind,
                                 bool constant_only,
                                 std::uint64_t budget = kDefaultExhaustiveBudget);

/// Forward greedy schedule for any metric: at each step the candidate
/// columns A^{K-1-k} e_i are scored by the metric of the regularized
/// partial Gramian; ties fall back to a lexicographic comparison of the
/// ascending spectrum and then to the lowest node index. Exact for Trace.
SchedulePick greedy_schedule(const NetworkMatrix& net, int horizon, MetricKind kind, int m = 1);

enum class SolverKind { ClosedFormTrace, Exhaustive, Greedy };

inline const char* to_string(SolverKind s) {
    switch (s) {
        case SolverKind::ClosedFormTrace: return "closed-form-trace";
        case SolverKind::Exhaustive: return "exhaustive";
        case SolverKind::Greedy: return "greedy";
    }
    return "unknown";
}

/// Relative advantage of time-varying over time-invariant scheduling.
struct ChiReport {
    MetricKind metric = MetricKind::Trace;
    double f_ti = 0.0;
    double f_tv = 0.0;
    double chi = 0.0;
    ControlSchedule schedule_ti{1, 1, {{0}}};
    ControlSchedule schedule_tv{1, 1, {{0}}};
    char class_label = 'I';  ///< 'V' iff chi > kChiEpsilon
    SolverKind solver = SolverKind::ClosedFormTrace;
    bool chi_is_lower_bound = false;  ///< true when the TV side is greedy-only
};

/// chi = (f_tv - f_ti) / f_ti. Trace uses the closed forms; other metrics
/// use the exhaustive solver when n^K fits the budget and otherwise fall
/// back to greedy for the TV side (the TI side enumerates all n constant
/// schedules exactly). Throws Error("degenerate baseline") when f_ti = 0.
ChiReport chi_report(const NetworkMatrix& net, int horizon, MetricKind kind, int m = 1,
                     std::uint64_t budget = kDefaultExhaustiveBudget);
ChiReport chi_report(const NetworkMatrix& net, int horizon, MetricKind kind, int m,
                     std::uint64_t budget, PowerCache& cache);

struct ChiHorizonPoint {
    int horizon = 0;
    double chi = 0.0;
};

struct ChiHorizonSweep {
    std::vector<ChiHorizonPoint> points;  ///< one entry per K in 2..K_max
    int best_horizon = 0;
    double best_chi = 0.0;
};

/// chi as a function of the horizon, reusing one power cache across all K.
ChiHorizonSweep chi_vs_horizon(const NetworkMatrix& net, int max_horizon,
                               MetricKind kind = MetricKind::Trace, int m = 1,
                               std::uint64_t budget = kDefaultExhaustiveBudget);

}  // namespace netsched
