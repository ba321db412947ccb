// Benchmark comparing the OpenMP/cached kernels against the serial
// reference implementations on representative workloads.

#include <omp.h>

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "netsched/analysis.hpp"
#include "netsched/reference.hpp"
#include "netsched/rng.hpp"

using namespace netsched;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double timed(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return seconds_since(start);
}

NetworkMatrix random_transmission_net(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    Matrix c = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) {
                const double w = rng.uniform();
                c(i, j) += w;
                c(j, i) += w;
            }
    return transmission(RawConnectivity{std::move(c), false});
}

void report(const char* name, double serial, double parallel, double max_rel_diff) {
    std::printf("%-34s %10.3fs %10.3fs %8.2fx %12.3g\n", name, serial, parallel,
                serial / parallel, max_rel_diff);
}

}  // namespace

int main() {
    const int threads = omp_get_max_threads();
    std::printf("threads: %d\n", threads);
    std::printf("%-34s %11s %11s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
                "max rel diff");

    // Communicability profile at transportation-network scale.
    {
        const NetworkMatrix net = random_transmission_net(500, 0.05, 7);
        const int horizon = 10;
        Matrix serial_r, parallel_r;
        Eigen::setNbThreads(1);
        omp_set_num_threads(1);
        const double t_serial = timed([&] { serial_r = ref::profile(net, horizon); });
        Eigen::setNbThreads(threads);
        omp_set_num_threads(threads);
        CommunicabilityProfile prof;
        const double t_parallel = timed([&] { prof = profile(net, horizon); });
        const double diff = (serial_r - prof.r_values).cwiseAbs().maxCoeff() /
                            serial_r.cwiseAbs().maxCoeff();
        report("profile n=500 K=10", t_serial, t_parallel, diff);
    }

    // Exhaustive TVCS search, trace metric.
    {
        const NetworkMatrix net = random_transmission_net(7, 0.5, 11);
        const int horizon = 7;  // 7^7 = 823543 schedules
        SchedulePick serial_pick{ControlSchedule(1, 1, {{0}}), 0.0};
        SchedulePick parallel_pick = serial_pick;
        Eigen::setNbThreads(1);
        omp_set_num_threads(1);
        const double t_serial = timed([&] {
            serial_pick = ref::exhaustive_schedule(net, horizon, MetricKind::Trace, false);
        });
        Eigen::setNbThreads(threads);
        omp_set_num_threads(threads);
        const double t_parallel = timed([&] {
            parallel_pick = exhaustive_schedule(net, horizon, MetricKind::Trace, false);
        });
        const double diff = std::abs(serial_pick.value - parallel_pick.value) /
                            std::abs(serial_pick.value);
        report("exhaustive TVCS n=7 K=7", t_serial, t_parallel, diff);
    }

    // Random ensemble chi statistics.
    {
        const int count = 300;
        std::vector<RandomNetRecord> serial_recs, parallel_recs;
        Eigen::setNbThreads(1);
        omp_set_num_threads(1);
        const double t_serial =
            timed([&] { serial_recs = random_ensemble(count, 10, 80, 10, 3); });
        Eigen::setNbThreads(threads);
        omp_set_num_threads(threads);
        const double t_parallel =
            timed([&] { parallel_recs = random_ensemble(count, 10, 80, 10, 3); });
        double diff = 0.0;
        for (int i = 0; i < count; ++i)
            diff = std::max(diff, std::abs(serial_recs[i].chi - parallel_recs[i].chi));
        report("random ensemble 300 nets", t_serial, t_parallel, diff);
    }

    // Manipulation search.
    {
        const NetworkMatrix net = random_transmission_net(50, 0.3, 5);
        const NetworkMatrix normalized = normalize_spectral(net);
        ManifestProblem problem{normalized, {0, 1, 2, 3, 4}, 10, 16, 1.0};
        ManipulationResult serial_res, parallel_res;
        Eigen::setNbThreads(1);
        omp_set_num_threads(1);
        const double t_serial = timed([&] { serial_res = find_min_manipulation(problem, 99); });
        Eigen::setNbThreads(threads);
        omp_set_num_threads(threads);
        const double t_parallel =
            timed([&] { parallel_res = find_min_manipulation(problem, 99); });
        const double diff =
            std::abs(serial_res.relative_norm - parallel_res.relative_norm);
        report("manipulation n=50 |M|=5", t_serial, t_parallel, diff);
    }

    return 0;
}
