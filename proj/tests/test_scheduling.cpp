#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "netsched/gramian.hpp"
#include "netsched/reference.hpp"
#include "netsched/scheduling.hpp"

using namespace netsched;
using testutil::chain;
using testutil::random_transmission;
using testutil::rel_diff;

TEST_CASE("tvcs_trace on identity dynamics picks node 0 and value K") {
    const NetworkMatrix net(Matrix::Identity(4, 4));
    const auto pick = tvcs_trace(net, 6);
    CHECK(pick.value == doctest::Approx(6.0));
    for (int k = 0; k < 6; ++k) CHECK(pick.schedule.nodes_at(k) == std::vector<int>{0});
}

TEST_CASE("chain: TVCS and TICS trace optima both equal 5") {
    const NetworkMatrix net = chain(5);
    CHECK(tvcs_trace(net, 5).value == doctest::Approx(5.0));
    const auto ti = tics_trace(net, 5);
    CHECK(ti.value == doctest::Approx(5.0));
    CHECK(ti.schedule.nodes_at(0) == std::vector<int>{0});  // head node
}

TEST_CASE("closed forms agree with the serial exhaustive oracle") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + rng.index(4);  // n <= 5
        const int horizon = 2 + rng.index(3);  // K <= 4
        const NetworkMatrix net = random_transmission(n, rng);

        const auto tv = tvcs_trace(net, horizon);
        const auto tv_oracle = ref::exhaustive_schedule(net, horizon, MetricKind::Trace, false);
        CHECK(rel_diff(tv.value, tv_oracle.value) <= 1e-9);

        const auto ti = tics_trace(net, horizon);
        const auto ti_oracle = ref::exhaustive_schedule(net, horizon, MetricKind::Trace, true);
        CHECK(rel_diff(ti.value, ti_oracle.value) <= 1e-9);
    }
}

TEST_CASE("exhaustive search") {
    SUBCASE("chain: every metric ties TI and TV") {
        const NetworkMatrix net = chain(5);
        for (MetricKind kind : {MetricKind::Trace, MetricKind::TraceInverseInverse,
                                MetricKind::Determinant, MetricKind::MinEigenvalue}) {
            const auto tv = exhaustive_schedule(net, 5, kind, false);
            const auto ti = exhaustive_schedule(net, 5, kind, true);
            CHECK(rel_diff(tv.value, ti.value) <= 1e-12);
        }
    }

    SUBCASE("two-node feeder: four-case enumeration by hand") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = 1.0;  // node 1 feeds node 0
        const NetworkMatrix net = NetworkMatrix(a);
        // Direct evaluation of all 4 schedules with the naive oracle.
        double best = -1.0;
        std::vector<int> best_nodes;
        for (int first : {0, 1})
            for (int second : {0, 1}) {
                const double value =
                    ref::gramian(net, ControlSchedule::single({first, second})).w.trace();
                if (value > best) {
                    best = value;
                    best_nodes = {first, second};
                }
            }
        const auto pick = exhaustive_schedule(net, 2, MetricKind::Trace, false);
        CHECK(pick.value == doctest::Approx(best));
        CHECK(pick.schedule.nodes_at(0) == std::vector<int>{best_nodes[0]});
        CHECK(best_nodes[0] == 1);  // controlling the feeder first reaches both nodes
    }

    SUBCASE("agrees with the trace closed forms") {
        Rng rng(300);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + rng.index(3);
            const NetworkMatrix net = random_transmission(n, rng);
            CHECK(rel_diff(exhaustive_schedule(net, 3, MetricKind::Trace, false).value,
                           tvcs_trace(net, 3).value) <= 1e-12);
            CHECK(rel_diff(exhaustive_schedule(net, 3, MetricKind::Trace, true).value,
                           tics_trace(net, 3).value) <= 1e-12);
        }
    }

    SUBCASE("budget overrun throws") {
        const NetworkMatrix net = chain(10);
        CHECK_THROWS_AS(exhaustive_schedule(net, 10, MetricKind::Trace, false, 1000),
                        BudgetError);
    }
}

TEST_CASE("greedy schedule") {
    SUBCASE("reproduces the trace closed form") {
        Rng rng(123);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + rng.index(7);
            const int horizon = 1 + rng.index(6);
            const NetworkMatrix net = random_transmission(n, rng);
            const auto greedy = greedy_schedule(net, horizon, MetricKind::Trace);
            const auto closed = tvcs_trace(net, horizon);
            CHECK(greedy.schedule == closed.schedule);
            CHECK(rel_diff(greedy.value, closed.value) <= 1e-12);
        }
    }

    SUBCASE("identity dynamics with min-eigenvalue spread over distinct nodes") {
        const int n = 4;
        const NetworkMatrix net(Matrix::Identity(n, n));
        const auto pick = greedy_schedule(net, n, MetricKind::MinEigenvalue);
        std::vector<int> seen;
        for (int k = 0; k < n; ++k) seen.push_back(pick.schedule.nodes_at(k)[0]);
        std::sort(seen.begin(), seen.end());
        CHECK(seen == std::vector<int>{0, 1, 2, 3});
        CHECK(pick.value == doctest::Approx(1.0));
    }

    SUBCASE("never beats the exhaustive optimum") {
        Rng rng(321);
        for (int trial = 0; trial < 12; ++trial) {
            const int n = 2 + rng.index(3);
            const int horizon = 2 + rng.index(3);
            const NetworkMatrix net = random_transmission(n, rng);
            for (MetricKind kind : {MetricKind::Trace, MetricKind::Determinant}) {
                const auto greedy = greedy_schedule(net, horizon, kind);
                const auto best = exhaustive_schedule(net, horizon, kind, false);
                CHECK(greedy.value <= best.value * (1 + 1e-12) + 1e-15);
            }
        }
    }
}

TEST_CASE("chi reports") {
    SUBCASE("chain is class I under every metric") {
        const NetworkMatrix net = chain(5);
        for (MetricKind kind : {MetricKind::Trace, MetricKind::TraceInverseInverse,
                                MetricKind::Determinant, MetricKind::MinEigenvalue}) {
            const auto report = chi_report(net, 5, kind);
            CHECK(report.chi == 0.0);
            CHECK(report.class_label == 'I');
            CHECK(report.f_tv == doctest::Approx(report.f_ti));
        }
    }

    SUBCASE("identity dynamics gain nothing from scheduling") {
        const auto report = chi_report(NetworkMatrix(Matrix::Identity(5, 5)), 4,
                                       MetricKind::Trace);
        CHECK(report.chi == 0.0);
        CHECK(report.class_label == 'I');
    }

    SUBCASE("degenerate baseline throws") {
        // At K < n the chain Gramian is always singular: min-eig TICS is 0.
        CHECK_THROWS_WITH_AS(chi_report(chain(5), 3, MetricKind::MinEigenvalue),
                             doctest::Contains("degenerate baseline"), Error);
    }

    SUBCASE("scale heterogeneity implies class V under trace") {
        Rng rng(555);
        int heterogeneous_seen = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 4 + rng.index(12);
            const NetworkMatrix net = random_transmission(n, rng);
            if (!scale_heterogeneity_test(net, 8)) continue;
            ++heterogeneous_seen;
            CHECK(chi_report(net, 8, MetricKind::Trace).chi > 0.0);
        }
        CHECK(heterogeneous_seen > 10);  // the ensemble must exercise the property
    }

    SUBCASE("f_tv dominates f_ti whenever both sides are exact") {
        Rng rng(777);
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 2 + rng.index(4);
            const NetworkMatrix net = random_transmission(n, rng);
            for (MetricKind kind : {MetricKind::Trace, MetricKind::Determinant}) {
                ChiReport report;
                try {
                    report = chi_report(net, 3, kind);
                } catch (const Error&) {
                    continue;  // degenerate baseline draws
                }
                CHECK(report.f_tv >= report.f_ti);
                CHECK(report.chi >= 0.0);
            }
        }
    }
}

TEST_CASE("trace chi is invariant under positive rescaling of A") {
    Rng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + rng.index(5);
        const Matrix a = testutil::random_matrix(n, rng);
        const auto base = chi_report(NetworkMatrix(a), 5, MetricKind::Trace);
        const auto scaled = chi_report(NetworkMatrix(2.5 * a), 5, MetricKind::Trace);
        CHECK(base.schedule_tv == scaled.schedule_tv);
        CHECK(base.schedule_ti == scaled.schedule_ti);
    }
}

TEST_CASE("trace optima are nondecreasing in the input count m") {
    Rng rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + rng.index(4);
        const NetworkMatrix net = random_transmission(n, rng);
        double prev_tv = 0.0, prev_ti = 0.0;
        for (int m = 1; m <= 3; ++m) {
            const double tv = tvcs_trace(net, 6, m).value;
            const double ti = tics_trace(net, 6, m).value;
            CHECK(tv >= prev_tv);
            CHECK(ti >= prev_ti);
            prev_tv = tv;
            prev_ti = ti;
        }
    }
}

TEST_CASE("multi-input schedules take the m best diagonals per step") {
    Matrix a = Matrix::Zero(4, 4);
    a(1, 0) = 2.0;  // node 0 -> node 1, strongest out-weight
    a(2, 1) = 1.5;
    a(3, 2) = 1.0;
    const NetworkMatrix net(a);
    const auto pick = tvcs_trace(net, 2, 2);
    // k=1 diagonal: R = (4, 2.25, 1, 0) -> last step controls {0, 1}.
    CHECK(pick.schedule.nodes_at(0) == std::vector<int>{0, 1});
    CHECK(pick.value == doctest::Approx(2.0 + 4.0 + 2.25));
}

TEST_CASE("chi as a function of the horizon") {
    SUBCASE("chain and identity stay at zero") {
        const auto chain_sweep = chi_vs_horizon(chain(5), 8);
        for (const auto& point : chain_sweep.points) CHECK(point.chi == 0.0);
        const auto id_sweep = chi_vs_horizon(NetworkMatrix(Matrix::Identity(4, 4)), 6);
        for (const auto& point : id_sweep.points) CHECK(point.chi == 0.0);
    }

    SUBCASE("matches per-horizon chi reports and tracks the maximum") {
        Rng rng(1000);
        const NetworkMatrix net = random_transmission(12, rng);
        const auto sweep = chi_vs_horizon(net, 9);
        REQUIRE(sweep.points.size() == 8);
        double best = -1.0;
        for (const auto& point : sweep.points) {
            const auto report = chi_report(net, point.horizon, MetricKind::Trace);
            CHECK(rel_diff(point.chi, report.chi) <= 1e-12);
            best = std::max(best, point.chi);
        }
        CHECK(sweep.best_chi == doctest::Approx(best));
        CHECK(sweep.best_chi >= sweep.points.front().chi);
    }
}
