#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netsched/communicability.hpp"
#include "netsched/edge_list.hpp"
#include "netsched/gramian.hpp"
#include "netsched/manipulation.hpp"
#include "netsched/netgen.hpp"
#include "netsched/scheduling.hpp"

namespace netsched {

inline constexpr const char* kToolVersion = "netsched 1.0.0";
inline constexpr const char* kInductionFormulaTag = "expm(tau*(C/rho(C)-leak*I)) v1";

enum class ConversionMethod { Transmission, Induction, None };

ConversionMethod conversion_from_string(const std::string& name);
std::string to_string(ConversionMethod method);

/// One fully specified analysis: input, conversion, and requested outputs.
/// Every report embeds this configuration so results are reproducible.
struct AnalysisConfig {
    std::optional<std::string> edge_list_path;
    EdgeListOptions edge_options;
    std::optional<GeneratorConfig> generator;

    ConversionMethod method = ConversionMethod::Transmission;
    double tau = 1.0;
    double leak = 1.0;

    int horizon = 10;
    MetricKind metric = MetricKind::Trace;
    int m = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultExhaustiveBudget;

    bool want_chi = true;
    bool want_profile = false;
    bool want_dominance = false;
    bool want_manipulation = false;
    std::vector<int> manifest;
    int manipulation_trials = 16;
    double norm_cap = 1.0;
};

/// Loads or generates the network described by the config and applies the
/// requested conversion.
NetworkMatrix resolve_network(const AnalysisConfig& config);

/// Runs the configured analyses and serializes results (12 significant
/// digits, stable key order). Deterministic: identical configs produce
/// byte-identical documents.
nlohmann::ordered_json run_analysis(const AnalysisConfig& config);

/// Doubles rounded to 12 significant decimal digits for stable reports.
double round_to_12_digits(double x);
nlohmann::ordered_json json_number(double x);

/// --- Ensemble sweeps -----------------------------------------------------

/// Per-network record of the chi/communicability statistics used by the
/// ensemble analyses.
struct RandomNetRecord {
    int n = 0;
    double chi = 0.0;
    bool class_v = false;        ///< chi > kChiEpsilon
    bool heterogeneous = false;  ///< scale-heterogeneity test outcome
    bool same_leader = false;    ///< max-attaining sets at k=1 and k=K-1 intersect
    double dominance = 0.0;      ///< asymptotic-scale dominance report value
};

/// Random connectivity ensemble: log-uniform n in [n_min, n_max], uniform
/// sparsity p in [0, 1], uniform weights in [0, 1] on an undirected pattern,
/// transmission-converted, trace chi at the given horizon. Replicates are
/// independently seeded, so results do not depend on the worker count.
std::vector<RandomNetRecord> random_ensemble(int count, int n_min, int n_max, int horizon,
                                             std::uint64_t seed);

struct SweepRow {
    GraphFamily family = GraphFamily::ErdosRenyi;
    int n = 0;
    double param = 0.0;  ///< p (ER), m_a (BA) or beta (WS)
    int replicates = 0;
    double mean_chi = 0.0;
    double std_chi = 0.0;
    double fraction_class_v = 0.0;
    double fraction_same_leader = 0.0;
    double mean_dominance_same = 0.0;  ///< among same-leader networks
};

/// Generator grid sweep: for each (n, param) cell, `replicates` networks
/// of the family are generated with uniform random weights, transmission-
/// converted and analyzed under the trace metric.
std::vector<SweepRow> ensemble_sweep(GraphFamily family, const std::vector<int>& sizes,
                                     const std::vector<double>& params, int replicates,
                                     int horizon, std::uint64_t seed);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string manipulation_csv(const std::vector<ManipulationSweepRow>& rows);
std::string profile_csv(const CommunicabilityProfile& prof);
std::string chi_horizon_csv(const ChiHorizonSweep& sweep);

}  // namespace netsched
