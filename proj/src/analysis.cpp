#include "netsched/analysis.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "netsched/rng.hpp"

namespace netsched {

using nlohmann::ordered_json;

ConversionMethod conversion_from_string(const std::string& name) {
    if (name == "transmission") return ConversionMethod::Transmission;
    if (name == "induction") return ConversionMethod::Induction;
    if (name == "none") return ConversionMethod::None;
    throw ConfigError("unknown conversion method '" + name +
                      "' (expected transmission|induction|none)");
}

std::string to_string(ConversionMethod method) {
    switch (method) {
        case ConversionMethod::Transmission: return "transmission";
        case ConversionMethod::Induction: return "induction";
        case ConversionMethod::None: return "none";
    }
    return "unknown";
}

double round_to_12_digits(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return std::strtod(buffer, nullptr);
}

ordered_json json_number(double x) { return ordered_json(round_to_12_digits(x)); }

namespace {

ordered_json schedule_to_json(const ControlSchedule& schedule) {
    ordered_json steps = ordered_json::array();
    for (int k = 0; k < schedule.horizon(); ++k) steps.push_back(schedule.nodes_at(k));
    return steps;
}

ordered_json config_to_json(const AnalysisConfig& config) {
    ordered_json j;
    if (config.edge_list_path) {
        j["input"] = *config.edge_list_path;
        j["directed"] = config.edge_options.directed;
        j["one_based"] = config.edge_options.one_based;
        if (config.edge_options.declared_nodes > 0)
            j["declared_nodes"] = config.edge_options.declared_nodes;
    }
    if (config.generator) {
        const GeneratorConfig& g = *config.generator;
        ordered_json gen;
        gen["family"] = to_string(g.family);
        gen["n"] = g.n;
        switch (g.family) {
            case GraphFamily::Line:
            case GraphFamily::Ring:
            case GraphFamily::Star:
                gen["edge_weight"] = json_number(g.edge_weight);
                break;
            case GraphFamily::ErdosRenyi:
                gen["p"] = json_number(g.edge_prob);
                gen["directed"] = g.directed;
                break;
            case GraphFamily::BarabasiAlbert:
                gen["ma"] = g.attach_count;
                break;
            case GraphFamily::WattsStrogatz:
                gen["kring"] = g.ring_neighbors;
                gen["beta"] = json_number(g.rewire_prob);
                break;
        }
        gen["weights"] = g.weight_mode == WeightMode::Unit ? "unit" : "uniform";
        gen["seed"] = g.seed;
        j["generator"] = gen;
    }
    j["method"] = to_string(config.method);
    if (config.method == ConversionMethod::Induction) {
        j["tau"] = json_number(config.tau);
        j["leak"] = json_number(config.leak);
    }
    j["k"] = config.horizon;
    j["metric"] = to_string(config.metric);
    j["m"] = config.m;
    j["seed"] = config.seed;
    j["budget"] = config.budget;
    return j;
}

ordered_json provenance_json() {
    ordered_json j;
    j["tool"] = kToolVersion;
    j["induction_formula"] = kInductionFormulaTag;
    j["tie_break"] = "lowest-index";
    j["chi_epsilon"] = kChiEpsilon;
    j["condition_cap"] = kConditionCap;
    j["singular_threshold_factor"] = kSingularThresholdFactor;
    return j;
}

}  // namespace

NetworkMatrix resolve_network(const AnalysisConfig& config) {
    RawConnectivity raw;
    if (config.edge_list_path && config.generator)
        throw ConfigError("analysis: specify either an edge list or a generator, not both");
    if (config.edge_list_path) {
        raw = load_edge_list(*config.edge_list_path, config.edge_options);
    } else if (config.generator) {
        raw = generate(*config.generator);
    } else {
        throw ConfigError("analysis: no input network specified");
    }
    switch (config.method) {
        case ConversionMethod::Transmission:
            return transmission(raw);
        case ConversionMethod::Induction:
            return induction(raw, config.tau, config.leak);
        case ConversionMethod::None:
            return NetworkMatrix(std::move(raw.c));
    }
    throw ConfigError("analysis: unknown conversion method");
}

ordered_json run_analysis(const AnalysisConfig& config) {
    const NetworkMatrix net = resolve_network(config);
    PowerCache cache(net.adjacency());  // shared across all requested analyses

    ordered_json report;
    report["config"] = config_to_json(config);
    report["provenance"] = provenance_json();
    report["n"] = net.size();

    if (config.want_chi) {
        const ChiReport chi = chi_report(net, config.horizon, config.metric, config.m,
                                         config.budget, cache);
        ordered_json j;
        j["metric"] = to_string(chi.metric);
        j["f_ti"] = json_number(chi.f_ti);
        j["f_tv"] = json_number(chi.f_tv);
        j["chi"] = json_number(chi.chi);
        j["class"] = std::string(1, chi.class_label);
        j["solver"] = to_string(chi.solver);
        j["chi_is_lower_bound"] = chi.chi_is_lower_bound;
        j["schedule_ti"] = schedule_to_json(chi.schedule_ti);
        j["schedule_tv"] = schedule_to_json(chi.schedule_tv);
        report["chi"] = j;
    }

    if (config.want_profile) {
        const CommunicabilityProfile prof = profile(net, config.horizon, cache);
        ordered_json j;
        j["spectral_radius"] = json_number(prof.spectral_radius);
        j["r_inf_exact"] = prof.r_inf_exact;
        j["argmax_seq"] = prof.argmax_seq;
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < prof.r_values.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < prof.r_values.cols(); ++k)
                row.push_back(json_number(prof.r_values(i, k)));
            rows.push_back(row);
        }
        j["r_values"] = rows;
        ordered_json tail = ordered_json::array();
        for (int i = 0; i < prof.r_inf.size(); ++i) tail.push_back(json_number(prof.r_inf[i]));
        j["r_inf"] = tail;
        report["communicability"] = j;
    }

    if (config.want_dominance) {
        const DominanceReport dom =
            dominance(net, config.horizon, GlobalScale::Asymptotic, cache);
        ordered_json j;
        j["leader"] = dom.leader;
        j["runner_up_local"] = dom.runner_up_local;
        j["runner_up_global"] = dom.runner_up_global;
        j["dominance"] = json_number(dom.dominance);
        j["local_k"] = dom.local_k;
        j["global_scale"] = dom.global_scale == GlobalScale::Asymptotic ? "asymptotic"
                                                                        : "horizon-end";
        j["global_exact"] = dom.global_exact;
        j["scale_heterogeneous"] = scale_heterogeneity_test(net, config.horizon);
        report["dominance"] = j;
    }

    if (config.want_manipulation) {
        ManifestProblem problem{net, config.manifest, config.horizon,
                                config.manipulation_trials, config.norm_cap};
        const ManipulationResult res = find_min_manipulation(problem, config.seed);
        ordered_json j;
        j["manifest"] = config.manifest;
        j["relative_norm"] = json_number(res.relative_norm);
        j["all_manifest"] = res.all_manifest;
        j["tv_value_manipulated"] = json_number(res.tv_value_manipulated);
        j["tv_value_constrained"] = json_number(res.tv_value_constrained);
        j["advantage_ratio"] = json_number(res.advantage_ratio);
        j["negative_entries"] = res.negative_entries;
        j["winning_trial"] = res.winning_trial;
        j["certificate_scale"] = json_number(res.certificate_scale);
        report["manipulation"] = j;
    }

    return report;
}

std::vector<RandomNetRecord> random_ensemble(int count, int n_min, int n_max, int horizon,
                                             std::uint64_t seed) {
    if (count < 0) throw ConfigError("random_ensemble: count must be nonnegative");
    if (n_min < 2 || n_max < n_min)
        throw ConfigError("random_ensemble: need 2 <= n_min <= n_max");

    std::vector<RandomNetRecord> records(count);
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < count; ++rep) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
        const int n = static_cast<int>(
            std::lround(std::exp(rng.uniform(std::log(static_cast<double>(n_min)),
                                             std::log(static_cast<double>(n_max))))));
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

        RandomNetRecord rec;
        rec.n = n;
        PowerCache cache(net.adjacency());
        const ChiReport chi = chi_report(net, horizon, MetricKind::Trace);
        rec.chi = chi.chi;
        rec.class_v = chi.class_label == 'V';
        rec.heterogeneous = scale_heterogeneity_test(net, horizon);
        const Vector local = squared_column_norms(cache.power(1));
        const Vector global = squared_column_norms(cache.power(horizon - 1));
        int arg_local = 0, arg_global = 0;
        for (int i = 1; i < n; ++i) {
            if (local[i] > local[arg_local]) arg_local = i;
            if (global[i] > global[arg_global]) arg_global = i;
        }
        rec.same_leader = arg_local == arg_global;
        rec.dominance = dominance(net, horizon, GlobalScale::Asymptotic).dominance;
        records[rep] = rec;
    }
    return records;
}

std::vector<SweepRow> ensemble_sweep(GraphFamily family, const std::vector<int>& sizes,
                                     const std::vector<double>& params, int replicates,
                                     int horizon, std::uint64_t seed) {
    if (sizes.empty() || params.empty())
        throw ConfigError("ensemble_sweep: grid must be nonempty");
    if (replicates <= 0) return {};  // header-only table

    std::vector<SweepRow> rows;
    std::uint64_t cell_index = 0;
    for (int n : sizes) {
        for (double param : params) {
            SweepRow row;
            row.family = family;
            row.n = n;
            row.param = param;
            row.replicates = replicates;

            std::vector<double> chis(replicates, 0.0);
            std::vector<char> class_v(replicates, 0);
            std::vector<char> same(replicates, 0);
            std::vector<double> dominances(replicates, 0.0);

#pragma omp parallel for schedule(dynamic)
            for (int rep = 0; rep < replicates; ++rep) {
                GeneratorConfig config;
                config.family = family;
                config.n = n;
                config.weight_mode = WeightMode::UniformRandom;
                config.seed = derive_seed(seed, (cell_index << 32) ^
                                                    static_cast<std::uint64_t>(rep));
                switch (family) {
                    case GraphFamily::ErdosRenyi:
                        config.edge_prob = param;
                        break;
                    case GraphFamily::BarabasiAlbert:
                        config.attach_count = static_cast<int>(param);
                        break;
                    case GraphFamily::WattsStrogatz:
                        config.rewire_prob = param;
                        config.ring_neighbors = 4;
                        break;
                    default:
                        config.edge_weight = param;
                        break;
                }
                const NetworkMatrix net = transmission(generate(config));
                const ChiReport chi = chi_report(net, horizon, MetricKind::Trace);
                chis[rep] = chi.chi;
                class_v[rep] = chi.class_label == 'V';
                PowerCache cache(net.adjacency());
                const Vector local = squared_column_norms(cache.power(1));
                const Vector global = squared_column_norms(cache.power(horizon - 1));
                int arg_local = 0, arg_global = 0;
                for (int i = 1; i < n; ++i) {
                    if (local[i] > local[arg_local]) arg_local = i;
                    if (global[i] > global[arg_global]) arg_global = i;
                }
                same[rep] = arg_local == arg_global;
                dominances[rep] = dominance(net, horizon, GlobalScale::Asymptotic).dominance;
            }

            double sum = 0.0, sum2 = 0.0;
            int v_count = 0, same_count = 0;
            double dom_sum = 0.0;
            for (int rep = 0; rep < replicates; ++rep) {
                sum += chis[rep];
                sum2 += chis[rep] * chis[rep];
                v_count += class_v[rep] ? 1 : 0;
                if (same[rep]) {
                    ++same_count;
                    dom_sum += dominances[rep];
                }
            }
            if (replicates > 0) {
                row.mean_chi = sum / replicates;
                row.std_chi =
                    std::sqrt(std::max(0.0, sum2 / replicates - row.mean_chi * row.mean_chi));
                row.fraction_class_v = static_cast<double>(v_count) / replicates;
                row.fraction_same_leader = static_cast<double>(same_count) / replicates;
                row.mean_dominance_same = same_count > 0 ? dom_sum / same_count : 0.0;
            }
            rows.push_back(row);
            ++cell_index;
        }
    }
    return rows;
}

namespace {

std::string format_12(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return buffer;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "family,n,param,replicates,mean_chi,std_chi,fraction_class_v,"
           "fraction_same_leader,mean_dominance_same\n";
    for (const SweepRow& r : rows)
        out << to_string(r.family) << ',' << r.n << ',' << format_12(r.param) << ','
            << r.replicates << ',' << format_12(r.mean_chi) << ',' << format_12(r.std_chi) << ','
            << format_12(r.fraction_class_v) << ',' << format_12(r.fraction_same_leader) << ','
            << format_12(r.mean_dominance_same) << '\n';
    return out.str();
}

std::string manipulation_csv(const std::vector<ManipulationSweepRow>& rows) {
    std::ostringstream out;
    out << "fraction,mean_norm,std_norm,mean_ratio,std_ratio,success_rate\n";
    for (const ManipulationSweepRow& r : rows)
        out << format_12(r.fraction) << ',' << format_12(r.mean_norm) << ','
            << format_12(r.std_norm) << ',' << format_12(r.mean_ratio) << ','
            << format_12(r.std_ratio) << ',' << format_12(r.success_rate) << '\n';
    return out.str();
}

std::string profile_csv(const CommunicabilityProfile& prof) {
    std::ostringstream out;
    out << "node";
    for (int k = 0; k < prof.r_values.cols(); ++k) out << ",k" << k;
    out << ",r_inf\n";
    for (int i = 0; i < prof.r_values.rows(); ++i) {
        out << i;
        for (int k = 0; k < prof.r_values.cols(); ++k)
            out << ',' << format_12(prof.r_values(i, k));
        out << ',' << format_12(prof.r_inf[i]) << '\n';
    }
    return out.str();
}

std::string chi_horizon_csv(const ChiHorizonSweep& sweep) {
    std::ostringstream out;
    out << "k,chi\n";
    for (const ChiHorizonPoint& point : sweep.points)
        out << point.horizon << ',' << format_12(point.chi) << '\n';
    return out.str();
}

}  // namespace netsched
