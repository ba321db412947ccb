// Command-line front end for network control scheduling analyses:
// generation, conversion, communicability profiles, optimal schedules,
// chi reports, horizon and ensemble sweeps, and manifest manipulation.

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <string>

#include "netsched/analysis.hpp"
#include "netsched/reference.hpp"

namespace {

// Exit codes: 0 ok, 2 parse, 3 dimension, 4 controllability, 5 budget,
// 6 config, 1 anything else.
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitControllability = 4;
constexpr int kExitBudget = 5;
constexpr int kExitConfig = 6;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw netsched::Error("cannot write output file '" + path + "'");
    out << content;
}

struct CommonFlags {
    int horizon = 10;
    std::string metric = "trace";
    int m = 1;
    std::string method = "transmission";
    double tau = 1.0;
    double leak = 1.0;
    std::uint64_t seed = 0;
    int workers = 0;
    std::uint64_t budget = netsched::kDefaultExhaustiveBudget;
    std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--k", flags.horizon, "time horizon K");
    cmd->add_option("--metric", flags.metric, "controllability metric: trace|trinv|det|mineig");
    cmd->add_option("--m", flags.m, "inputs per step");
    cmd->add_option("--method", flags.method, "conversion: transmission|induction|none");
    cmd->add_option("--tau", flags.tau, "induction sampling interval");
    cmd->add_option("--leak", flags.leak, "induction decay rate");
    cmd->add_option("--seed", flags.seed, "base RNG seed");
    cmd->add_option("--workers", flags.workers, "OpenMP worker count (0 = default)");
    cmd->add_option("--budget", flags.budget, "exhaustive-search evaluation budget");
    cmd->add_option("--output", flags.output, "output file ('-' = stdout)");
}

struct InputFlags {
    std::string input;
    bool directed = false;
    bool one_based = false;
    int declared_nodes = 0;
    std::string family;
    int n = 0;
    double p = 0.1;
    int ma = 1;
    int kring = 4;
    double beta = 0.1;
    double edge_weight = 1.0;
    std::string weights = "unit";
};

void add_input(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--input", flags.input, "edge-list file");
    cmd->add_flag("--directed", flags.directed, "treat the edge list / ER graph as directed");
    cmd->add_flag("--one-based", flags.one_based, "edge-list node ids start at 1");
    cmd->add_option("--nodes", flags.declared_nodes, "declared node count (isolates allowed)");
    cmd->add_option("--family", flags.family, "generator family: line|ring|star|er|ba|ws");
    cmd->add_option("--n", flags.n, "generated node count");
    cmd->add_option("--p", flags.p, "ER edge probability");
    cmd->add_option("--ma", flags.ma, "BA attachment count");
    cmd->add_option("--kring", flags.kring, "WS lattice neighbors (even)");
    cmd->add_option("--beta", flags.beta, "WS rewiring probability");
    cmd->add_option("--edge-weight", flags.edge_weight, "line/ring/star edge weight");
    cmd->add_option("--weights", flags.weights, "edge weights: unit|uniform");
}

netsched::GeneratorConfig generator_from_flags(const InputFlags& in, std::uint64_t seed) {
    netsched::GeneratorConfig config;
    config.family = netsched::family_from_string(in.family);
    config.n = in.n;
    config.edge_weight = in.edge_weight;
    config.edge_prob = in.p;
    config.attach_count = in.ma;
    config.ring_neighbors = in.kring;
    config.rewire_prob = in.beta;
    config.directed = in.directed;
    config.seed = seed;
    if (in.weights == "unit")
        config.weight_mode = netsched::WeightMode::Unit;
    else if (in.weights == "uniform")
        config.weight_mode = netsched::WeightMode::UniformRandom;
    else
        throw netsched::ConfigError("unknown weight mode '" + in.weights + "'");
    return config;
}

netsched::AnalysisConfig analysis_from_flags(const CommonFlags& common, const InputFlags& in) {
    netsched::AnalysisConfig config;
    if (!in.input.empty()) {
        config.edge_list_path = in.input;
        config.edge_options.directed = in.directed;
        config.edge_options.one_based = in.one_based;
        config.edge_options.declared_nodes = in.declared_nodes;
    } else if (!in.family.empty()) {
        config.generator = generator_from_flags(in, common.seed);
    } else {
        throw netsched::ConfigError("specify --input FILE or --family FAMILY --n N");
    }
    config.method = netsched::conversion_from_string(common.method);
    config.tau = common.tau;
    config.leak = common.leak;
    config.horizon = common.horizon;
    config.metric = netsched::metric_from_string(common.metric);
    config.m = common.m;
    config.seed = common.seed;
    config.budget = common.budget;
    return config;
}

void apply_workers(int workers) {
    if (workers > 0) omp_set_num_threads(workers);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network control scheduling toolkit"};
    app.require_subcommand(1);

    // --- generate ---------------------------------------------------------
    auto* cmd_generate = app.add_subcommand("generate", "generate a connectivity edge list");
    CommonFlags gen_common;
    InputFlags gen_input;
    add_common(cmd_generate, gen_common);
    add_input(cmd_generate, gen_input);

    // --- convert ----------------------------------------------------------
    auto* cmd_convert =
        app.add_subcommand("convert", "convert raw connectivity to dynamics (edge list out)");
    CommonFlags conv_common;
    InputFlags conv_input;
    add_common(cmd_convert, conv_common);
    add_input(cmd_convert, conv_input);

    // --- communicability ----------------------------------------------------
    auto* cmd_comm =
        app.add_subcommand("communicability", "2k-communicability profile as CSV");
    CommonFlags comm_common;
    InputFlags comm_input;
    add_common(cmd_comm, comm_common);
    add_input(cmd_comm, comm_input);

    // --- schedule -----------------------------------------------------------
    auto* cmd_schedule = app.add_subcommand("schedule", "optimal control schedule as JSON");
    CommonFlags sched_common;
    InputFlags sched_input;
    std::string solver = "tvcs";
    add_common(cmd_schedule, sched_common);
    add_input(cmd_schedule, sched_input);
    cmd_schedule->add_option("--solver", solver,
                             "tvcs|tics|exhaustive|exhaustive-constant|greedy");

    // --- chi ----------------------------------------------------------------
    auto* cmd_chi = app.add_subcommand("chi", "TVCS-vs-TICS advantage report as JSON");
    CommonFlags chi_common;
    InputFlags chi_input;
    bool chi_with_profile = false;
    bool chi_with_dominance = false;
    add_common(cmd_chi, chi_common);
    add_input(cmd_chi, chi_input);
    cmd_chi->add_flag("--with-profile", chi_with_profile, "embed the communicability profile");
    cmd_chi->add_flag("--with-dominance", chi_with_dominance, "embed the dominance report");

    // --- chi-sweep ----------------------------------------------------------
    auto* cmd_chisweep = app.add_subcommand("chi-sweep", "chi as a function of K (CSV)");
    CommonFlags cs_common;
    InputFlags cs_input;
    add_common(cmd_chisweep, cs_common);
    add_input(cmd_chisweep, cs_input);

    // --- manipulate -----------------------------------------------------------
    auto* cmd_manip = app.add_subcommand("manipulate",
                                         "manifest-subnetwork manipulation search (JSON)");
    CommonFlags man_common;
    InputFlags man_input;
    std::vector<int> manifest_nodes;
    std::vector<double> man_fractions;
    int man_trials = 16;
    double man_cap = 1.0;
    int man_replicates = 20;
    add_common(cmd_manip, man_common);
    add_input(cmd_manip, man_input);
    cmd_manip->add_option("--manifest", manifest_nodes, "manifest node indices");
    cmd_manip->add_option("--fractions", man_fractions,
                          "sweep mode: manifest fractions in (0,1]");
    cmd_manip->add_option("--replicates", man_replicates, "sweep replicates per fraction");
    cmd_manip->add_option("--trials", man_trials, "search directions per problem");
    cmd_manip->add_option("--norm-cap", man_cap, "max ||dA||_2 / ||A||_2");

    // --- sweep ----------------------------------------------------------------
    auto* cmd_sweep = app.add_subcommand("sweep", "ensemble chi statistics (CSV)");
    CommonFlags sweep_common;
    std::string sweep_family = "er";
    std::vector<int> sweep_sizes{20, 100};
    std::vector<double> sweep_params{0.3};
    int sweep_replicates = 100;
    int rnd_nmin = 10, rnd_nmax = 100;
    add_common(cmd_sweep, sweep_common);
    cmd_sweep->add_option("--family", sweep_family, "er|ba|ws|random (log-uniform sizes)");
    cmd_sweep->add_option("--sizes", sweep_sizes, "node counts");
    cmd_sweep->add_option("--params", sweep_params, "p (er), m_a (ba) or beta (ws) values");
    cmd_sweep->add_option("--replicates", sweep_replicates, "networks per grid cell");
    cmd_sweep->add_option("--nmin", rnd_nmin, "random ensemble: min n");
    cmd_sweep->add_option("--nmax", rnd_nmax, "random ensemble: max n");

    try {
        app.parse(argc, argv);

        if (cmd_generate->parsed()) {
            apply_workers(gen_common.workers);
            if (gen_input.family.empty())
                throw netsched::ConfigError("generate: --family and --n are required");
            const auto raw =
                netsched::generate(generator_from_flags(gen_input, gen_common.seed));
            if (gen_common.output.empty() || gen_common.output == "-")
                throw netsched::ConfigError("generate: --output FILE is required");
            netsched::save_edge_list(gen_common.output, raw, gen_input.one_based);
        } else if (cmd_convert->parsed()) {
            apply_workers(conv_common.workers);
            const auto config = analysis_from_flags(conv_common, conv_input);
            const auto net = netsched::resolve_network(config);
            if (conv_common.output.empty() || conv_common.output == "-")
                throw netsched::ConfigError("convert: --output FILE is required");
            netsched::save_edge_list(conv_common.output,
                                     netsched::RawConnectivity{net.adjacency(), true},
                                     conv_input.one_based);
        } else if (cmd_comm->parsed()) {
            apply_workers(comm_common.workers);
            const auto config = analysis_from_flags(comm_common, comm_input);
            const auto net = netsched::resolve_network(config);
            const auto prof = netsched::profile(net, config.horizon);
            write_output(comm_common.output, netsched::profile_csv(prof));
        } else if (cmd_schedule->parsed()) {
            apply_workers(sched_common.workers);
            const auto config = analysis_from_flags(sched_common, sched_input);
            const auto net = netsched::resolve_network(config);
            netsched::SchedulePick pick{netsched::ControlSchedule(1, 1, {{0}}), 0.0};
            if (solver == "tvcs")
                pick = netsched::tvcs_trace(net, config.horizon, config.m);
            else if (solver == "tics")
                pick = netsched::tics_trace(net, config.horizon, config.m);
            else if (solver == "exhaustive")
                pick = netsched::exhaustive_schedule(net, config.horizon, config.metric, false,
                                                     config.budget);
            else if (solver == "exhaustive-constant")
                pick = netsched::exhaustive_schedule(net, config.horizon, config.metric, true,
                                                     config.budget);
            else if (solver == "greedy")
                pick = netsched::greedy_schedule(net, config.horizon, config.metric, config.m);
            else
                throw netsched::ConfigError("unknown solver '" + solver + "'");
            nlohmann::ordered_json j;
            j["solver"] = solver;
            j["value"] = netsched::json_number(pick.value);
            nlohmann::ordered_json steps = nlohmann::ordered_json::array();
            for (int k = 0; k < pick.schedule.horizon(); ++k)
                steps.push_back(pick.schedule.nodes_at(k));
            j["schedule"] = steps;
            write_output(sched_common.output, j.dump(2) + "\n");
        } else if (cmd_chi->parsed()) {
            apply_workers(chi_common.workers);
            auto config = analysis_from_flags(chi_common, chi_input);
            config.want_profile = chi_with_profile;
            config.want_dominance = chi_with_dominance;
            write_output(chi_common.output, netsched::run_analysis(config).dump(2) + "\n");
        } else if (cmd_chisweep->parsed()) {
            apply_workers(cs_common.workers);
            const auto config = analysis_from_flags(cs_common, cs_input);
            const auto net = netsched::resolve_network(config);
            const auto sweep = netsched::chi_vs_horizon(net, config.horizon, config.metric,
                                                        config.m, config.budget);
            write_output(cs_common.output, netsched::chi_horizon_csv(sweep));
        } else if (cmd_manip->parsed()) {
            apply_workers(man_common.workers);
            if (!man_fractions.empty()) {
                if (man_input.n <= 0)
                    throw netsched::ConfigError("manipulate sweep: --n is required");
                const auto rows = netsched::manipulation_sweep(
                    man_input.n, man_fractions, man_replicates, man_common.horizon,
                    man_common.seed, man_trials, man_cap);
                write_output(man_common.output, netsched::manipulation_csv(rows));
            } else {
                auto config = analysis_from_flags(man_common, man_input);
                if (manifest_nodes.empty())
                    throw netsched::ConfigError("manipulate: --manifest is required");
                config.want_chi = false;
                config.want_manipulation = true;
                config.manifest = manifest_nodes;
                config.manipulation_trials = man_trials;
                config.norm_cap = man_cap;
                write_output(man_common.output, netsched::run_analysis(config).dump(2) + "\n");
            }
        } else if (cmd_sweep->parsed()) {
            apply_workers(sweep_common.workers);
            if (sweep_family == "random") {
                const auto records = netsched::random_ensemble(
                    sweep_replicates, rnd_nmin, rnd_nmax, sweep_common.horizon,
                    sweep_common.seed);
                std::string csv = "n,chi,class_v,heterogeneous,same_leader,dominance\n";
                for (const auto& rec : records) {
                    char line[160];
                    std::snprintf(line, sizeof line, "%d,%.12g,%d,%d,%d,%.12g\n", rec.n, rec.chi,
                                  rec.class_v ? 1 : 0, rec.heterogeneous ? 1 : 0,
                                  rec.same_leader ? 1 : 0, rec.dominance);
                    csv += line;
                }
                write_output(sweep_common.output, csv);
            } else {
                const auto rows = netsched::ensemble_sweep(
                    netsched::family_from_string(sweep_family), sweep_sizes, sweep_params,
                    sweep_replicates, sweep_common.horizon, sweep_common.seed);
                write_output(sweep_common.output, netsched::sweep_csv(rows));
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const netsched::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const netsched::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const netsched::ControllabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitControllability;
    } catch (const netsched::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const netsched::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
