// lvfrac: command-line front end for the predator-prey solvers.
//
//   lvfrac simulate  [model/scheme flags]          write <output>/<scheme>.csv and a gnuplot script
//   lvfrac stability [model/scheme flags]          classify E1, E2, E3 for the chosen scheme
//   lvfrac verify    [model/scheme flags] --strict check positivity and feasible-region bounds
//   lvfrac compare   [a.csv b.csv] [--against S]   sup-norm and terminal distance between runs
//   lvfrac sweep     --param sigma|h --values ...  batch over one parameter
//   lvfrac figures   <preset|all>                  reproduce figure2 .. figure10
//
// Exit codes: 0 ok, 1 violation (with --strict) or divergence, 2 usage/config error.

#include <lvfrac/lvfrac.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lvfrac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Resolved {
    ModelParams params = ModelParams::reference_set();
    State initial{0.2, 0.3};
    SchemeConfig config;
    fs::path output = "out";
    bool strict = false;
};

void add_common_flags(CLI::App& cmd, RunSettings& flags, std::string& config_path) {
    cmd.set_help_flag("--help", "Print this help message and exit");
    cmd.add_option("--config", config_path, "Key-value config file; flags override its values");
    cmd.add_option("--alpha", flags.alpha, "Prey growth rate");
    cmd.add_option("--beta", flags.beta, "Predator decay rate");
    cmd.add_option("--p", flags.p, "Interaction rate");
    cmd.add_option("--capacity", flags.capacity, "Carrying capacity C");
    cmd.add_option("--d0", flags.d0, "Initial prey population");
    cmd.add_option("--l0", flags.l0, "Initial predator population");
    cmd.add_option("--scheme", flags.scheme, "reference | euler | mickens | fractional");
    cmd.add_option("--h", flags.h, "Step size");
    cmd.add_option("--t-end", flags.t_end, "Time horizon");
    cmd.add_option("--sigma", flags.sigma, "Fractional order in (0, 1]");
    cmd.add_option("--corrector-passes", flags.corrector_passes, "Fractional corrector applications");
    cmd.add_option("--output", flags.output, "Output directory (or .csv file for simulate)");
    cmd.add_flag("--strict", flags.strict, "Exit with status 1 on any violation");
}

Resolved resolve(const RunSettings& flags, const std::string& config_path) {
    RunSettings rs;
    rs.alpha = 0.05;
    rs.beta = 0.3;
    rs.p = 0.4;
    rs.capacity = 1.0;
    rs.d0 = 0.2;
    rs.l0 = 0.3;
    rs.scheme = "reference";
    rs.h = 0.25;
    rs.t_end = 300.0;
    rs.corrector_passes = 1;
    rs.output = "out";
    rs.strict = false;
    if (!config_path.empty()) {
        rs.overlay(parse_config_file(config_path));
    }
    rs.overlay(flags);

    Resolved r;
    const auto scheme = parse_scheme(*rs.scheme);
    if (!scheme) {
        throw ConfigError("unknown scheme '" + *rs.scheme + "'");
    }
    auto unchecked = ModelParams::unchecked(*rs.alpha, *rs.beta, *rs.p, *rs.capacity);
    if (unchecked.satisfies_p1()) {
        r.params = ModelParams::validated(*rs.alpha, *rs.beta, *rs.p, *rs.capacity);
    } else {
        std::cerr << "warning: parameters violate 0 < alpha < beta < pC < 1; running unvalidated\n";
        r.params = unchecked;
    }
    r.initial = {*rs.d0, *rs.l0};
    const double sigma = rs.sigma.value_or(*scheme == Scheme::Fractional ? 0.95 : 1.0);
    r.config = SchemeConfig{*scheme, *rs.h, *rs.t_end, sigma, *rs.corrector_passes};
    r.config.validate();
    r.output = *rs.output;
    r.strict = *rs.strict;
    return r;
}

double scheme_parameter(const SchemeConfig& c) {
    return c.scheme == Scheme::Fractional ? c.sigma : c.h;
}

int cmd_simulate(const Resolved& r) {
    Trajectory traj = solve(r.params, r.config, r.initial);
    fs::path csv = r.output;
    if (csv.extension() != ".csv") {
        fs::create_directories(r.output);
        csv = r.output / (std::string(to_string(r.config.scheme)) + ".csv");
    } else if (csv.has_parent_path()) {
        fs::create_directories(csv.parent_path());
    }
    write_csv(csv.string(), traj);
    fs::path gp = csv;
    gp.replace_extension(".gp");
    write_gnuplot_script(gp, std::string(to_string(r.config.scheme)), {{std::string(to_string(r.config.scheme)),
                                                                        csv.filename().string()}},
                         true);
    for (const auto& w : traj.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    const State& f = traj.final_state();
    std::cout << "wrote " << csv.string() << " (" << traj.size() << " rows), final state (" << format_double(f.d)
              << ", " << format_double(f.l) << ")\n";
    return kExitOk;
}

int cmd_stability(const Resolved& r) {
    const auto text = format_stability(classify(r.params, r.config.scheme, scheme_parameter(r.config)));
    std::cout << text;
    return kExitOk;
}

int cmd_verify(const Resolved& r) {
    Trajectory traj = solve(r.params, r.config, r.initial);
    for (const auto& w : traj.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    const RegionSpec region = region_for(traj);
    const ViolationReport v = check_trajectory(traj, region);
    std::cout << "region " << to_string(region.bound_kind) << ": W-bound " << format_double(region.numeric_bound);
    if (region.d_bound) std::cout << ", D-bound " << format_double(*region.d_bound);
    if (region.aux_w_bound) std::cout << ", auxiliary W-bound " << format_double(*region.aux_w_bound);
    std::cout << "\n" << format_violation(v);
    return (!v.ok() && r.strict) ? kExitViolation : kExitOk;
}

int cmd_compare(const Resolved& r, const std::vector<std::string>& files, const std::string& against) {
    Trajectory a;
    Trajectory b;
    std::string label_a;
    std::string label_b;
    if (files.size() == 2) {
        a = read_csv(files[0]);
        b = read_csv(files[1]);
        label_a = files[0];
        label_b = files[1];
    } else if (files.empty()) {
        const auto other = parse_scheme(against);
        if (!other) throw ConfigError("unknown scheme '" + against + "' for --against");
        SchemeConfig cb = r.config;
        cb.scheme = *other;
        a = solve(r.params, r.config, r.initial);
        b = solve(r.params, cb, r.initial);
        label_a = std::string(to_string(r.config.scheme));
        label_b = std::string(to_string(cb.scheme));
    } else {
        throw UsageError("compare takes either two CSV files or none");
    }
    const CompareResult c = compare(a, b);
    std::cout << label_a << " vs " << label_b << ": sup-norm " << format_double(c.sup_norm) << ", terminal "
              << format_double(c.terminal) << ", points " << c.points << (c.resampled ? " (resampled)" : "")
              << "\n";
    return kExitOk;
}

int cmd_sweep(const Resolved& r, const std::string& param, const std::vector<double>& values) {
    if (values.empty()) {
        return kExitOk;
    }
    if (param != "sigma" && param != "h") {
        throw UsageError("--param must be 'sigma' or 'h'");
    }
    std::vector<Scenario> scenarios;
    for (double v : values) {
        Scenario sc;
        sc.params = r.params;
        sc.initial = r.initial;
        sc.config = r.config;
        if (param == "sigma") {
            sc.config.scheme = Scheme::Fractional;
            sc.config.sigma = v;
        } else {
            sc.config.h = v;
        }
        sc.config.validate();
        sc.name = "sweep_" + param + format_label(v);
        sc.outputs.verification = r.strict;
        scenarios.push_back(sc);
    }
    const auto results = run_scenarios(scenarios, r.output);
    const Trajectory reference =
        reference_solve(r.params, r.initial, r.config.t_end, std::min(r.config.h, 0.25));
    std::ofstream summary(r.output / "sweep_summary.csv");
    summary << param << ",sup_to_reference,terminal_to_reference,final_D,final_L\n";
    int status = kExitOk;
    std::vector<std::pair<std::string, std::string>> series;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto c = compare(results[i].trajectory, reference);
        const State& f = results[i].trajectory.final_state();
        summary << format_double(values[i]) << ',' << format_double(c.sup_norm) << ',' << format_double(c.terminal)
                << ',' << format_double(f.d) << ',' << format_double(f.l) << '\n';
        series.emplace_back(param + "=" + format_label(values[i]), results[i].name + ".csv");
        if (results[i].verification) {
            std::cout << format_violation(*results[i].verification);
            if (!results[i].verification->ok()) status = kExitViolation;
        }
    }
    write_gnuplot_script(r.output / "sweep.gp", "sweep over " + param, series, true);
    std::cout << "wrote " << results.size() << " trajectories and sweep_summary.csv to " << r.output.string()
              << "\n";
    return status;
}

int cmd_figures(const Resolved& r, const std::string& which) {
    std::vector<std::string> names;
    if (which == "all") {
        names = preset_names();
    } else {
        names.push_back(which);
    }
    int status = kExitOk;
    for (const auto& name : names) {
        Preset preset = figure_preset(name);
        for (auto& sc : preset.scenarios) {
            sc.outputs.verification = r.strict;
        }
        const auto results = run_preset(preset, r.output);
        for (const auto& res : results) {
            std::cout << "wrote " << (r.output / (res.name + ".csv")).string() << " (" << res.trajectory.size()
                      << " rows)\n";
            if (res.verification && !res.verification->ok()) {
                std::cout << format_violation(*res.verification);
                status = kExitViolation;
            }
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predator-prey solvers: RK4 reference, Euler, Mickens NSFD and Caputo fractional"};
    app.require_subcommand(1);
    // -h would clash with the step-size option --h
    app.set_help_flag("--help", "Print this help message and exit");

    RunSettings flags;
    std::string config_path;

    auto* simulate = app.add_subcommand("simulate", "Solve one scenario and write its CSV");
    auto* stability = app.add_subcommand("stability", "Classify the equilibria for a scheme");
    auto* verify = app.add_subcommand("verify", "Check positivity and feasible-region bounds");
    auto* compare_cmd = app.add_subcommand("compare", "Distance between two trajectories");
    auto* sweep = app.add_subcommand("sweep", "Run a batch over sigma or h");
    auto* figures = app.add_subcommand("figures", "Reproduce a figure preset");
    for (auto* cmd : {simulate, stability, verify, compare_cmd, sweep, figures}) {
        add_common_flags(*cmd, flags, config_path);
    }

    std::vector<std::string> compare_files;
    std::string against = "reference";
    compare_cmd->add_option("files", compare_files, "Two CSV files to compare");
    compare_cmd->add_option("--against", against, "Scheme to compare --scheme against (default reference)");

    std::string sweep_param = "sigma";
    std::vector<double> sweep_values;
    sweep->add_option("--param", sweep_param, "sigma or h");
    sweep->add_option("--values", sweep_values, "Comma-separated values")->delimiter(',');

    std::string preset = "all";
    figures->add_option("preset", preset, "figure2 .. figure10, or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Resolved r = resolve(flags, config_path);
        if (*simulate) return cmd_simulate(r);
        if (*stability) return cmd_stability(r);
        if (*verify) return cmd_verify(r);
        if (*compare_cmd) return cmd_compare(r, compare_files, against);
        if (*sweep) return cmd_sweep(r, sweep_param, sweep_values);
        if (*figures) return cmd_figures(r, preset);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::logic_error& e) {
        // ConfigError, UsageError, DomainError
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
