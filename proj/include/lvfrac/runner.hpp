#ifndef LVFRAC_RUNNER_HPP
#define LVFRAC_RUNNER_HPP

// Scenario execution behind the command-line tool: batch runs, CSV and
// gnuplot emission, trajectory comparison and the figure presets.

#include <lvfrac/errors.hpp>
#include <lvfrac/invariants.hpp>
#include <lvfrac/io.hpp>
#include <lvfrac/solve.hpp>
#include <lvfrac/stability.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lvfrac {

struct CompareResult {
    double sup_norm = 0.0; // max over the grid of ||a - b||_sup
    double terminal = 0.0; // ||a - b||_sup at the last common time
    bool resampled = false;
    std::size_t points = 0;
};

namespace detail {

inline State interpolate(const Trajectory& traj, double t) {
    const auto& ts = traj.times;
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) {
        return traj.states.back();
    }
    const auto i = static_cast<std::size_t>(it - ts.begin());
    if (*it == t || i == 0) {
        return traj.states[i];
    }
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    const State& lo = traj.states[i - 1];
    const State& hi = traj.states[i];
    return {lo.d + w * (hi.d - lo.d), lo.l + w * (hi.l - lo.l)};
}

} // namespace detail

// Sup-norm and terminal distances. When the grids differ, b is linearly
// interpolated onto the points of a that lie inside b's time range.
inline CompareResult compare(const Trajectory& a, const Trajectory& b) {
    if (a.states.empty() || b.states.empty()) {
        throw UsageError("compare: empty trajectory");
    }
    CompareResult r;
    if (a.times == b.times) {
        for (std::size_t i = 0; i < a.states.size(); ++i) {
            r.sup_norm = std::max(r.sup_norm, sup_distance(a.states[i], b.states[i]));
        }
        r.terminal = sup_distance(a.states.back(), b.states.back());
        r.points = a.states.size();
        return r;
    }
    const double lo = std::max(a.times.front(), b.times.front());
    const double hi = std::min(a.times.back(), b.times.back());
    if (lo > hi) {
        throw UsageError("compare: trajectories cover disjoint time ranges");
    }
    r.resampled = true;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const double t = a.times[i];
        if (t < lo || t > hi) continue;
        const double dist = sup_distance(a.states[i], detail::interpolate(b, t));
        r.sup_norm = std::max(r.sup_norm, dist);
        r.terminal = dist;
        ++r.points;
    }
    if (r.points == 0) {
        throw UsageError("compare: no grid point of the first trajectory lies in the common time range");
    }
    return r;
}

struct OutputRequest {
    bool timeseries = true;
    bool phase_plane = true;
    bool stability = false;
    bool verification = false;
};

struct Scenario {
    std::string name;
    ModelParams params = ModelParams::reference_set();
    State initial{0.2, 0.3};
    SchemeConfig config;
    OutputRequest outputs;
};

struct ScenarioResult {
    std::string name;
    Trajectory trajectory;
    std::vector<std::filesystem::path> files;
    std::optional<ViolationReport> verification;
};

inline std::string format_complex(std::complex<double> z) {
    std::ostringstream os;
    os << format_double(z.real());
    if (z.imag() != 0.0) {
        os << (z.imag() < 0 ? " - " : " + ") << format_double(std::abs(z.imag())) << "i";
    }
    return os.str();
}

inline std::string format_stability(const std::vector<StabilityReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << to_string(r.equilibrium.label) << " (" << format_double(r.equilibrium.point.d) << ", "
           << format_double(r.equilibrium.point.l) << ") [" << to_string(r.scheme) << "]: "
           << to_string(r.classification) << "\n";
        if (!r.equilibrium.exists) {
            os << "  does not exist: " << r.equilibrium.reason << "\n";
        }
        os << "  jacobian: [[" << format_double(r.jacobian[0][0]) << ", " << format_double(r.jacobian[0][1])
           << "], [" << format_double(r.jacobian[1][0]) << ", " << format_double(r.jacobian[1][1]) << "]]\n";
        os << "  char poly: " << format_double(r.char_poly.c2) << " x^2 + " << format_double(r.char_poly.c1)
           << " x + " << format_double(r.char_poly.c0) << "\n";
        os << "  eigenvalues: " << format_complex(r.eigenvalues[0]) << ", " << format_complex(r.eigenvalues[1])
           << "\n";
        for (const auto& p : r.criterion.predicates) {
            os << "  " << p.name << ": " << format_double(p.value) << (p.holds() ? " (holds)" : " (fails)")
               << "\n";
        }
        if (r.step_bound) {
            os << "  step bound h2: " << format_double(*r.step_bound) << "\n";
        }
    }
    return os.str();
}

inline std::string format_violation(const ViolationReport& v) {
    std::ostringstream os;
    if (v.ok()) {
        os << v.trajectory_id << ": ok\n";
    } else {
        os << v.trajectory_id << ": violation at index " << *v.first_violation_index << ": "
           << v.violated_quantity << " (observed " << format_double(v.observed) << ", bound "
           << format_double(v.bound) << ")\n";
    }
    return os.str();
}

// One plot of D and L over time per file, and optionally the phase plane.
inline void write_gnuplot_script(const std::filesystem::path& path, const std::string& title,
                                 const std::vector<std::pair<std::string, std::string>>& series,
                                 bool phase_plane) {
    std::ofstream os(path);
    if (!os) {
        throw UsageError("cannot open '" + path.string() + "' for writing");
    }
    os << "# gnuplot script; run with: gnuplot -persist " << path.filename().string() << "\n";
    os << "set datafile separator ','\n";
    os << "set key autotitle columnhead\n";
    os << "set grid\n";
    os << "set title '" << title << " (time series)'\n";
    os << "set xlabel 't'\nset ylabel 'population'\n";
    os << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& [label, file] = series[i];
        os << (i ? ", \\\n     " : "") << "'" << file << "' using 1:2 with lines title 'D " << label << "', '"
           << file << "' using 1:3 with lines title 'L " << label << "'";
    }
    os << "\n";
    if (phase_plane) {
        os << "pause -1 'press enter for the phase plane'\n";
        os << "set title '" << title << " (phase plane)'\n";
        os << "set xlabel 'D'\nset ylabel 'L'\n";
        os << "plot ";
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& [label, file] = series[i];
            os << (i ? ", \\\n     " : "") << "'" << file << "' using 2:3 with lines title '" << label << "'";
        }
        os << "\n";
    }
}

// Solves the scenario and writes <name>.csv plus the requested reports into out_dir.
inline ScenarioResult run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
    ScenarioResult result;
    result.name = sc.name;
    result.trajectory = solve(sc.params, sc.config, sc.initial);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw UsageError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }
    if (sc.outputs.timeseries || sc.outputs.phase_plane) {
        const auto csv = out_dir / (sc.name + ".csv");
        write_csv(csv.string(), result.trajectory);
        result.files.push_back(csv);
    }
    if (sc.outputs.stability) {
        const double parameter = sc.config.scheme == Scheme::Fractional ? sc.config.sigma : sc.config.h;
        const auto path = out_dir / (sc.name + "_stability.txt");
        std::ofstream os(path);
        if (!os) throw UsageError("cannot open '" + path.string() + "' for writing");
        os << format_stability(classify(sc.params, sc.config.scheme, parameter));
        result.files.push_back(path);
    }
    if (sc.outputs.verification) {
        result.verification = check_trajectory(result.trajectory, region_for(result.trajectory), sc.name);
        const auto path = out_dir / (sc.name + "_verify.txt");
        std::ofstream os(path);
        if (!os) throw UsageError("cannot open '" + path.string() + "' for writing");
        os << format_violation(*result.verification);
        result.files.push_back(path);
    }
    return result;
}

// Runs scenarios concurrently (one task each, results in input order).
inline std::vector<ScenarioResult> run_scenarios(const std::vector<Scenario>& scenarios,
                                                 const std::filesystem::path& out_dir) {
    std::set<std::string> names;
    for (const auto& sc : scenarios) {
        if (!names.insert(sc.name).second) {
            throw ConfigError("duplicate scenario name '" + sc.name + "'");
        }
    }
    std::vector<std::future<ScenarioResult>> pending;
    pending.reserve(scenarios.size());
    for (const auto& sc : scenarios) {
        pending.push_back(std::async(std::launch::async, [&sc, &out_dir] { return run_scenario(sc, out_dir); }));
    }
    std::vector<ScenarioResult> results;
    results.reserve(pending.size());
    for (auto& f : pending) {
        results.push_back(f.get());
    }
    return results;
}

struct Preset {
    std::string name;
    std::string title;
    std::vector<Scenario> scenarios;
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"figure2", "figure3", "figure4", "figure5", "figure6",
                                                "figure7", "figure8", "figure9", "figure10"};
    return names;
}

// Figure recipes: C = 1, alpha = 0.05, beta = 0.3, p = 0.4, h = 0.25,
// t in [0, 300], sigma = 0.95 unless the figure sweeps it.
inline Preset figure_preset(std::string_view name) {
    const ModelParams params = ModelParams::reference_set();
    const std::vector<std::pair<std::string, State>> three_ics{
        {"d0.2_l0.3", {0.2, 0.3}}, {"d0_l0.5", {0.0, 0.5}}, {"d0.85_l0.1", {0.85, 0.1}}};
    const State base{0.2, 0.3};
    auto cfg = [](Scheme s, double sigma = 1.0) { return SchemeConfig{s, 0.25, 300.0, sigma, 1}; };
    Preset preset;
    preset.name = std::string(name);
    auto add = [&](const std::string& tag, const State& s0, SchemeConfig c) {
        preset.scenarios.push_back(Scenario{preset.name + "_" + tag, params, s0, c, {}});
    };
    auto per_ic = [&](Scheme s, const std::string& scheme_tag, double sigma = 1.0) {
        for (const auto& [tag, s0] : three_ics) {
            add(scheme_tag + "_" + tag, s0, cfg(s, sigma));
        }
    };
    if (name == "figure2") {
        preset.title = "Continuous model, different initial conditions";
        per_ic(Scheme::Reference, "reference");
    } else if (name == "figure3") {
        preset.title = "Euler scheme, different initial conditions";
        per_ic(Scheme::Euler, "euler");
    } else if (name == "figure4") {
        preset.title = "Mickens scheme, different initial conditions";
        per_ic(Scheme::Mickens, "mickens");
    } else if (name == "figure5") {
        preset.title = "Fractional model (sigma = 0.95), different initial conditions";
        per_ic(Scheme::Fractional, "fractional", 0.95);
    } else if (name == "figure6") {
        preset.title = "Fractional model vs continuous, Euler and Mickens";
        add("fractional_sigma0.95", base, cfg(Scheme::Fractional, 0.95));
        add("reference", base, cfg(Scheme::Reference));
        add("euler", base, cfg(Scheme::Euler));
        add("mickens", base, cfg(Scheme::Mickens));
    } else if (name == "figure7") {
        preset.title = "Mickens vs continuous and Euler";
        add("reference", base, cfg(Scheme::Reference));
        add("euler", base, cfg(Scheme::Euler));
        add("mickens", base, cfg(Scheme::Mickens));
    } else if (name == "figure8") {
        preset.title = "Euler vs continuous";
        add("reference", base, cfg(Scheme::Reference));
        add("euler", base, cfg(Scheme::Euler));
    } else if (name == "figure9") {
        preset.title = "Continuous model from (0.2, 0.3)";
        add("reference", base, cfg(Scheme::Reference));
    } else if (name == "figure10") {
        preset.title = "Fractional model for several sigma vs continuous";
        for (double sigma : {0.8, 0.9, 0.95, 0.99}) {
            add("fractional_sigma" + format_label(sigma), base, cfg(Scheme::Fractional, sigma));
        }
        add("reference", base, cfg(Scheme::Reference));
    } else {
        throw UsageError("unknown preset '" + std::string(name) + "'");
    }
    return preset;
}

// Runs a preset into out_dir and writes <preset>.gp next to the CSVs.
inline std::vector<ScenarioResult> run_preset(const Preset& preset, const std::filesystem::path& out_dir) {
    auto results = run_scenarios(preset.scenarios, out_dir);
    std::vector<std::pair<std::string, std::string>> series;
    for (const auto& r : results) {
        std::string label = r.name.substr(preset.name.size() + 1);
        series.emplace_back(label, r.name + ".csv");
    }
    write_gnuplot_script(out_dir / (preset.name + ".gp"), preset.title, series, true);
    return results;
}

} // namespace lvfrac

#endif // LVFRAC_RUNNER_HPP
