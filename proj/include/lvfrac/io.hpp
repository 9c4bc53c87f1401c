#ifndef LVFRAC_IO_HPP
#define LVFRAC_IO_HPP

// Flat-file formats: trajectory CSV and the key-value run configuration.
//
// CSV: header "t,D,L", one row per grid point, LF line endings, '.' decimal
// separator, 17 significant digits so values re-parse to the same doubles.
//
// Config: INI-style sections with "key = value" lines; '#' or ';' start a
// comment. Recognized keys:
//
//   [model]   alpha beta p capacity
//   [initial] d0 l0
//   [scheme]  name h t_end sigma corrector_passes
//   [output]  dir strict

#include <lvfrac/errors.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/trajectory.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace lvfrac {

inline std::string format_double(double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

// Short form for file names and plot labels.
inline std::string format_label(double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

inline std::optional<double> parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return value;
}

inline void write_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,D,L\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        os << format_double(traj.times[i]) << ',' << format_double(traj.states[i].d) << ','
           << format_double(traj.states[i].l) << '\n';
    }
}

inline void write_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw UsageError("cannot open '" + path + "' for writing");
    }
    write_csv(os, traj);
    if (!os) {
        throw UsageError("write to '" + path + "' failed");
    }
}

// Reads the t,D,L columns back. Scheme, params and config are not part of the
// file and keep their defaults.
inline Trajectory read_csv(std::istream& is, const std::string& source = "<stream>") {
    Trajectory traj;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line)) {
        throw UsageError(source + ": empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,D,L") {
        throw UsageError(source + ":1: expected header 't,D,L'");
    }
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw UsageError(source + ":" + std::to_string(line_no) + ": expected three columns");
        }
        const std::string_view sv(line);
        const auto t = parse_double(sv.substr(0, c1));
        const auto d = parse_double(sv.substr(c1 + 1, c2 - c1 - 1));
        const auto l = parse_double(sv.substr(c2 + 1));
        if (!t || !d || !l) {
            throw UsageError(source + ":" + std::to_string(line_no) + ": malformed number");
        }
        if (!traj.times.empty() && !(*t > traj.times.back())) {
            throw UsageError(source + ":" + std::to_string(line_no) + ": times must be strictly increasing");
        }
        traj.times.push_back(*t);
        traj.states.push_back({*d, *l});
    }
    if (traj.states.empty()) {
        throw UsageError(source + ": no data rows");
    }
    return traj;
}

inline Trajectory read_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw UsageError("cannot open '" + path + "'");
    }
    return read_csv(is, path);
}

// Everything a single run needs. Every field is optional so that file values
// and command-line flags can be layered (flags win).
struct RunSettings {
    std::optional<double> alpha, beta, p, capacity;
    std::optional<double> d0, l0;
    std::optional<std::string> scheme;
    std::optional<double> h, t_end, sigma;
    std::optional<int> corrector_passes;
    std::optional<std::string> output;
    std::optional<bool> strict;

    // Fields set in `over` replace those in *this.
    void overlay(const RunSettings& over) {
        auto take = [](auto& dst, const auto& src) {
            if (src) dst = src;
        };
        take(alpha, over.alpha);
        take(beta, over.beta);
        take(p, over.p);
        take(capacity, over.capacity);
        take(d0, over.d0);
        take(l0, over.l0);
        take(scheme, over.scheme);
        take(h, over.h);
        take(t_end, over.t_end);
        take(sigma, over.sigma);
        take(corrector_passes, over.corrector_passes);
        take(output, over.output);
        take(strict, over.strict);
    }
};

inline RunSettings parse_config(std::istream& is, const std::string& source = "<config>") {
    RunSettings rs;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    std::set<std::string> seen;
    auto fail = [&](const std::string& msg) -> void {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": " + msg);
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "initial" && section != "scheme" && section != "output") {
                fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail("key '" + key + "' outside of any section");
        if (!seen.insert(section + "." + key).second) fail("duplicate key '" + key + "' in [" + section + "]");
        auto number = [&]() {
            const auto v = parse_double(value);
            if (!v) fail("value of '" + key + "' is not a number: '" + value + "'");
            return *v;
        };
        const std::string qualified = section + "." + key;
        if (qualified == "model.alpha") rs.alpha = number();
        else if (qualified == "model.beta") rs.beta = number();
        else if (qualified == "model.p") rs.p = number();
        else if (qualified == "model.capacity") rs.capacity = number();
        else if (qualified == "initial.d0") rs.d0 = number();
        else if (qualified == "initial.l0") rs.l0 = number();
        else if (qualified == "scheme.name") {
            if (!parse_scheme(value)) fail("unknown scheme '" + value + "'");
            rs.scheme = value;
        } else if (qualified == "scheme.h") rs.h = number();
        else if (qualified == "scheme.t_end") rs.t_end = number();
        else if (qualified == "scheme.sigma") rs.sigma = number();
        else if (qualified == "scheme.corrector_passes") {
            const double v = number();
            if (v != static_cast<int>(v)) fail("corrector_passes must be an integer");
            rs.corrector_passes = static_cast<int>(v);
        } else if (qualified == "output.dir") rs.output = value;
        else if (qualified == "output.strict") {
            if (value == "true" || value == "1" || value == "yes") rs.strict = true;
            else if (value == "false" || value == "0" || value == "no") rs.strict = false;
            else fail("strict must be true or false");
        } else {
            fail("unknown key '" + key + "' in [" + section + "]");
        }
    }
    return rs;
}

inline RunSettings parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(is, path);
}

} // namespace lvfrac

#endif // LVFRAC_IO_HPP
