#include "mhdcn/config.hpp"

#include "mhdcn/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace mhdcn {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

int to_int(const std::string& key, const std::string& v)
{
    int x = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end) {
        throw UsageError("invalid integer for " + key + ": '" + v + "'");
    }
    return x;
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) {
            throw UsageError("invalid number for " + key + ": '" + v + "'");
        }
        return x;
    } catch (const std::logic_error&) {
        throw UsageError("invalid number for " + key + ": '" + v + "'");
    }
}

StudyMode to_study(const std::string& v)
{
    if (v == "single") {
        return StudyMode::Single;
    }
    if (v == "temporal") {
        return StudyMode::Temporal;
    }
    if (v == "spatial") {
        return StudyMode::Spatial;
    }
    if (v == "energy") {
        return StudyMode::Energy;
    }
    throw UsageError("unknown study '" + v + "' (single, temporal, spatial, energy)");
}

const std::vector<std::string> kKeys{"example", "degree", "nt", "n", "T", "nu",
                                     "sigma",   "mu",     "study", "ladder", "sizes", "out"};

std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(t.substr(0, eq));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        values[key] = trim(t.substr(eq + 1));
    }
    return values;
}

void apply(SimulationConfig& c, const std::string& key, const std::string& v)
{
    if (key == "example") {
        c.example = to_int(key, v);
    } else if (key == "degree") {
        c.degree = to_int(key, v);
    } else if (key == "nt") {
        c.steps = to_int(key, v);
    } else if (key == "n") {
        c.n = to_int(key, v);
    } else if (key == "T") {
        c.final_time = to_double(key, v);
    } else if (key == "nu") {
        c.params.nu = to_double(key, v);
    } else if (key == "sigma") {
        c.params.sigma = to_double(key, v);
    } else if (key == "mu") {
        c.params.mu = to_double(key, v);
    } else if (key == "study") {
        c.study = to_study(v);
    } else if (key == "ladder") {
        c.ladder = parse_ladder(v);
    } else if (key == "sizes") {
        c.sizes = parse_sizes(v);
    } else if (key == "out") {
        c.out_dir = v;
    }
}

std::unique_ptr<CLI::App> make_app(std::map<std::string, std::string>& flags, std::string& config_file)
{
    auto app = std::make_unique<CLI::App>("Crank-Nicolson projection FE solver for 2D incompressible MHD", "mhdcn");
    app->add_option("--config", config_file, "key=value file; flags take precedence");
    app->add_option("--example", flags["example"], "example id: 1, 2 or 3");
    app->add_option("--degree", flags["degree"], "velocity/magnetic degree r (pressure r-1), default 3");
    app->add_option("--nt", flags["nt"], "number of time steps N, default 40");
    app->add_option("--n", flags["n"], "mesh subdivisions per side, default 20");
    app->add_option("--T", flags["T"], "final time, default 1");
    app->add_option("--nu", flags["nu"], "viscosity, default 1");
    app->add_option("--sigma", flags["sigma"], "magnetic Reynolds number, default 1");
    app->add_option("--mu", flags["mu"], "coupling coefficient, default 1");
    app->add_option("--study", flags["study"], "single, temporal, spatial or energy");
    app->add_option("--ladder", flags["ladder"], "temporal ladder N:n pairs, e.g. \"40:20,80:40\"");
    app->add_option("--sizes", flags["sizes"], "spatial study mesh sizes, e.g. \"8,16,32\"");
    app->add_option("--out", flags["out"], "output directory, default ./out");
    return app;
}

} // namespace

std::string to_string(StudyMode mode)
{
    switch (mode) {
    case StudyMode::Single:
        return "single";
    case StudyMode::Temporal:
        return "temporal";
    case StudyMode::Spatial:
        return "spatial";
    case StudyMode::Energy:
        return "energy";
    }
    return "?";
}

std::vector<LadderEntry> parse_ladder(const std::string& text)
{
    std::vector<LadderEntry> out;
    for (const std::string& item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw UsageError("ladder entry '" + item + "' is not N:n");
        }
        out.push_back({to_int("ladder", trim(item.substr(0, colon))), to_int("ladder", trim(item.substr(colon + 1)))});
    }
    if (out.empty()) {
        throw UsageError("empty ladder");
    }
    return out;
}

std::vector<int> parse_sizes(const std::string& text)
{
    std::vector<int> out;
    for (const std::string& item : split(text, ',')) {
        out.push_back(to_int("sizes", item));
    }
    if (out.empty()) {
        throw UsageError("empty size list");
    }
    return out;
}

void SimulationConfig::validate() const
{
    if (example < 1 || example > 3) {
        throw UsageError("--example must be 1, 2 or 3");
    }
    if (degree < 2) {
        throw UsageError("degree must be at least 2");
    }
    if (n < 2) {
        throw UsageError("mesh size n must be at least 2");
    }
    if (steps < 1) {
        throw UsageError("step count must be at least 1");
    }
    if (!(final_time > 0.0)) {
        throw UsageError("final time must be positive");
    }
    if (!(params.nu > 0.0) || !(params.sigma > 0.0) || !(params.mu > 0.0)) {
        throw UsageError("nu, sigma and mu must be positive");
    }
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i].steps < 1 || ladder[i].n < 2) {
            throw UsageError("ladder entries need N >= 1 and n >= 2");
        }
        if (i > 0 && (ladder[i].steps <= ladder[i - 1].steps || ladder[i].n < ladder[i - 1].n)) {
            throw UsageError("ladder entries must strictly refine");
        }
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2 || (i > 0 && sizes[i] <= sizes[i - 1])) {
            throw UsageError("spatial sizes must be increasing and at least 2");
        }
    }
    if (study == StudyMode::Temporal && ladder.empty()) {
        throw UsageError("temporal study needs --ladder");
    }
}

SimulationConfig parse_config(const std::vector<std::string>& args)
{
    if (args.empty()) {
        throw UsageError("no arguments given\n" + usage());
    }
    std::map<std::string, std::string> flags;
    std::string config_file;
    auto app = make_app(flags, config_file);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::CallForHelp&) {
        SimulationConfig c;
        c.show_help = true;
        return c;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + usage());
    }

    SimulationConfig c;
    std::map<std::string, std::string> file;
    if (!config_file.empty()) {
        file = read_config_file(config_file);
        for (const auto& [key, value] : file) {
            apply(c, key, value);
        }
    }
    for (const std::string& key : kKeys) {
        if (app->get_option("--" + key)->count() == 0) {
            continue;
        }
        const std::string& value = flags[key];
        const auto it = file.find(key);
        if (it != file.end() && it->second != value) {
            c.log.push_back(key + ": flag value '" + value + "' overrides file value '" + it->second + "'");
        }
        apply(c, key, value);
    }
    if (c.example == 0) {
        throw UsageError("missing --example\n" + usage());
    }
    c.validate();
    return c;
}

SimulationConfig parse_config(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_config(args);
}

std::string usage()
{
    std::map<std::string, std::string> flags;
    std::string config_file;
    return make_app(flags, config_file)->help();
}

} // namespace mhdcn
