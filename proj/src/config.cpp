#include "emlab/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <utility>

#include "emlab/errors.hpp"

namespace emlab {

std::string to_string(Suite suite) {
    switch (suite) {
        case Suite::Riesz: return "riesz";
        case Suite::Weights: return "weights";
        case Suite::Kp: return "kp";
        case Suite::Solve: return "solve";
        case Suite::KernelCompare: return "kernel-compare";
    }
    return "?";
}

namespace {

Suite parse_suite(const std::string& s) {
    if (s == "riesz") return Suite::Riesz;
    if (s == "weights") return Suite::Weights;
    if (s == "kp") return Suite::Kp;
    if (s == "solve") return Suite::Solve;
    if (s == "kernel-compare") return Suite::KernelCompare;
    throw UsageError("unknown suite '" + s + "'");
}

long parse_long(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw UsageError("malformed integer for " + key + ": '" + value + "'");
    }
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw UsageError("malformed number for " + key + ": '" + value + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct ConfigBuilder {
    RunConfig cfg;
    bool suite_set = false;

    void apply(const std::string& key, const std::string& value) {
        if (key == "suite") {
            cfg.suite = parse_suite(value);
            suite_set = true;
        } else if (key == "jmax") {
            const long v = parse_long(key, value);
            if (v < 1 || v > 30) throw UsageError("jmax must be in [1, 30], got '" + value + "'");
            cfg.j_max = static_cast<int>(v);
        } else if (key == "schedule") {
            if (value == "sqrt") {
                cfg.schedule = AmplitudeSchedule::sqrt_schedule();
            } else if (value == "linear") {
                cfg.schedule = AmplitudeSchedule::linear_schedule();
            } else if (value.rfind("scaled:", 0) == 0) {
                const double a0 = parse_real(key, value.substr(7));
                if (!(a0 > 0.0 && a0 < 1.0)) {
                    throw UsageError("scaled amplitude must be in (0, 1), got '" + value + "'");
                }
                cfg.schedule = AmplitudeSchedule::scaled(a0);
            } else {
                throw UsageError("schedule must be sqrt, linear, or scaled:A, got '" + value + "'");
            }
        } else if (key == "variant") {
            if (value == "standard") {
                cfg.variant = LacunaryVariant::Standard;
            } else if (value == "strong") {
                cfg.variant = LacunaryVariant::Strong;
            } else {
                throw UsageError("variant must be standard or strong, got '" + value + "'");
            }
        } else if (key == "grid") {
            const auto comma = value.find(',');
            if (comma == std::string::npos) {
                throw UsageError("grid must be NX,NY, got '" + value + "'");
            }
            const long nx = parse_long(key, value.substr(0, comma));
            const long ny = parse_long(key, value.substr(comma + 1));
            if (nx < 1 || ny < 1 || nx > 1000000 || ny > 1000000) {
                throw UsageError("grid sizes must be positive, got '" + value + "'");
            }
            cfg.nx = static_cast<int>(nx);
            cfg.ny = static_cast<int>(ny);
        } else if (key == "tol") {
            const double v = parse_real(key, value);
            if (!(v > 0.0) || v > 1e-4) {
                throw UsageError("tol must be in (0, 1e-4], got '" + value + "'");
            }
            cfg.tol = v;
        } else if (key == "seed") {
            if (value.empty() || value[0] == '-') {
                throw UsageError("seed must be a nonnegative integer, got '" + value + "'");
            }
            const char* begin = value.c_str();
            char* end = nullptr;
            cfg.seed = std::strtoull(begin, &end, 10);
            if (end == begin || *end != '\0') {
                throw UsageError("malformed integer for seed: '" + value + "'");
            }
        } else if (key == "out") {
            if (value.empty()) throw UsageError("out directory must not be empty");
            cfg.out_dir = value;
        } else if (key == "format") {
            bool svg = false;
            std::size_t pos = 0;
            while (pos <= value.size()) {
                const auto comma = value.find(',', pos);
                const std::string tok =
                    value.substr(pos, (comma == std::string::npos ? value.size() : comma) - pos);
                if (tok == "svg") {
                    svg = true;
                } else if (tok != "csv") {
                    throw UsageError("format tokens must be csv or svg, got '" + tok + "'");
                }
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            cfg.svg = svg;
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
};

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError("malformed config line (expected key=value): '" + t + "'");
        }
        kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return kv;
}

int suite_default_jmax(Suite suite) {
    switch (suite) {
        case Suite::Riesz: return 12;
        case Suite::Weights: return 8;
        case Suite::Kp: return 5;
        case Suite::Solve: return 1;
        case Suite::KernelCompare: return 2;
    }
    return 1;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    for (const auto& a : args) {
        if (a == "--help" || a == "-h") {
            RunConfig cfg;
            cfg.help = true;
            return cfg;
        }
    }

    std::vector<std::pair<std::string, std::string>> cli;
    std::string config_file;
    std::string positional;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            const std::string key = a.substr(2);
            if (key != "jmax" && key != "schedule" && key != "variant" && key != "grid" &&
                key != "tol" && key != "seed" && key != "out" && key != "format" &&
                key != "config") {
                throw UsageError("unknown flag '" + a + "'");
            }
            if (i + 1 >= args.size()) throw UsageError("flag '" + a + "' requires a value");
            const std::string& value = args[++i];
            if (key == "config") {
                config_file = value;
            } else {
                cli.emplace_back(key, value);
            }
        } else {
            if (!positional.empty()) {
                throw UsageError("conflicting suite arguments '" + positional + "' and '" + a + "'");
            }
            positional = a;
        }
    }

    ConfigBuilder builder;
    if (!config_file.empty()) {
        for (const auto& [key, value] : read_config_file(config_file)) builder.apply(key, value);
    }
    for (const auto& [key, value] : cli) builder.apply(key, value);
    if (!positional.empty()) builder.apply("suite", positional);
    if (!builder.suite_set) {
        throw UsageError("no suite selected (expected riesz | weights | kp | solve | kernel-compare)");
    }
    if (builder.cfg.j_max == 0) builder.cfg.j_max = suite_default_jmax(builder.cfg.suite);
    return builder.cfg;
}

std::string RunConfig::stamp() const {
    char tol_buf[32];
    std::snprintf(tol_buf, sizeof tol_buf, "%g", tol);
    std::string grid_str = nx > 0 ? std::to_string(nx) + "x" + std::to_string(ny) : "auto";
    return "suite=" + to_string(suite) + " jmax=" + std::to_string(j_max) +
           " schedule=" + schedule.name() + " variant=" + emlab::to_string(variant) +
           " grid=" + grid_str + " tol=" + tol_buf + " seed=" + std::to_string(seed);
}

std::string usage_text() {
    return "usage: emlab <riesz | weights | kp | solve | kernel-compare> [options]\n"
           "options:\n"
           "  --jmax N            highest construction level (default per suite)\n"
           "  --schedule S        sqrt | linear | scaled:A with A in (0,1)\n"
           "  --variant V         standard | strong\n"
           "  --grid NX,NY        override solver grid cells\n"
           "  --tol T             iterative solver tolerance, T in (0, 1e-4]\n"
           "  --seed N            seed for randomized checks\n"
           "  --out DIR           output directory (default .)\n"
           "  --format LIST       csv,svg (CSV is always written)\n"
           "  --config FILE       key=value file; flags override file values\n"
           "exit codes: 0 ok, 1 invariant failure, 2 usage, 3 resource/resolution\n";
}

}  // namespace emlab
