#ifndef XNET_CLI_HPP
#define XNET_CLI_HPP

/**
 * Command implementations behind the xnet CLI: simulate (trial runs and
 * power sweeps), patterns (pattern census and dispatch histogram) and
 * region (outer bound, vertices, sum-DoF optimum). Every output document
 * embeds the configuration and seed, and contains nothing run-dependent
 * beyond them, so re-running a config reproduces its output byte for byte.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "xnet/csit.hpp"
#include "xnet/dof_region.hpp"
#include "xnet/errors.hpp"
#include "xnet/estimation.hpp"
#include "xnet/schemes.hpp"

namespace xnet::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kPatternMismatch = 2,
    kInvalidSweep = 3,
    kInvariantFailure = 4,
    kFailure = 5,
};

struct RunConfig {
    std::string command;  // simulate | patterns | region
    std::string scheme = "scheme1";
    int k = 2;
    std::string pattern;        // empty = the scheme's minimal pattern
    long long trials = 1000;    // also trials per point when sweeping
    std::uint64_t seed = 0;
    double noise_variance = 0.0;
    std::string sweep;          // "lo:hi:points", geometric
    int slots = 3;              // patterns command
    std::string out_path;       // empty = stdout
    std::string format = "structured";  // structured | rows
};

namespace detail {

inline std::vector<double> parse_sweep(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int points = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> points) || c1 != ':' || c2 != ':') {
        throw InvalidSweep("sweep must be lo:hi:points");
    }
    if (points < 2 || lo <= 0.0 || hi <= lo) throw InvalidSweep("sweep bounds must satisfy 0 < lo < hi, points >= 2");
    std::vector<double> powers;
    for (int i = 0; i < points; ++i) {
        powers.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    }
    return powers;
}

inline nlohmann::json config_json(const RunConfig& cfg) {
    return {
        {"command", cfg.command}, {"scheme", cfg.scheme},   {"k", cfg.k},
        {"pattern", cfg.pattern}, {"trials", cfg.trials},   {"seed", cfg.seed},
        {"noise_variance", cfg.noise_variance},             {"sweep", cfg.sweep},
        {"slots", cfg.slots},     {"format", cfg.format},
    };
}

inline std::string config_comment(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# command=" << cfg.command << " scheme=" << cfg.scheme << " k=" << cfg.k
       << " pattern=" << (cfg.pattern.empty() ? "-" : cfg.pattern) << " trials=" << cfg.trials
       << " seed=" << cfg.seed << " noise_variance=" << cfg.noise_variance
       << " sweep=" << (cfg.sweep.empty() ? "-" : cfg.sweep) << " slots=" << cfg.slots << "\n";
    return os.str();
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream* override_out) {
    if (override_out != nullptr) {
        *override_out << text;
        return;
    }
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out_path);
    f << text;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream* override_out) {
    const std::optional<SchemeId> scheme = parse_scheme(cfg.scheme, cfg.k);
    if (!scheme) {
        std::cerr << "unknown scheme: " << cfg.scheme << "\n";
        return kUsage;
    }
    const SchemeInfo info = describe(*scheme);
    std::optional<CsitPattern> pattern;
    if (!cfg.pattern.empty()) {
        pattern = CsitPattern::parse(cfg.pattern);
        if (pattern->n_rx != info.n_rx || pattern->n_slots() != info.n_slots ||
            !dominates(*pattern, info.minimal_pattern)) {
            std::cerr << "pattern " << pattern->to_string() << " does not dominate minimal pattern "
                      << info.minimal_pattern.to_string() << " of " << scheme_name(*scheme) << "\n";
            return kPatternMismatch;
        }
    }
    const NoiseConfig noise = NoiseConfig::with_variance(cfg.noise_variance);
    const TrialReport report = run_trials(*scheme, cfg.trials, noise, cfg.seed, pattern);
    std::optional<SlopeEstimate> slope;
    if (!cfg.sweep.empty()) {
        slope = rate_slope(*scheme, parse_sweep(cfg.sweep), cfg.trials, cfg.seed);
    }

    if (cfg.format == "structured") {
        nlohmann::json doc;
        doc["schema_version"] = 1;
        doc["command"] = "simulate";
        doc["config"] = config_json(cfg);
        doc["report"] = {
            {"trials", report.trials},
            {"successes", report.successes},
            {"max_residual", report.max_residual},
            {"condition", {{"p50", report.condition.p50},
                           {"p95", report.condition.p95},
                           {"max", report.condition.max}}},
            {"identifiability_failures", report.identifiability_failures},
            {"dof_count", to_string(dof_count(*scheme))},
            {"symbols", info.symbols.size()},
            {"slots", info.n_slots},
            {"pattern", pattern ? pattern->to_string() : info.minimal_pattern.to_string()},
        };
        if (slope) {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& pt : slope->snr_points) {
                pts.push_back({{"power", pt.power}, {"mean_rate", pt.mean_rate}, {"std_rate", pt.std_rate}});
            }
            doc["sweep"] = {{"points", pts}, {"slope", slope->slope}, {"r_squared", slope->r_squared}};
        }
        emit(cfg, doc.dump(2) + "\n", override_out);
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "# xnet-rows v1\n" << config_comment(cfg);
        os << "trials,successes,max_residual,cond_p50,cond_p95,cond_max,identifiability_failures\n";
        os << report.trials << ',' << report.successes << ',' << report.max_residual << ','
           << report.condition.p50 << ',' << report.condition.p95 << ',' << report.condition.max
           << ',' << report.identifiability_failures << "\n";
        if (slope) {
            os << "power,mean_rate,std_rate\n";
            for (const auto& pt : slope->snr_points) {
                os << pt.power << ',' << pt.mean_rate << ',' << pt.std_rate << "\n";
            }
            os << "slope,r_squared\n" << slope->slope << ',' << slope->r_squared << "\n";
        }
        emit(cfg, os.str(), override_out);
    }

    const bool noiseless = !noise.enabled;
    if (noiseless && (report.successes != report.trials || report.identifiability_failures != 0)) {
        return kInvariantFailure;
    }
    return kOk;
}

inline int cmd_patterns(const RunConfig& cfg, std::ostream* override_out) {
    const PatternCensus c = census(cfg.slots);
    if (cfg.format == "structured") {
        nlohmann::json doc;
        doc["schema_version"] = 1;
        doc["command"] = "patterns";
        doc["config"] = config_json(cfg);
        nlohmann::json hist;
        for (std::size_t s = 0; s < scheme_table().size(); ++s) {
            hist[scheme_name(scheme_table()[s].first)] = c.per_scheme[s];
        }
        hist["none"] = c.total - c.dispatched;
        doc["report"] = {{"total", c.total},
                         {"synergistic", c.synergistic},
                         {"dispatched", c.dispatched},
                         {"histogram", hist}};
        emit(cfg, doc.dump(2) + "\n", override_out);
    } else {
        std::ostringstream os;
        os << "# xnet-rows v1\n" << config_comment(cfg);
        os << "total,synergistic,dispatched\n"
           << c.total << ',' << c.synergistic << ',' << c.dispatched << "\n";
        os << "scheme,count\n";
        for (std::size_t s = 0; s < scheme_table().size(); ++s) {
            os << scheme_name(scheme_table()[s].first) << ',' << c.per_scheme[s] << "\n";
        }
        os << "none," << c.total - c.dispatched << "\n";
        emit(cfg, os.str(), override_out);
    }
    return kOk;
}

inline int cmd_region(const RunConfig& cfg, std::ostream* override_out) {
    const DofPolytope poly = outer_bound();
    std::vector<DofPoint> verts = enumerate_vertices(poly);
    std::sort(verts.begin(), verts.end(),
              [](const DofPoint& a, const DofPoint& b) { return a.d < b.d; });
    const MaxSumResult opt = max_sum(poly);
    if (cfg.format == "structured") {
        nlohmann::json doc;
        doc["schema_version"] = 1;
        doc["command"] = "region";
        doc["config"] = config_json(cfg);
        nlohmann::json ineqs = nlohmann::json::array();
        for (const auto& hs : poly.constraints) {
            ineqs.push_back({{"a", hs.a}, {"b", hs.b}});
        }
        nlohmann::json vjson = nlohmann::json::array();
        for (const auto& v : verts) vjson.push_back(v.d);
        nlohmann::json argmax = nlohmann::json::array();
        for (const auto& v : opt.argmax) argmax.push_back(v.d);
        doc["report"] = {{"inequalities", ineqs},
                         {"vertices", vjson},
                         {"max_sum", opt.value},
                         {"argmax", argmax}};
        emit(cfg, doc.dump(2) + "\n", override_out);
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "# xnet-rows v1\n" << config_comment(cfg);
        os << region_to_text(poly);
        os << "max_sum," << opt.value << "\n";
        for (const auto& v : opt.argmax) {
            os << "argmax," << v.d[0] << ',' << v.d[1] << ',' << v.d[2] << ',' << v.d[3] << "\n";
        }
        emit(cfg, os.str(), override_out);
    }
    return kOk;
}

}  // namespace detail

/// Dispatches a parsed configuration; returns a process exit code.
inline int run_command(const RunConfig& cfg, std::ostream* override_out = nullptr) {
    try {
        if (cfg.command == "simulate") return detail::cmd_simulate(cfg, override_out);
        if (cfg.command == "patterns") return detail::cmd_patterns(cfg, override_out);
        if (cfg.command == "region") return detail::cmd_region(cfg, override_out);
        std::cerr << "unknown command: " << cfg.command << "\n";
        return kUsage;
    } catch (const PatternMismatch& e) {
        std::cerr << "pattern mismatch: " << e.what() << "\n";
        return kPatternMismatch;
    } catch (const InvalidSweep& e) {
        std::cerr << "invalid sweep: " << e.what() << "\n";
        return kInvalidSweep;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace xnet::cli

#endif  // XNET_CLI_HPP
