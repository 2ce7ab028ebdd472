// sea-mtt: maximum torque transmissibility analysis for series elastic actuators.
//
//   sea-mtt analyze   --config cfg.json [--out mtt.csv] [--svg mtt.svg]
//   sea-mtt bandwidth --config cfg.json [--json]
//   sea-mtt sweep     --config cfg.json --param kp --from 0.1 --to 6 --points 60 [--log]
//   sea-mtt simulate  --config cfg.json --freq 31.4 [--amp-scale 1] [--no-limits] [--out trace.csv]
//   sea-mtt verify    --config cfg.json
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 numerical failure.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sea_mtt/config.hpp"
#include "sea_mtt/errors.hpp"
#include "sea_mtt/mtt.hpp"
#include "sea_mtt/report.hpp"
#include "sea_mtt/sim.hpp"
#include "sea_mtt/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kNumericalError = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string out;
    std::string svg;
    bool json = false;

    // sweep
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    bool log = false;

    // simulate
    double freq = 0.0;
    double amp_scale = 1.0;
    std::optional<double> duration;
    bool limits = true;
    std::optional<double> chirp_to;
};

sea::AppConfig config_from(const Options& o) {
    return o.config.empty() ? sea::default_config() : sea::load_config(o.config);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        sea::write_file_atomic(path, content);
    }
}

double to_hz(double w) { return w / (2.0 * std::numbers::pi); }

std::string bandwidth_text(const sea::Bandwidth& b, const sea::FrequencyGrid& g) {
    if (b.is_zero()) return "zero (DC-limited)";
    if (b.is_unbounded()) {
        return "unbounded (no crossing below " + sea::format_number(g.omega_max) + " rad/s)";
    }
    return sea::format_number(b.omega()) + " rad/s (" + sea::format_number(to_hz(b.omega())) +
           " Hz)";
}

nlohmann::json bandwidth_json(const sea::Bandwidth& b) {
    nlohmann::json j;
    if (b.is_zero()) {
        j["kind"] = "zero";
    } else if (b.is_unbounded()) {
        j["kind"] = "unbounded";
    } else {
        j["kind"] = "finite";
        j["rad_s"] = b.omega();
        j["hz"] = to_hz(b.omega());
    }
    return j;
}

int cmd_analyze(const Options& o) {
    const sea::AppConfig cfg = config_from(o);
    const sea::MttCurve curve = sea::mtt_curve(cfg.params, cfg.controller, cfg.grid);
    for (const auto& s : curve.skipped) {
        std::cerr << "warning: skipped omega = " << s.omega << ": " << s.reason << '\n';
    }
    emit(o.out, sea::curve_table(curve).str());
    if (!o.svg.empty()) {
        const char* load = cfg.params.load_case == sea::LoadCase::Static ? "static" : "dynamic";
        sea::write_file_atomic(o.svg, sea::render_svg(curve, std::string("MTT (") + load +
                                                                 " load)"));
    }
    return kOk;
}

int cmd_bandwidth(const Options& o) {
    const sea::AppConfig cfg = config_from(o);
    const sea::BandwidthReport r = sea::bandwidth(cfg.params, cfg.controller, cfg.grid);
    std::optional<double> mg;
    if (cfg.params.load_case == sea::LoadCase::Dynamic) mg = sea::marginal_gain(cfg.params);

    if (o.json) {
        nlohmann::json j;
        j["omega_mt_tau"] = bandwidth_json(r.omega_mt_tau);
        j["omega_mt_v"] = bandwidth_json(r.omega_mt_v);
        j["omega_mt"] = bandwidth_json(r.omega_mt);
        j["binding"] = std::string(sea::to_string(r.binding));
        j["crossings_tau"] = r.crossings_tau;
        j["crossings_v"] = r.crossings_v;
        j["marginal_gain"] = mg ? nlohmann::json(*mg) : nlohmann::json(nullptr);
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << "omega_mt_tau:  " << bandwidth_text(r.omega_mt_tau, cfg.grid) << '\n'
              << "omega_mt_v:    " << bandwidth_text(r.omega_mt_v, cfg.grid) << '\n'
              << "omega_mt:      " << bandwidth_text(r.omega_mt, cfg.grid) << '\n'
              << "binding:       " << sea::to_string(r.binding) << '\n'
              << "marginal_gain: " << (mg ? sea::format_number(*mg) : "n/a (static)") << '\n';
    if (r.crossings_tau > 1 || r.crossings_v > 1) {
        std::cout << "note: unity crossings on grid: tau " << r.crossings_tau << ", V "
                  << r.crossings_v << " (lowest reported)\n";
    }
    return kOk;
}

int cmd_sweep(const Options& o) {
    const auto param = sea::parse_sweep_param(o.param);
    if (!param) throw UsageError("--param must be one of kp, kd, nm, ks, jl (got \"" + o.param + "\")");
    if (!(o.from < o.to)) throw UsageError("--from must be smaller than --to");
    if (o.points < 2) throw UsageError("--points must be >= 2");
    if (o.log && !(o.from > 0.0)) throw UsageError("--log requires --from > 0");

    const sea::AppConfig cfg = config_from(o);
    std::vector<double> values(static_cast<std::size_t>(o.points));
    for (int i = 0; i < o.points; ++i) {
        const double f = static_cast<double>(i) / (o.points - 1);
        values[i] = o.log ? std::exp(std::log(o.from) + f * (std::log(o.to) - std::log(o.from)))
                          : o.from + f * (o.to - o.from);
    }
    values.front() = o.from;
    values.back() = o.to;

    const auto entries = sea::sweep(cfg.params, cfg.controller, *param, values, cfg.grid);
    for (const auto& e : entries) {
        if (!e.report) std::cerr << "warning: " << o.param << " = " << e.value << ": " << e.error << '\n';
    }
    emit(o.out, sea::sweep_table(entries, cfg.grid).str());
    return kOk;
}

int cmd_simulate(const Options& o) {
    if (!(o.amp_scale > 0.0)) throw UsageError("--amp-scale must be > 0");
    const sea::AppConfig cfg = config_from(o);
    const double amplitude = o.amp_scale * cfg.params.max_output_torque();

    sea::SimConfig sc;
    if (o.chirp_to) {
        if (!o.duration && !cfg.sim.duration) throw UsageError("a chirp needs --duration");
        const double T = o.duration ? *o.duration : *cfg.sim.duration;
        sc.params = cfg.params;
        sc.controller = cfg.controller;
        sc.reference = sea::ChirpReference{o.freq, *o.chirp_to, T, amplitude};
        sc.dt = cfg.sim.dt;
        sc.duration = T;
        sc.limits_enabled = o.limits;
    } else {
        if (!(o.freq > 0.0)) throw UsageError("--freq must be > 0 rad/s");
        std::optional<double> duration = o.duration ? o.duration : cfg.sim.duration;
        sc = sea::sine_config(cfg.params, cfg.controller, o.freq, o.amp_scale, o.limits,
                              cfg.sim.dt, duration);
    }
    sc.derate_band = cfg.sim.derate_band;

    const sea::SimTrace trace = sea::run(sc);
    if (!o.out.empty()) sea::write_file_atomic(o.out, sea::trace_table(trace).str());

    if (std::holds_alternative<sea::SineReference>(sc.reference)) {
        const sea::SineSummary s = sea::summarize_sine(trace, sc);
        std::cout << "steady-state (last 5 cycles)\n"
                  << "peak_norm_torque:        " << sea::format_number(s.peak_norm_torque) << '\n'
                  << "peak_norm_vel:           " << sea::format_number(s.peak_norm_vel) << '\n'
                  << "rms_error/amplitude:     " << sea::format_number(s.rms_error_over_amplitude) << '\n'
                  << "peak_error/amplitude:    " << sea::format_number(s.peak_error_over_amplitude) << '\n'
                  << "peak_error/(nm*tmc):     " << sea::format_number(s.peak_error_over_max_torque) << '\n';
    } else {
        double pt = 0.0, pv = 0.0, pe = 0.0;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            pt = std::max(pt, trace.norm_torque[i]);
            pv = std::max(pv, trace.norm_vel[i]);
            pe = std::max(pe, std::abs(trace.tau_d[i] - trace.tau_out[i]));
        }
        std::cout << "whole run (chirp)\n"
                  << "peak_norm_torque:        " << sea::format_number(pt) << '\n'
                  << "peak_norm_vel:           " << sea::format_number(pv) << '\n'
                  << "peak_error/amplitude:    " << sea::format_number(pe / amplitude) << '\n';
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    const sea::AppConfig cfg = config_from(o);
    const auto checks = sea::run_verification(cfg);
    std::size_t passed = 0;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << "]\n";
        if (c.passed) ++passed;
    }
    std::cout << passed << "/" << checks.size() << " checks passed\n";
    return passed == checks.size() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum torque transmissibility analysis for series elastic actuators", "sea-mtt"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON parameter file (default: built-in parameter set)");
    };

    auto* analyze = app.add_subcommand("analyze", "MTT_tau / MTT_V over the frequency grid (CSV)");
    common(analyze);
    analyze->add_option("--out", o.out, "CSV output path (default stdout)");
    analyze->add_option("--svg", o.svg, "SVG plot output path");

    auto* bw = app.add_subcommand("bandwidth", "maximum torque bandwidths and marginal gain");
    common(bw);
    bw->add_flag("--json", o.json, "machine-readable output");

    auto* sw = app.add_subcommand("sweep", "bandwidth over a design-parameter range (CSV)");
    common(sw);
    sw->add_option("--param", o.param, "kp | kd | nm | ks | jl")->required();
    sw->add_option("--from", o.from, "first value")->required();
    sw->add_option("--to", o.to, "last value")->required();
    sw->add_option("--points", o.points, "number of values (>= 2)")->required();
    sw->add_flag("--log", o.log, "log-spaced values");
    sw->add_option("--out", o.out, "CSV output path (default stdout)");

    auto* sim = app.add_subcommand("simulate", "nonlinear time-domain run with drive limits");
    common(sim);
    sim->add_option("--freq", o.freq, "reference frequency, rad/s (chirp start with --chirp-to)")
        ->required();
    sim->add_option("--amp-scale", o.amp_scale, "amplitude as a fraction of nm*tmc (default 1)");
    sim->add_option("--duration", o.duration, "seconds (default 20 periods)");
    sim->add_flag("--limits,!--no-limits", o.limits, "apply torque/velocity limits (default on)");
    sim->add_option("--chirp-to", o.chirp_to, "linear chirp end frequency, rad/s");
    sim->add_option("--out", o.out, "trace CSV output path");

    auto* ver = app.add_subcommand("verify", "frequency- vs time-domain consistency battery");
    common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(o);
        if (*bw) return cmd_bandwidth(o);
        if (*sw) return cmd_sweep(o);
        if (*sim) return cmd_simulate(o);
        if (*ver) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const sea::ConfigError& e) {
        std::cerr << "config error";
        if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
        std::cerr << ": " << e.what() << '\n';
        return kInputError;
    } catch (const sea::InvalidParams& e) {
        std::cerr << "invalid parameter [" << e.key() << "]: " << e.what() << '\n';
        return kInputError;
    } catch (const sea::NumericalBlowup& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const sea::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
