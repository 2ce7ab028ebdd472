#include "sea_mtt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "sea_mtt/errors.hpp"
#include "sea_mtt/mtt.hpp"

namespace sea {

namespace {

constexpr double kCrossTol = 0.02;
constexpr double kDcTol = 1e-3;
constexpr double kStaticLimitTol = 1e-3;
constexpr double kRootTol = 1e-4;
constexpr double kDtTol = 1e-6;
constexpr double kProbeAmplitude = 0.1;  // fraction of n_m * t_mc
constexpr int kSteadyCycles = 5;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string sci(double v) {
    std::ostringstream o;
    o.precision(3);
    o << std::scientific << v;
    return o.str();
}

std::string describe(const Bandwidth& b) {
    if (b.is_zero()) return "zero";
    if (b.is_unbounded()) return "unbounded";
    std::ostringstream o;
    o << b.omega() << " rad/s";
    return o.str();
}

void cross_validation(const AppConfig& cfg, std::vector<CheckResult>& out) {
    const MttModel model(cfg.params, cfg.controller);
    for (double w : kCrossCheckFrequencies) {
        std::ostringstream tag;
        tag << w << " rad/s";
        try {
            SimConfig sc = sine_config(cfg.params, cfg.controller, w, kProbeAmplitude, false,
                                       cfg.sim.dt);
            sc.derate_band = cfg.sim.derate_band;
            const SimTrace tr = run(sc);
            const double sim_tau =
                steady_state_peak(tr, Channel::NormTorque, kSteadyCycles, w) / kProbeAmplitude;
            const double sim_vel =
                steady_state_peak(tr, Channel::NormVel, kSteadyCycles, w) / kProbeAmplitude;
            const double mtt_t = model.tau_at(w);
            const double mtt_v = model.vel_at(w);
            const double et = rel_diff(sim_tau, mtt_t);
            const double ev = rel_diff(sim_vel, mtt_v);
            out.push_back({"time-domain MTT_tau @ " + tag.str(), et <= kCrossTol,
                           "sim " + sci(sim_tau) + " vs mtt " + sci(mtt_t) + ", rel " + sci(et)});
            out.push_back({"time-domain MTT_V @ " + tag.str(), ev <= kCrossTol,
                           "sim " + sci(sim_vel) + " vs mtt " + sci(mtt_v) + ", rel " + sci(ev)});
        } catch (const Error& e) {
            out.push_back({"time-domain MTT @ " + tag.str(), false, e.what()});
        }
    }
}

void dc_checks(const AppConfig& cfg, std::vector<CheckResult>& out) {
    const MttModel model(cfg.params, cfg.controller);
    const double probe = 1e-6;
    const double t_num = model.tau_at(probe);
    const double t_dc = mtt_dc_limit(cfg.params, cfg.controller);
    const double et = rel_diff(t_num, t_dc);
    out.push_back({"DC limit MTT_tau", et <= kDcTol,
                   "mtt(1e-6) " + sci(t_num) + " vs closed form " + sci(t_dc) + ", rel " + sci(et)});

    if (cfg.params.load_case == LoadCase::Static) {
        const double v0 = model.vel_at(0.0);
        out.push_back({"DC limit MTT_V (static = 0)", v0 == 0.0, "mtt_v(0) = " + sci(v0)});
    } else {
        const double v_num = model.vel_at(probe);
        const double v_dc = mtt_v_dc_limit(cfg.params, cfg.controller);
        const double ev = rel_diff(v_num, v_dc);
        out.push_back({"DC limit MTT_V", ev <= kDcTol,
                       "mtt_v(1e-6) " + sci(v_num) + " vs closed form " + sci(v_dc) + ", rel " +
                           sci(ev)});
    }
}

void static_limit_check(const AppConfig& cfg, std::vector<CheckResult>& out) {
    SeaParams dyn = cfg.params;
    dyn.load_case = LoadCase::Dynamic;
    SeaParams sta = cfg.params;
    sta.load_case = LoadCase::Static;
    const MttModel heavy(heavy_load(dyn), cfg.controller);
    const MttModel fixed(sta, cfg.controller);
    double worst_t = 0.0, worst_v = 0.0;
    for (double w : cfg.grid.samples()) {
        worst_t = std::max(worst_t, rel_diff(heavy.tau_at(w), fixed.tau_at(w)));
        worst_v = std::max(worst_v, rel_diff(heavy.vel_at(w), fixed.vel_at(w)));
    }
    out.push_back({"static limit MTT_tau (jl, bl x1e6)", worst_t <= kStaticLimitTol,
                   "max rel " + sci(worst_t)});
    out.push_back({"static limit MTT_V (jl, bl x1e6)", worst_v <= kStaticLimitTol,
                   "max rel " + sci(worst_v)});
}

void bandwidth_checks(const AppConfig& cfg, std::vector<CheckResult>& out) {
    const MttModel model(cfg.params, cfg.controller);
    const BandwidthReport r = bandwidth(model, cfg.grid);
    const Bandwidth expected = std::min(r.omega_mt_tau, r.omega_mt_v);
    bool ok = r.omega_mt == expected;
    if (r.binding == Binding::Torque) ok = ok && r.omega_mt == r.omega_mt_tau;
    if (r.binding == Binding::Velocity) ok = ok && r.omega_mt == r.omega_mt_v;
    if (r.binding == Binding::Neither) {
        ok = ok && r.omega_mt_tau.is_unbounded() && r.omega_mt_v.is_unbounded();
    }
    out.push_back({"bandwidth = min(tau, V) structure", ok,
                   "tau " + describe(r.omega_mt_tau) + ", V " + describe(r.omega_mt_v) + ", mt " +
                       describe(r.omega_mt) + ", binding " + std::string(to_string(r.binding))});

    double worst = 0.0;
    if (r.omega_mt_tau.is_finite()) {
        worst = std::max(worst, std::abs(model.tau_at(r.omega_mt_tau.omega()) - 1.0));
    }
    if (r.omega_mt_v.is_finite()) {
        worst = std::max(worst, std::abs(model.vel_at(r.omega_mt_v.omega()) - 1.0));
    }
    out.push_back({"bandwidth root residual", worst <= kRootTol, "max |MTT - 1| " + sci(worst)});
}

void convergence_check(const AppConfig& cfg, std::vector<CheckResult>& out) {
    try {
        SimConfig sc = sine_config(cfg.params, cfg.controller, 10.0, kProbeAmplitude, false,
                                   cfg.sim.dt);
        const double change = dt_halving_change(sc);
        out.push_back({"RK4 dt-halving convergence", change <= kDtTol,
                       "dt " + sci(cfg.sim.dt) + ", rel change " + sci(change)});
    } catch (const Error& e) {
        out.push_back({"RK4 dt-halving convergence", false, e.what()});
    }
}

}  // namespace

SeaParams heavy_load(const SeaParams& p, double factor) {
    SeaParams q = p;
    q.j_l *= factor;
    q.b_l *= factor;
    return q;
}

SineSummary summarize_sine(const SimTrace& trace, const SimConfig& cfg) {
    const auto& sine = std::get<SineReference>(cfg.reference);
    const double w = sine.freq;
    const double amp = sine.amplitude;
    const double peak_err = steady_state_peak(trace, Channel::TrackingError, kSteadyCycles, w);
    return {
        steady_state_peak(trace, Channel::NormTorque, kSteadyCycles, w),
        steady_state_peak(trace, Channel::NormVel, kSteadyCycles, w),
        steady_state_rms(trace, Channel::TrackingError, kSteadyCycles, w) / amp,
        peak_err / amp,
        peak_err / cfg.params.max_output_torque(),
    };
}

double dt_halving_change(const SimConfig& cfg) {
    SimConfig coarse = cfg;
    coarse.duration = std::ceil(cfg.duration / cfg.dt) * cfg.dt;
    SimConfig fine = coarse;
    fine.dt = 0.5 * coarse.dt;

    const SimTrace a = run(coarse);
    const SimTrace b = run(fine);
    double worst = 0.0;
    using Field = std::vector<double> SimTrace::*;
    for (Field ch : {&SimTrace::tau_out, &SimTrace::v_m, &SimTrace::tau_c_cmd}) {
        const auto& va = a.*ch;
        const auto& vb = b.*ch;
        double peak = 0.0;
        for (double v : vb) peak = std::max(peak, std::abs(v));
        if (peak == 0.0) continue;
        worst = std::max(worst, std::abs(va.back() - vb.back()) / peak);
    }
    return worst;
}

std::vector<CheckResult> run_verification(const AppConfig& cfg) {
    std::vector<CheckResult> out;
    cross_validation(cfg, out);
    dc_checks(cfg, out);
    static_limit_check(cfg, out);
    bandwidth_checks(cfg, out);
    convergence_check(cfg, out);
    return out;
}

}  // namespace sea
