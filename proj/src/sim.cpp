#include "sea_mtt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sea_mtt/errors.hpp"

namespace sea {

namespace {

constexpr double kBlowupLimit = 1e12;

struct Derivative {
    double d_theta_m;
    double d_v_m;
    double d_theta_l;
    double d_v_l;
};

SimState advance(const SimState& x, const Derivative& d, double h) {
    return {x.theta_m + h * d.d_theta_m, x.v_m + h * d.d_v_m, x.theta_l + h * d.d_theta_l,
            x.v_l + h * d.d_v_l};
}

double deflection(const SimState& x, const SeaParams& p) { return x.theta_m / p.n_m - x.theta_l; }

Derivative dynamics(const SimState& x, const SimConfig& cfg, double t) {
    const SeaParams& p = cfg.params;
    const double spring = p.k_s * deflection(x, p);
    const double tau = actuation(x, cfg, t).tau_app;
    Derivative d{};
    d.d_theta_m = x.v_m;
    d.d_v_m = (tau - p.b_m * x.v_m - spring / p.n_m) / p.j_m;
    if (p.load_case == LoadCase::Dynamic) {
        d.d_theta_l = x.v_l;
        d.d_v_l = (spring - p.b_l * x.v_l) / p.j_l;
    }
    return d;
}

void check_finite(const SimState& x, double t) {
    for (double v : {x.theta_m, x.v_m, x.theta_l, x.v_l}) {
        if (!std::isfinite(v) || std::abs(v) > kBlowupLimit) {
            std::ostringstream msg;
            msg << "simulation diverged at t = " << t << " s (state magnitude > 1e12)";
            throw NumericalBlowup(t, msg.str());
        }
    }
}

std::size_t step_count(double duration, double dt) {
    const double ratio = duration / dt;
    auto n = static_cast<std::size_t>(std::floor(ratio));
    if (ratio - static_cast<double>(n) > 1.0 - 1e-9) ++n;  // 0.9999999 -> 1
    return n;
}

const std::vector<double>& channel_data(const SimTrace& tr, Channel c) {
    switch (c) {
        case Channel::TauD: return tr.tau_d;
        case Channel::TauOut: return tr.tau_out;
        case Channel::TauCmd: return tr.tau_c_cmd;
        case Channel::TauApp: return tr.tau_c_app;
        case Channel::Vm: return tr.v_m;
        case Channel::NormTorque: return tr.norm_torque;
        case Channel::NormVel: return tr.norm_vel;
        case Channel::TrackingError: break;
    }
    return tr.tau_d;  // unreachable for TrackingError, handled by caller
}

double channel_value(const SimTrace& tr, Channel c, std::size_t i) {
    if (c == Channel::TrackingError) return tr.tau_d[i] - tr.tau_out[i];
    return channel_data(tr, c)[i];
}

std::size_t window_start(const SimTrace& tr, int last_cycles, double freq) {
    if (tr.size() == 0 || last_cycles <= 0 || !(freq > 0.0)) {
        throw InsufficientDuration("steady-state window needs a non-empty trace, cycles > 0, freq > 0");
    }
    const double window = last_cycles * 2.0 * std::numbers::pi / freq;
    const double span = tr.t.back() - tr.t.front();
    if (span < window * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "trace spans " << span << " s, needs " << window << " s for " << last_cycles
            << " cycles";
        throw InsufficientDuration(msg.str());
    }
    const double t0 = tr.t.back() - window;
    auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t0 - 1e-12);
    return static_cast<std::size_t>(it - tr.t.begin());
}

}  // namespace

ReferenceSample sample_reference(const Reference& ref, double t) {
    if (const auto* sine = std::get_if<SineReference>(&ref)) {
        const double ph = sine->freq * t;
        return {sine->amplitude * std::sin(ph), sine->amplitude * sine->freq * std::cos(ph)};
    }
    const auto& ch = std::get<ChirpReference>(ref);
    const double sweep_rate = (ch.f1 - ch.f0) / ch.duration;
    const double phase = ch.f0 * t + 0.5 * sweep_rate * t * t;
    const double inst = ch.f0 + sweep_rate * t;
    return {ch.amplitude * std::sin(phase), ch.amplitude * inst * std::cos(phase)};
}

void SimConfig::validate() const {
    params.validate();
    controller.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParams("dt", "dt must be > 0");
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw InvalidParams("duration", "duration must be > 0");
    }
    if (!(derate_band > 0.0)) throw InvalidParams("derate_band", "derate_band must be > 0");
    if (const auto* sine = std::get_if<SineReference>(&reference)) {
        if (!(sine->freq > 0.0)) throw InvalidParams("freq", "sine frequency must be > 0");
        if (!(sine->amplitude > 0.0)) throw InvalidParams("amplitude", "amplitude must be > 0");
        const double min_duration = 10.0 * 2.0 * std::numbers::pi / sine->freq;
        if (duration < min_duration * (1.0 - 1e-12)) {
            std::ostringstream msg;
            msg << "duration " << duration << " s is shorter than 10 cycles (" << min_duration
                << " s) at " << sine->freq << " rad/s";
            throw InvalidParams("duration", msg.str());
        }
    } else {
        const auto& ch = std::get<ChirpReference>(reference);
        if (!(ch.f0 >= 0.0) || !(ch.f1 >= 0.0)) {
            throw InvalidParams("freq", "chirp frequencies must be >= 0");
        }
        if (!(ch.duration > 0.0)) throw InvalidParams("duration", "chirp duration must be > 0");
        if (!(ch.amplitude > 0.0)) throw InvalidParams("amplitude", "amplitude must be > 0");
    }
}

double limit_model(double tau_cmd, double v_m, const SeaParams& p, double derate_band) {
    const double tau = std::clamp(tau_cmd, -p.t_mc, p.t_mc);
    const double speed = std::abs(v_m);
    if (tau * v_m > 0.0 && speed > p.v_p) {
        const double excess = (speed - p.v_p) / (derate_band * p.v_p);
        return tau * std::max(0.0, 1.0 - excess);
    }
    return tau;
}

Actuation actuation(const SimState& x, const SimConfig& cfg, double t) {
    const SeaParams& p = cfg.params;
    const ReferenceSample ref = sample_reference(cfg.reference, t);
    const double error = ref.value - p.k_s * deflection(x, p);
    const double error_rate = ref.rate - p.k_s * (x.v_m / p.n_m - x.v_l);
    const double cmd = (cfg.controller.k_p * error + cfg.controller.k_d * error_rate) / p.n_m;
    const double app = cfg.limits_enabled ? limit_model(cmd, x.v_m, p, cfg.derate_band) : cmd;
    return {cmd, app};
}

SimState step(const SimState& state, const SimConfig& cfg, double t) {
    check_finite(state, t);
    const double h = cfg.dt;
    const Derivative k1 = dynamics(state, cfg, t);
    const Derivative k2 = dynamics(advance(state, k1, 0.5 * h), cfg, t + 0.5 * h);
    const Derivative k3 = dynamics(advance(state, k2, 0.5 * h), cfg, t + 0.5 * h);
    const Derivative k4 = dynamics(advance(state, k3, h), cfg, t + h);
    SimState next{
        state.theta_m + h / 6.0 * (k1.d_theta_m + 2.0 * k2.d_theta_m + 2.0 * k3.d_theta_m + k4.d_theta_m),
        state.v_m + h / 6.0 * (k1.d_v_m + 2.0 * k2.d_v_m + 2.0 * k3.d_v_m + k4.d_v_m),
        state.theta_l + h / 6.0 * (k1.d_theta_l + 2.0 * k2.d_theta_l + 2.0 * k3.d_theta_l + k4.d_theta_l),
        state.v_l + h / 6.0 * (k1.d_v_l + 2.0 * k2.d_v_l + 2.0 * k3.d_v_l + k4.d_v_l),
    };
    if (cfg.params.load_case == LoadCase::Static) {
        next.theta_l = 0.0;
        next.v_l = 0.0;
    }
    check_finite(next, t + h);
    return next;
}

SimTrace run(const SimConfig& cfg) {
    cfg.validate();
    const SeaParams& p = cfg.params;
    const std::size_t n = step_count(cfg.duration, cfg.dt) + 1;

    SimTrace tr;
    for (auto* ch : {&tr.t, &tr.tau_d, &tr.tau_out, &tr.tau_c_cmd, &tr.tau_c_app, &tr.v_m,
                     &tr.norm_torque, &tr.norm_vel}) {
        ch->resize(n);
    }

    SimState x;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const Actuation a = actuation(x, cfg, t);
        tr.t[k] = t;
        tr.tau_d[k] = sample_reference(cfg.reference, t).value;
        tr.tau_out[k] = p.k_s * deflection(x, p);
        tr.tau_c_cmd[k] = a.tau_cmd;
        tr.tau_c_app[k] = a.tau_app;
        tr.v_m[k] = x.v_m;
        tr.norm_torque[k] = std::abs(a.tau_app) / p.t_mc;
        tr.norm_vel[k] = std::abs(x.v_m) / p.v_p;
        if (k + 1 < n) x = step(x, cfg, t);
    }
    return tr;
}

std::optional<Channel> parse_channel(std::string_view name) {
    static constexpr std::pair<std::string_view, Channel> kNames[] = {
        {"tau_d", Channel::TauD},         {"tau_out", Channel::TauOut},
        {"tau_c_cmd", Channel::TauCmd},   {"tau_c_app", Channel::TauApp},
        {"v_m", Channel::Vm},             {"norm_torque", Channel::NormTorque},
        {"norm_vel", Channel::NormVel},   {"tracking_error", Channel::TrackingError},
    };
    for (const auto& [n, c] : kNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

double steady_state_peak(const SimTrace& trace, Channel channel, int last_cycles, double freq) {
    const std::size_t start = window_start(trace, last_cycles, freq);
    double peak = 0.0;
    for (std::size_t i = start; i < trace.size(); ++i) {
        peak = std::max(peak, std::abs(channel_value(trace, channel, i)));
    }
    return peak;
}

double steady_state_rms(const SimTrace& trace, Channel channel, int last_cycles, double freq) {
    const std::size_t start = window_start(trace, last_cycles, freq);
    double acc = 0.0;
    for (std::size_t i = start; i < trace.size(); ++i) {
        const double v = channel_value(trace, channel, i);
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(trace.size() - start));
}

SimConfig sine_config(const SeaParams& p, const ControllerParams& c, double freq,
                      double amp_scale, bool limits_enabled, double dt,
                      std::optional<double> duration) {
    SimConfig cfg;
    cfg.params = p;
    cfg.controller = c;
    cfg.reference = SineReference{freq, amp_scale * p.max_output_torque()};
    cfg.dt = dt;
    cfg.duration = duration.value_or(20.0 * 2.0 * std::numbers::pi / freq);
    cfg.limits_enabled = limits_enabled;
    return cfg;
}

}  // namespace sea
