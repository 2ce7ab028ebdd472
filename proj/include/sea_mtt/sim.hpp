#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "sea_mtt/model.hpp"

namespace sea {

struct SineReference {
    double freq;       // rad/s
    double amplitude;  // N*m at the SEA output
};

// Linear chirp: instantaneous frequency f0 + (f1 - f0) t / duration, rad/s.
struct ChirpReference {
    double f0;
    double f1;
    double duration;
    double amplitude;
};

using Reference = std::variant<SineReference, ChirpReference>;

// Desired output torque and its exact time derivative.
struct ReferenceSample {
    double value;
    double rate;
};
ReferenceSample sample_reference(const Reference& ref, double t);

struct SimConfig {
    SeaParams params;
    ControllerParams controller;
    Reference reference = SineReference{1.0, 0.0};
    double dt = 1e-4;
    double duration = 0.0;
    bool limits_enabled = true;
    // Width of the driving-direction torque derating band above v_p, as a
    // fraction of v_p.
    double derate_band = 0.05;

    void validate() const;
};

struct SimState {
    double theta_m = 0.0;
    double v_m = 0.0;
    double theta_l = 0.0;
    double v_l = 0.0;
};

struct SimTrace {
    std::vector<double> t;
    std::vector<double> tau_d;
    std::vector<double> tau_out;
    std::vector<double> tau_c_cmd;
    std::vector<double> tau_c_app;
    std::vector<double> v_m;
    std::vector<double> norm_torque;
    std::vector<double> norm_vel;

    std::size_t size() const noexcept { return t.size(); }
};

// Drive limits: clamp to +-t_mc, then linearly derate driving torque to zero
// across [v_p, (1 + band) v_p]. Braking torque is never derated.
double limit_model(double tau_cmd, double v_m, const SeaParams& p, double derate_band = 0.05);

// Controller output and torque actually applied at a given state and time.
struct Actuation {
    double tau_cmd;
    double tau_app;
};
Actuation actuation(const SimState& x, const SimConfig& cfg, double t);

// One fixed RK4 step of length cfg.dt starting at time t.
// Throws NumericalBlowup if any state leaves [-1e12, 1e12] or turns non-finite.
SimState step(const SimState& state, const SimConfig& cfg, double t);

// Integrates from rest over cfg.duration, recording floor(duration/dt)+1 samples.
SimTrace run(const SimConfig& cfg);

enum class Channel { TauD, TauOut, TauCmd, TauApp, Vm, NormTorque, NormVel, TrackingError };
std::optional<Channel> parse_channel(std::string_view name);

// Max |channel| over the final last_cycles periods at freq (rad/s).
// Throws InsufficientDuration if the trace is shorter than that window.
double steady_state_peak(const SimTrace& trace, Channel channel, int last_cycles, double freq);

// RMS of |channel| over the same window.
double steady_state_rms(const SimTrace& trace, Channel channel, int last_cycles, double freq);

// Steady-state sine run for a given amplitude scale (1.0 = n_m * t_mc).
// Duration defaults to 20 reference periods.
SimConfig sine_config(const SeaParams& p, const ControllerParams& c, double freq,
                      double amp_scale, bool limits_enabled, double dt = 1e-4,
                      std::optional<double> duration = std::nullopt);

}  // namespace sea
