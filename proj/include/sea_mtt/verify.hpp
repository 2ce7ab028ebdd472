#pragma once

#include <string>
#include <vector>

#include "sea_mtt/config.hpp"
#include "sea_mtt/sim.hpp"

namespace sea {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;  // residuals / measured values
};

// Frequency-domain vs. time-domain battery for one configuration:
// unsaturated sine runs at 1, 5, 10, 20, 40 rad/s against MTT_tau and MTT_V (2%),
// DC limits, static-limit convergence, bandwidth structure and root residuals,
// and RK4 step-halving convergence at the configured dt.
std::vector<CheckResult> run_verification(const AppConfig& cfg);

// Frequencies used by the cross-validation runs, rad/s.
inline constexpr double kCrossCheckFrequencies[] = {1.0, 5.0, 10.0, 20.0, 40.0};

// Steady-state figures of a sine run over its last 5 periods.
struct SineSummary {
    double peak_norm_torque;
    double peak_norm_vel;
    double rms_error_over_amplitude;
    double peak_error_over_amplitude;
    double peak_error_over_max_torque;  // normalized by n_m * t_mc
};
SineSummary summarize_sine(const SimTrace& trace, const SimConfig& cfg);

// Relative change of the final tau_out, v_m and tau_c_cmd samples when dt is
// halved, each normalized by the channel's peak over the run.
double dt_halving_change(const SimConfig& cfg);

// Parameters with j_l and b_l scaled by `factor` (dynamic case).
SeaParams heavy_load(const SeaParams& p, double factor = 1e6);

}  // namespace sea
