#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sea_mtt/lti.hpp"
#include "sea_mtt/model.hpp"

namespace sea {

// Log-spaced frequency grid, rad/s.
struct FrequencyGrid {
    double omega_min = 1e-2;
    double omega_max = 1e3;
    std::size_t points = 2000;

    void validate() const;
    std::vector<double> samples() const;
};

enum class Limiting { None, Torque, Velocity };
std::string_view to_string(Limiting l);

struct SkippedSample {
    double omega;
    std::string reason;
};

struct MttCurve {
    std::vector<double> omega;
    std::vector<double> mtt_tau;
    std::vector<double> mtt_v;
    std::vector<Limiting> limiting;
    std::vector<SkippedSample> skipped;
};

Limiting classify(double mtt_tau, double mtt_v);

// A bandwidth value. Zero means the DC limit already exceeds unity (a regime,
// not a root); Unbounded means no crossing below the search ceiling.
// Ordered Zero < any finite value < Unbounded.
class Bandwidth {
public:
    enum class Kind { Zero, Finite, Unbounded };

    static Bandwidth zero() { return Bandwidth(Kind::Zero, 0.0); }
    static Bandwidth unbounded() { return Bandwidth(Kind::Unbounded, 0.0); }
    static Bandwidth finite(double omega) { return Bandwidth(Kind::Finite, omega); }

    Kind kind() const noexcept { return kind_; }
    bool is_zero() const noexcept { return kind_ == Kind::Zero; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool is_unbounded() const noexcept { return kind_ == Kind::Unbounded; }
    // rad/s; only meaningful for finite values (0 for Zero and Unbounded).
    double omega() const noexcept { return omega_; }

    std::partial_ordering operator<=>(const Bandwidth& other) const;
    bool operator==(const Bandwidth& other) const = default;

private:
    Bandwidth(Kind k, double w) : kind_(k), omega_(w) {}
    Kind kind_;
    double omega_;
};

enum class Binding { Torque, Velocity, Neither };
std::string_view to_string(Binding b);

struct BandwidthReport {
    Bandwidth omega_mt_tau = Bandwidth::unbounded();
    Bandwidth omega_mt_v = Bandwidth::unbounded();
    Bandwidth omega_mt = Bandwidth::unbounded();
    Binding binding = Binding::Neither;
    // Number of unity crossings seen on the search grid, per channel.
    std::size_t crossings_tau = 0;
    std::size_t crossings_v = 0;
};

// Combines the two channel bandwidths: the smaller one binds.
BandwidthReport combine(Bandwidth tau, Bandwidth vel);

// Precomputed closed-loop transfer functions for repeated MTT evaluation.
class MttModel {
public:
    MttModel(const SeaParams& p, const ControllerParams& c);

    // Required motor torque at full output amplitude, normalized by t_mc. omega > 0.
    double tau_at(double omega) const;
    // Required motor velocity at full output amplitude, normalized by v_p. omega >= 0.
    double vel_at(double omega) const;

    double tau_dc() const;
    double vel_dc() const;

    const SeaParams& params() const noexcept { return params_; }
    const ControllerParams& controller() const noexcept { return controller_; }
    const RationalTF& tc() const noexcept { return tc_; }
    const RationalTF& vm() const noexcept { return vm_; }

private:
    SeaParams params_;
    ControllerParams controller_;
    RationalTF tc_;
    RationalTF vm_;
};

double mtt_tau_at(const SeaParams& p, const ControllerParams& c, double omega);
double mtt_v_at(const SeaParams& p, const ControllerParams& c, double omega);

// Closed-form omega -> 0 limit of MTT_tau. The derivative gain does not enter.
double mtt_dc_limit(const SeaParams& p, const ControllerParams& c);
// Closed-form omega -> 0 limit of MTT_V (0 for the static case).
double mtt_v_dc_limit(const SeaParams& p, const ControllerParams& c);

// Proportional gain at which DC MTT_tau reaches exactly one:
// 1 + n_m^-2 b_l / b_m. Throws StaticCaseUnsupported for the static case.
double marginal_gain(const SeaParams& p);

MttCurve mtt_curve(const SeaParams& p, const ControllerParams& c, const FrequencyGrid& grid);

// Lowest unity crossing of each MTT channel, bracketed on the grid and refined
// by bisection to 1e-6 relative in omega.
BandwidthReport bandwidth(const SeaParams& p, const ControllerParams& c,
                          const FrequencyGrid& search = {});
BandwidthReport bandwidth(const MttModel& model, const FrequencyGrid& search = {});

enum class SweepParam { Kp, Kd, Nm, Ks, Jl };
std::string_view to_string(SweepParam p);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

struct SweepEntry {
    double value;
    std::optional<BandwidthReport> report;
    std::string error;  // set when the value is rejected
};

// bandwidth() at each value with everything else fixed. Values are evaluated
// in parallel; results come back in input order.
std::vector<SweepEntry> sweep(const SeaParams& p, const ControllerParams& c, SweepParam param,
                              const std::vector<double>& values, const FrequencyGrid& search = {});

}  // namespace sea
