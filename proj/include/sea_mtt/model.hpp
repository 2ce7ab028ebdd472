#pragma once

#include <optional>

#include "sea_mtt/lti.hpp"

namespace sea {

enum class LoadCase { Dynamic, Static };

// Mechanical, load and drive-limit parameters of a series elastic actuator.
// Damping values are rotational (N*m*s/rad).
struct SeaParams {
    double j_m = 0.000075;  // motor inertia, kg*m^2
    double j_l = 0.005;     // load inertia, kg*m^2
    double b_m = 0.0006;    // motor damping
    double b_l = 0.08;      // load damping
    double k_s = 1.1;       // spring stiffness, N*m/rad
    double n_m = 8.0;       // total motor-to-spring gear ratio
    double t_mc = 0.0315;   // maximum continuous motor torque, N*m
    double v_p = 10.472;    // maximum permissible motor velocity, rad/s
    LoadCase load_case = LoadCase::Dynamic;

    // Throws InvalidParams naming the first violated bound.
    void validate() const;

    // Largest SEA output torque, n_m * t_mc.
    double max_output_torque() const noexcept { return n_m * t_mc; }
};

// C(s) = k_p + k_d s. k_d = 0 gives a pure proportional controller.
struct ControllerParams {
    double k_p = 0.8;
    double k_d = 0.05;

    void validate() const;
    RationalTF transfer_function() const;
};

// Open-loop plants for one parameter set. p_l is absent for the static case.
struct SeaPlantSet {
    RationalTF p_m;
    std::optional<RationalTF> p_l;
    RationalTF p_out;  // motor torque -> output (spring) torque
    RationalTF p_v;    // motor torque -> motor velocity
    RationalTF c;
    double n_m = 1.0;
};

SeaPlantSet build_plants(const SeaParams& p, const ControllerParams& c);

// Desired output torque -> motor torque command, n_m^-1 C / (1 + n_m^-1 C P).
RationalTF closed_loop_tc(const SeaPlantSet& plants);

// Desired output torque -> motor velocity, p_v times closed_loop_tc.
RationalTF closed_loop_vm(const SeaPlantSet& plants);

}  // namespace sea
