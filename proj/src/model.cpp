#include "sea_mtt/model.hpp"

#include <cmath>
#include <sstream>

#include "sea_mtt/errors.hpp"

namespace sea {

namespace {

void require(bool ok, const char* key, const char* bound, double value) {
    if (!ok) {
        std::ostringstream msg;
        msg << key << " must be " << bound << " (got " << value << ")";
        throw InvalidParams(key, msg.str());
    }
}

void require_positive(const char* key, double value) {
    require(std::isfinite(value) && value > 0.0, key, "> 0", value);
}

// 1 / (j s^2 + b s)
RationalTF inertia_damper(double j, double b) {
    return RationalTF(Polynomial(1.0), Polynomial{0.0, b, j});
}

}  // namespace

void SeaParams::validate() const {
    require_positive("jm", j_m);
    require_positive("bm", b_m);
    require_positive("ks", k_s);
    require_positive("nm", n_m);
    require_positive("tmc", t_mc);
    require_positive("vp", v_p);
    if (load_case == LoadCase::Dynamic) {
        require_positive("jl", j_l);
        require_positive("bl", b_l);
    }
}

void ControllerParams::validate() const {
    require_positive("kp", k_p);
    require(std::isfinite(k_d) && k_d >= 0.0, "kd", ">= 0", k_d);
}

RationalTF ControllerParams::transfer_function() const {
    return RationalTF(Polynomial{k_p, k_d}, Polynomial(1.0));
}

SeaPlantSet build_plants(const SeaParams& p, const ControllerParams& c) {
    p.validate();
    c.validate();

    SeaPlantSet out{
        .p_m = inertia_damper(p.j_m, p.b_m),
        .p_l = std::nullopt,
        .p_out = {},
        .p_v = {},
        .c = c.transfer_function(),
        .n_m = p.n_m,
    };

    const double inv_n = 1.0 / p.n_m;
    const double inv_n2 = inv_n * inv_n;
    const RationalTF s(s_poly(), Polynomial(1.0));
    const RationalTF reflected_spring = (inv_n2 * p.k_s) * out.p_m;

    if (p.load_case == LoadCase::Dynamic) {
        RationalTF p_l = inertia_damper(p.j_l, p.b_l);
        const RationalTF load_spring = p.k_s * p_l;
        const RationalTF den = RationalTF(1.0) + load_spring + reflected_spring;
        out.p_out = ((inv_n * p.k_s) * out.p_m) / den;
        out.p_v = (out.p_m * (RationalTF(1.0) + load_spring) * s) / den;
        out.p_l = std::move(p_l);
    } else {
        // j_l, b_l -> infinity: the load term vanishes.
        const RationalTF den = RationalTF(1.0) + reflected_spring;
        out.p_out = ((inv_n * p.k_s) * out.p_m) / den;
        out.p_v = (out.p_m * s) / den;
    }
    return out;
}

RationalTF closed_loop_tc(const SeaPlantSet& plants) {
    const RationalTF forward = (1.0 / plants.n_m) * plants.c;
    return feedback(forward, plants.p_out);
}

RationalTF closed_loop_vm(const SeaPlantSet& plants) {
    return plants.p_v * closed_loop_tc(plants);
}

}  // namespace sea
