#include "sea_mtt/mtt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "sea_mtt/errors.hpp"

namespace sea {

namespace {

constexpr double kBisectRelTol = 1e-6;
constexpr int kBisectMaxIter = 200;

struct ChannelResult {
    Bandwidth bw = Bandwidth::unbounded();
    std::size_t crossings = 0;
};

// Refines a root of m(omega) - 1 inside [lo, hi]; the sign of m - 1 differs at
// the two ends (lo may be 0, standing in for the DC limit).
double bisect_unity(const std::function<double(double)>& m, double lo, double hi, double f_lo) {
    for (int it = 0; it < kBisectMaxIter && (hi - lo) > kBisectRelTol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = m(mid) - 1.0;
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ChannelResult first_crossing(const std::function<double(double)>& m, double dc,
                             const std::vector<double>& omegas) {
    std::vector<double> f(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) f[i] = m(omegas[i]) - 1.0;

    ChannelResult out;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f[i] * f[i + 1] < 0.0) ++out.crossings;
    }

    if (dc > 1.0) {
        out.bw = Bandwidth::zero();
        return out;
    }
    if (f.front() > 0.0) {
        // Crossing lies below the grid floor.
        out.bw = Bandwidth::finite(bisect_unity(m, 0.0, omegas.front(), dc - 1.0));
        return out;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) {
            out.bw = Bandwidth::finite(omegas[i]);
            return out;
        }
        if (i + 1 < f.size() && f[i] * f[i + 1] < 0.0) {
            out.bw = Bandwidth::finite(bisect_unity(m, omegas[i], omegas[i + 1], f[i]));
            return out;
        }
    }
    return out;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
}

}  // namespace

void FrequencyGrid::validate() const {
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max)) {
        throw InvalidParams("grid", "grid requires 0 < omega_min < omega_max");
    }
    if (points < 2) {
        throw InvalidParams("points", "grid requires at least 2 points");
    }
}

std::vector<double> FrequencyGrid::samples() const {
    validate();
    std::vector<double> out(points);
    const double lmin = std::log10(omega_min);
    const double lmax = std::log10(omega_max);
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = std::pow(10.0, lmin + frac * (lmax - lmin));
    }
    out.front() = omega_min;
    out.back() = omega_max;
    return out;
}

std::string_view to_string(Limiting l) {
    switch (l) {
        case Limiting::Torque: return "torque";
        case Limiting::Velocity: return "velocity";
        case Limiting::None: break;
    }
    return "none";
}

Limiting classify(double mtt_tau, double mtt_v) {
    if (mtt_tau >= mtt_v && mtt_tau > 1.0) return Limiting::Torque;
    if (mtt_v > mtt_tau && mtt_v > 1.0) return Limiting::Velocity;
    return Limiting::None;
}

std::partial_ordering Bandwidth::operator<=>(const Bandwidth& other) const {
    if (kind_ != other.kind_) {
        return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
    }
    if (kind_ == Kind::Finite) return omega_ <=> other.omega_;
    return std::partial_ordering::equivalent;
}

std::string_view to_string(Binding b) {
    switch (b) {
        case Binding::Torque: return "torque";
        case Binding::Velocity: return "velocity";
        case Binding::Neither: break;
    }
    return "neither";
}

BandwidthReport combine(Bandwidth tau, Bandwidth vel) {
    BandwidthReport r;
    r.omega_mt_tau = tau;
    r.omega_mt_v = vel;
    if (tau.is_unbounded() && vel.is_unbounded()) {
        r.omega_mt = Bandwidth::unbounded();
        r.binding = Binding::Neither;
    } else if (tau <= vel) {
        r.omega_mt = tau;
        r.binding = Binding::Torque;
    } else {
        r.omega_mt = vel;
        r.binding = Binding::Velocity;
    }
    return r;
}

MttModel::MttModel(const SeaParams& p, const ControllerParams& c)
    : params_(p), controller_(c) {
    const SeaPlantSet plants = build_plants(p, c);
    tc_ = closed_loop_tc(plants);
    vm_ = closed_loop_vm(plants);
}

double MttModel::tau_at(double omega) const {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("mtt_tau_at requires omega > 0; use mtt_dc_limit at DC");
    }
    return params_.n_m * std::abs(tc_.eval_jw(omega));
}

double MttModel::vel_at(double omega) const {
    if (omega == 0.0) return vel_dc();
    if (!(omega > 0.0)) throw std::invalid_argument("mtt_v_at requires omega >= 0");
    return params_.n_m * params_.t_mc / params_.v_p * std::abs(vm_.eval_jw(omega));
}

double MttModel::tau_dc() const { return mtt_dc_limit(params_, controller_); }
double MttModel::vel_dc() const { return mtt_v_dc_limit(params_, controller_); }

double mtt_tau_at(const SeaParams& p, const ControllerParams& c, double omega) {
    return MttModel(p, c).tau_at(omega);
}

double mtt_v_at(const SeaParams& p, const ControllerParams& c, double omega) {
    return MttModel(p, c).vel_at(omega);
}

double mtt_dc_limit(const SeaParams& p, const ControllerParams& c) {
    p.validate();
    c.validate();
    const double kp = c.k_p;
    if (p.load_case == LoadCase::Static) return kp / (1.0 + kp);
    const double reflected = p.b_l / (p.n_m * p.n_m);
    return kp * (p.b_m + reflected) / (p.b_m + (1.0 + kp) * reflected);
}

double mtt_v_dc_limit(const SeaParams& p, const ControllerParams& c) {
    p.validate();
    c.validate();
    if (p.load_case == LoadCase::Static) return 0.0;
    const double reflected = p.b_l / (p.n_m * p.n_m);
    return c.k_p * (p.t_mc / p.v_p) / (p.b_m + (1.0 + c.k_p) * reflected);
}

double marginal_gain(const SeaParams& p) {
    if (p.load_case == LoadCase::Static) {
        throw StaticCaseUnsupported(
            "static load case: DC MTT_tau is kp/(1+kp) < 1 for every kp, no marginal gain");
    }
    // b_l = 0 is allowed here: the marginal gain degenerates to 1.
    if (!(p.b_m > 0.0)) throw InvalidParams("bm", "bm must be > 0");
    if (!(p.n_m > 0.0)) throw InvalidParams("nm", "nm must be > 0");
    if (!(p.b_l >= 0.0)) throw InvalidParams("bl", "bl must be >= 0");
    return 1.0 + p.b_l / (p.n_m * p.n_m * p.b_m);
}

MttCurve mtt_curve(const SeaParams& p, const ControllerParams& c, const FrequencyGrid& grid) {
    const MttModel model(p, c);
    const std::vector<double> omegas = grid.samples();
    MttCurve curve;
    curve.omega.reserve(omegas.size());
    curve.mtt_tau.reserve(omegas.size());
    curve.mtt_v.reserve(omegas.size());
    curve.limiting.reserve(omegas.size());
    for (double w : omegas) {
        try {
            const double t = model.tau_at(w);
            const double v = model.vel_at(w);
            curve.omega.push_back(w);
            curve.mtt_tau.push_back(t);
            curve.mtt_v.push_back(v);
            curve.limiting.push_back(classify(t, v));
        } catch (const PoleAtFrequency& e) {
            curve.skipped.push_back({w, e.what()});
        }
    }
    return curve;
}

BandwidthReport bandwidth(const MttModel& model, const FrequencyGrid& search) {
    const std::vector<double> omegas = search.samples();
    const ChannelResult tau = first_crossing(
        [&](double w) { return model.tau_at(w); }, model.tau_dc(), omegas);
    const ChannelResult vel = first_crossing(
        [&](double w) { return model.vel_at(w); }, model.vel_dc(), omegas);
    BandwidthReport r = combine(tau.bw, vel.bw);
    r.crossings_tau = tau.crossings;
    r.crossings_v = vel.crossings;
    return r;
}

BandwidthReport bandwidth(const SeaParams& p, const ControllerParams& c,
                          const FrequencyGrid& search) {
    return bandwidth(MttModel(p, c), search);
}

std::string_view to_string(SweepParam p) {
    switch (p) {
        case SweepParam::Kp: return "kp";
        case SweepParam::Kd: return "kd";
        case SweepParam::Nm: return "nm";
        case SweepParam::Ks: return "ks";
        case SweepParam::Jl: return "jl";
    }
    return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
    for (SweepParam p : {SweepParam::Kp, SweepParam::Kd, SweepParam::Nm, SweepParam::Ks,
                         SweepParam::Jl}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

std::vector<SweepEntry> sweep(const SeaParams& p, const ControllerParams& c, SweepParam param,
                              const std::vector<double>& values, const FrequencyGrid& search) {
    search.validate();
    std::vector<SweepEntry> out(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
        SeaParams pi = p;
        ControllerParams ci = c;
        const double v = values[i];
        switch (param) {
            case SweepParam::Kp: ci.k_p = v; break;
            case SweepParam::Kd: ci.k_d = v; break;
            case SweepParam::Nm: pi.n_m = v; break;
            case SweepParam::Ks: pi.k_s = v; break;
            case SweepParam::Jl: pi.j_l = v; break;
        }
        out[i].value = v;
        try {
            out[i].report = bandwidth(pi, ci, search);
        } catch (const Error& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace sea
