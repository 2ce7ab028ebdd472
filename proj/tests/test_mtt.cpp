#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sea_mtt/errors.hpp"
#include "sea_mtt/mtt.hpp"

using namespace sea;
using oracle::rel;

namespace {

SeaParams table_params(LoadCase lc = LoadCase::Dynamic, double nm = 8.0) {
    SeaParams p;
    p.load_case = lc;
    p.n_m = nm;
    return p;
}

// Default parameters: 1 + (b_l / b_m) / n_m^2 with n_m = 8.
constexpr double kMarginalNm8 = 1.0 + (0.08 / 0.0006) / 64.0;

struct RandomCase {
    SeaParams p;
    ControllerParams c;
};

RandomCase random_case(std::mt19937_64& rng) {
    auto logu = [&](double lo, double hi) {
        std::uniform_real_distribution<double> d(std::log10(lo), std::log10(hi));
        return std::pow(10.0, d(rng));
    };
    RandomCase rc;
    rc.p.j_m = logu(1e-5, 1e-3);
    rc.p.j_l = logu(1e-3, 1e-1);
    rc.p.b_m = logu(1e-4, 1e-2);
    rc.p.b_l = logu(1e-2, 1.0);
    rc.p.k_s = logu(0.1, 100.0);
    rc.p.n_m = logu(1.0, 50.0);
    rc.p.t_mc = logu(0.01, 1.0);
    rc.p.v_p = logu(1.0, 100.0);
    rc.p.load_case = std::bernoulli_distribution(0.5)(rng) ? LoadCase::Dynamic : LoadCase::Static;
    rc.c.k_p = logu(0.05, 10.0);
    rc.c.k_d = std::bernoulli_distribution(0.3)(rng) ? 0.0 : logu(1e-4, 0.1);
    return rc;
}

}  // namespace

TEST_CASE("static DC limit of MTT_tau is kp/(1+kp)") {
    const SeaParams p = table_params(LoadCase::Static);
    const ControllerParams c{1.0, 0.0};
    CHECK(mtt_dc_limit(p, c) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mtt_tau_at(p, c, 1e-6) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("dynamic MTT_tau at the marginal gain has unit DC value") {
    const SeaParams p = table_params(LoadCase::Dynamic, 8.0);
    const ControllerParams c{marginal_gain(p), 0.05};
    CHECK(std::abs(mtt_tau_at(p, c, 1e-6) - 1.0) <= 1e-6);
    CHECK(mtt_dc_limit(p, c) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("a vanishing controller requires vanishing torque") {
    const SeaParams p = table_params();
    const ControllerParams c{1e-12, 0.0};
    for (double w : {0.01, 1.0, 30.0, 1000.0}) {
        CHECK(mtt_tau_at(p, c, w) < 1e-10);
    }
    CHECK_THROWS_AS(mtt_tau_at(p, c, 0.0), std::invalid_argument);
}

TEST_CASE("MTT_V DC behaviour and v_p scaling") {
    const ControllerParams c{0.8, 0.05};
    CHECK(mtt_v_at(table_params(LoadCase::Static), c, 0.0) == 0.0);

    const SeaParams p = table_params(LoadCase::Dynamic);
    const double reflected = p.b_l / (p.n_m * p.n_m);
    const double expected = c.k_p * (p.t_mc / p.v_p) / (p.b_m + (1.0 + c.k_p) * reflected);
    CHECK(rel(mtt_v_at(p, c, 1e-6), expected) <= 1e-3);
    CHECK(mtt_v_dc_limit(p, c) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(mtt_v_at(p, c, 0.0) == doctest::Approx(expected).epsilon(1e-14));

    SeaParams fast = p;
    fast.v_p *= 2.0;
    for (double w : {0.5, 5.0, 50.0}) {
        CHECK(rel(mtt_v_at(fast, c, w), 0.5 * mtt_v_at(p, c, w)) <= 1e-12);
    }
}

TEST_CASE("marginal gain") {
    const SeaParams p = table_params(LoadCase::Dynamic, 8.0);
    CHECK(rel(marginal_gain(p), kMarginalNm8) <= 1e-12);
    CHECK(kMarginalNm8 == doctest::Approx(3.0833).epsilon(1e-4));

    SeaParams undamped = p;
    undamped.b_l = 0.0;
    CHECK(marginal_gain(undamped) == 1.0);

    double prev = marginal_gain(p);
    for (double nm : {16.0, 64.0, 1024.0, 1e5}) {
        SeaParams q = p;
        q.n_m = nm;
        const double g = marginal_gain(q);
        CHECK(g > 1.0);
        CHECK(g < prev);
        prev = g;
    }
    CHECK(prev - 1.0 < 1e-6);

    CHECK_THROWS_AS(marginal_gain(table_params(LoadCase::Static)), StaticCaseUnsupported);
}

TEST_CASE("dc limit closed forms") {
    const SeaParams p = table_params(LoadCase::Dynamic, 8.0);
    const ControllerParams at_margin{kMarginalNm8, 0.0};
    CHECK(mtt_dc_limit(p, at_margin) == doctest::Approx(1.0).epsilon(1e-14));
    // derivative gain does not enter
    CHECK(mtt_dc_limit(p, {2.0, 0.0}) == mtt_dc_limit(p, {2.0, 0.3}));
    CHECK(mtt_dc_limit(table_params(LoadCase::Static), {1.0, 0.0}) == 0.5);
}

TEST_CASE("property: DC consistency over random parameter sets") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 50; ++i) {
        const RandomCase rc = random_case(rng);
        CHECK(rel(mtt_tau_at(rc.p, rc.c, 1e-6), mtt_dc_limit(rc.p, rc.c)) <= 1e-3);
    }
}

TEST_CASE("curve shape, labels and DC consistency") {
    const SeaParams p = table_params(LoadCase::Static, 1.0);
    const ControllerParams c{1.0, 0.0};
    const FrequencyGrid grid;
    const MttCurve curve = mtt_curve(p, c, grid);
    CHECK(curve.omega.size() == grid.points);
    CHECK(curve.mtt_tau.size() == grid.points);
    CHECK(curve.mtt_v.size() == grid.points);
    CHECK(curve.limiting.size() == grid.points);
    CHECK(curve.skipped.empty());
    CHECK(curve.omega.front() == 1e-2);
    CHECK(curve.omega.back() == 1e3);
    CHECK(rel(curve.mtt_tau.front(), mtt_dc_limit(p, c)) <= 1e-3);

    for (std::size_t i = 0; i < curve.omega.size(); ++i) {
        const double t = curve.mtt_tau[i], v = curve.mtt_v[i];
        CHECK(t >= 0.0);
        CHECK(v >= 0.0);
        const Limiting expect = (t >= v && t > 1.0)  ? Limiting::Torque
                                : (v > t && v > 1.0) ? Limiting::Velocity
                                                     : Limiting::None;
        CHECK(curve.limiting[i] == expect);
    }
}

TEST_CASE("classify edge cases") {
    CHECK(classify(1.0, 1.0) == Limiting::None);
    CHECK(classify(2.0, 2.0) == Limiting::Torque);
    CHECK(classify(0.5, 1.5) == Limiting::Velocity);
    CHECK(classify(1.5, 0.5) == Limiting::Torque);
}

TEST_CASE("heavy dynamic load curve matches the static curve") {
    const ControllerParams c{0.8, 0.05};
    SeaParams heavy = table_params(LoadCase::Dynamic);
    heavy.j_l *= 1e6;
    heavy.b_l *= 1e6;
    const MttCurve a = mtt_curve(heavy, c, {});
    const MttCurve b = mtt_curve(table_params(LoadCase::Static), c, {});
    double wt = 0.0, wv = 0.0;
    for (std::size_t i = 0; i < a.omega.size(); ++i) {
        wt = std::max(wt, rel(a.mtt_tau[i], b.mtt_tau[i]));
        wv = std::max(wv, rel(a.mtt_v[i], b.mtt_v[i]));
    }
    CHECK(wt <= 1e-3);
    CHECK(wv <= 1e-3);
}

TEST_CASE("frequency grid validation") {
    CHECK_THROWS_AS((FrequencyGrid{0.0, 1.0, 10}.samples()), InvalidParams);
    CHECK_THROWS_AS((FrequencyGrid{2.0, 1.0, 10}.samples()), InvalidParams);
    CHECK_THROWS_AS((FrequencyGrid{1.0, 2.0, 1}.samples()), InvalidParams);
    const auto s = FrequencyGrid{1.0, 100.0, 3}.samples();
    REQUIRE(s.size() == 3);
    CHECK(s[1] == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("bandwidth ordering and combination") {
    const Bandwidth z = Bandwidth::zero(), u = Bandwidth::unbounded();
    const Bandwidth a = Bandwidth::finite(1e-9), b = Bandwidth::finite(5.0);
    CHECK(z < a);
    CHECK(a < b);
    CHECK(b < u);
    CHECK(z < u);
    CHECK(std::min(u, b) == b);

    CHECK(combine(u, u).binding == Binding::Neither);
    CHECK(combine(u, u).omega_mt.is_unbounded());
    CHECK(combine(b, u).binding == Binding::Torque);
    CHECK(combine(u, b).binding == Binding::Velocity);
    CHECK(combine(z, b).omega_mt.is_zero());
    CHECK(combine(b, z).binding == Binding::Velocity);
    CHECK(combine(b, b).binding == Binding::Torque);
}

TEST_CASE("gain above the marginal gain collapses the torque bandwidth to zero") {
    const SeaParams p = table_params(LoadCase::Dynamic, 8.0);
    const BandwidthReport r = bandwidth(p, {4.0, 0.05});
    CHECK(r.omega_mt_tau.is_zero());
    CHECK(r.omega_mt.is_zero());
    CHECK(r.binding == Binding::Torque);
}

TEST_CASE("tiny gain never reaches unity") {
    const SeaParams p = table_params(LoadCase::Static);
    const ControllerParams c{0.01, 0.0};
    const BandwidthReport r = bandwidth(p, c);
    CHECK(r.omega_mt_tau.is_unbounded());
    CHECK(r.omega_mt_v.is_unbounded());
    CHECK(r.omega_mt.is_unbounded());
    CHECK(r.binding == Binding::Neither);

    // Exhaustive sampling with the independent oracle.
    for (double w : FrequencyGrid{1e-2, 1e3, 20000}.samples()) {
        REQUIRE(oracle::mtt_tau(p, c, w) < 1.0);
        REQUIRE(oracle::mtt_v(p, c, w) < 1.0);
    }
}

TEST_CASE("property: root residual, grid minimality and structure") {
    std::mt19937_64 rng(99);
    const FrequencyGrid grid;
    const auto omegas = grid.samples();
    int finite_seen = 0;
    for (int i = 0; i < 40; ++i) {
        const RandomCase rc = random_case(rng);
        const MttModel model(rc.p, rc.c);
        const BandwidthReport r = bandwidth(model, grid);

        CHECK(r.omega_mt == std::min(r.omega_mt_tau, r.omega_mt_v));
        if (r.binding == Binding::Neither) {
            CHECK(r.omega_mt_tau.is_unbounded());
            CHECK(r.omega_mt_v.is_unbounded());
        }

        auto check_channel = [&](const Bandwidth& b, auto&& m) {
            if (!b.is_finite()) return;
            ++finite_seen;
            CHECK(std::abs(m(b.omega()) - 1.0) <= 1e-4);
            for (double w : omegas) {
                if (w >= b.omega()) break;
                CHECK(m(w) <= 1.0 + 1e-6);
            }
        };
        check_channel(r.omega_mt_tau, [&](double w) { return model.tau_at(w); });
        check_channel(r.omega_mt_v, [&](double w) { return model.vel_at(w); });
    }
    CHECK(finite_seen > 10);
}

TEST_CASE("scale invariance of MTT curves") {
    const ControllerParams c{0.8, 0.05};
    const SeaParams p = table_params();
    for (double lambda : {1e-2, 1e2}) {
        SeaParams q = p;
        q.j_m *= lambda;
        q.j_l *= lambda;
        q.b_m *= lambda;
        q.b_l *= lambda;
        q.k_s *= lambda;
        const MttCurve a = mtt_curve(p, c, {1e-2, 1e3, 200});
        const MttCurve b = mtt_curve(q, c, {1e-2, 1e3, 200});
        for (std::size_t i = 0; i < a.omega.size(); ++i) {
            CHECK(rel(a.mtt_tau[i], b.mtt_tau[i]) <= 1e-9);
            CHECK(rel(b.mtt_v[i] * lambda, a.mtt_v[i]) <= 1e-9);
        }
    }
}

TEST_CASE("kp sweep flips to DC-limited at the marginal gain") {
    const SeaParams p = table_params(LoadCase::Dynamic, 8.0);
    std::vector<double> kps;
    for (int i = 0; i < 60; ++i) kps.push_back(0.1 + (6.0 - 0.1) * i / 59.0);
    const auto rows = sweep(p, {0.8, 0.05}, SweepParam::Kp, kps);
    REQUIRE(rows.size() == kps.size());
    int flips = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].value == kps[i]);
        const bool a = rows[i].report->omega_mt_tau.is_zero();
        const bool b = rows[i + 1].report->omega_mt_tau.is_zero();
        if (a != b) {
            ++flips;
            CHECK(kps[i] < kMarginalNm8);
            CHECK(kps[i + 1] > kMarginalNm8);
        }
    }
    CHECK(flips == 1);
}

TEST_CASE("gear-ratio sweep: velocity limit takes over at large ratios") {
    const SeaParams p = table_params(LoadCase::Static);
    const std::vector<double> ratios = {1, 2.4, 4.5, 8, 15, 36};
    const auto rows = sweep(p, {1.0, 0.0}, SweepParam::Nm, ratios);
    CHECK(rows.front().report->binding == Binding::Torque);
    CHECK(rows.back().report->binding == Binding::Velocity);
    CHECK(rows.back().report->omega_mt_v < rows.back().report->omega_mt_tau);
}

TEST_CASE("load inertia ordering with static as the poorest case") {
    const ControllerParams c{1.0, 0.0};
    const auto rows = sweep(table_params(), c, SweepParam::Jl, {0.003, 0.005, 0.007});
    const Bandwidth st = bandwidth(table_params(LoadCase::Static), c).omega_mt_tau;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i + 1].report->omega_mt_tau <= rows[i].report->omega_mt_tau);
    }
    CHECK(st <= rows.back().report->omega_mt_tau);
}

TEST_CASE("invalid sweep values are reported per entry") {
    const auto rows = sweep(table_params(), {0.8, 0.05}, SweepParam::Ks, {1.0, -1.0, 2.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].report.has_value());
    CHECK_FALSE(rows[1].report.has_value());
    CHECK(rows[1].error.find("ks") != std::string::npos);
    CHECK(rows[2].report.has_value());
}

TEST_CASE("stiffness sweep is non-monotone with a sharp drop") {
    std::vector<double> ks;
    for (int i = 0; i < 60; ++i) ks.push_back(std::pow(10.0, -1.0 + 3.0 * i / 59.0));
    const auto rows = sweep(table_params(), {0.8, 0.05}, SweepParam::Ks, ks);
    double largest_drop = 0.0;
    bool rising = false;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double a = rows[i].report->omega_mt_tau.omega();
        const double b = rows[i + 1].report->omega_mt_tau.omega();
        if (b > a) rising = true;
        largest_drop = std::max(largest_drop, (a - b) / a);
    }
    CHECK(rising);
    CHECK(largest_drop > 0.5);
}

TEST_CASE("sweep parameter names") {
    CHECK(parse_sweep_param("kp") == SweepParam::Kp);
    CHECK(parse_sweep_param("jl") == SweepParam::Jl);
    CHECK_FALSE(parse_sweep_param("jm").has_value());
}
