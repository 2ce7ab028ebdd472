#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sea_mtt/errors.hpp"
#include "sea_mtt/lti.hpp"

using sea::Complex;
using sea::Polynomial;
using sea::RationalTF;

namespace {

bool coeffs_equal(const Polynomial& p, std::initializer_list<double> expected) {
    if (p.coeffs().size() != expected.size()) return false;
    std::size_t i = 0;
    for (double e : expected) {
        if (p.coeffs()[i++] != e) return false;
    }
    return true;
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Polynomial random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 6);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& x : c) x = coef(rng);
    c.back() = c.back() >= 0 ? c.back() + 0.1 : c.back() - 0.1;  // keep full degree
    return Polynomial(std::move(c));
}

double random_omega(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lw(-2.0, 3.0);
    return std::pow(10.0, lw(rng));
}

}  // namespace

TEST_CASE("polynomial addition") {
    CHECK(coeffs_equal(Polynomial{1, 2} + Polynomial{0, 3}, {1, 5}));
    const Polynomial p{4, -1, 2};
    CHECK(p + Polynomial() == p);
    const Polynomial sum = Polynomial{1, 0, -1} + Polynomial{0, 0, 1};
    CHECK(coeffs_equal(sum, {1}));
    CHECK(sum.degree() == 0);
}

TEST_CASE("polynomial multiplication") {
    CHECK(coeffs_equal(Polynomial{1, 1} * Polynomial{1, -1}, {1, 0, -1}));
    const Polynomial p{3, 0.5, -2};
    CHECK(p * Polynomial(1.0) == p);
    const double J = 7.5e-5, B = 6e-4, K = 1.1;
    CHECK(coeffs_equal(Polynomial{0, B, J} * Polynomial(K), {0, B * K, J * K}));
}

TEST_CASE("normalization keeps the zero polynomial as {0} and trims exact zeros only") {
    CHECK(coeffs_equal(Polynomial(std::vector<double>{}), {0}));
    CHECK(coeffs_equal(Polynomial{0, 0, 0}, {0}));
    CHECK(Polynomial{0, 0}.is_zero());
    CHECK(Polynomial{1, 1e-300}.degree() == 1);
}

TEST_CASE("rational arithmetic evaluates like the reduced form") {
    const RationalTF inv_s(Polynomial(1.0), sea::s_poly());
    const RationalTF twice = inv_s + inv_s;
    CHECK(twice.den().degree() == 2);  // no cancellation
    for (double w : {0.1, 1.0, 17.0}) {
        CHECK(rel_err(twice.eval_jw(w), 2.0 / Complex(0, w)) < 1e-14);
    }

    const RationalTF g(Polynomial{1, 2}, Polynomial{3, 4, 5});
    CHECK(rel_err((g * RationalTF(1.0)).eval_jw(2.0), g.eval_jw(2.0)) == 0.0);

    const RationalTF a(Polynomial(1.0), Polynomial{1, 1});
    const RationalTF b(Polynomial(1.0), Polynomial{2, 1});
    const RationalTF ab = a * b;
    CHECK(coeffs_equal(ab.den(), {2, 3, 1}));
    CHECK(coeffs_equal(ab.num(), {1}));

    CHECK(rel_err((2.5 * g).eval_jw(3.0), 2.5 * g.eval_jw(3.0)) < 1e-15);
}

TEST_CASE("feedback") {
    const RationalTF inv_s(Polynomial(1.0), sea::s_poly());
    const RationalTF cl = sea::feedback(inv_s, RationalTF(1.0));
    for (double w : {0.0, 0.5, 3.0}) {
        CHECK(rel_err(cl.eval_jw(w), 1.0 / (Complex(0, w) + 1.0)) < 1e-15);
    }

    const RationalTF g(Polynomial{1, 2}, Polynomial{3, 4, 5});
    const RationalTF open = sea::feedback(g, RationalTF(0.0));
    CHECK(rel_err(open.eval_jw(1.3), g.eval_jw(1.3)) < 1e-15);

    const RationalTF k = sea::feedback(RationalTF(2.0), RationalTF(3.0));
    CHECK(k.num().degree() == 0);
    CHECK(k.den().degree() == 0);
    CHECK(std::abs(k.eval_jw(42.0) - Complex(2.0 / 7.0)) < 1e-15);

    CHECK_THROWS_AS(sea::feedback(RationalTF(1.0), RationalTF(-1.0)), sea::IdenticallySingular);
}

TEST_CASE("eval_jw") {
    const RationalTF g(Polynomial(1.0), Polynomial{0, 1, 1});
    const Complex v = g.eval_jw(1.0);
    CHECK(rel_err(v, 1.0 / Complex(-1.0, 1.0)) < 1e-15);
    CHECK(std::abs(v) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const RationalTF k(3.25);
    CHECK(k.eval_jw(0.0) == Complex(3.25));
    CHECK(k.eval_jw(1e3) == Complex(3.25));

    const RationalTF integrator(Polynomial(1.0), sea::s_poly());
    CHECK_THROWS_AS(integrator.eval_jw(0.0), sea::PoleAtFrequency);
    CHECK_THROWS_AS(integrator.eval_jw(-1.0), std::invalid_argument);
}

TEST_CASE("zero denominators and reciprocals are rejected") {
    CHECK_THROWS_AS(RationalTF(Polynomial(1.0), Polynomial(0.0)), sea::IdenticallySingular);
    CHECK_THROWS_AS(RationalTF(0.0).reciprocal(), sea::IdenticallySingular);
}

TEST_CASE("property: product and feedback evaluate pointwise") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
        const RationalTF a(random_poly(rng), random_poly(rng));
        const RationalTF b(random_poly(rng), random_poly(rng));
        const RationalTF prod = a * b;
        const RationalTF sum = a + b;
        const RationalTF fb = sea::feedback(a, b);
        for (int k = 0; k < 100; ++k) {
            const double w = random_omega(rng);
            const Complex av = a.eval_jw(w), bv = b.eval_jw(w);
            CHECK(rel_err(prod.eval_jw(w), av * bv) <= 1e-10);
            CHECK(std::abs(sum.eval_jw(w) - (av + bv)) <= 1e-10 * (std::abs(av) + std::abs(bv)));
            CHECK(rel_err(fb.eval_jw(w), av / (1.0 + av * bv)) <= 1e-10);
        }
    }
}

TEST_CASE("property: conjugate symmetry") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const RationalTF g(random_poly(rng), random_poly(rng));
        const double w = random_omega(rng);
        const Complex pos = g(Complex(0, w));
        const Complex neg = g(Complex(0, -w));
        CHECK(rel_err(neg, std::conj(pos)) <= 1e-14);
    }
}

TEST_CASE("property: normalization is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> c = {1.0, 2.0};
        std::uniform_int_distribution<int> zeros(0, 4);
        for (int z = zeros(rng); z > 0; --z) c.push_back(0.0);
        const Polynomial once(c);
        const Polynomial twice(std::vector<double>(once.coeffs().begin(), once.coeffs().end()));
        CHECK(once == twice);
        CHECK(once.degree() == 1);
    }
}
