#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace sea {

using Complex = std::complex<double>;

// Real polynomial in s, coefficients in ascending powers (coeffs()[k] * s^k).
// Always normalized: trailing coefficients equal to exactly 0.0 are dropped,
// and the zero polynomial is stored as {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(double constant) : coeffs_{constant} {}  // NOLINT: implicit scalar lift
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    std::span<const double> coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    Complex operator()(Complex s) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double k, const Polynomial& p);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();
    std::vector<double> coeffs_;
};

// The monomial s.
Polynomial s_poly();

// num(s) / den(s). Common factors are never cancelled; two transfer functions
// are "equal" when they evaluate equally, not when their coefficients match.
class RationalTF {
public:
    RationalTF() : num_(0.0), den_(1.0) {}
    RationalTF(double gain) : num_(gain), den_(1.0) {}  // NOLINT: implicit scalar lift
    RationalTF(Polynomial num, Polynomial den);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    // Evaluates at an arbitrary complex point. Throws PoleAtFrequency when the
    // denominator evaluates to exactly zero.
    Complex operator()(Complex s) const;

    // Frequency response at s = j*omega, omega >= 0.
    Complex eval_jw(double omega) const;

    // 1 / G. Throws IdenticallySingular if G is identically zero.
    RationalTF reciprocal() const;

    friend RationalTF operator+(const RationalTF& a, const RationalTF& b);
    friend RationalTF operator*(const RationalTF& a, const RationalTF& b);
    friend RationalTF operator*(double k, const RationalTF& g);
    friend RationalTF operator/(const RationalTF& a, const RationalTF& b);

private:
    Polynomial num_;
    Polynomial den_;
};

// forward / (1 + forward * loop), assembled as a single rational function.
// Throws IdenticallySingular if 1 + forward * loop is identically zero.
RationalTF feedback(const RationalTF& forward, const RationalTF& loop);

}  // namespace sea
