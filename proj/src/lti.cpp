#include "sea_mtt/lti.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sea_mtt/errors.hpp"

namespace sea {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
    normalize();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void Polynomial::normalize() {
    // Exact zeros only; tiny coefficients are kept so the system order never
    // changes silently.
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
}

Complex Polynomial::operator()(Complex s) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(double k, const Polynomial& p) {
    std::vector<double> out(p.coeffs_);
    for (double& c : out) c *= k;
    return Polynomial(std::move(out));
}

Polynomial s_poly() { return Polynomial{0.0, 1.0}; }

RationalTF::RationalTF(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw IdenticallySingular("transfer function denominator is identically zero");
    }
}

Complex RationalTF::operator()(Complex s) const {
    const Complex d = den_(s);
    if (d == Complex{0.0, 0.0}) {
        throw PoleAtFrequency(s.imag(), "pole at s = " + std::to_string(s.real()) + " + j" +
                                            std::to_string(s.imag()));
    }
    return num_(s) / d;
}

Complex RationalTF::eval_jw(double omega) const {
    if (!(omega >= 0.0)) {
        throw std::invalid_argument("eval_jw: omega must be >= 0");
    }
    return (*this)(Complex{0.0, omega});
}

RationalTF RationalTF::reciprocal() const {
    if (num_.is_zero()) {
        throw IdenticallySingular("reciprocal of an identically zero transfer function");
    }
    return RationalTF(den_, num_);
}

RationalTF operator+(const RationalTF& a, const RationalTF& b) {
    return RationalTF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalTF operator*(const RationalTF& a, const RationalTF& b) {
    return RationalTF(a.num_ * b.num_, a.den_ * b.den_);
}

RationalTF operator*(double k, const RationalTF& g) {
    return RationalTF(k * g.num_, g.den_);
}

RationalTF operator/(const RationalTF& a, const RationalTF& b) {
    return a * b.reciprocal();
}

RationalTF feedback(const RationalTF& forward, const RationalTF& loop) {
    // F/(1 + F H) with F = fn/fd, H = hn/hd  ->  fn hd / (fd hd + fn hn)
    Polynomial den = forward.den() * loop.den() + forward.num() * loop.num();
    if (den.is_zero()) {
        throw IdenticallySingular("1 + forward * loop is identically zero");
    }
    return RationalTF(forward.num() * loop.den(), std::move(den));
}

}  // namespace sea
