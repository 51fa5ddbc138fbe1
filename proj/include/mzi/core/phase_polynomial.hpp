// Copyright 2026 The mzi-phase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mzi/core/trig_spectrum.hpp"

namespace mzi {

using Complex = std::complex<double>;

inline bool is_finite(Complex c) noexcept {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// Polynomial in z = exp(i*phi) with complex coefficients. Index p holds the
/// coefficient of z^p.
///
/// Values are kept in canonical form: trailing coefficients whose magnitude is
/// at most kTrimTolerance times the largest coefficient magnitude are dropped,
/// so the zero polynomial has an empty coefficient list. Non-finite
/// coefficients are rejected at construction.
class PhasePolynomial {
   public:
    static constexpr double kTrimTolerance = 1e-14;

    PhasePolynomial() = default;

    explicit PhasePolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        for (const Complex& c : coeffs_) {
            if (!is_finite(c)) {
                throw std::domain_error("PhasePolynomial: non-finite coefficient");
            }
        }
        normalize();
    }

    PhasePolynomial(std::initializer_list<Complex> coeffs)
        : PhasePolynomial(std::vector<Complex>(coeffs)) {}

    static PhasePolynomial constant(Complex c) { return PhasePolynomial({c}); }
    static PhasePolynomial one() { return constant(1.0); }

    /// c * z^power
    static PhasePolynomial monomial(Complex c, std::size_t power) {
        std::vector<Complex> coeffs(power + 1, Complex{});
        coeffs[power] = c;
        return PhasePolynomial(std::move(coeffs));
    }

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }

    Complex coeff(std::size_t p) const noexcept {
        return p < coeffs_.size() ? coeffs_[p] : Complex{};
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    Complex evaluate_at(Complex z) const noexcept {
        Complex acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Complex evaluate(double phi) const noexcept { return evaluate_at(std::polar(1.0, phi)); }

    friend PhasePolynomial operator+(const PhasePolynomial& a, const PhasePolynomial& b) {
        std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t p = 0; p < out.size(); ++p) out[p] = a.coeff(p) + b.coeff(p);
        return PhasePolynomial(std::move(out));
    }

    friend PhasePolynomial operator-(const PhasePolynomial& a) {
        std::vector<Complex> out(a.coeffs_);
        for (Complex& c : out) c = -c;
        return PhasePolynomial(std::move(out));
    }

    friend PhasePolynomial operator-(const PhasePolynomial& a, const PhasePolynomial& b) {
        return a + (-b);
    }

    friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, Complex{});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return PhasePolynomial(std::move(out));
    }

    friend PhasePolynomial operator*(Complex s, const PhasePolynomial& a) {
        std::vector<Complex> out(a.coeffs_);
        for (Complex& c : out) c *= s;
        return PhasePolynomial(std::move(out));
    }

    friend PhasePolynomial operator*(const PhasePolynomial& a, Complex s) { return s * a; }

    friend bool operator==(const PhasePolynomial&, const PhasePolynomial&) = default;

    friend std::ostream& operator<<(std::ostream& os, const PhasePolynomial& a) {
        os << "[";
        for (std::size_t p = 0; p < a.coeffs_.size(); ++p) {
            if (p) os << ", ";
            os << a.coeffs_[p];
        }
        return os << "]";
    }

   private:
    void normalize() {
        const double largest = max_abs_coeff();
        if (largest == 0.0) {
            coeffs_.clear();
            return;
        }
        while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimTolerance * largest) {
            coeffs_.pop_back();
        }
    }

    std::vector<Complex> coeffs_;
};

inline PhasePolynomial poly_mul(const PhasePolynomial& a, const PhasePolynomial& b) { return a * b; }

/// a^k by repeated squaring; a^0 is the unit polynomial.
inline PhasePolynomial poly_pow(PhasePolynomial a, unsigned k) {
    PhasePolynomial result = PhasePolynomial::one();
    while (k > 0) {
        if (k & 1U) result = result * a;
        k >>= 1U;
        if (k > 0) a = a * a;
    }
    return result;
}

/// |a(e^{i phi})|^2 as a real trigonometric polynomial.
///
/// For p > q the pair c_p conj(c_q) e^{i(p-q)phi} + c.c. contributes
/// 2 Re(w) cos(d phi) - 2 Im(w) sin(d phi) with w = c_p conj(c_q), d = p - q.
inline TrigSpectrum abs_square(const PhasePolynomial& a) {
    const auto c = a.coeffs();
    if (c.empty()) return {};
    const std::size_t order = c.size() - 1;
    double mean = 0.0;
    std::vector<double> cos_coeffs(order, 0.0);
    std::vector<double> sin_coeffs(order, 0.0);
    for (std::size_t p = 0; p < c.size(); ++p) {
        mean += std::norm(c[p]);
        for (std::size_t q = 0; q < p; ++q) {
            const Complex w = c[p] * std::conj(c[q]);
            cos_coeffs[p - q - 1] += 2.0 * w.real();
            sin_coeffs[p - q - 1] -= 2.0 * w.imag();
        }
    }
    return TrigSpectrum(mean, std::move(cos_coeffs), std::move(sin_coeffs));
}

}  // namespace mzi
