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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mzi {

/// Real trigonometric polynomial
///
///     s(phi) = mean + sum_{p>=1} cos_coeffs[p-1] cos(p phi) + sin_coeffs[p-1] sin(p phi)
///
/// Every outcome probability produced by the engine has this form, which is
/// what makes Fisher derivatives exact and fidelity quadrature spectrally
/// convergent. Cosine and sine lists always have equal length; trailing
/// harmonics that are exactly zero are dropped.
class TrigSpectrum {
   public:
    TrigSpectrum() = default;

    explicit TrigSpectrum(double mean, std::vector<double> cos_coeffs = {},
                          std::vector<double> sin_coeffs = {})
        : mean_(mean), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
        const std::size_t order = std::max(cos_.size(), sin_.size());
        cos_.resize(order, 0.0);
        sin_.resize(order, 0.0);
        if (!std::isfinite(mean_)) throw std::domain_error("TrigSpectrum: non-finite mean");
        for (std::size_t p = 0; p < order; ++p) {
            if (!std::isfinite(cos_[p]) || !std::isfinite(sin_[p])) {
                throw std::domain_error("TrigSpectrum: non-finite coefficient");
            }
        }
        while (!cos_.empty() && cos_.back() == 0.0 && sin_.back() == 0.0) {
            cos_.pop_back();
            sin_.pop_back();
        }
    }

    static TrigSpectrum constant(double value) { return TrigSpectrum(value); }

    double mean() const noexcept { return mean_; }
    std::span<const double> cos_coeffs() const noexcept { return cos_; }
    std::span<const double> sin_coeffs() const noexcept { return sin_; }

    /// Highest harmonic present.
    std::size_t order() const noexcept { return cos_.size(); }

    double cos_coeff(std::size_t p) const noexcept {
        return (p >= 1 && p <= cos_.size()) ? cos_[p - 1] : 0.0;
    }
    double sin_coeff(std::size_t p) const noexcept {
        return (p >= 1 && p <= sin_.size()) ? sin_[p - 1] : 0.0;
    }

    double evaluate(double phi) const noexcept {
        double acc = mean_;
        for (std::size_t p = 1; p <= cos_.size(); ++p) {
            const double angle = static_cast<double>(p) * phi;
            acc += cos_[p - 1] * std::cos(angle) + sin_[p - 1] * std::sin(angle);
        }
        return acc;
    }

    double operator()(double phi) const noexcept { return evaluate(phi); }

    /// Sum of harmonic magnitudes; bounds |s(phi) - mean| for every phi.
    double oscillation_bound() const noexcept {
        double b = 0.0;
        for (std::size_t p = 0; p < cos_.size(); ++p) b += std::abs(cos_[p]) + std::abs(sin_[p]);
        return b;
    }

    friend TrigSpectrum operator+(const TrigSpectrum& a, const TrigSpectrum& b) {
        const std::size_t order = std::max(a.order(), b.order());
        std::vector<double> c(order), s(order);
        for (std::size_t p = 1; p <= order; ++p) {
            c[p - 1] = a.cos_coeff(p) + b.cos_coeff(p);
            s[p - 1] = a.sin_coeff(p) + b.sin_coeff(p);
        }
        return TrigSpectrum(a.mean_ + b.mean_, std::move(c), std::move(s));
    }

    TrigSpectrum& operator+=(const TrigSpectrum& other) { return *this = *this + other; }

    friend TrigSpectrum operator*(double k, const TrigSpectrum& a) {
        std::vector<double> c(a.cos_), s(a.sin_);
        for (double& x : c) x *= k;
        for (double& x : s) x *= k;
        return TrigSpectrum(k * a.mean_, std::move(c), std::move(s));
    }

    friend TrigSpectrum operator-(const TrigSpectrum& a, const TrigSpectrum& b) {
        return a + (-1.0) * b;
    }

    friend bool operator==(const TrigSpectrum&, const TrigSpectrum&) = default;

   private:
    double mean_ = 0.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Term-wise derivative with respect to phi.
inline TrigSpectrum spectrum_derivative(const TrigSpectrum& s) {
    const std::size_t order = s.order();
    std::vector<double> c(order), sn(order);
    for (std::size_t p = 1; p <= order; ++p) {
        const double k = static_cast<double>(p);
        c[p - 1] = k * s.sin_coeff(p);
        sn[p - 1] = -k * s.cos_coeff(p);
    }
    return TrigSpectrum(0.0, std::move(c), std::move(sn));
}

}  // namespace mzi
