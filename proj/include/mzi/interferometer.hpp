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
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "mzi/core/phase_polynomial.hpp"

namespace mzi {

/// Mode indices of the lossy interferometer. Inputs (a1, a2, v1, v2) map to
/// outputs (b1, b2, d1, d2); v1, v2 carry vacuum and d1, d2 are loss ports.
enum Mode : std::size_t { kPort1 = 0, kPort2 = 1, kLoss1 = 2, kLoss2 = 3 };

struct LossParameters {
    double r_x = 0.0;  ///< reflection amplitude of the loss splitter in the upper arm
    double r_y = 0.0;  ///< reflection amplitude of the loss splitter in the lower arm
    double path_length = 0.0;          ///< L, balanced total path length
    double partial_path_length = 0.0;  ///< l, balanced path length up to the loss splitters
    double omega_over_c = 0.0;

    void validate() const {
        auto check_unit = [](double r, const char* name) {
            if (!(r >= 0.0 && r <= 1.0)) {
                throw std::invalid_argument(std::string("LossParameters: ") + name +
                                            " must lie in [0, 1]");
            }
        };
        check_unit(r_x, "r_x");
        check_unit(r_y, "r_y");
        if (!(path_length >= 0.0) || !(partial_path_length >= 0.0) || !(omega_over_c >= 0.0) ||
            !std::isfinite(path_length) || !std::isfinite(partial_path_length) ||
            !std::isfinite(omega_over_c)) {
            throw std::invalid_argument("LossParameters: path lengths and omega/c must be finite and >= 0");
        }
    }
};

template <std::size_t M>
using NumericMatrix = std::array<std::array<Complex, M>, M>;

/// M x M matrix of phase polynomials relating output annihilation operators
/// to input ones, b_i = sum_j S_ij a_j.
template <std::size_t M>
class ScatteringMatrix {
   public:
    using Entries = std::array<std::array<PhasePolynomial, M>, M>;

    ScatteringMatrix() = default;
    explicit ScatteringMatrix(Entries entries) : entries_(std::move(entries)) {}

    static constexpr std::size_t modes() noexcept { return M; }

    const PhasePolynomial& entry(std::size_t row, std::size_t col) const {
        return entries_.at(row).at(col);
    }

    ScatteringMatrix with_entry(std::size_t row, std::size_t col, PhasePolynomial value) const {
        ScatteringMatrix copy = *this;
        copy.entries_.at(row).at(col) = std::move(value);
        return copy;
    }

    NumericMatrix<M> evaluate(double phi) const {
        const Complex z = std::polar(1.0, phi);
        NumericMatrix<M> out{};
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = 0; j < M; ++j) out[i][j] = entries_[i][j].evaluate_at(z);
        }
        return out;
    }

    friend bool operator==(const ScatteringMatrix&, const ScatteringMatrix&) = default;

   private:
    Entries entries_{};
};

using LossyScatteringMatrix = ScatteringMatrix<4>;
using LosslessScatteringMatrix = ScatteringMatrix<2>;

/// Lossy, balanced Mach-Zehnder interferometer with mirror phase shifts of pi.
/// Entries are degree <= 1 in z = e^{i phi}; the constant path-length phases
/// multiply the coefficients and equal 1 when L = l = 0.
inline LossyScatteringMatrix build_lossy_mz(const LossParameters& params) {
    params.validate();
    const double rx = params.r_x;
    const double ry = params.r_y;
    const double tx = std::sqrt(1.0 - rx * rx);
    const double ty = std::sqrt(1.0 - ry * ry);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    const double k = params.omega_over_c;
    const Complex full = std::polar(1.0, params.path_length * k);
    const Complex tail = std::polar(1.0, (params.path_length - params.partial_path_length) * k);
    const Complex head = std::polar(1.0, params.partial_path_length * k);

    LossyScatteringMatrix::Entries e{};
    e[0][0] = PhasePolynomial({0.5 * i * full * ty, -0.5 * i * full * tx});
    e[0][1] = PhasePolynomial({-0.5 * full * ty, -0.5 * full * tx});
    e[0][2] = PhasePolynomial::constant(i * inv_sqrt2 * rx * tail);
    e[0][3] = PhasePolynomial::constant(inv_sqrt2 * ry * tail);

    e[1][0] = PhasePolynomial({-0.5 * full * ty, -0.5 * full * tx});
    e[1][1] = PhasePolynomial({-0.5 * i * full * ty, 0.5 * i * full * tx});
    e[1][2] = PhasePolynomial::constant(inv_sqrt2 * rx * tail);
    e[1][3] = PhasePolynomial::constant(i * inv_sqrt2 * ry * tail);

    e[2][0] = PhasePolynomial::monomial(-i * inv_sqrt2 * rx * head, 1);
    e[2][1] = PhasePolynomial::monomial(-inv_sqrt2 * rx * head, 1);
    e[2][2] = PhasePolynomial::constant(-i * tx);
    e[2][3] = PhasePolynomial{};

    e[3][0] = PhasePolynomial::constant(-inv_sqrt2 * ry * head);
    e[3][1] = PhasePolynomial::constant(-i * inv_sqrt2 * ry * head);
    e[3][2] = PhasePolynomial{};
    e[3][3] = PhasePolynomial::constant(-i * ty);
    return LossyScatteringMatrix(std::move(e));
}

/// Lossless two-port Mach-Zehnder interferometer. Note |S_11|^2 = cos^2(phi/2),
/// the opposite phase convention to the zero-loss limit of build_lossy_mz.
inline LosslessScatteringMatrix build_lossless_mz_2x2() {
    const Complex i{0.0, 1.0};
    LosslessScatteringMatrix::Entries e{};
    e[0][0] = PhasePolynomial({-0.5 * i, -0.5 * i});
    e[0][1] = PhasePolynomial({-0.5, 0.5});
    e[1][0] = PhasePolynomial({-0.5, 0.5});
    e[1][1] = PhasePolynomial({0.5 * i, 0.5 * i});
    return LosslessScatteringMatrix(std::move(e));
}

/// max over the grid of max_ij |(S^dagger S - I)_ij|.
template <std::size_t M>
double unitarity_defect(const ScatteringMatrix<M>& s, std::span<const double> phase_grid) {
    if (phase_grid.empty()) throw std::invalid_argument("unitarity_defect: empty phase grid");
    double worst = 0.0;
    for (double phi : phase_grid) {
        const NumericMatrix<M> m = s.evaluate(phi);
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = 0; j < M; ++j) {
                Complex acc{};
                for (std::size_t k = 0; k < M; ++k) acc += std::conj(m[k][i]) * m[k][j];
                if (i == j) acc -= 1.0;
                worst = std::max(worst, std::abs(acc));
            }
        }
    }
    return worst;
}

}  // namespace mzi
