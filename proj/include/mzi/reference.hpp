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

// Independent oracles used to validate the engine and metrics: closed-form
// results for few-photon inputs written out term by term, and a brute-force
// evolver that works at a numeric phase without the polynomial machinery.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzi/engine.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/states.hpp"

namespace mzi::reference {

struct ClosedFormParams {
    double r_x = 0.0;
    double r_y = 0.0;
    double p_x = 0.0;  ///< detector flip probability
};

struct ClosedForm {
    std::string name;
    std::function<double(const ClosedFormParams&, double phi)> eval;
};

namespace detail {

inline double contrast(const ClosedFormParams& q) {
    return std::sqrt((1.0 - q.r_x * q.r_x) * (1.0 - q.r_y * q.r_y));
}
inline double loss_sum(const ClosedFormParams& q) { return q.r_x * q.r_x + q.r_y * q.r_y; }

// 2-photon Fock outcomes (20) and (02) share everything but the sign of cos(phi).
inline double fock2_same_port(const ClosedFormParams& q, double phi, double sign) {
    const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
    return (6.0 - 6.0 * rx2 - 6.0 * ry2 +
            sign * 4.0 * std::sqrt((rx2 - 1.0) * (ry2 - 1.0)) * (rx2 + ry2 - 2.0) * std::cos(phi) +
            2.0 * (rx2 - 1.0) * (ry2 - 1.0) * std::cos(2.0 * phi) + 4.0 * rx2 * ry2 + rx2 * rx2 +
            ry2 * ry2) /
           16.0;
}

}  // namespace detail

/// Registry of closed-form outcome probabilities.
inline const std::vector<ClosedForm>& closed_forms() {
    using detail::contrast;
    using detail::loss_sum;
    static const std::vector<ClosedForm> forms = {
        // 1-photon Fock input |10> through the lossy interferometer.
        {"fock1-P10",
         [](const ClosedFormParams& q, double phi) {
             return 0.25 * (2.0 - loss_sum(q) - 2.0 * contrast(q) * std::cos(phi));
         }},
        {"fock1-P01",
         [](const ClosedFormParams& q, double phi) {
             return 0.25 * (2.0 - loss_sum(q) + 2.0 * contrast(q) * std::cos(phi));
         }},
        {"fock1-P00", [](const ClosedFormParams& q, double) { return 0.5 * loss_sum(q); }},

        // 2-photon Fock input |20>.
        {"fock2-P20",
         [](const ClosedFormParams& q, double phi) { return detail::fock2_same_port(q, phi, +1.0); }},
        {"fock2-P02",
         [](const ClosedFormParams& q, double phi) { return detail::fock2_same_port(q, phi, -1.0); }},
        {"fock2-P11",
         [](const ClosedFormParams& q, double phi) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return (2.0 - 2.0 * rx2 - 2.0 * ry2 + rx2 * rx2 + ry2 * ry2 -
                     2.0 * (1.0 - rx2) * (1.0 - ry2) * std::cos(2.0 * phi)) /
                    8.0;
         }},
        {"fock2-P10",
         [](const ClosedFormParams& q, double phi) {
             return 0.25 * loss_sum(q) * (2.0 - loss_sum(q) - 2.0 * contrast(q) * std::cos(phi));
         }},
        {"fock2-P01",
         [](const ClosedFormParams& q, double phi) {
             return 0.25 * loss_sum(q) * (2.0 - loss_sum(q) + 2.0 * contrast(q) * std::cos(phi));
         }},
        {"fock2-P00",
         [](const ClosedFormParams& q, double) { return 0.25 * loss_sum(q) * loss_sum(q); }},
        // Partial sums: no photon absorbed, exactly one photon absorbed.
        {"fock2-none-absorbed",
         [](const ClosedFormParams& q, double) {
             return 0.25 * (2.0 - loss_sum(q)) * (2.0 - loss_sum(q));
         }},
        {"fock2-one-absorbed",
         [](const ClosedFormParams& q, double) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return 0.5 * (2.0 * rx2 + 2.0 * ry2 - 2.0 * rx2 * ry2 - rx2 * rx2 - ry2 * ry2);
         }},

        // 2-photon N00N input; phase independent.
        {"noon2-P20",
         [](const ClosedFormParams& q, double) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return 0.5 * (1.0 - rx2 - ry2 + rx2 * ry2);
         }},
        {"noon2-P02",
         [](const ClosedFormParams& q, double) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return 0.5 * (1.0 - rx2 - ry2 + rx2 * ry2);
         }},
        {"noon2-P11", [](const ClosedFormParams&, double) { return 0.0; }},
        {"noon2-P10",
         [](const ClosedFormParams& q, double) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return 0.5 * (rx2 + ry2 - 2.0 * rx2 * ry2);
         }},
        {"noon2-P01",
         [](const ClosedFormParams& q, double) {
             const double rx2 = q.r_x * q.r_x, ry2 = q.r_y * q.r_y;
             return 0.5 * (rx2 + ry2 - 2.0 * rx2 * ry2);
         }},
        {"noon2-P00",
         [](const ClosedFormParams& q, double) { return q.r_x * q.r_x * q.r_y * q.r_y; }},

        // Lossless single-photon transfer sin^2 / cos^2 followed by a binary-flip detector.
        {"detector-P10",
         [](const ClosedFormParams& q, double phi) {
             const double s = std::sin(phi), c = std::cos(phi);
             return (1.0 - q.p_x) * s * s + q.p_x * c * c;
         }},
        {"detector-P01",
         [](const ClosedFormParams& q, double phi) {
             const double s = std::sin(phi), c = std::cos(phi);
             return q.p_x * s * s + (1.0 - q.p_x) * c * c;
         }},
    };
    return forms;
}

inline double ref_probability(const std::string& name, const ClosedFormParams& params, double phi) {
    for (const auto& form : closed_forms()) {
        if (form.name == name) return form.eval(params, phi);
    }
    throw std::invalid_argument("ref_probability: unknown case '" + name + "'");
}

/// Fisher information of the 1-photon Fock input.
inline double ref_fisher_1photon(double r_x, double r_y, double phi) {
    const double ax = 1.0 - r_x * r_x;
    const double ay = 1.0 - r_y * r_y;
    const double s = 2.0 - r_x * r_x - r_y * r_y;
    const double sin_phi = std::sin(phi);
    const double cos_phi = std::cos(phi);
    // With r_x == r_y the ratio reduces identically to 1 - r_x^2.
    if (r_x == r_y) return ax;
    const double numerator = 2.0 * ax * ay * s * sin_phi * sin_phi;
    const double denominator = s * s - 4.0 * ax * ay * cos_phi * cos_phi;
    return denominator == 0.0 ? 0.0 : numerator / denominator;
}

/// Fidelity of the 1-photon Fock input for equal loss r in both arms.
inline double ref_fidelity_1photon_equal_loss(double r) {
    return (1.0 / std::log(2.0) - 1.0) * (1.0 - r * r);
}

/// Fidelity of the 2-photon Fock input for equal loss r in both arms.
inline double ref_fidelity_2photon_equal_loss(double r) {
    const double ln2 = std::log(2.0);
    return (1.0 - r * r) *
           (8.0 - 4.0 * ln2 - 3.0 * std::log(3.0) + 2.0 * r * r * std::atanh(11.0 / 43.0)) /
           (4.0 * ln2);
}

/// Posterior p(phi | outcome) for the binary-flip detector model, outcome (1,0)
/// when `first_port` is true and (0,1) otherwise.
inline double ref_detector_posterior(double p_x, bool first_port, double phi) {
    const double s = std::sin(phi), c = std::cos(phi);
    const double a = first_port ? (1.0 - p_x) : p_x;
    return (a * s * s + (1.0 - a) * c * c) / kPi;
}

/// Small-loss expansion of the 2-photon Fock probabilities at r_x = r_y = r,
/// ordered (20, 02, 11, 10, 01, 00); error O(r^4).
inline std::array<double, 6> ref_fock2_series(double r, double phi) {
    const double r2 = r * r;
    const double s2 = std::sin(0.5 * phi) * std::sin(0.5 * phi);
    const double c2 = std::cos(0.5 * phi) * std::cos(0.5 * phi);
    const double sin_phi = std::sin(phi);
    return {s2 * s2 - 2.0 * r2 * s2 * s2,
            c2 * c2 - 2.0 * r2 * c2 * c2,
            0.5 * sin_phi * sin_phi - r2 * sin_phi * sin_phi,
            r2 * (1.0 - std::cos(phi)),
            r2 * (std::cos(phi) + 1.0),
            0.0};
}

/// The lossy interferometer matrix evaluated at a numeric phase, written out
/// entry by entry.
inline NumericMatrix<4> lossy_mz_numeric(const LossParameters& params, double phi) {
    params.validate();
    const Complex i{0.0, 1.0};
    const double rx = params.r_x, ry = params.r_y;
    const double tx = std::sqrt(1.0 - rx * rx), ty = std::sqrt(1.0 - ry * ry);
    const double k = params.omega_over_c;
    const double big_l = params.path_length, small_l = params.partial_path_length;
    const Complex e_full = std::exp(i * big_l * k);
    const Complex e_tail = std::exp(i * (big_l - small_l) * k);
    const Complex e_head = std::exp(i * (phi + small_l * k));
    const Complex e_head0 = std::exp(i * small_l * k);
    const Complex e_phi = std::exp(i * phi);
    const double s2 = std::sqrt(2.0);
    NumericMatrix<4> m{};
    m[0] = {i / 2.0 * e_full * (ty - e_phi * tx), -0.5 * e_full * (ty + e_phi * tx),
            i / s2 * rx * e_tail, 1.0 / s2 * ry * e_tail};
    m[1] = {-0.5 * e_full * (ty + e_phi * tx), -i / 2.0 * e_full * (ty - e_phi * tx),
            1.0 / s2 * rx * e_tail, i / s2 * ry * e_tail};
    m[2] = {-i / s2 * rx * e_head, -1.0 / s2 * rx * e_head, -i * tx, Complex{}};
    m[3] = {-1.0 / s2 * ry * e_head0, -i / s2 * ry * e_head0, Complex{}, -i * ty};
    return m;
}

inline constexpr int kBruteForceMaxPhotons = 4;

/// Dense output amplitude vector over every occupation with total <= N.
template <std::size_t M>
struct DenseAmplitudes {
    std::vector<FockOccupation<M>> basis;
    std::vector<Complex> amplitudes;

    std::map<Outcome, double> marginals() const {
        std::map<Outcome, double> out;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const double p = std::norm(amplitudes[k]);
            if (p > 0.0) out[Outcome{basis[k][0], basis[k][1]}] += p;
        }
        return out;
    }
};

/// Applies each input creation operator one photon at a time, as a sum of
/// output creation operators with numeric coefficients, then converts the
/// resulting monomials to normalized Fock amplitudes.
template <std::size_t M>
DenseAmplitudes<M> brute_force_evolve(const PureState<M>& state, const NumericMatrix<M>& s) {
    const int n_max = state.max_photons();
    if (n_max > kBruteForceMaxPhotons) {
        throw std::invalid_argument("brute_force_evolve: photon number above " +
                                    std::to_string(kBruteForceMaxPhotons));
    }
    using Monomials = std::map<FockOccupation<M>, Complex>;
    auto fact = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };

    Monomials total;
    for (const auto& term : state.terms()) {
        Monomials poly{{FockOccupation<M>{}, term.amplitude}};
        for (std::size_t j = 0; j < M; ++j) {
            for (int photon = 0; photon < term.occupation[j]; ++photon) {
                Monomials next;
                for (const auto& [mono, c] : poly) {
                    for (std::size_t i = 0; i < M; ++i) {
                        FockOccupation<M> raised = mono;
                        ++raised[i];
                        next[raised] += c * s[i][j];
                    }
                }
                poly = std::move(next);
            }
            poly = [&] {
                Monomials scaled;
                for (const auto& [mono, c] : poly) scaled[mono] = c / std::sqrt(fact(term.occupation[j]));
                return scaled;
            }();
        }
        for (const auto& [mono, c] : poly) total[mono] += c;
    }

    DenseAmplitudes<M> dense;
    // Enumerate every occupation with total photon number <= n_max.
    FockOccupation<M> occ{};
    auto enumerate = [&](auto& self, std::size_t mode, int budget) -> void {
        if (mode == M) {
            dense.basis.push_back(occ);
            return;
        }
        for (int k = 0; k <= budget; ++k) {
            occ[mode] = k;
            self(self, mode + 1, budget - k);
        }
        occ[mode] = 0;
    };
    enumerate(enumerate, 0, n_max);
    dense.amplitudes.assign(dense.basis.size(), Complex{});
    for (std::size_t k = 0; k < dense.basis.size(); ++k) {
        auto it = total.find(dense.basis[k]);
        if (it == total.end()) continue;
        double norm = 1.0;
        for (int e : dense.basis[k]) norm *= fact(e);
        dense.amplitudes[k] = it->second * std::sqrt(norm);
    }
    return dense;
}

template <std::size_t M>
DenseAmplitudes<M> brute_force_evolve(const PureState<M>& state, const ScatteringMatrix<M>& s,
                                      double phi) {
    return brute_force_evolve(state, s.evaluate(phi));
}

}  // namespace mzi::reference
