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

#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mzi/core/phase_polynomial.hpp"
#include "mzi/core/trig_spectrum.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/states.hpp"

namespace mzi {

/// Photon counts (n, m) registered at the two measured output ports.
struct Outcome {
    int n = 0;
    int m = 0;

    friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// P(n, m | phi) for every reachable (n, m), marginalized over the loss ports.
struct OutcomeDistribution {
    std::map<Outcome, TrigSpectrum> probs;
    int n_max = 0;

    /// Zero spectrum for outcomes that are not reachable.
    TrigSpectrum at(Outcome outcome) const {
        auto it = probs.find(outcome);
        return it == probs.end() ? TrigSpectrum{} : it->second;
    }

    TrigSpectrum total() const {
        TrigSpectrum sum;
        for (const auto& [_, p] : probs) sum += p;
        return sum;
    }
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

template <std::size_t M>
double factorial_product(const FockOccupation<M>& occ) {
    double f = 1.0;
    for (int n : occ) f *= factorial(n);
    return f;
}

/// Calls visit(occ) for each occupation of M modes summing to total.
template <std::size_t M, class Visit>
void for_each_composition(int total, Visit&& visit) {
    FockOccupation<M> occ{};
    auto recurse = [&](auto& self, std::size_t mode, int remaining) -> void {
        if (mode + 1 == M) {
            occ[mode] = remaining;
            visit(static_cast<const FockOccupation<M>&>(occ));
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            occ[mode] = k;
            self(self, mode + 1, remaining - k);
        }
    };
    recurse(recurse, 0, total);
}

}  // namespace detail

template <std::size_t M>
struct ExpansionTerm {
    /// Normalized amplitude on the output occupation.
    PhasePolynomial amplitude;
    /// power! / prod_i e_i!
    double multinomial_weight = 1.0;
};

template <std::size_t M>
using AmplitudeMap = std::map<FockOccupation<M>, PhasePolynomial>;

/// Output expansion of (a_j^dagger)^power / sqrt(power!) |0>, with
/// a_j^dagger = sum_i S_ij b_i^dagger. The amplitude on output occupation e is
/// sqrt(power! / prod e_i!) prod_i S_ij^{e_i}. Terms that vanish identically
/// are omitted.
template <std::size_t M>
std::map<FockOccupation<M>, ExpansionTerm<M>> expand_input_mode(const ScatteringMatrix<M>& s,
                                                                std::size_t input_mode, int power) {
    if (input_mode >= M) throw std::invalid_argument("expand_input_mode: mode out of range");
    if (power < 0 || power > kMaxPhotons) {
        throw std::invalid_argument("expand_input_mode: power out of range");
    }
    std::array<std::vector<PhasePolynomial>, M> powers;
    for (std::size_t i = 0; i < M; ++i) {
        powers[i].reserve(static_cast<std::size_t>(power) + 1);
        powers[i].push_back(PhasePolynomial::one());
        for (int k = 1; k <= power; ++k) powers[i].push_back(powers[i].back() * s.entry(i, input_mode));
    }

    std::map<FockOccupation<M>, ExpansionTerm<M>> out;
    const double power_factorial = detail::factorial(power);
    detail::for_each_composition<M>(power, [&](const FockOccupation<M>& e) {
        PhasePolynomial product = PhasePolynomial::one();
        for (std::size_t i = 0; i < M && !product.is_zero(); ++i) {
            product = product * powers[i][static_cast<std::size_t>(e[i])];
        }
        if (product.is_zero()) return;
        const double weight = power_factorial / detail::factorial_product<M>(e);
        out.emplace(e, ExpansionTerm<M>{Complex{std::sqrt(weight)} * product, weight});
    });
    return out;
}

namespace detail {

/// Combines normalized single-mode expansions: the amplitude of the joint
/// output picks up sqrt(prod e! / (prod e1! prod e2!)).
template <std::size_t M>
AmplitudeMap<M> combine(const AmplitudeMap<M>& left, const AmplitudeMap<M>& right) {
    AmplitudeMap<M> out;
    for (const auto& [e1, a1] : left) {
        for (const auto& [e2, a2] : right) {
            FockOccupation<M> e{};
            for (std::size_t i = 0; i < M; ++i) e[i] = e1[i] + e2[i];
            const double scale = std::sqrt(factorial_product<M>(e) /
                                           (factorial_product<M>(e1) * factorial_product<M>(e2)));
            PhasePolynomial term = Complex{scale} * (a1 * a2);
            auto [it, inserted] = out.try_emplace(e, term);
            if (!inserted) it->second = it->second + term;
        }
    }
    return out;
}

}  // namespace detail

/// Output amplitudes of a pure input. Branches of a superposition are summed
/// per output occupation before any modulus is taken, so cross terms survive.
template <std::size_t M>
AmplitudeMap<M> evolve(const PureState<M>& state, const ScatteringMatrix<M>& s) {
    AmplitudeMap<M> out;
    for (const auto& term : state.terms()) {
        AmplitudeMap<M> branch{{FockOccupation<M>{}, PhasePolynomial::one()}};
        for (std::size_t mode = 0; mode < M; ++mode) {
            const int n = term.occupation[mode];
            if (n == 0) continue;
            AmplitudeMap<M> single;
            for (auto& [occ, t] : expand_input_mode(s, mode, n)) single.emplace(occ, std::move(t.amplitude));
            branch = detail::combine(branch, single);
        }
        for (auto& [occ, amp] : branch) {
            PhasePolynomial scaled = term.amplitude * amp;
            auto [it, inserted] = out.try_emplace(occ, scaled);
            if (!inserted) it->second = it->second + scaled;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

/// P(n, m | phi) = sum over loss-port counts of |amplitude(n, m, k, l)|^2.
template <std::size_t M>
OutcomeDistribution outcome_distribution(const PureState<M>& state, const ScatteringMatrix<M>& s) {
    OutcomeDistribution dist;
    dist.n_max = state.max_photons();
    for (const auto& [occ, amp] : evolve(state, s)) {
        dist.probs[Outcome{occ[0], occ[1]}] += abs_square(amp);
    }
    return dist;
}

/// Probability-weighted sum of component distributions.
template <std::size_t M>
OutcomeDistribution mixed_outcome_distribution(const Preparation<M>& mixture,
                                               const ScatteringMatrix<M>& s) {
    OutcomeDistribution dist;
    for (const auto& c : mixture.components()) {
        const OutcomeDistribution part = outcome_distribution(c.state, s);
        dist.n_max = std::max(dist.n_max, part.n_max);
        for (const auto& [outcome, p] : part.probs) dist.probs[outcome] += c.probability * p;
    }
    return dist;
}

}  // namespace mzi
