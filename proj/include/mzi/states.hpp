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
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzi/core/phase_polynomial.hpp"

namespace mzi {

/// Photon count per mode. The first two modes are the measured ports; any
/// further modes are loss ports whose inputs carry vacuum.
template <std::size_t M>
using FockOccupation = std::array<int, M>;

inline constexpr std::size_t kMeasuredModes = 2;

/// Guard against factorial blowup in the multinomial expansion.
inline constexpr int kMaxPhotons = 12;

template <std::size_t M>
int total_photons(const FockOccupation<M>& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

template <std::size_t M>
struct StateTerm {
    Complex amplitude;
    FockOccupation<M> occupation;

    friend bool operator==(const StateTerm&, const StateTerm&) = default;
};

/// Superposition of Fock occupations entering the interferometer.
template <std::size_t M>
class PureState {
    static_assert(M >= kMeasuredModes, "need at least the two measured ports");

   public:
    static constexpr double kNormTolerance = 1e-12;

    explicit PureState(std::vector<StateTerm<M>> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw std::invalid_argument("PureState: no terms");
        double norm = 0.0;
        for (const auto& t : terms_) {
            if (!is_finite(t.amplitude)) throw std::invalid_argument("PureState: non-finite amplitude");
            for (std::size_t mode = 0; mode < M; ++mode) {
                if (t.occupation[mode] < 0) {
                    throw std::invalid_argument("PureState: negative occupation");
                }
                if (mode >= kMeasuredModes && t.occupation[mode] != 0) {
                    throw std::invalid_argument("PureState: loss-port inputs must be vacuum");
                }
            }
            if (total_photons(t.occupation) > kMaxPhotons) {
                throw std::invalid_argument("PureState: photon number exceeds " +
                                            std::to_string(kMaxPhotons));
            }
            norm += std::norm(t.amplitude);
        }
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw std::invalid_argument("PureState: amplitudes are not normalized");
        }
    }

    const std::vector<StateTerm<M>>& terms() const noexcept { return terms_; }

    int max_photons() const noexcept {
        int n = 0;
        for (const auto& t : terms_) n = std::max(n, total_photons(t.occupation));
        return n;
    }

    friend bool operator==(const PureState&, const PureState&) = default;

   private:
    std::vector<StateTerm<M>> terms_;
};

template <std::size_t M>
FockOccupation<M> port_occupation(int n1, int n2) {
    FockOccupation<M> occ{};
    occ[0] = n1;
    occ[1] = n2;
    return occ;
}

template <std::size_t M>
PureState<M> vacuum_state() {
    return PureState<M>({{Complex{1.0}, FockOccupation<M>{}}});
}

/// |n1 n2>: n1 photons in the first port, n2 in the second.
template <std::size_t M>
PureState<M> fock_state(int n1, int n2 = 0) {
    return PureState<M>({{Complex{1.0}, port_occupation<M>(n1, n2)}});
}

/// (|N 0> + |0 N>) / sqrt(2)
template <std::size_t M>
PureState<M> noon_state(int n) {
    if (n <= 0) throw std::invalid_argument("noon_state: photon number must be positive");
    const Complex a{1.0 / std::sqrt(2.0)};
    return PureState<M>({{a, port_occupation<M>(n, 0)}, {a, port_occupation<M>(0, n)}});
}

template <std::size_t M>
struct PreparationComponent {
    double probability;
    PureState<M> state;

    friend bool operator==(const PreparationComponent&, const PreparationComponent&) = default;
};

/// Diagonal mixture of pure inputs, sum_k P_S(k) |psi_k><psi_k|.
template <std::size_t M>
class Preparation {
   public:
    static constexpr double kSumTolerance = 1e-12;

    explicit Preparation(std::vector<PreparationComponent<M>> components)
        : components_(std::move(components)) {
        if (components_.empty()) throw std::invalid_argument("Preparation: no components");
        double total = 0.0;
        for (const auto& c : components_) {
            if (!(c.probability >= 0.0) || !std::isfinite(c.probability)) {
                throw std::invalid_argument("Preparation: probabilities must be finite and >= 0");
            }
            total += c.probability;
        }
        if (std::abs(total - 1.0) > kSumTolerance) {
            throw std::invalid_argument("Preparation: probabilities must sum to 1");
        }
    }

    static Preparation deterministic(PureState<M> state) {
        return Preparation({{1.0, std::move(state)}});
    }

    const std::vector<PreparationComponent<M>>& components() const noexcept { return components_; }

    friend bool operator==(const Preparation&, const Preparation&) = default;

   private:
    std::vector<PreparationComponent<M>> components_;
};

}  // namespace mzi
