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
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzi/engine.hpp"

namespace mzi {

/// Reported measurement result: a photon-count pair, or the explicit
/// inconclusive result. Inconclusive sorts after every count pair.
struct Label {
    bool inconclusive = false;
    int n = 0;
    int m = 0;

    static Label counts(int n, int m) { return Label{false, n, m}; }
    static Label counts(Outcome o) { return Label{false, o.n, o.m}; }
    static Label make_inconclusive() { return Label{true, 0, 0}; }

    std::string to_string() const {
        return inconclusive ? std::string("inconclusive")
                            : "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }

    friend auto operator<=>(const Label&, const Label&) = default;
};

using LabelDistribution = std::map<Label, TrigSpectrum>;

/// Stochastic kernel P_D(reported | true outcome). True outcomes without an
/// explicit row are reported faithfully, so the default model is ideal
/// detection.
class DetectionModel {
   public:
    static constexpr double kRowTolerance = 1e-12;
    using Row = std::map<Label, double>;

    DetectionModel() = default;

    explicit DetectionModel(std::map<Outcome, Row> rows) : rows_(std::move(rows)) {
        for (const auto& [truth, row] : rows_) {
            double total = 0.0;
            for (const auto& [_, p] : row) {
                if (!(p >= 0.0 && p <= 1.0)) {
                    throw std::invalid_argument("DetectionModel: entries must lie in [0, 1]");
                }
                total += p;
            }
            if (std::abs(total - 1.0) > kRowTolerance) {
                throw std::invalid_argument("DetectionModel: row for " +
                                            Label::counts(truth).to_string() + " does not sum to 1");
            }
        }
    }

    static DetectionModel identity() { return DetectionModel(); }

    /// Zero photons at both ports is reported as inconclusive.
    static DetectionModel vacuum_inconclusive() {
        return DetectionModel({{Outcome{0, 0}, Row{{Label::make_inconclusive(), 1.0}}}});
    }

    Row row(Outcome truth) const {
        auto it = rows_.find(truth);
        if (it == rows_.end()) return Row{{Label::counts(truth), 1.0}};
        return it->second;
    }

    const std::map<Outcome, Row>& explicit_rows() const noexcept { return rows_; }

   private:
    std::map<Outcome, Row> rows_;
};

/// Single-photon detector that reports the wrong port with probability p_x and
/// never reports an inconclusive result.
inline DetectionModel binary_flip_detection(double p_x) {
    if (!(p_x >= 0.0 && p_x <= 1.0)) {
        throw std::invalid_argument("binary_flip_detection: p_x must lie in [0, 1]");
    }
    const double p_d = 1.0 - p_x;
    const Label a = Label::counts(1, 0);
    const Label b = Label::counts(0, 1);
    return DetectionModel({{Outcome{1, 0}, {{a, p_d}, {b, p_x}}},
                           {Outcome{0, 1}, {{a, p_x}, {b, p_d}}}});
}

/// Transfer stage P_I(out | in, phi) of a measurement model.
template <std::size_t M>
using TransferFunction = std::function<OutcomeDistribution(const PureState<M>&)>;

template <std::size_t M>
TransferFunction<M> scattering_transfer(ScatteringMatrix<M> s) {
    return [s = std::move(s)](const PureState<M>& in) { return outcome_distribution(in, s); };
}

/// The single-photon lossless transfer with P(10) = sin^2(phi) and
/// P(01) = cos^2(phi). Defined only for the |10> input.
template <std::size_t M>
TransferFunction<M> sin_squared_transfer() {
    return [](const PureState<M>& in) {
        if (!(in == fock_state<M>(1, 0))) {
            throw std::invalid_argument("sin_squared_transfer: defined only for the |10> input");
        }
        OutcomeDistribution dist;
        dist.n_max = 1;
        dist.probs[Outcome{1, 0}] = TrigSpectrum(0.5, {0.0, -0.5});
        dist.probs[Outcome{0, 1}] = TrigSpectrum(0.5, {0.0, 0.5});
        return dist;
    };
}

template <std::size_t M>
struct MeasurementModel {
    Preparation<M> prep;
    TransferFunction<M> transfer;
    DetectionModel detect;
};

namespace detail {

inline void check_normalized(const LabelDistribution& dist, double tol) {
    TrigSpectrum total;
    for (const auto& [_, p] : dist) total += p;
    if (std::abs(total.mean() - 1.0) + total.oscillation_bound() > tol) {
        throw std::domain_error("pipeline: outcome probabilities do not sum to 1");
    }
}

template <std::size_t M>
OutcomeDistribution transfer_mixture(const Preparation<M>& prep, const TransferFunction<M>& transfer) {
    OutcomeDistribution mixed;
    for (const auto& c : prep.components()) {
        const OutcomeDistribution part = transfer(c.state);
        mixed.n_max = std::max(mixed.n_max, part.n_max);
        for (const auto& [outcome, p] : part.probs) mixed.probs[outcome] += c.probability * p;
    }
    return mixed;
}

}  // namespace detail

/// P(xi | phi) = sum_j P_D(xi | j) sum_k P_I(j | k, phi) P_S(k).
template <std::size_t M>
LabelDistribution pipeline_distribution(const MeasurementModel<M>& model) {
    const OutcomeDistribution transferred = detail::transfer_mixture(model.prep, model.transfer);
    LabelDistribution out;
    for (const auto& [truth, p] : transferred.probs) {
        for (const auto& [reported, weight] : model.detect.row(truth)) {
            out[reported] += weight * p;
        }
    }
    detail::check_normalized(out, 1e-10);
    return out;
}

/// Detection kernel that may depend on the phase.
using PhaseDependentDetection = std::function<DetectionModel(double phi)>;

/// Gridded evaluation for phase-dependent detection: one map of label
/// probabilities per phase in the grid.
template <std::size_t M>
std::vector<std::map<Label, double>> pipeline_probabilities(const Preparation<M>& prep,
                                                            const TransferFunction<M>& transfer,
                                                            const PhaseDependentDetection& detect,
                                                            std::span<const double> phase_grid) {
    const OutcomeDistribution transferred = detail::transfer_mixture(prep, transfer);
    std::vector<std::map<Label, double>> out;
    out.reserve(phase_grid.size());
    for (double phi : phase_grid) {
        const DetectionModel kernel = detect(phi);
        std::map<Label, double> probs;
        double total = 0.0;
        for (const auto& [truth, p] : transferred.probs) {
            const double pt = p.evaluate(phi);
            for (const auto& [reported, weight] : kernel.row(truth)) {
                probs[reported] += weight * pt;
                total += weight * pt;
            }
        }
        if (std::abs(total - 1.0) > 1e-10) {
            throw std::domain_error("pipeline: outcome probabilities do not sum to 1");
        }
        out.push_back(std::move(probs));
    }
    return out;
}

}  // namespace mzi
