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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "mzi/core/phase_grid.hpp"
#include "mzi/metrics.hpp"
#include "mzi/pipeline.hpp"
#include "mzi/reference.hpp"

namespace mzi {
namespace {

const double kOneBitLoss = 1.0 / std::log(2.0) - 1.0;

LossyScatteringMatrix lossy(double rx, double ry) {
    LossParameters p;
    p.r_x = rx;
    p.r_y = ry;
    return build_lossy_mz(p);
}

std::map<Outcome, TrigSpectrum> dist(const PureState<4>& s, double rx, double ry) {
    return outcome_distribution(s, lossy(rx, ry)).probs;
}

LabelDistribution detector_model(double px) {
    return pipeline_distribution(MeasurementModel<4>{Preparation<4>::deterministic(fock_state<4>(1)),
                                                     sin_squared_transfer<4>(), binary_flip_detection(px)});
}

// ---------------------------------------------------------------------------
// Prior

TEST(PhasePrior, Uniform) {
    const auto p = PhasePrior::uniform();
    EXPECT_TRUE(p.is_uniform());
    EXPECT_DOUBLE_EQ(p.density(0.3), 1.0 / kTwoPi);
    EXPECT_DOUBLE_EQ(p.integral(), 1.0);
}

TEST(PhasePrior, TabulatedIsNormalizedAndPeriodic) {
    double raw = 0.0;
    const auto p = PhasePrior::tabulated({{-kPi, 1.0}, {0.0, 3.0}, {1.0, 2.0}, {kPi, 1.0}}, &raw);
    EXPECT_FALSE(p.is_uniform());
    EXPECT_NEAR(p.integral(), 1.0, 1e-10);
    EXPECT_GT(raw, 1.0);
    // Trapezoid integral of the normalized density on a fine grid.
    const auto grid = periodic_grid(1 << 14);
    double sum = 0.0;
    for (double phi : grid) sum += p.density(phi);
    EXPECT_NEAR(sum * kTwoPi / grid.size(), 1.0, 1e-6);
    EXPECT_NEAR(p.density(kPi + 0.5), p.density(-kPi + 0.5), 1e-15);
    EXPECT_NEAR(p.density(0.5) / p.density(0.0), 2.5 / 3.0, 1e-12);
}

TEST(PhasePrior, TabulatedValidation) {
    EXPECT_THROW(PhasePrior::tabulated({{0.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(PhasePrior::tabulated({{0.0, 1.0}, {4.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(PhasePrior::tabulated({{0.0, 1.0}, {1.0, -1.0}}), std::invalid_argument);
    EXPECT_THROW(PhasePrior::tabulated({{0.0, 1.0}, {0.0, 2.0}, {1.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(PhasePrior::tabulated({{0.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Fisher information

TEST(Fisher, OnePhotonMatchesClosedForm) {
    for (double rx : linspace(0.0, 0.9, 5)) {
        for (double ry : linspace(0.0, 0.9, 5)) {
            const auto d = dist(fock_state<4>(1), rx, ry);
            for (double phi : periodic_grid(32)) {
                EXPECT_NEAR(fisher_information(d, phi).fisher, reference::ref_fisher_1photon(rx, ry, phi), 1e-9)
                    << rx << "," << ry << "," << phi;
            }
        }
    }
}

TEST(Fisher, EqualLossIsFlat) {
    for (double r : {0.0, 0.25, 0.5, 0.75}) {
        const auto d = dist(fock_state<4>(1), r, r);
        for (double phi : {-kPi, -2.0, 0.0, 0.5, kPi / 2, kPi}) {
            EXPECT_NEAR(fisher_information(d, phi).fisher, 1.0 - r * r, 1e-12) << r << "," << phi;
        }
    }
}

TEST(Fisher, VanishesAtZeroAndPiForUnequalLoss) {
    const auto d = dist(fock_state<4>(1), 0.3, 0.7);
    for (double phi : {0.0, kPi, -kPi}) {
        const auto f = fisher_information(d, phi);
        EXPECT_NEAR(f.fisher, 0.0, 1e-12);
        EXPECT_TRUE(std::isinf(f.cramer_rao_bound));
    }
    EXPECT_NEAR(fisher_information(d, 1.0).cramer_rao_bound, 1.0 / fisher_information(d, 1.0).fisher, 1e-15);
}

TEST(Fisher, PositiveMinimumBelowZeroThreshold) {
    // P(4,0) has a strictly positive minimum near 7e-16 at phi = 0.
    const auto d = dist(fock_state<4>(4), 0.0, 0.225);
    EXPECT_EQ(fisher_information(d, 0.0).fisher, 0.0);
}

TEST(Fisher, NextToDoubleZero) {
    for (int n = 1; n <= 6; ++n) {
        const auto d = dist(fock_state<4>(n), 0.0, 0.0);
        for (double phi : {1e-9, 1e-12, -1e-10, kPi - 1e-10}) {
            const auto f = fisher_information(d, phi);
            EXPECT_TRUE(f.diagnostic.empty()) << f.diagnostic;
            EXPECT_NEAR(f.fisher, n, 1e-9) << n << " " << phi;
        }
    }
}

TEST(Fisher, PreparationMixture) {
    for (double p1 : {0.1, 0.5, 1.0}) {
        std::vector<PreparationComponent<2>> parts{{p1, fock_state<2>(1)}};
        if (p1 < 1.0) parts.push_back({1.0 - p1, vacuum_state<2>()});
        const auto d = mixed_outcome_distribution(Preparation<2>(parts), build_lossless_mz_2x2()).probs;
        for (double phi : periodic_grid(16)) EXPECT_NEAR(fisher_information(d, phi).fisher, p1, 1e-12);
    }
}

TEST(Fisher, MatchesFiniteDifferenceOracle) {
    const auto d = dist(fock_state<4>(3), 0.35, 0.55);
    const double h = 1e-5;
    for (double phi : {-2.5, -1.0, 0.4, 1.9}) {
        double fd = 0.0;
        for (const auto& [_, p] : d) {
            const double slope = (p(phi + h) - p(phi - h)) / (2 * h);
            fd += slope * slope / p(phi);
        }
        EXPECT_NEAR(fisher_information(d, phi).fisher, fd, 1e-6);
    }
}

TEST(Fisher, DiagnosticForNonRemovableZero) {
    std::map<int, TrigSpectrum> bad{{0, TrigSpectrum(0.0, {0.0}, {0.5})}, {1, TrigSpectrum(1.0, {0.0}, {-0.5})}};
    const auto f = fisher_information(bad, 0.0);
    EXPECT_TRUE(std::isinf(f.fisher));
    EXPECT_FALSE(f.diagnostic.empty());
}

TEST(Fisher, RejectsUnnormalized) {
    std::map<int, TrigSpectrum> bad{{0, TrigSpectrum(0.6)}, {1, TrigSpectrum(0.5)}};
    EXPECT_THROW(fisher_information(bad, 0.0), std::domain_error);
}

TEST(FisherProperties, NonNegativeAndFockScaling) {
    for (double rx : linspace(0.0, 0.9, 5)) {
        for (double ry : linspace(0.0, 0.9, 5)) {
            const auto one = dist(fock_state<4>(1), rx, ry);
            for (int n = 2; n <= 5; ++n) {
                const auto many = dist(fock_state<4>(n), rx, ry);
                for (double phi : periodic_grid(32)) {
                    const double f1 = fisher_information(one, phi).fisher;
                    const double fn = fisher_information(many, phi).fisher;
                    EXPECT_GE(fn, 0.0);
                    EXPECT_NEAR(fn, n * f1, 1e-9) << n << " " << rx << "," << ry << "," << phi;
                }
            }
        }
    }
}

TEST(FisherProperties, NoonOneZerosAtQuarterTurn) {
    for (double rx : {0.1, 0.5}) {
        for (double ry : {0.3, 0.8}) {
            const auto d = dist(noon_state<4>(1), rx, ry);
            EXPECT_NEAR(fisher_information(d, kPi / 2).fisher, 0.0, 1e-12);
            EXPECT_NEAR(fisher_information(d, -kPi / 2).fisher, 0.0, 1e-12);
            for (double phi : periodic_grid(16)) {
                EXPECT_NEAR(fisher_information(d, phi).fisher,
                            reference::ref_fisher_1photon(rx, ry, kPi / 2 - phi), 1e-9);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Fidelity

TEST(Fidelity, LosslessOnePhoton) {
    const auto h = fidelity(dist(fock_state<4>(1), 0.0, 0.0), PhasePrior::uniform());
    EXPECT_NEAR(h.bits, kOneBitLoss, 1e-6);
    EXPECT_GE(h.nodes, kFidelityMinNodes);
}

TEST(Fidelity, EqualLossOnePhoton) {
    const auto h = fidelity(dist(fock_state<4>(1), 0.5, 0.5), PhasePrior::uniform());
    EXPECT_NEAR(h.bits, 0.332021, 1e-6);
    EXPECT_NEAR(h.bits, kOneBitLoss * 0.75, 1e-6);
}

TEST(Fidelity, TwoPhotonNoonCarriesNoInformation) {
    for (double rx : {0.0, 0.3, 0.9}) {
        for (double ry : {0.0, 0.4, 1.0}) {
            EXPECT_NEAR(fidelity(dist(noon_state<4>(2), rx, ry), PhasePrior::uniform()).bits, 0.0, 1e-9);
        }
    }
}

TEST(Fidelity, PreparationMixture) {
    for (double p1 : {0.1, 0.5, 1.0}) {
        std::vector<PreparationComponent<2>> parts{{p1, fock_state<2>(1)}};
        if (p1 < 1.0) parts.push_back({1.0 - p1, vacuum_state<2>()});
        const auto d = mixed_outcome_distribution(Preparation<2>(parts), build_lossless_mz_2x2()).probs;
        EXPECT_NEAR(fidelity(d, PhasePrior::uniform()).bits, p1 * kOneBitLoss, 1e-6);
    }
}

TEST(Fidelity, ToleranceValidationAndNonConvergence) {
    const auto d = dist(fock_state<4>(1), 0.0, 0.0);
    EXPECT_THROW(fidelity(d, PhasePrior::uniform(), 0.0), std::invalid_argument);
    EXPECT_THROW(fidelity(d, PhasePrior::uniform(), 1e-300), ConvergenceError);
}

TEST(Fidelity, TabulatedFlatPriorMatchesUniform) {
    const auto d = dist(fock_state<4>(2), 0.3, 0.6);
    const auto flat = PhasePrior::tabulated({{-kPi, 1.0}, {0.0, 1.0}, {2.0, 1.0}});
    EXPECT_NEAR(fidelity(d, flat).bits, fidelity(d, PhasePrior::uniform()).bits, 1e-8);
}

TEST(FidelityProperties, Bounds) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& state : {fock_state<4>(n), noon_state<4>(n)}) {
            for (double r : {0.0, 0.4, 0.8}) {
                const auto d = dist(state, r, 0.5 * r);
                std::size_t labels = 0;
                for (const auto& [_, p] : d) labels += p.mean() > 1e-15 ? 1 : 0;
                const double h = fidelity(d, PhasePrior::uniform()).bits;
                EXPECT_GE(h, 0.0);
                EXPECT_LE(h, std::log2(static_cast<double>(labels)) + 1e-9);
            }
        }
    }
}

TEST(FidelityProperties, PriorShiftInvariance) {
    std::vector<TrigSpectrum> outcomes;
    for (const auto& [_, p] : dist(fock_state<4>(3), 0.2, 0.45)) outcomes.push_back(p);
    const double base = fidelity(outcomes, PhasePrior::uniform()).bits;
    for (double c : {0.1, 1.0, 2.7}) {
        const auto shifted = fidelity(
            outcomes.size(),
            [&](double phi, std::span<double> out) {
                for (std::size_t k = 0; k < outcomes.size(); ++k) out[k] = outcomes[k](phi + c);
            },
            PhasePrior::uniform());
        EXPECT_NEAR(shifted.bits, base, 1e-8);
    }
}

TEST(FidelityProperties, DetectorSymmetry) {
    EXPECT_NEAR(fidelity(detector_model(0.5), PhasePrior::uniform()).bits, 0.0, 1e-9);
    for (double px : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double a = fidelity(detector_model(px), PhasePrior::uniform()).bits;
        const double b = fidelity(detector_model(1.0 - px), PhasePrior::uniform()).bits;
        EXPECT_NEAR(a, b, 1e-9) << px;
    }
    EXPECT_NEAR(fidelity(detector_model(0.0), PhasePrior::uniform()).bits, kOneBitLoss, 1e-6);
}

// ---------------------------------------------------------------------------
// Posterior

TEST(Posterior, VacuumOutcomeIsFlat) {
    const auto post = posterior(dist(fock_state<4>(1), 0.4, 0.7), Outcome{0, 0}, PhasePrior::uniform(), 64);
    for (double d : post.density) EXPECT_NEAR(d, 1.0 / kTwoPi, 1e-12);
}

TEST(Posterior, EqualLossIsIndependentOfLossSize) {
    for (double r : {0.0, 0.3, 0.8}) {
        const auto post = posterior(dist(fock_state<4>(1), r, r), Outcome{1, 0}, PhasePrior::uniform(), 64);
        for (std::size_t j = 0; j < post.phi.size(); ++j) {
            EXPECT_NEAR(post.density[j], (1.0 - std::cos(post.phi[j])) / kTwoPi, 1e-12);
        }
    }
}

TEST(Posterior, TwoPhotonCoincidence) {
    const auto post = posterior(dist(fock_state<4>(2), 0.5, 0.5), Outcome{1, 1}, PhasePrior::uniform(), 64);
    for (std::size_t j = 0; j < post.phi.size(); ++j) {
        const double s = std::sin(post.phi[j]);
        EXPECT_NEAR(post.density[j], s * s / kPi, 1e-12);
    }
}

TEST(Posterior, DetectorModel) {
    const auto post = posterior(detector_model(0.2), Label::counts(1, 0), PhasePrior::uniform(), 64);
    for (std::size_t j = 0; j < post.phi.size(); ++j) {
        EXPECT_NEAR(post.density[j], reference::ref_detector_posterior(0.2, true, post.phi[j]), 1e-12);
    }
}

TEST(Posterior, Errors) {
    const auto d = dist(noon_state<4>(2), 0.3, 0.3);
    EXPECT_THROW(posterior(d, Outcome{1, 1}, PhasePrior::uniform(), 64), UnreachableOutcome);
    EXPECT_THROW(posterior(d, Outcome{2, 0}, PhasePrior::uniform(), 8), std::invalid_argument);
    // Reachable in principle, but only where the prior has no mass.
    const auto fock = dist(fock_state<4>(1), 0.0, 0.0);
    const auto prior = PhasePrior::tabulated({{-kPi, 0.0}, {-0.2, 0.0}, {0.0, 1.0}, {0.2, 0.0}});
    EXPECT_NO_THROW(posterior(fock, Outcome{0, 1}, prior, 64));
    EXPECT_THROW(posterior(fock, Outcome{1, 0}, prior, 16), UnreachableOutcome);
}

TEST(PosteriorProperties, Normalization) {
    const auto prior = PhasePrior::tabulated({{-3.0, 0.2}, {-1.0, 1.0}, {0.5, 0.4}, {2.0, 2.0}});
    for (int n = 1; n <= 4; ++n) {
        const auto d = dist(fock_state<4>(n), 0.3, 0.6);
        for (const auto& [o, _] : d) {
            for (std::size_t grid : {16u, 100u, 512u}) {
                EXPECT_NEAR(posterior(d, o, PhasePrior::uniform(), grid).integral(), 1.0, 1e-8);
                EXPECT_NEAR(posterior(d, o, prior, grid).integral(), 1.0, 1e-8);
            }
        }
    }
}

TEST(Posterior, AsPriorChainsUpdates) {
    const auto d = dist(fock_state<4>(1), 0.2, 0.2);
    const auto first = posterior(d, Outcome{1, 0}, PhasePrior::uniform(), 256);
    const auto second = posterior(d, Outcome{1, 0}, first.as_prior(), 256);
    // Two (1,0) outcomes: density proportional to (1 - cos phi)^2.
    for (std::size_t j = 0; j < second.phi.size(); ++j) {
        const double v = 1.0 - std::cos(second.phi[j]);
        EXPECT_NEAR(second.density[j], v * v / (3.0 * kPi), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Small-loss series

TEST(SmallLossSeries, LeadingTerms) {
    EXPECT_NEAR(small_loss_fidelity_series(SeriesInput::kFock1, 0.0, 0.0), kOneBitLoss, 1e-15);
    const double ln2 = std::log(2.0);
    EXPECT_NEAR(small_loss_fidelity_series(SeriesInput::kFock2, 0.0, 0.0),
                (8.0 - 4.0 * ln2 - 3.0 * std::log(3.0)) / (4.0 * ln2), 1e-15);
    EXPECT_THROW(small_loss_fidelity_series(SeriesInput::kFock1, 0.31, 0.0), std::invalid_argument);
    EXPECT_THROW(small_loss_fidelity_series(SeriesInput::kFock2, 0.0, -0.1), std::invalid_argument);
}

TEST(SmallLossSeries, AgreesWithQuadrature) {
    const double h1 = fidelity(dist(fock_state<4>(1), 0.1, 0.1), PhasePrior::uniform()).bits;
    EXPECT_NEAR(small_loss_fidelity_series(SeriesInput::kFock1, 0.1, 0.1), h1, 5e-4);
    for (double r : {0.05, 0.1}) {
        const double h2 = fidelity(dist(fock_state<4>(2), r, 0.5 * r), PhasePrior::uniform()).bits;
        EXPECT_NEAR(small_loss_fidelity_series(SeriesInput::kFock2, r, 0.5 * r), h2, 5.0 * std::pow(r, 4));
    }
}

}  // namespace
}  // namespace mzi
