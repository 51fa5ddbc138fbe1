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
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzi/core/phase_grid.hpp"
#include "mzi/core/trig_spectrum.hpp"

namespace mzi {

class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class UnreachableOutcome : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Wraps an angle into [-pi, pi).
inline double wrap_phase(double phi) {
    double w = std::fmod(phi + kPi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w - kPi;
}

/// Prior density p(phi) on [-pi, pi) with periodic wraparound. Tabulated
/// priors interpolate linearly between samples and are rescaled so that the
/// interpolant integrates to 1.
class PhasePrior {
   public:
    enum class Kind { kUniform, kTabulated };
    static constexpr double kNormTolerance = 1e-10;

    static PhasePrior uniform() { return PhasePrior(); }

    /// `raw_integral`, when given, receives the integral before rescaling.
    static PhasePrior tabulated(std::vector<std::pair<double, double>> points,
                                double* raw_integral = nullptr) {
        if (points.size() < 2) throw std::invalid_argument("PhasePrior: need at least two samples");
        for (const auto& [phi, w] : points) {
            if (!(phi >= -kPi && phi <= kPi)) {
                throw std::invalid_argument("PhasePrior: sample phase outside [-pi, pi]");
            }
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw std::invalid_argument("PhasePrior: weights must be finite and >= 0");
            }
        }
        std::sort(points.begin(), points.end());
        // +pi and -pi are the same point on the circle.
        if (points.back().first - points.front().first >= kTwoPi - 1e-12) points.pop_back();
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].first == points[i - 1].first) {
                throw std::invalid_argument("PhasePrior: duplicate sample phase");
            }
        }
        PhasePrior prior;
        prior.kind_ = Kind::kTabulated;
        prior.points_ = std::move(points);
        const double integral = prior.interpolant_integral();
        if (raw_integral) *raw_integral = integral;
        if (!(integral > 0.0)) throw std::invalid_argument("PhasePrior: weights integrate to zero");
        for (auto& [_, w] : prior.points_) w /= integral;
        return prior;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_uniform() const noexcept { return kind_ == Kind::kUniform; }
    const std::vector<std::pair<double, double>>& samples() const noexcept { return points_; }

    double density(double phi) const {
        if (kind_ == Kind::kUniform) return 1.0 / kTwoPi;
        const double x = wrap_phase(phi);
        auto upper = std::upper_bound(points_.begin(), points_.end(), x,
                                      [](double v, const auto& p) { return v < p.first; });
        std::pair<double, double> lo, hi;
        if (upper == points_.begin()) {
            lo = {points_.back().first - kTwoPi, points_.back().second};
            hi = points_.front();
        } else if (upper == points_.end()) {
            lo = points_.back();
            hi = {points_.front().first + kTwoPi, points_.front().second};
        } else {
            lo = *(upper - 1);
            hi = *upper;
        }
        const double t = (x - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }

    /// Exact integral of the (normalized) interpolant over one period.
    double integral() const { return kind_ == Kind::kUniform ? 1.0 : interpolant_integral(); }

   private:
    double interpolant_integral() const {
        double total = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& a = points_[i];
            const bool last = i + 1 == points_.size();
            const double next_phi = last ? points_.front().first + kTwoPi : points_[i + 1].first;
            const double next_w = last ? points_.front().second : points_[i + 1].second;
            total += 0.5 * (a.second + next_w) * (next_phi - a.first);
        }
        return total;
    }

    Kind kind_ = Kind::kUniform;
    std::vector<std::pair<double, double>> points_;
};

// ---------------------------------------------------------------------------
// Fisher information

struct FisherReport {
    double phi = 0.0;
    double fisher = 0.0;
    /// 1 / fisher; +infinity when fisher == 0.
    double cramer_rao_bound = std::numeric_limits<double>::infinity();
    /// Non-empty when a term diverged.
    std::string diagnostic;
};

namespace detail {
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kZeroSlope = 1e-9;
inline constexpr double kDoubleZeroRatio = 1e-12;
inline constexpr double kFisherFloor = 1e-20;
inline constexpr double kRoundingUlps = 64.0;
inline constexpr double kFisherNormTolerance = 1e-8;
}  // namespace detail

/// F(phi) = sum_xi (dP/dphi)^2 / P from exact spectrum derivatives.
///
/// A term with P < 1e-12 is near a zero of P. Since P >= 0 its local parabola
/// satisfies P'^2 <= 2 P P''; when that holds up to the rounding noise of P
/// and a slope allowance of 1e-9 the term contributes 2 P'' if P <= 1e-12 P'' (a double zero) and
/// min(P'^2 / P, 2 P'') otherwise. A term violating it makes F infinite and
/// fills `diagnostic`. Totals below 1e-20 are reported as 0.
template <class Map>
FisherReport fisher_information(const Map& dist, double phi) {
    FisherReport report;
    report.phi = phi;
    double total = 0.0;
    double fisher = 0.0;
    for (const auto& [label, spectrum] : dist) {
        const TrigSpectrum& s = spectrum;
        const double p = s.evaluate(phi);
        total += p;
        const TrigSpectrum first = spectrum_derivative(s);
        const double dp = first.evaluate(phi);
        if (p < detail::kZeroProbability) {
            const double curvature = std::max(0.0, spectrum_derivative(first).evaluate(phi));
            const double noise = detail::kRoundingUlps * std::numeric_limits<double>::epsilon() *
                                 (std::abs(s.mean()) + s.oscillation_bound());
            const double slope_bound =
                2.0 * curvature * (std::max(p, 0.0) + noise) + detail::kZeroSlope * detail::kZeroSlope;
            if (dp * dp <= slope_bound) {
                if (p <= detail::kDoubleZeroRatio * curvature) {
                    fisher += 2.0 * curvature;
                } else if (p > 0.0) {
                    fisher += std::min(dp * dp / p, 2.0 * curvature);
                }
            } else if (report.diagnostic.empty()) {
                report.diagnostic = "probability vanishes with non-zero slope at phi = " +
                                    std::to_string(phi);
                fisher = std::numeric_limits<double>::infinity();
            }
        } else {
            fisher += dp * dp / p;
        }
    }
    if (std::abs(total - 1.0) > detail::kFisherNormTolerance) {
        throw std::domain_error("fisher_information: distribution is not normalized at phi = " +
                                std::to_string(phi));
    }
    if (fisher < detail::kFisherFloor) fisher = 0.0;
    report.fisher = fisher;
    report.cramer_rao_bound =
        fisher > 0.0 ? 1.0 / fisher : std::numeric_limits<double>::infinity();
    return report;
}

// ---------------------------------------------------------------------------
// Fidelity (Shannon mutual information between outcome and phase)

struct FidelityResult {
    double bits = 0.0;
    std::size_t nodes = 0;
};

inline constexpr std::size_t kFidelityMinNodes = 64;
inline constexpr std::size_t kFidelityMaxNodes = std::size_t{1} << 20;
inline constexpr double kDefaultFidelityTolerance = 1e-8;

/// Writes P(xi | phi) for every outcome xi into `out`.
using ProbabilityFunction = std::function<void(double phi, std::span<double> out)>;

/// H = sum_xi int P(xi|phi) p(phi) log2[P(xi|phi) / Q_xi] dphi with
/// Q_xi = int P(xi|phi') p(phi') dphi'.
///
/// Periodic trapezoidal rule on [-pi, pi); the node count doubles from 64
/// until successive estimates differ by less than `tol`. Each refinement only
/// evaluates the new midpoints, using
///   int P p log2(P/Q) = int P p log2 P - Q log2 Q.
/// 0 log 0 is taken as 0.
inline FidelityResult fidelity(std::size_t outcome_count, const ProbabilityFunction& probabilities,
                               const PhasePrior& prior, double tol = kDefaultFidelityTolerance) {
    if (!(tol > 0.0)) throw std::invalid_argument("fidelity: tol must be positive");
    std::vector<double> mass(outcome_count, 0.0);     // sum P w
    std::vector<double> entropy(outcome_count, 0.0);  // sum P w log2 P
    std::vector<double> p(outcome_count);

    auto accumulate = [&](double phi) {
        const double w = prior.density(phi);
        if (w <= 0.0) return;
        probabilities(phi, p);
        for (std::size_t k = 0; k < outcome_count; ++k) {
            const double pk = p[k];
            if (pk <= 0.0) continue;
            mass[k] += pk * w;
            entropy[k] += pk * w * std::log2(std::max(pk, 1e-300));
        }
    };
    auto estimate = [&](std::size_t n) {
        const double h = kTwoPi / static_cast<double>(n);
        double bits = 0.0;
        for (std::size_t k = 0; k < outcome_count; ++k) {
            const double q = h * mass[k];
            if (q <= 0.0) continue;
            bits += h * entropy[k] - q * std::log2(std::max(q, 1e-300));
        }
        // Mutual information is non-negative; only rounding can push it below 0.
        return std::max(0.0, bits);
    };

    std::size_t n = kFidelityMinNodes;
    for (double phi : periodic_grid(n)) accumulate(phi);
    double previous = estimate(n);
    while (n < kFidelityMaxNodes) {
        const std::size_t next = 2 * n;
        for (std::size_t j = 1; j < next; j += 2) {
            accumulate(-kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(next));
        }
        n = next;
        const double current = estimate(n);
        if (std::abs(current - previous) < tol) return FidelityResult{current, n};
        previous = current;
    }
    throw ConvergenceError("fidelity: quadrature did not converge within " +
                           std::to_string(kFidelityMaxNodes) + " nodes");
}

inline FidelityResult fidelity(const std::vector<TrigSpectrum>& outcomes, const PhasePrior& prior,
                               double tol = kDefaultFidelityTolerance) {
    return fidelity(
        outcomes.size(),
        [&](double phi, std::span<double> out) {
            for (std::size_t k = 0; k < outcomes.size(); ++k) out[k] = outcomes[k].evaluate(phi);
        },
        prior, tol);
}

/// Fidelity of a map from outcome label to probability spectrum.
template <class Map>
    requires requires(const Map& m) { m.begin()->second.evaluate(0.0); }
FidelityResult fidelity(const Map& dist, const PhasePrior& prior,
                        double tol = kDefaultFidelityTolerance) {
    std::vector<TrigSpectrum> outcomes;
    outcomes.reserve(dist.size());
    for (const auto& [_, s] : dist) outcomes.push_back(s);
    return fidelity(outcomes, prior, tol);
}

// ---------------------------------------------------------------------------
// Bayesian posterior

/// Density sampled on the periodic grid -pi + 2 pi j / n.
struct TabulatedDensity {
    std::vector<double> phi;
    std::vector<double> density;

    /// Periodic trapezoidal integral.
    double integral() const {
        double sum = 0.0;
        for (double d : density) sum += d;
        return density.empty() ? 0.0 : sum * kTwoPi / static_cast<double>(density.size());
    }

    PhasePrior as_prior() const {
        std::vector<std::pair<double, double>> points;
        points.reserve(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) points.emplace_back(phi[j], density[j]);
        return PhasePrior::tabulated(std::move(points));
    }
};

inline constexpr std::size_t kMinPosteriorGrid = 16;

/// p(phi | outcome) = P(outcome | phi) p(phi) / int P(outcome | phi') p(phi') dphi'.
template <class Map, class Key>
TabulatedDensity posterior(const Map& dist, const Key& outcome, const PhasePrior& prior,
                           std::size_t grid_size) {
    if (grid_size < kMinPosteriorGrid) {
        throw std::invalid_argument("posterior: grid_size must be at least 16");
    }
    auto it = dist.find(outcome);
    if (it == dist.end()) throw UnreachableOutcome("posterior: outcome is not reachable");
    const TrigSpectrum& likelihood = it->second;

    TabulatedDensity out;
    out.phi = periodic_grid(grid_size);
    out.density.resize(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        out.density[j] = std::max(0.0, likelihood.evaluate(out.phi[j])) * prior.density(out.phi[j]);
    }
    const double marginal = out.integral();
    if (!(marginal > 1e-14)) {
        throw UnreachableOutcome("posterior: outcome has zero marginal probability under the prior");
    }
    for (double& d : out.density) d /= marginal;
    return out;
}

// ---------------------------------------------------------------------------
// Truncated small-loss expansions of the fidelity (uniform prior)

enum class SeriesInput { kFock1, kFock2 };

inline constexpr double kSeriesMaxLoss = 0.3;

/// Fidelity to second order in the loss amplitudes, dropping O(r^4) terms.
inline double small_loss_fidelity_series(SeriesInput input, double r_x, double r_y) {
    if (!(r_x >= 0.0 && r_x <= kSeriesMaxLoss && r_y >= 0.0 && r_y <= kSeriesMaxLoss)) {
        throw std::invalid_argument("small_loss_fidelity_series: loss amplitudes must lie in [0, 0.3]");
    }
    const double ln2 = std::log(2.0);
    const double ln3 = std::log(3.0);
    const double rx2 = r_x * r_x;
    const double ry2 = r_y * r_y;
    switch (input) {
        case SeriesInput::kFock1:
            return (1.0 / ln2 - 1.0) * (1.0 - 0.5 * (rx2 + ry2));
        case SeriesInput::kFock2:
            return (8.0 - 4.0 * ln2 - 3.0 * ln3) / (4.0 * ln2) +
                   (rx2 + ry2) * (3.0 * ln3 / (4.0 * ln2) - 1.0 / ln2) +
                   rx2 * ry2 * ((1.0 + ln2 - ln3) / (2.0 * ln2));
    }
    throw std::invalid_argument("small_loss_fidelity_series: unknown input");
}

}  // namespace mzi
