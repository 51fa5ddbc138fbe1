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
#include <random>

#include <gtest/gtest.h>

#include "mzi/core/phase_grid.hpp"
#include "mzi/core/phase_polynomial.hpp"
#include "mzi/core/trig_spectrum.hpp"

namespace mzi {
namespace {

PhasePolynomial random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::normal_distribution<double> g;
    std::vector<Complex> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    return PhasePolynomial(std::move(c));
}

TEST(PhasePolynomial, ZeroHasEmptyCoefficients) {
    PhasePolynomial z({0.0, 0.0, 0.0});
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    EXPECT_EQ(z.coeffs().size(), 0u);
    EXPECT_EQ(z, PhasePolynomial{});
}

TEST(PhasePolynomial, TrimsNegligibleTrailingCoefficients) {
    PhasePolynomial p({1.0, 2.0, 1e-17});
    EXPECT_EQ(p.degree(), 1);
    // Relative to the largest magnitude.
    EXPECT_EQ(PhasePolynomial({1e-20, 1e-30}).degree(), 1);
    EXPECT_EQ(PhasePolynomial({1e-20, 1e-35}).degree(), 0);
}

TEST(PhasePolynomial, RejectsNonFinite) {
    EXPECT_THROW(PhasePolynomial({Complex{std::nan(""), 0.0}}), std::domain_error);
    EXPECT_THROW(PhasePolynomial({Complex{0.0, std::numeric_limits<double>::infinity()}}),
                 std::domain_error);
}

TEST(PhasePolynomial, EvaluateMatchesDirectSum) {
    const PhasePolynomial p({Complex{1, 2}, Complex{-0.5, 0.25}, Complex{0, 3}});
    for (double phi : {-2.0, 0.0, 0.7, 3.0}) {
        Complex direct{};
        for (std::size_t k = 0; k < 3; ++k) direct += p.coeff(k) * std::polar(1.0, k * phi);
        EXPECT_NEAR(std::abs(p.evaluate(phi) - direct), 0.0, 1e-14);
    }
}

TEST(PhasePolynomial, MonomialAndConstant) {
    const auto m = PhasePolynomial::monomial(Complex{0, 2}, 3);
    EXPECT_EQ(m.degree(), 3);
    EXPECT_EQ(m.coeff(3), (Complex{0, 2}));
    EXPECT_EQ(m.coeff(0), Complex{});
    EXPECT_EQ(PhasePolynomial::one().degree(), 0);
}

TEST(PhasePolynomial, RingPropertiesOnRandomInputs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_poly(rng, 6);
        const auto b = random_poly(rng, 6);
        const auto c = random_poly(rng, 6);
        const double phi = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
        EXPECT_NEAR(std::abs((a * b).evaluate(phi) - a.evaluate(phi) * b.evaluate(phi)), 0.0, 1e-11);
        EXPECT_NEAR(std::abs((a + b).evaluate(phi) - a.evaluate(phi) - b.evaluate(phi)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs((a * (b + c) - (a * b + a * c)).evaluate(phi)), 0.0, 1e-10);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
    }
}

TEST(PhasePolynomial, PowerMatchesRepeatedProduct) {
    const PhasePolynomial a({Complex{0.5, -0.5}, Complex{0.25, 1.0}});
    PhasePolynomial expected = PhasePolynomial::one();
    for (unsigned k = 0; k <= 7; ++k) {
        const auto p = poly_pow(a, k);
        for (double phi : {-1.0, 0.3, 2.5}) {
            EXPECT_NEAR(std::abs(p.evaluate(phi) - expected.evaluate(phi)), 0.0, 1e-12);
        }
        expected = expected * a;
    }
    EXPECT_EQ(poly_pow(a, 0), PhasePolynomial::one());
}

TEST(AbsSquare, MatchesNormOfValue) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_poly(rng, 8);
        const TrigSpectrum s = abs_square(a);
        EXPECT_EQ(s.order(), static_cast<std::size_t>(std::max(a.degree(), 0)));
        for (double phi : {-3.0, -1.1, 0.0, 0.4, 2.9}) {
            const double direct = std::norm(a.evaluate(phi));
            EXPECT_NEAR(s.evaluate(phi), direct, 1e-11 * (1.0 + direct));
        }
    }
}

TEST(AbsSquare, SimpleCases) {
    EXPECT_EQ(abs_square(PhasePolynomial{}), TrigSpectrum{});
    // |1 + z|^2 = 2 + 2 cos(phi)
    const TrigSpectrum s = abs_square(PhasePolynomial({1.0, 1.0}));
    EXPECT_DOUBLE_EQ(s.mean(), 2.0);
    EXPECT_DOUBLE_EQ(s.cos_coeff(1), 2.0);
    EXPECT_DOUBLE_EQ(s.sin_coeff(1), 0.0);
    // |1 + i z|^2 = 2 - 2 sin(phi)
    const TrigSpectrum t = abs_square(PhasePolynomial({Complex{1.0}, Complex{0.0, 1.0}}));
    EXPECT_DOUBLE_EQ(t.sin_coeff(1), -2.0);
}

TEST(TrigSpectrum, PadsAndTrims) {
    const TrigSpectrum s(1.0, {0.5}, {0.0, 0.25, 0.0});
    EXPECT_EQ(s.order(), 2u);
    EXPECT_EQ(s.cos_coeffs().size(), s.sin_coeffs().size());
    EXPECT_DOUBLE_EQ(s.cos_coeff(2), 0.0);
    EXPECT_DOUBLE_EQ(s.sin_coeff(2), 0.25);
    EXPECT_DOUBLE_EQ(s.cos_coeff(0), 0.0);
    EXPECT_DOUBLE_EQ(s.cos_coeff(9), 0.0);
}

TEST(TrigSpectrum, RejectsNonFinite) {
    EXPECT_THROW(TrigSpectrum(std::nan("")), std::domain_error);
    EXPECT_THROW(TrigSpectrum(0.0, {std::numeric_limits<double>::infinity()}), std::domain_error);
}

TEST(TrigSpectrum, LinearOperations) {
    const TrigSpectrum a(1.0, {1.0, 2.0}, {0.5});
    const TrigSpectrum b(-0.5, {0.0, -2.0}, {0.5, 1.0});
    for (double phi : {-2.0, 0.1, 1.7}) {
        EXPECT_NEAR((a + b)(phi), a(phi) + b(phi), 1e-14);
        EXPECT_NEAR((a - b)(phi), a(phi) - b(phi), 1e-14);
        EXPECT_NEAR((3.0 * a)(phi), 3.0 * a(phi), 1e-14);
    }
    TrigSpectrum c = a;
    c += b;
    EXPECT_EQ(c, a + b);
    EXPECT_EQ((a - a), TrigSpectrum{});
}

TEST(TrigSpectrum, OscillationBoundHolds) {
    const TrigSpectrum s(0.2, {0.3, -0.1}, {0.05, 0.4});
    for (double phi : linspace(-kPi, kPi, 101)) {
        EXPECT_LE(std::abs(s(phi) - s.mean()), s.oscillation_bound() + 1e-15);
    }
}

TEST(TrigSpectrum, DerivativeMatchesFiniteDifference) {
    const TrigSpectrum s(0.3, {0.2, -0.4, 0.1}, {0.7, 0.0, -0.3});
    const TrigSpectrum d = spectrum_derivative(s);
    EXPECT_DOUBLE_EQ(d.mean(), 0.0);
    const double h = 1e-5;
    for (double phi : {-2.5, -0.3, 0.0, 1.2, 3.0}) {
        const double fd = (s(phi + h) - s(phi - h)) / (2 * h);
        EXPECT_NEAR(d(phi), fd, 1e-8);
    }
    // cos(2 phi)' = -2 sin(2 phi); sin(phi)' = cos(phi)
    const TrigSpectrum e = spectrum_derivative(TrigSpectrum(0.0, {0.0, 1.0}, {1.0, 0.0}));
    EXPECT_DOUBLE_EQ(e.cos_coeff(1), 1.0);
    EXPECT_DOUBLE_EQ(e.sin_coeff(2), -2.0);
}

TEST(PhaseGrid, PeriodicGrid) {
    const auto g = periodic_grid(8);
    ASSERT_EQ(g.size(), 8u);
    EXPECT_DOUBLE_EQ(g.front(), -kPi);
    EXPECT_NEAR(g[1] - g[0], kTwoPi / 8, 1e-15);
    EXPECT_LT(g.back(), kPi);
    EXPECT_THROW(periodic_grid(0), std::invalid_argument);
}

TEST(PhaseGrid, Linspace) {
    const auto g = linspace(0.0, 1.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g[2], 0.5);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_EQ(linspace(2.0, 9.0, 1), std::vector<double>{2.0});
    EXPECT_THROW(linspace(0.0, 1.0, 0), std::invalid_argument);
}

}  // namespace
}  // namespace mzi
