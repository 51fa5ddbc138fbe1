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

#include <gtest/gtest.h>

#include "mzi/states.hpp"

namespace mzi {
namespace {

using Occ = FockOccupation<4>;

TEST(PureState, Builders) {
    const auto f = fock_state<4>(3);
    ASSERT_EQ(f.terms().size(), 1u);
    EXPECT_EQ(f.terms()[0].occupation, (Occ{3, 0, 0, 0}));
    EXPECT_EQ(f.max_photons(), 3);

    const auto n = noon_state<4>(2);
    ASSERT_EQ(n.terms().size(), 2u);
    EXPECT_EQ(n.terms()[0].occupation, (Occ{2, 0, 0, 0}));
    EXPECT_EQ(n.terms()[1].occupation, (Occ{0, 2, 0, 0}));
    EXPECT_NEAR(n.terms()[0].amplitude.real(), 1.0 / std::sqrt(2.0), 1e-16);

    EXPECT_EQ(vacuum_state<4>().max_photons(), 0);
    EXPECT_EQ(fock_state<2>(1, 2).terms()[0].occupation, (FockOccupation<2>{1, 2}));
}

TEST(PureState, Validation) {
    EXPECT_THROW(PureState<4>({}), std::invalid_argument);
    EXPECT_THROW(PureState<4>({{Complex{0.5}, Occ{1, 0, 0, 0}}}), std::invalid_argument);
    EXPECT_THROW(PureState<4>({{Complex{1.0}, Occ{0, 0, 1, 0}}}), std::invalid_argument);
    EXPECT_THROW(PureState<4>({{Complex{1.0}, Occ{-1, 0, 0, 0}}}), std::invalid_argument);
    EXPECT_THROW(PureState<4>({{Complex{std::nan("")}, Occ{1, 0, 0, 0}}}), std::invalid_argument);
    EXPECT_THROW(fock_state<4>(kMaxPhotons + 1), std::invalid_argument);
    EXPECT_NO_THROW(fock_state<4>(kMaxPhotons));
    EXPECT_THROW(noon_state<4>(0), std::invalid_argument);
}

TEST(Preparation, Validation) {
    const auto vac = vacuum_state<4>();
    const auto one = fock_state<4>(1);
    EXPECT_NO_THROW(Preparation<4>({{0.25, vac}, {0.75, one}}));
    EXPECT_THROW(Preparation<4>({{0.25, vac}, {0.7, one}}), std::invalid_argument);
    EXPECT_THROW(Preparation<4>({{-0.25, vac}, {1.25, one}}), std::invalid_argument);
    EXPECT_THROW(Preparation<4>({}), std::invalid_argument);
    const auto d = Preparation<4>::deterministic(one);
    ASSERT_EQ(d.components().size(), 1u);
    EXPECT_EQ(d.components()[0].probability, 1.0);
    EXPECT_EQ(d.components()[0].state, one);
}

}  // namespace
}  // namespace mzi
