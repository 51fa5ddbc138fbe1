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

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mzi {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// n equally spaced nodes -pi + 2 pi j / n, j = 0..n-1 (periodic; +pi excluded).
inline std::vector<double> periodic_grid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("periodic_grid: empty grid");
    std::vector<double> nodes(n);
    for (std::size_t j = 0; j < n; ++j) {
        nodes[j] = -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    }
    return nodes;
}

/// count points from start to stop inclusive. count == 1 yields {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) throw std::invalid_argument("linspace: count must be positive");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t j = 0; j < count; ++j) out[j] = start + step * static_cast<double>(j);
    out.back() = stop;
    return out;
}

}  // namespace mzi
