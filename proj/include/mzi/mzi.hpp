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

#include "mzi/core/phase_grid.hpp"
#include "mzi/core/phase_polynomial.hpp"
#include "mzi/core/trig_spectrum.hpp"
#include "mzi/engine.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/metrics.hpp"
#include "mzi/pipeline.hpp"
#include "mzi/states.hpp"
