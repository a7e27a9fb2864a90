// Copyright 2026 The cosmopair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cosmopair/background.hpp"
#include "cosmopair/circuit.hpp"
#include "cosmopair/encoding.hpp"
#include "cosmopair/noise.hpp"
#include "cosmopair/pauli.hpp"
#include "cosmopair/rng.hpp"
#include "cosmopair/schedule.hpp"
#include "cosmopair/statevector.hpp"
#include "cosmopair/subspace_engine.hpp"
#include "cosmopair/verify.hpp"

namespace cosmopair {
inline constexpr const char* kVersion = "0.1.0";
}
