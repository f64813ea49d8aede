// Copyright 2026 The NOTraP Authors
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

/// Umbrella header.
#pragma once

#include "notrap/apps.hpp"
#include "notrap/error.hpp"
#include "notrap/estimators.hpp"
#include "notrap/experiments.hpp"
#include "notrap/extrapolation.hpp"
#include "notrap/io.hpp"
#include "notrap/pauli.hpp"
#include "notrap/resources.hpp"
#include "notrap/sampling.hpp"
#include "notrap/simulator.hpp"
#include "notrap/statevector.hpp"
#include "notrap/version.hpp"
