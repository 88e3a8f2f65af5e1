// SPDX-License-Identifier: Apache-2.0
//
// nearfar: NOMA user clustering for near-field / far-field coexistence
// Copyright (C) 2026 The nearfar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NEARFAR_HPP
#define NEARFAR_HPP

#include "baselines.hpp"
#include "beamforming.hpp"
#include "channel.hpp"
#include "clustering.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "metrics.hpp"
#include "numerics.hpp"
#include "power.hpp"
#include "random.hpp"
#include "rates.hpp"
#include "structure.hpp"
#include "topology.hpp"

#endif
