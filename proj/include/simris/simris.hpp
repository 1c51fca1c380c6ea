// SPDX-License-Identifier: Apache-2.0
//
// simris: link-level simulator for RIS-assisted mmWave channels
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

#ifndef SIMRIS_SIMRIS_HPP
#define SIMRIS_SIMRIS_HPP

#include "simris/channel.hpp"
#include "simris/config.hpp"
#include "simris/correlation.hpp"
#include "simris/csv.hpp"
#include "simris/errors.hpp"
#include "simris/geometry.hpp"
#include "simris/metrics.hpp"
#include "simris/propagation.hpp"
#include "simris/quadrature.hpp"
#include "simris/ris.hpp"
#include "simris/rng.hpp"
#include "simris/runner.hpp"

#endif // SIMRIS_SIMRIS_HPP
