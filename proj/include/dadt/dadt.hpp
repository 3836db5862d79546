/*
 * Copyright 2026 The DADT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header.

#ifndef DADT_DADT_HPP_
#define DADT_DADT_HPP_

#include "dadt/csv.hpp"
#include "dadt/data.hpp"
#include "dadt/error.hpp"
#include "dadt/experiment.hpp"
#include "dadt/knowledge.hpp"
#include "dadt/metrics.hpp"
#include "dadt/stats.hpp"
#include "dadt/synth.hpp"
#include "dadt/tree.hpp"

#endif  // DADT_DADT_HPP_
