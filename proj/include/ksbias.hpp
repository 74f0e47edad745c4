// Copyright 2026 The ksbias Authors.
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

#ifndef KSBIAS_KSBIAS_HPP_
#define KSBIAS_KSBIAS_HPP_

#include "ksbias/alpha_ladder.hpp"
#include "ksbias/alternative.hpp"
#include "ksbias/bias_analysis.hpp"
#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/null_distribution.hpp"
#include "ksbias/quadrature.hpp"
#include "ksbias/random.hpp"
#include "ksbias/simulation.hpp"
#include "ksbias/statistic.hpp"

#endif  // KSBIAS_KSBIAS_HPP_
