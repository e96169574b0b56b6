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

#ifndef FLEXSECTOR_FLEXSECTOR_HPP
#define FLEXSECTOR_FLEXSECTOR_HPP

#include "flexsector/allocate.hpp"
#include "flexsector/analysis.hpp"
#include "flexsector/angular.hpp"
#include "flexsector/channel.hpp"
#include "flexsector/errors.hpp"
#include "flexsector/planner.hpp"
#include "flexsector/rate.hpp"
#include "flexsector/scenario.hpp"
#include "flexsector/sweep.hpp"

#endif  // FLEXSECTOR_FLEXSECTOR_HPP
