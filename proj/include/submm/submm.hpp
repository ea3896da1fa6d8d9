// Copyright 2026 The submm Authors
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

#ifndef SUBMM_SUBMM_HPP_
#define SUBMM_SUBMM_HPP_

#include "submm/core.hpp"
#include "submm/functions.hpp"
#include "submm/semigradient.hpp"
#include "submm/linopt.hpp"
#include "submm/brute_force.hpp"
#include "submm/mmin.hpp"
#include "submm/mmax.hpp"
#include "submm/oracle.hpp"
#include "submm/harness.hpp"

#endif  // SUBMM_SUBMM_HPP_
