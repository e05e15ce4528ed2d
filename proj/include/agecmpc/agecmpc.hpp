// Copyright 2026 The agecmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef AGECMPC_AGECMPC_HPP
#define AGECMPC_AGECMPC_HPP

#include "agecmpc/coding.hpp"
#include "agecmpc/costmodel.hpp"
#include "agecmpc/errors.hpp"
#include "agecmpc/field.hpp"
#include "agecmpc/oracle.hpp"
#include "agecmpc/power_set.hpp"
#include "agecmpc/powersets.hpp"
#include "agecmpc/protocol.hpp"
#include "agecmpc/rng.hpp"
#include "agecmpc/workercount.hpp"

#endif  // AGECMPC_AGECMPC_HPP
