// Copyright 2026 The colladapt Authors
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

// Brute-force reference for deployment selection, written as a direct scan of
// the selection procedure. It shares no code with selection.cpp and is used by
// the `oracle` CLI subcommand and the test suites as an independent check.

#include <cstddef>
#include <optional>

#include "colladapt/refinement.hpp"
#include "colladapt/selection.hpp"

namespace colladapt::oracle {

// Index of the chosen candidate, or nullopt when every candidate scores -1.
std::optional<std::size_t> brute_force_select(const CandidateSet& candidates, const ContextSnapshot& context,
                                              const Policy& policy, int e_min);

}  // namespace colladapt::oracle
