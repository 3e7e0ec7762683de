// Copyright 2026 The qacp Authors
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

#include <string>

#include "qacp/lts.hpp"
#include "qacp/semantics.hpp"

namespace qacp {

/// Aldebaran format. Terminated nodes get a "tick" edge to one extra sink.
std::string to_aut(const Lts& lts);
std::string to_dot(const Lts& lts);
/// JSON trace of a configuration graph; states are emitted as row-major
/// [re, im] pairs when `dump_states` is set.
std::string to_json(const ConfigGraph& graph, bool dump_states);

}  // namespace qacp
