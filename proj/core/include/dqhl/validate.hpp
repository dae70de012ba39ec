// Copyright 2026 The dqhl Authors
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

#pragma once

#include <string>
#include <vector>

#include "dqhl/syntax.hpp"

namespace dqhl {

enum class DiagKind { Disjointness, PointToPoint, ChannelMismatch, QubitDimension };

struct Diagnostic {
  DiagKind kind;
  std::string message;
};

const char* diag_kind_name(DiagKind k);

// Well-formedness of a distributed program. Empty result means valid.
std::vector<Diagnostic> validate(const DistProgram& p);

}  // namespace dqhl
