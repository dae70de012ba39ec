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

#include "dqhl/parser.hpp"
#include "dqhl/classical_state.hpp"
#include "generators.hpp"

namespace dqhl::testing {

inline std::string program_path(const std::string& file) { return std::string(DQHL_PROGRAMS_DIR) + "/" + file; }
inline std::string golden_path(const std::string& file) { return std::string(DQHL_GOLDEN_DIR) + "/" + file; }

inline DistProgram load_program(const std::string& file) { return parse_program(read_file(program_path(file))); }

}  // namespace dqhl::testing
