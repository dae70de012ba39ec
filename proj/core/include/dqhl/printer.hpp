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

#include "dqhl/linalg.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

// Source text that parses back to the same AST.
std::string print_program(const DistProgram& p);
// One-line form of a statement. Named gates and measurements print by name
// when `scope` declares them (or they are built in); otherwise inline.
std::string print_stmt(const StmtPtr& s, const Process* scope = nullptr);

std::string format_scalar(Complex c);
std::string format_matrix(const CMatrix& m);

}  // namespace dqhl
