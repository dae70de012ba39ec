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
#include <string_view>

#include "dqhl/expr.hpp"
#include "dqhl/lexer.hpp"
#include "dqhl/linalg.hpp"
#include "dqhl/syntax.hpp"

namespace dqhl {

// Parses a complete .dqp source: optional "channels" line, then processes.
// Type errors, undeclared names and bad matrices are reported as ParseError.
DistProgram parse_program(std::string_view source);

// A statement sequence in the scope of an existing process (all of its
// declarations are visible). Used by proof scripts and tests.
StmtPtr parse_statement(std::string_view source, const Process& scope);

// Type-checked expression over env.
ExprPtr parse_expr(std::string_view source, const VarEnv& env);

// Token-level entry points shared with the assertion and state languages.
// No declaration or type checking here.
ExprPtr parse_expr_tokens(TokenStream& ts);
// Complex scalar: numbers, i, pi, sqrt(..), exp(..), + - * / and parentheses.
Complex parse_scalar(TokenStream& ts);
// [[a, b], [c, d]]
CMatrix parse_matrix_literal(TokenStream& ts);
// Integer "a", "a/b" or a finite decimal, as an exact rational.
Rational parse_rational(TokenStream& ts);

}  // namespace dqhl
