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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dqhl {

struct SourcePos {
  int line = 1;
  int column = 1;
};

std::string to_string(const SourcePos& pos);

class ParseError : public std::runtime_error {
 public:
  ParseError(const SourcePos& pos, const std::string& msg)
      : std::runtime_error(to_string(pos) + ": " + msg), pos_(pos), message_(msg) {}
  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

enum class Tok {
  Ident, Int, Real, Imag, String,
  Assign,      // :=
  RandAssign,  // :=$
  StarEq,      // *=
  Arrow,       // ->
  Box,         // []
  LBracket, RBracket, LBrace, RBrace, LParen, RParen,
  Comma, Semi, Colon, Bang, Question,
  Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Star, Slash, Caret, Bar, Tensor, DotDot, Dot,
  End,
};

const char* tok_name(Tok t);

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  SourcePos pos;
};

// '#' and '//' start line comments. '⊗' and '@' both lex as Tensor.
std::vector<Token> tokenize(std::string_view source);

// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(Tok k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  bool at_word(std::string_view word, std::size_t ahead = 0) const;
  bool accept(Tok k);
  bool accept_word(std::string_view word);
  const Token& expect(Tok k, const char* what);
  void expect_word(std::string_view word);
  std::string expect_ident(const char* what);
  [[noreturn]] void fail(const std::string& msg) const;
  std::size_t position() const { return i_; }
  void rewind(std::size_t p) { i_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace dqhl
