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

#include "dqhl/lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace dqhl {

std::string to_string(const SourcePos& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Real: return "number";
    case Tok::Imag: return "imaginary number";
    case Tok::String: return "string";
    case Tok::Assign: return "':='";
    case Tok::RandAssign: return "':=$'";
    case Tok::StarEq: return "'*='";
    case Tok::Arrow: return "'->'";
    case Tok::Box: return "'[]'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::Bar: return "'|'";
    case Tok::Tensor: return "tensor product";
    case Tok::DotDot: return "'..'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  auto push = [&](Tok k, std::size_t len) {
    Token t;
    t.kind = k;
    t.text = std::string(src.substr(i, len));
    t.pos = pos;
    out.push_back(std::move(t));
    advance(len);
  };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || starts("//")) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      bool real = false;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      const std::string text(src.substr(i, j - i));
      bool imag = j < src.size() && src[j] == 'i' &&
                  (j + 1 >= src.size() || !(std::isalnum(static_cast<unsigned char>(src[j + 1])) || src[j + 1] == '_'));
      Token t;
      t.pos = pos;
      t.text = text;
      if (real || imag) {
        t.kind = imag ? Tok::Imag : Tok::Real;
        t.real_value = std::strtod(text.c_str(), nullptr);
      } else {
        t.kind = Tok::Int;
        auto res = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
        if (res.ec != std::errc()) throw ParseError(pos, "integer literal out of range: " + text);
        t.real_value = static_cast<double>(t.int_value);
      }
      out.push_back(std::move(t));
      advance(j - i + (imag ? 1 : 0));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(pos, "unterminated string literal");
      Token t;
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      t.pos = pos;
      out.push_back(std::move(t));
      advance(j - i + 1);
      continue;
    }
    if (starts("\xE2\x8A\x97")) {  // ⊗
      Token t;
      t.kind = Tok::Tensor;
      t.text = "\xE2\x8A\x97";
      t.pos = pos;
      out.push_back(std::move(t));
      advance(3);
      continue;
    }
    if (starts(":=$")) { push(Tok::RandAssign, 3); continue; }
    if (starts(":=")) { push(Tok::Assign, 2); continue; }
    if (starts("*=")) { push(Tok::StarEq, 2); continue; }
    if (starts("->")) { push(Tok::Arrow, 2); continue; }
    if (starts("[]")) { push(Tok::Box, 2); continue; }
    if (starts("!=")) { push(Tok::Ne, 2); continue; }
    if (starts("<=")) { push(Tok::Le, 2); continue; }
    if (starts(">=")) { push(Tok::Ge, 2); continue; }
    if (starts("..")) { push(Tok::DotDot, 2); continue; }
    switch (c) {
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '?': push(Tok::Question, 1); continue;
      case '=': push(Tok::Eq, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '^': push(Tok::Caret, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '@': push(Tok::Tensor, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      default: break;
    }
    throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Tok::End;
  end.pos = pos;
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  const std::size_t k = i_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (i_ < toks_.size() - 1) ++i_;
  return t;
}

bool TokenStream::at_word(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Tok::Ident && t.text == word;
}

bool TokenStream::accept(Tok k) {
  if (!at(k)) return false;
  next();
  return true;
}

bool TokenStream::accept_word(std::string_view word) {
  if (!at_word(word)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok k, const char* what) {
  if (!at(k)) {
    fail(std::string("expected ") + what + " (" + tok_name(k) + "), found " +
         (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"));
  }
  return next();
}

void TokenStream::expect_word(std::string_view word) {
  if (!at_word(word)) {
    fail("expected '" + std::string(word) + "', found " +
         (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"));
  }
  next();
}

std::string TokenStream::expect_ident(const char* what) { return expect(Tok::Ident, what).text; }

void TokenStream::fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

}  // namespace dqhl
