// Copyright 2026 The Quingo Toolchain Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quingo/error.hpp"

namespace quingo {

enum class Tok {
  End,
  Ident,
  IntLit,
  DoubleLit,
  TimeLit,
  // keywords
  KwPackage,
  KwImport,
  KwOpaque,
  KwOperation,
  KwInt,
  KwBool,
  KwDouble,
  KwUnit,
  KwQubit,
  KwTime,
  KwTimer,
  KwIf,
  KwElse,
  KwWhile,
  KwBreak,
  KwContinue,
  KwReturn,
  KwUsing,
  KwTrue,
  KwFalse,
  KwControl,
  KwInvert,
  KwDuration,
  // punctuation
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Dot,
  At,
  Arrow,
  // operators
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  Assign,
  PlusAssign,
  MinusAssign,
  StarAssign,
  SlashAssign,
  EqEq,
  NotEq,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  AndAnd,
  OrOr,
  Bang,
};

std::string_view tok_name(Tok t);

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

/// Splits Quingo source into tokens. Comments and whitespace are dropped; a
/// number immediately followed by a unit (ns, us, ms, s) is one TimeLit.
/// The final token is always Tok::End.
std::vector<Token> tokenize(std::string_view source, const std::string& file = {});

}  // namespace quingo
