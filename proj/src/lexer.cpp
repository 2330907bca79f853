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

#include "quingo/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace quingo {

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::DoubleLit: return "double literal";
    case Tok::TimeLit: return "time literal";
    case Tok::KwPackage: return "'package'";
    case Tok::KwImport: return "'import'";
    case Tok::KwOpaque: return "'opaque'";
    case Tok::KwOperation: return "'operation'";
    case Tok::KwInt: return "'int'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwDouble: return "'double'";
    case Tok::KwUnit: return "'unit'";
    case Tok::KwQubit: return "'qubit'";
    case Tok::KwTime: return "'time'";
    case Tok::KwTimer: return "'timer'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwBreak: return "'break'";
    case Tok::KwContinue: return "'continue'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwUsing: return "'using'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwControl: return "'control'";
    case Tok::KwInvert: return "'invert'";
    case Tok::KwDuration: return "'duration'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::At: return "'@'";
    case Tok::Arrow: return "'->'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Assign: return "'='";
    case Tok::PlusAssign: return "'+='";
    case Tok::MinusAssign: return "'-='";
    case Tok::StarAssign: return "'*='";
    case Tok::SlashAssign: return "'/='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEq: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> kw = {
      {"package", Tok::KwPackage},   {"import", Tok::KwImport},     {"opaque", Tok::KwOpaque},
      {"operation", Tok::KwOperation}, {"int", Tok::KwInt},         {"bool", Tok::KwBool},
      {"double", Tok::KwDouble},     {"unit", Tok::KwUnit},         {"qubit", Tok::KwQubit},
      {"time", Tok::KwTime},         {"timer", Tok::KwTimer},       {"if", Tok::KwIf},
      {"else", Tok::KwElse},         {"while", Tok::KwWhile},       {"break", Tok::KwBreak},
      {"continue", Tok::KwContinue}, {"return", Tok::KwReturn},     {"using", Tok::KwUsing},
      {"true", Tok::KwTrue},         {"false", Tok::KwFalse},       {"control", Tok::KwControl},
      {"invert", Tok::KwInvert},     {"duration", Tok::KwDuration},
  };
  return kw;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{Tok::End, "", line_, col_});
    return out;
  }

 private:
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg, int line, int col) {
    throw Error(Errc::LexError, msg, SourceLoc{file_, line, col});
  }

  void skip_trivia() {
    for (;;) {
      if (pos_ >= src_.size()) return;
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') bump();
      } else if (c == '/' && peek(1) == '*') {
        int line = line_, col = col_;
        bump();
        bump();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (pos_ >= src_.size()) fail("unterminated block comment", line, col);
          bump();
        }
        bump();
        bump();
      } else {
        return;
      }
    }
  }

  Token make(Tok k, size_t start, int line, int col) {
    return Token{k, std::string(src_.substr(start, pos_ - start)), line, col};
  }

  Token next() {
    const int line = line_, col = col_;
    const size_t start = pos_;
    char c = peek();
    if (is_ident_start(c)) {
      while (is_ident_char(peek())) bump();
      auto word = src_.substr(start, pos_ - start);
      auto it = keywords().find(word);
      return make(it == keywords().end() ? Tok::Ident : it->second, start, line, col);
    }
    if (is_digit(c)) return number(start, line, col);

    auto two = [&](char second) { return peek(1) == second; };
    auto single = [&](Tok k) {
      bump();
      return make(k, start, line, col);
    };
    auto pair = [&](Tok k) {
      bump();
      bump();
      return make(k, start, line, col);
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case ':': return single(Tok::Colon);
      case '.': return single(Tok::Dot);
      case '@': return single(Tok::At);
      case '%': return single(Tok::Percent);
      case '+': return two('=') ? pair(Tok::PlusAssign) : single(Tok::Plus);
      case '-':
        if (two('>')) return pair(Tok::Arrow);
        return two('=') ? pair(Tok::MinusAssign) : single(Tok::Minus);
      case '*': return two('=') ? pair(Tok::StarAssign) : single(Tok::Star);
      case '/': return two('=') ? pair(Tok::SlashAssign) : single(Tok::Slash);
      case '=': return two('=') ? pair(Tok::EqEq) : single(Tok::Assign);
      case '!': return two('=') ? pair(Tok::NotEq) : single(Tok::Bang);
      case '<': return two('=') ? pair(Tok::LessEq) : single(Tok::Less);
      case '>': return two('=') ? pair(Tok::GreaterEq) : single(Tok::Greater);
      case '&':
        if (two('&')) return pair(Tok::AndAnd);
        break;
      case '|':
        if (two('|')) return pair(Tok::OrOr);
        break;
      default: break;
    }
    fail(std::string("illegal character '") + c + "'", line, col);
  }

  Token number(size_t start, int line, int col) {
    bool is_double = false;
    while (is_digit(peek())) bump();
    if (peek() == '.' && is_digit(peek(1))) {
      is_double = true;
      bump();
      while (is_digit(peek())) bump();
    }
    if (is_ident_start(peek())) {
      size_t unit_start = pos_;
      while (is_ident_char(peek())) bump();
      auto unit = src_.substr(unit_start, pos_ - unit_start);
      if (unit == "ns" || unit == "us" || unit == "ms" || unit == "s") {
        return make(Tok::TimeLit, start, line, col);
      }
      fail("malformed literal '" + std::string(src_.substr(start, pos_ - start)) +
               "': unknown time unit '" + std::string(unit) + "'",
           line, col);
    }
    return make(is_double ? Tok::DoubleLit : Tok::IntLit, start, line, col);
  }

  std::string_view src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace quingo
