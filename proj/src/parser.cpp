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

#include "quingo/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>

namespace quingo {

using namespace ast;

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::string file) : toks_(toks), file_(std::move(file)) {}

  SourceUnit unit(const std::string& default_package) {
    SourceUnit u;
    u.file = file_;
    if (peek().kind == Tok::KwPackage) {
      next();
      u.package = dotted_name();
      u.explicit_package = true;
      expect(Tok::Semi, "after package name");
    } else {
      u.package = default_package;
    }
    while (peek().kind == Tok::KwImport) {
      Import imp;
      imp.loc = loc();
      next();
      imp.path = ident("in import path");
      while (accept(Tok::Dot)) {
        if (accept(Tok::Star)) {
          imp.wildcard = true;
          break;
        }
        imp.path += "." + ident("in import path");
      }
      accept(Tok::Semi);
      u.imports.push_back(std::move(imp));
    }
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::KwImport)
        fail("imports must precede declarations");
      u.decls.push_back(decl());
    }
    return u;
  }

 private:
  // ---- token helpers ----
  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  SourceLoc loc() const { return {file_, peek().line, peek().col}; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ParseError, msg, loc());
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  const Token& expect(Tok k, const std::string& ctx) {
    if (peek().kind != k)
      fail("expected " + std::string(tok_name(k)) + " " + ctx + ", found " + found());
    return next();
  }
  std::string ident(const std::string& ctx) { return expect(Tok::Ident, ctx).text; }

  std::string dotted_name() {
    std::string n = ident("in name");
    while (accept(Tok::Dot)) n += "." + ident("in name");
    return n;
  }

  // ---- types ----
  bool at_type_start() const {
    switch (peek().kind) {
      case Tok::KwInt:
      case Tok::KwBool:
      case Tok::KwDouble:
      case Tok::KwUnit:
      case Tok::KwQubit:
      case Tok::KwTime:
      case Tok::KwTimer:
        return true;
      default:
        return false;
    }
  }

  TypePtr type() {
    TypePtr t;
    switch (peek().kind) {
      case Tok::KwInt: next(); t = types::integer(); break;
      case Tok::KwBool: next(); t = types::boolean(); break;
      case Tok::KwDouble: next(); t = types::real(); break;
      case Tok::KwUnit: next(); t = types::unit(); break;
      case Tok::KwQubit: next(); t = types::qubit(); break;
      case Tok::KwTime: next(); t = types::time(); break;
      case Tok::KwTimer: next(); t = types::timer(); break;
      case Tok::LParen: {
        next();
        std::vector<TypePtr> elems;
        elems.push_back(type());
        while (accept(Tok::Comma)) elems.push_back(type());
        expect(Tok::RParen, "closing tuple type");
        if (elems.size() == 1) {
          t = elems[0];
        } else {
          t = types::tuple(std::move(elems));
        }
        break;
      }
      default:
        fail("expected a type, found " + found());
    }
    while (peek().kind == Tok::LBracket && peek(1).kind == Tok::RBracket) {
      next();
      next();
      t = types::array(t);
    }
    return t;
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    expect(Tok::LParen, "before parameter list");
    if (!accept(Tok::RParen)) {
      do {
        Param p;
        p.loc = loc();
        p.name = ident("as parameter name");
        expect(Tok::Colon, "after parameter name");
        p.type = type();
        ps.push_back(std::move(p));
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "after parameters");
    }
    return ps;
  }

  // ---- declarations ----
  OpDecl decl() {
    OpDecl d;
    d.loc = loc();
    if (accept(Tok::KwOpaque)) {
      d.opaque = true;
    } else if (!accept(Tok::KwOperation)) {
      fail("expected 'operation' or 'opaque' declaration, found " + found());
    }
    d.name = ident("as operation name");
    d.params = params();
    if (!accept(Tok::Colon)) fail("missing return type for operation '" + d.name + "'");
    d.ret = type();
    if (d.opaque) {
      expect(Tok::Semi, "after opaque declaration");
    } else {
      d.body = block();
    }
    return d;
  }

  // ---- statements ----
  std::vector<StmtPtr> block() {
    expect(Tok::LBrace, "to open block");
    std::vector<StmtPtr> out;
    while (!accept(Tok::RBrace)) {
      if (peek().kind == Tok::End) fail("unterminated block");
      out.push_back(stmt());
    }
    return out;
  }

  std::vector<StmtPtr> body() {
    if (peek().kind == Tok::LBrace) return block();
    std::vector<StmtPtr> out;
    out.push_back(stmt());
    return out;
  }

  StmtPtr make(StmtKind k) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->loc = loc();
    return s;
  }

  StmtPtr stmt() {
    switch (peek().kind) {
      case Tok::LBrace: {
        auto s = make(StmtKind::Block);
        s->body = block();
        return s;
      }
      case Tok::KwIf: {
        auto s = make(StmtKind::If);
        next();
        expect(Tok::LParen, "after 'if'");
        s->cond = expr();
        expect(Tok::RParen, "after condition");
        s->body = body();
        if (accept(Tok::KwElse)) {
          s->has_else = true;
          s->else_body = body();
        }
        return s;
      }
      case Tok::KwWhile: {
        auto s = make(StmtKind::While);
        next();
        expect(Tok::LParen, "after 'while'");
        s->cond = expr();
        expect(Tok::RParen, "after condition");
        s->body = body();
        return s;
      }
      case Tok::KwBreak:
      case Tok::KwContinue: {
        auto s = make(peek().kind == Tok::KwBreak ? StmtKind::Break : StmtKind::Continue);
        next();
        expect(Tok::Semi, "after jump statement");
        return s;
      }
      case Tok::KwReturn: {
        auto s = make(StmtKind::Return);
        next();
        if (!accept(Tok::Semi)) {
          s->expr = expr();
          expect(Tok::Semi, "after return value");
        }
        return s;
      }
      case Tok::KwUsing: {
        auto s = make(StmtKind::Using);
        next();
        s->qubits = params();
        s->body = block();
        return s;
      }
      default:
        break;
    }
    if (at_type_start()) return var_decl();
    if (peek().kind == Tok::LParen) {
      // A tuple-typed declaration or an expression statement.
      size_t save = pos_;
      try {
        return var_decl();
      } catch (const Error&) {
        pos_ = save;
      }
    }
    auto s = make(StmtKind::ExprStmt);
    ExprPtr e = expr();
    std::string op;
    switch (peek().kind) {
      case Tok::Assign: op = "="; break;
      case Tok::PlusAssign: op = "+="; break;
      case Tok::MinusAssign: op = "-="; break;
      case Tok::StarAssign: op = "*="; break;
      case Tok::SlashAssign: op = "/="; break;
      default: break;
    }
    if (!op.empty()) {
      if (e->kind != ExprKind::Name && e->kind != ExprKind::Index)
        throw Error(Errc::ParseError, "left side of assignment is not assignable", e->loc);
      next();
      s->kind = StmtKind::Assign;
      s->target = std::move(e);
      s->assign_op = op;
      s->value = expr();
    } else {
      if (e->kind != ExprKind::Call)
        throw Error(Errc::ParseError, "expression statement must be a call", e->loc);
      s->expr = std::move(e);
    }
    expect(Tok::Semi, "after statement");
    return s;
  }

  StmtPtr var_decl() {
    auto s = make(StmtKind::VarDecl);
    s->decl_type = type();
    do {
      Declarator d;
      d.loc = loc();
      d.name = ident("as variable name");
      if (accept(Tok::Assign)) d.init = expr();
      s->decls.push_back(std::move(d));
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "after declaration");
    return s;
  }

  // ---- expressions ----
  ExprPtr node(ExprKind k, SourceLoc l) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->loc = std::move(l);
    return e;
  }

  ExprPtr binary(std::string op, ExprPtr a, ExprPtr b, SourceLoc l) {
    auto e = node(ExprKind::Binary, std::move(l));
    e->name = std::move(op);
    e->args.push_back(std::move(a));
    e->args.push_back(std::move(b));
    return e;
  }

  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr l = and_expr();
    while (peek().kind == Tok::OrOr) {
      SourceLoc at = loc();
      next();
      l = binary("||", std::move(l), and_expr(), at);
    }
    return l;
  }
  ExprPtr and_expr() {
    ExprPtr l = eq_expr();
    while (peek().kind == Tok::AndAnd) {
      SourceLoc at = loc();
      next();
      l = binary("&&", std::move(l), eq_expr(), at);
    }
    return l;
  }
  ExprPtr eq_expr() {
    ExprPtr l = rel_expr();
    while (peek().kind == Tok::EqEq || peek().kind == Tok::NotEq) {
      SourceLoc at = loc();
      std::string op = next().text;
      l = binary(op, std::move(l), rel_expr(), at);
    }
    return l;
  }
  ExprPtr rel_expr() {
    ExprPtr l = add_expr();
    for (;;) {
      Tok k = peek().kind;
      if (k != Tok::Less && k != Tok::LessEq && k != Tok::Greater && k != Tok::GreaterEq) break;
      SourceLoc at = loc();
      std::string op = next().text;
      l = binary(op, std::move(l), add_expr(), at);
    }
    return l;
  }
  ExprPtr add_expr() {
    ExprPtr l = mul_expr();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      SourceLoc at = loc();
      std::string op = next().text;
      l = binary(op, std::move(l), mul_expr(), at);
    }
    return l;
  }
  ExprPtr mul_expr() {
    ExprPtr l = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash || peek().kind == Tok::Percent) {
      SourceLoc at = loc();
      std::string op = next().text;
      l = binary(op, std::move(l), unary(), at);
    }
    return l;
  }
  ExprPtr unary() {
    if (peek().kind == Tok::Minus || peek().kind == Tok::Bang) {
      auto e = node(ExprKind::Unary, loc());
      e->name = next().text;
      e->args.push_back(unary());
      return e;
    }
    return postfix(primary());
  }

  ExprPtr postfix(ExprPtr e) {
    for (;;) {
      if (peek().kind == Tok::LBracket) {
        auto ix = node(ExprKind::Index, loc());
        next();
        ix->args.push_back(std::move(e));
        ix->args.push_back(expr());
        expect(Tok::RBracket, "after index");
        e = std::move(ix);
      } else if (peek().kind == Tok::Dot) {
        SourceLoc at = loc();
        next();
        std::string member = ident("after '.'");
        if (member != "length")
          throw Error(Errc::ParseError, "unknown member '" + member + "'", at);
        auto len = node(ExprKind::Length, at);
        len->args.push_back(std::move(e));
        e = std::move(len);
      } else {
        return e;
      }
    }
  }

  // Qualified name `a.b.c`; stops before `.length` so member access works.
  std::string qualified_name() {
    std::string n = next().text;
    while (peek().kind == Tok::Dot && peek(1).kind == Tok::Ident && peek(1).text != "length") {
      next();
      n += "." + next().text;
    }
    return n;
  }

  ExprPtr call_rest(ExprPtr call) {
    expect(Tok::LParen, "before call arguments");
    if (!accept(Tok::RParen)) {
      do call->args.push_back(expr());
      while (accept(Tok::Comma));
      expect(Tok::RParen, "after call arguments");
    }
    if (peek().kind == Tok::At || (peek().kind == Tok::Bang && peek(1).kind == Tok::LBrace)) {
      call->timing = timing();
    }
    return call;
  }

  TimingAnnotation timing() {
    TimingAnnotation t;
    if (accept(Tok::At)) {
      t.has_constraint_block = true;
      expect(Tok::LBrace, "after '@'");
      do {
        TimingConstraint c;
        c.loc = loc();
        c.timer = ident("as timer in constraint");
        switch (peek().kind) {
          case Tok::EqEq: c.cmp = Cmp::Eq; break;
          case Tok::Greater: c.cmp = Cmp::Gt; break;
          case Tok::GreaterEq: c.cmp = Cmp::Ge; break;
          default:
            fail("timing comparator must be '==', '>' or '>=', found " + found());
        }
        next();
        c.time = add_expr();
        t.constraints.push_back(std::move(c));
      } while (accept(Tok::AndAnd));
      expect(Tok::RBrace, "closing timing constraints");
    }
    if (peek().kind == Tok::Bang && peek(1).kind == Tok::LBrace) {
      next();
      next();
      t.has_reset_block = true;
      do t.resets.push_back(ident("as timer to reset"));
      while (accept(Tok::Comma));
      expect(Tok::RBrace, "closing timer resets");
    }
    return t;
  }

  ExprPtr primary() {
    SourceLoc at = loc();
    const Token& t = peek();
    switch (t.kind) {
      case Tok::IntLit: {
        auto e = node(ExprKind::IntLit, at);
        auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e->int_value);
        if (r.ec != std::errc{} || e->int_value > INT32_MAX)
          fail("integer literal '" + t.text + "' out of range");
        next();
        return e;
      }
      case Tok::DoubleLit: {
        auto e = node(ExprKind::DoubleLit, at);
        e->double_value = std::strtod(t.text.c_str(), nullptr);
        next();
        return e;
      }
      case Tok::TimeLit: {
        auto e = node(ExprKind::TimeLit, at);
        size_t i = 0;
        while (i < t.text.size() && (std::isdigit(static_cast<unsigned char>(t.text[i])) || t.text[i] == '.')) ++i;
        e->double_value = std::strtod(t.text.substr(0, i).c_str(), nullptr);
        e->name = t.text.substr(i);
        next();
        return e;
      }
      case Tok::KwTrue:
      case Tok::KwFalse: {
        auto e = node(ExprKind::BoolLit, at);
        e->bool_value = t.kind == Tok::KwTrue;
        next();
        return e;
      }
      case Tok::LBrace: {
        auto e = node(ExprKind::ArrayLit, at);
        next();
        if (!accept(Tok::RBrace)) {
          do e->args.push_back(expr());
          while (accept(Tok::Comma));
          expect(Tok::RBrace, "closing array literal");
        }
        return e;
      }
      case Tok::LParen: {
        next();
        ExprPtr first = expr();
        if (accept(Tok::RParen)) return first;
        auto e = node(ExprKind::TupleLit, at);
        e->args.push_back(std::move(first));
        while (accept(Tok::Comma)) e->args.push_back(expr());
        expect(Tok::RParen, "closing tuple");
        return e;
      }
      case Tok::KwDuration: {
        auto e = node(ExprKind::Duration, at);
        next();
        expect(Tok::LParen, "after 'duration'");
        e->name = dotted_name();
        expect(Tok::RParen, "after operation name");
        return e;
      }
      case Tok::KwControl: {
        next();
        expect(Tok::LParen, "after 'control'");
        std::vector<ExprPtr> ctrls;
        do ctrls.push_back(expr());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "after control qubits");
        ExprPtr call = primary();
        if (call->kind != ExprKind::Call)
          throw Error(Errc::ParseError, "'control' must be applied to a call", at);
        for (auto& c : ctrls) call->controls.push_back(std::move(c));
        call->has_control = true;
        call->loc = at;
        return call;
      }
      case Tok::KwInvert: {
        next();
        ExprPtr call = primary();
        if (call->kind != ExprKind::Call)
          throw Error(Errc::ParseError, "'invert' must be applied to a call", at);
        call->inverted = !call->inverted;
        call->loc = at;
        return call;
      }
      case Tok::Ident: {
        std::string n = qualified_name();
        if (peek().kind == Tok::LParen) {
          auto e = node(ExprKind::Call, at);
          e->name = std::move(n);
          return call_rest(std::move(e));
        }
        auto e = node(ExprKind::Name, at);
        e->name = std::move(n);
        return e;
      }
      default:
        fail("expected an expression, found " + found());
    }
  }

  const std::vector<Token>& toks_;
  std::string file_;
  size_t pos_ = 0;
};

}  // namespace

SourceUnit parse(const std::vector<Token>& tokens, const std::string& file,
                 const std::string& default_package) {
  std::string pkg = default_package;
  if (pkg.empty() && !file.empty()) pkg = std::filesystem::path(file).stem().string();
  if (pkg.empty()) pkg = "main";
  Parser p(tokens, file);
  return p.unit(pkg);
}

SourceUnit parse_source(std::string_view source, const std::string& file,
                        const std::string& default_package) {
  return parse(tokenize(source, file), file, default_package);
}

}  // namespace quingo
