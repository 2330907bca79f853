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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quingo/error.hpp"
#include "quingo/types.hpp"

namespace quingo::ast {

enum class ExprKind {
  IntLit,
  DoubleLit,
  BoolLit,
  TimeLit,
  Name,
  Unary,
  Binary,
  Call,
  Index,
  Length,
  ArrayLit,
  TupleLit,
  Duration,
};

enum class Cmp { Eq, Gt, Ge };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct TimingConstraint {
  std::string timer;
  Cmp cmp = Cmp::Eq;
  ExprPtr time;
  SourceLoc loc;
};

/// `@{c1 && c2} !{t1, t2}` attached to a call.
struct TimingAnnotation {
  std::vector<TimingConstraint> constraints;
  std::vector<std::string> resets;
  bool has_constraint_block = false;
  bool has_reset_block = false;
};

/// What a Name or Call resolved to; filled by the type checker.
enum class RefKind { Unresolved, Local, Constant, Opaque, Operation };

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  SourceLoc loc;

  int64_t int_value = 0;
  double double_value = 0;
  bool bool_value = false;
  // TimeLit: magnitude in `double_value`, `name` holds the unit.

  // Name: identifier (possibly package-qualified); Unary/Binary: operator
  // spelling; Call: callee; Duration: operation name.
  std::string name;
  std::vector<ExprPtr> args;

  // Call only.
  std::vector<ExprPtr> controls;
  bool has_control = false;
  bool inverted = false;
  std::optional<TimingAnnotation> timing;

  // Annotations written by the type checker.
  TypePtr type;
  RefKind ref = RefKind::Unresolved;
  std::string resolved;  // fully qualified callee / unique local name
};

enum class StmtKind { VarDecl, Assign, If, While, Break, Continue, Return, Using, ExprStmt, Block };

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Declarator {
  std::string name;
  ExprPtr init;
  SourceLoc loc;
  std::string unique;  // set by the type checker
};

struct Param {
  std::string name;
  TypePtr type;
  SourceLoc loc;
  std::string unique;
};

struct Stmt {
  StmtKind kind = StmtKind::Block;
  SourceLoc loc;

  // VarDecl
  TypePtr decl_type;
  std::vector<Declarator> decls;

  // Assign: `target op value`, op is one of = += -= *= /=
  ExprPtr target;
  std::string assign_op;
  ExprPtr value;

  // If / While / Using / Block
  ExprPtr cond;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  bool has_else = false;

  // Return (optional) / ExprStmt
  ExprPtr expr;

  // Using
  std::vector<Param> qubits;
};

struct OpDecl {
  bool opaque = false;
  std::string name;
  std::vector<Param> params;
  TypePtr ret;
  std::vector<StmtPtr> body;
  SourceLoc loc;
};

struct Import {
  std::string path;
  bool wildcard = false;
  SourceLoc loc;
};

struct SourceUnit {
  std::string file;
  std::string package;
  bool explicit_package = false;
  std::vector<Import> imports;
  std::vector<OpDecl> decls;
};

/// Canonical pretty-printer; output reparses to a structurally equal unit.
std::string print_unit(const SourceUnit& unit);
std::string print_expr(const Expr& e);
std::string print_type(const TypePtr& t);

/// Structural equality ignoring locations and checker annotations.
bool equal(const SourceUnit& a, const SourceUnit& b);
bool equal(const Expr& a, const Expr& b);

ExprPtr clone(const Expr& e);

}  // namespace quingo::ast
