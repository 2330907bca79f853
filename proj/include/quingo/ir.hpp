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

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "quingo/ast.hpp"
#include "quingo/types.hpp"
#include "quingo/value.hpp"

namespace quingo::ir {

enum class Op { Const, Var, Unary, Binary, Index, Length, MakeTuple, MakeArray };

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

/// Side-effect free expression. Unary ops: - ! itod; binary ops are the
/// source operators. `type` is the result type.
struct Expr {
  Op op = Op::Const;
  Value value;       // Const
  std::string name;  // Var: variable; Unary/Binary: operator
  std::vector<ExprP> args;
  TypePtr type;
};

ExprP cst(Value v, TypePtr t);
ExprP var(std::string name, TypePtr t);
ExprP unary(std::string op, ExprP a, TypePtr t);
ExprP binary(std::string op, ExprP a, ExprP b, TypePtr t);
ExprP index(ExprP a, ExprP i, TypePtr t);
ExprP length(ExprP a);
ExprP make_tuple(std::vector<ExprP> elems, TypePtr t);
ExprP make_array(std::vector<ExprP> elems, TypePtr t);

bool is_const(const ExprP& e);
/// Variables read by `e`.
void collect_vars(const ExprP& e, std::set<std::string>& out);

struct TimingConstraint {
  ExprP timer;
  ast::Cmp cmp = ast::Cmp::Eq;
  ExprP time;
};

struct Timing {
  std::vector<TimingConstraint> constraints;
  std::vector<ExprP> resets;
  bool empty() const { return constraints.empty() && resets.empty(); }
};

enum class InstrKind { Assign, Call, TimerReset, Alloc, Free };

struct Instr {
  InstrKind kind = InstrKind::Assign;

  // Assign: dst[path...] = value. Call: dst (may be empty) = callee(args).
  std::string dst;
  std::vector<ExprP> path;
  ExprP value;

  // Call
  std::string callee;  // qualified operation, or platform op name when opaque
  bool opaque = false;
  std::vector<ExprP> args;
  std::vector<ExprP> controls;
  bool inverted = false;
  Timing timing;

  // Alloc / TimerReset: `vars` are bound to fresh qubits / timers.
  // Alloc / Free / TimerReset: `args` name existing qubits / timers.
  std::vector<std::string> vars;
};

enum class TermKind { Jump, Branch, Return };

struct Terminator {
  TermKind kind = TermKind::Return;
  ExprP cond;   // Branch
  ExprP value;  // Return (null for unit)
  int then_block = -1;
  int else_block = -1;  // Jump uses then_block
};

struct Block {
  std::vector<Instr> instrs;
  Terminator term;
  // Loop header: variables assigned anywhere in the loop.
  bool loop_header = false;
  std::set<std::string> loop_assigned;
  int loop_test = -1;  // block whose branch decides whether the loop exits
  // Residual join point; `params` are the vregs copied in on every edge.
  bool join = false;
  std::vector<std::string> params;
};

struct Proc {
  std::string name;
  std::vector<std::string> params;
  std::map<std::string, TypePtr> vars;
  TypePtr ret;
  std::vector<Block> blocks;
  int entry = 0;
};

struct KernelIR {
  std::map<std::string, Proc> procs;
  std::string entry;

  const Proc& entry_proc() const { return procs.at(entry); }
};

std::string expr_to_string(const ExprP& e);
std::string instr_to_string(const Instr& in);
std::string term_to_string(const Terminator& t);
/// One instruction per line.
std::string dump(const KernelIR& ir);

/// Successor block ids of a terminator.
std::vector<int> successors(const Terminator& t);

/// Per-block live-in variable sets (backward dataflow).
struct Liveness {
  std::vector<std::set<std::string>> live_in;
  std::vector<std::set<std::string>> live_out;
};
Liveness liveness(const Proc& p);
/// Variables live just before instruction `pc` of `block`.
std::set<std::string> live_before(const Proc& p, const Liveness& lv, int block, size_t pc);

void uses(const Instr& in, std::set<std::string>& out);
void defs(const Instr& in, std::set<std::string>& out);

/// Drops unreachable blocks and renumbers the rest in depth-first order.
void prune(Proc& p);

/// Counts qop/measure/reset calls in every proc.
size_t count_quantum_calls(const KernelIR& ir);

}  // namespace quingo::ir
