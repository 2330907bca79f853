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

#include "quingo/lower.hpp"

#include <cmath>

namespace quingo {

using namespace ir;
using ast::ExprKind;
using ast::StmtKind;

int64_t time_literal_ns(double magnitude, const std::string& unit) {
  return std::llround(magnitude * unit_scale_ns(unit));
}

namespace {

class Lowerer {
 public:
  Lowerer(const TypedProgram& prog, const PlatformConfig& cfg, const OpInfo& info, Proc& p)
      : prog_(prog), cfg_(cfg), info_(info), p_(p) {}

  void run() {
    const ast::OpDecl& d = *info_.decl;
    p_.name = info_.qualified;
    p_.ret = info_.ret;
    p_.vars = info_.locals;
    for (const auto& prm : d.params) p_.params.push_back(prm.unique);
    p_.entry = new_block();
    cur_ = p_.entry;
    usings_.clear();
    stmts(d.body);
    // Falling off the end of a unit operation.
    finish(Terminator{TermKind::Return, nullptr, nullptr, -1, -1});
    prune(p_);
  }

 private:
  int new_block() {
    p_.blocks.emplace_back();
    return static_cast<int>(p_.blocks.size()) - 1;
  }
  void emit(Instr in) { p_.blocks[cur_].instrs.push_back(std::move(in)); }
  // Terminates the current block and continues in a fresh, unreachable one.
  void finish(Terminator t) {
    p_.blocks[cur_].term = std::move(t);
    cur_ = new_block();
  }
  void jump_to(int target) {
    p_.blocks[cur_].term = Terminator{TermKind::Jump, nullptr, nullptr, target, -1};
  }

  std::string temp(const TypePtr& t) {
    std::string n = "$t" + std::to_string(temps_++);
    p_.vars[n] = t;
    return n;
  }

  // ---- statements ----
  void stmts(const std::vector<ast::StmtPtr>& body) {
    for (const auto& s : body) stmt(*s);
  }

  void free_usings(size_t keep) {
    for (size_t i = usings_.size(); i-- > keep;) {
      Instr f;
      f.kind = InstrKind::Free;
      for (const auto& q : usings_[i]) f.args.push_back(var(q, types::qubit()));
      emit(std::move(f));
    }
  }

  void stmt(const ast::Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        for (const auto& d : s.decls) {
          if (s.decl_type->kind == TypeKind::Timer) {
            Instr in;
            in.kind = InstrKind::TimerReset;
            in.vars.push_back(d.unique);
            emit(std::move(in));
            continue;
          }
          ExprP v = d.init ? expr(*d.init) : cst(zero_value(s.decl_type), s.decl_type);
          assign(d.unique, {}, v);
        }
        break;
      case StmtKind::Assign: {
        std::vector<ExprP> path;
        const ast::Expr* t = s.target.get();
        std::vector<const ast::Expr*> idx;
        while (t->kind == ExprKind::Index) {
          idx.push_back(t->args[1].get());
          t = t->args[0].get();
        }
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) path.push_back(expr(**it));
        ExprP rhs = expr(*s.value);
        if (s.assign_op != "=") {
          // Re-read the target through the already evaluated path.
          ExprP cur = var(t->resolved, t->type);
          const ast::Expr* walk = s.target.get();
          std::vector<TypePtr> ty;
          while (walk->kind == ExprKind::Index) {
            ty.push_back(walk->type);
            walk = walk->args[0].get();
          }
          for (size_t i = 0; i < path.size(); ++i) cur = index(cur, path[i], ty[ty.size() - 1 - i]);
          std::string op = s.assign_op.substr(0, 1);
          rhs = binary(op, cur, rhs, arith_type(op, s.target->type, s.value->type));
        }
        assign(t->resolved, std::move(path), rhs);
        break;
      }
      case StmtKind::If: {
        ExprP c = expr(*s.cond);
        int then_b = new_block(), else_b = new_block(), join = new_block();
        p_.blocks[cur_].term = Terminator{TermKind::Branch, c, nullptr, then_b, else_b};
        cur_ = then_b;
        stmts(s.body);
        jump_to(join);
        cur_ = else_b;
        stmts(s.else_body);
        jump_to(join);
        cur_ = join;
        break;
      }
      case StmtKind::While: {
        int header = new_block();
        jump_to(header);
        cur_ = header;
        int first = header;
        p_.blocks[header].loop_header = true;
        ExprP c = expr(*s.cond);
        int body = new_block();
        int exit = new_block();
        p_.blocks[cur_].term = Terminator{TermKind::Branch, c, nullptr, body, exit};
        p_.blocks[header].loop_test = cur_;
        loops_.push_back({header, exit, usings_.size()});
        cur_ = body;
        stmts(s.body);
        jump_to(header);
        loops_.pop_back();
        std::set<std::string> assigned;
        for (size_t b = static_cast<size_t>(first); b < p_.blocks.size(); ++b) {
          if (static_cast<int>(b) == exit) continue;
          for (const auto& in : p_.blocks[b].instrs) defs(in, assigned);
        }
        p_.blocks[header].loop_assigned = std::move(assigned);
        cur_ = exit;
        break;
      }
      case StmtKind::Break:
      case StmtKind::Continue: {
        const Loop& l = loops_.back();
        free_usings(l.usings);
        jump_to(s.kind == StmtKind::Break ? l.exit : l.header);
        cur_ = new_block();
        break;
      }
      case StmtKind::Return: {
        ExprP v = s.expr ? expr(*s.expr) : nullptr;
        if (v && !usings_.empty() && !is_const(v)) {
          // Snapshot the value before qubits are released.
          std::string t = temp(info_.ret);
          assign(t, {}, v);
          v = var(t, info_.ret);
        }
        free_usings(0);
        finish(Terminator{TermKind::Return, nullptr, v, -1, -1});
        break;
      }
      case StmtKind::Using: {
        Instr a;
        a.kind = InstrKind::Alloc;
        std::vector<std::string> qs;
        for (const auto& q : s.qubits) qs.push_back(q.unique);
        a.vars = qs;
        emit(std::move(a));
        usings_.push_back(qs);
        stmts(s.body);
        free_usings(usings_.size() - 1);
        usings_.pop_back();
        break;
      }
      case StmtKind::ExprStmt:
        call(*s.expr, /*want_value=*/false);
        break;
      case StmtKind::Block:
        stmts(s.body);
        break;
    }
  }

  void assign(const std::string& dst, std::vector<ExprP> path, ExprP v) {
    Instr in;
    in.kind = InstrKind::Assign;
    in.dst = dst;
    in.path = std::move(path);
    in.value = std::move(v);
    emit(std::move(in));
  }

  static TypePtr arith_type(const std::string& op, const TypePtr& a, const TypePtr& b) {
    if (a->kind == TypeKind::Time || b->kind == TypeKind::Time) return types::time();
    if (op == "%" || (a->kind == TypeKind::Int && b->kind == TypeKind::Int)) return types::integer();
    return types::real();
  }

  // ---- expressions ----
  static bool has_call(const ast::Expr& e) {
    if (e.kind == ExprKind::Call) return true;
    for (const auto& a : e.args)
      if (has_call(*a)) return true;
    return false;
  }

  ExprP expr(const ast::Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return cst(Value(static_cast<int32_t>(e.int_value)), e.type);
      case ExprKind::DoubleLit: return cst(Value(e.double_value), e.type);
      case ExprKind::BoolLit: return cst(Value(e.bool_value), e.type);
      case ExprKind::TimeLit: return cst(Value(TimeVal{time_literal_ns(e.double_value, e.name)}), e.type);
      case ExprKind::Name:
        if (e.ref == ast::RefKind::Constant) return cst(Value(kPi), e.type);
        return var(e.resolved, e.type);
      case ExprKind::Duration: return cst(Value(TimeVal{cfg_.at(e.resolved).duration_ns}), e.type);
      case ExprKind::Unary: return unary(e.name, expr(*e.args[0]), e.type);
      case ExprKind::Binary:
        if ((e.name == "&&" || e.name == "||") && has_call(*e.args[1])) return short_circuit(e);
        {
          ExprP a = expr(*e.args[0]);
          ExprP b = expr(*e.args[1]);
          return binary(e.name, a, b, e.type);
        }
      case ExprKind::Call: return call(e, true);
      case ExprKind::Index: {
        ExprP a = expr(*e.args[0]);
        ExprP i = expr(*e.args[1]);
        return index(a, i, e.type);
      }
      case ExprKind::Length: return length(expr(*e.args[0]));
      case ExprKind::ArrayLit: {
        std::vector<ExprP> xs;
        for (const auto& a : e.args) xs.push_back(expr(*a));
        return make_array(std::move(xs), e.type);
      }
      case ExprKind::TupleLit: {
        std::vector<ExprP> xs;
        for (const auto& a : e.args) xs.push_back(expr(*a));
        return make_tuple(std::move(xs), e.type);
      }
    }
    return nullptr;
  }

  // `a && b` / `a || b` where b has side effects.
  ExprP short_circuit(const ast::Expr& e) {
    std::string t = temp(types::boolean());
    assign(t, {}, expr(*e.args[0]));
    int rhs = new_block(), join = new_block();
    ExprP tv = var(t, types::boolean());
    if (e.name == "&&") {
      p_.blocks[cur_].term = Terminator{TermKind::Branch, tv, nullptr, rhs, join};
    } else {
      p_.blocks[cur_].term = Terminator{TermKind::Branch, tv, nullptr, join, rhs};
    }
    cur_ = rhs;
    assign(t, {}, expr(*e.args[1]));
    jump_to(join);
    cur_ = join;
    return tv;
  }

  ExprP call(const ast::Expr& e, bool want_value) {
    const OpInfo& op = prog_.ops.at(e.resolved);
    Instr in;
    in.kind = InstrKind::Call;
    in.opaque = op.opaque;
    in.callee = op.opaque ? op.name : op.qualified;
    for (const auto& a : e.args) in.args.push_back(expr(*a));
    for (const auto& c : e.controls) in.controls.push_back(expr(*c));
    in.inverted = e.inverted;
    if (e.timing) {
      for (const auto& c : e.timing->constraints)
        in.timing.constraints.push_back({var(c.timer, types::timer()), c.cmp, expr(*c.time)});
      for (const auto& r : e.timing->resets) in.timing.resets.push_back(var(r, types::timer()));
    }
    ExprP result;
    if (op.ret->kind != TypeKind::Unit) {
      in.dst = temp(op.ret);
      result = var(in.dst, op.ret);
    } else if (want_value) {
      result = cst(Value(UnitVal{}), types::unit());
    }
    emit(std::move(in));
    return result;
  }

  struct Loop {
    int header, exit;
    size_t usings;
  };

  const TypedProgram& prog_;
  const PlatformConfig& cfg_;
  const OpInfo& info_;
  Proc& p_;
  int cur_ = 0;
  int temps_ = 0;
  std::vector<Loop> loops_;
  std::vector<std::vector<std::string>> usings_;
};

}  // namespace

KernelIR lower(const TypedProgram& prog, const PlatformConfig& cfg, const std::string& entry) {
  KernelIR ir;
  const OpInfo* e = prog.find_root(entry);
  if (!e) e = prog.find(entry);
  if (!e || e->opaque) throw Error(Errc::UnknownKernelOp, "no operation named '" + entry + "'");
  ir.entry = e->qualified;
  for (const auto& [q, info] : prog.ops) {
    if (info.opaque) continue;
    Proc& p = ir.procs[q];
    Lowerer(prog, cfg, info, p).run();
  }
  return ir;
}

}  // namespace quingo
