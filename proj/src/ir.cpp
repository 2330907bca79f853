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

#include "quingo/ir.hpp"

#include <functional>
#include <sstream>

namespace quingo::ir {

namespace {
ExprP mk(Op op, std::vector<ExprP> args, TypePtr t, std::string name = {}) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->type = std::move(t);
  e->name = std::move(name);
  return e;
}
}  // namespace

ExprP cst(Value v, TypePtr t) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Const;
  e->value = std::move(v);
  e->type = std::move(t);
  return e;
}
ExprP var(std::string name, TypePtr t) { return mk(Op::Var, {}, std::move(t), std::move(name)); }
ExprP unary(std::string op, ExprP a, TypePtr t) { return mk(Op::Unary, {std::move(a)}, std::move(t), std::move(op)); }
ExprP binary(std::string op, ExprP a, ExprP b, TypePtr t) {
  return mk(Op::Binary, {std::move(a), std::move(b)}, std::move(t), std::move(op));
}
ExprP index(ExprP a, ExprP i, TypePtr t) { return mk(Op::Index, {std::move(a), std::move(i)}, std::move(t)); }
ExprP length(ExprP a) { return mk(Op::Length, {std::move(a)}, types::integer()); }
ExprP make_tuple(std::vector<ExprP> elems, TypePtr t) { return mk(Op::MakeTuple, std::move(elems), std::move(t)); }
ExprP make_array(std::vector<ExprP> elems, TypePtr t) { return mk(Op::MakeArray, std::move(elems), std::move(t)); }

bool is_const(const ExprP& e) { return e && e->op == Op::Const; }

void collect_vars(const ExprP& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Op::Var) out.insert(e->name);
  for (const auto& a : e->args) collect_vars(a, out);
}

// ---- printing ----

std::string expr_to_string(const ExprP& e) {
  if (!e) return "()";
  auto list = [&](const char* open, const char* close) {
    std::string s = open;
    for (size_t i = 0; i < e->args.size(); ++i) {
      if (i) s += ", ";
      s += expr_to_string(e->args[i]);
    }
    return s + close;
  };
  switch (e->op) {
    case Op::Const: return value_to_text(e->value);
    case Op::Var: return e->name;
    case Op::Unary:
      if (e->name == "itod") return "itod(" + expr_to_string(e->args[0]) + ")";
      return e->name + expr_to_string(e->args[0]);
    case Op::Binary:
      return "(" + expr_to_string(e->args[0]) + " " + e->name + " " + expr_to_string(e->args[1]) + ")";
    case Op::Index: return expr_to_string(e->args[0]) + "[" + expr_to_string(e->args[1]) + "]";
    case Op::Length: return expr_to_string(e->args[0]) + ".length";
    case Op::MakeTuple: return list("tuple(", ")");
    case Op::MakeArray: return list("array[", "]");
  }
  return "?";
}

namespace {
std::string join(const std::vector<ExprP>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += expr_to_string(xs[i]);
  }
  return s;
}
std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += xs[i];
  }
  return s;
}
const char* cmp_text(ast::Cmp c) {
  switch (c) {
    case ast::Cmp::Eq: return "==";
    case ast::Cmp::Gt: return ">";
    case ast::Cmp::Ge: return ">=";
  }
  return "==";
}
}  // namespace

std::string instr_to_string(const Instr& in) {
  switch (in.kind) {
    case InstrKind::Assign: {
      std::string s = in.dst;
      for (const auto& p : in.path) s += "[" + expr_to_string(p) + "]";
      return s + " = " + expr_to_string(in.value);
    }
    case InstrKind::Call: {
      std::string s;
      if (!in.dst.empty()) s += in.dst + " = ";
      s += in.opaque ? "qop " : "call ";
      s += in.callee + "(" + join(in.args) + ")";
      if (!in.controls.empty()) s += " ctrl(" + join(in.controls) + ")";
      if (in.inverted) s += " inv";
      if (!in.timing.constraints.empty()) {
        s += " @{";
        for (size_t i = 0; i < in.timing.constraints.size(); ++i) {
          const auto& c = in.timing.constraints[i];
          if (i) s += " && ";
          s += expr_to_string(c.timer) + " " + cmp_text(c.cmp) + " " + expr_to_string(c.time);
        }
        s += "}";
      }
      if (!in.timing.resets.empty()) s += " !{" + join(in.timing.resets) + "}";
      return s;
    }
    case InstrKind::TimerReset: return "timer " + join(in.vars) + join(in.args);
    case InstrKind::Alloc: return "alloc " + join(in.vars) + join(in.args);
    case InstrKind::Free: return "free " + join(in.args);
  }
  return "?";
}

std::string term_to_string(const Terminator& t) {
  switch (t.kind) {
    case TermKind::Jump: return "jump b" + std::to_string(t.then_block);
    case TermKind::Branch:
      return "branch " + expr_to_string(t.cond) + " b" + std::to_string(t.then_block) + " b" +
             std::to_string(t.else_block);
    case TermKind::Return: return t.value ? "return " + expr_to_string(t.value) : "return";
  }
  return "?";
}

std::string dump(const KernelIR& ir) {
  std::ostringstream os;
  for (const auto& [name, p] : ir.procs) {
    os << "proc " << name << "(" << join(p.params) << "): " << type_to_string(p.ret) << "\n";
    for (const auto& [v, t] : p.vars) os << "  var " << v << ": " << type_to_string(t) << "\n";
    for (size_t b = 0; b < p.blocks.size(); ++b) {
      const Block& blk = p.blocks[b];
      os << "b" << b << ":";
      if (static_cast<int>(b) == p.entry) os << " entry";
      if (blk.loop_header) os << " loop{" << [&] {
          std::string s;
          for (const auto& v : blk.loop_assigned) s += (s.empty() ? "" : ", ") + v;
          return s;
        }() << "}";
      if (blk.join) os << " join(" << join(blk.params) << ")";
      os << "\n";
      for (const auto& in : blk.instrs) os << "  " << instr_to_string(in) << "\n";
      os << "  " << term_to_string(blk.term) << "\n";
    }
  }
  return os.str();
}

// ---- analysis ----

std::vector<int> successors(const Terminator& t) {
  switch (t.kind) {
    case TermKind::Jump: return {t.then_block};
    case TermKind::Branch:
      if (t.then_block == t.else_block) return {t.then_block};
      return {t.then_block, t.else_block};
    case TermKind::Return: return {};
  }
  return {};
}

void uses(const Instr& in, std::set<std::string>& out) {
  switch (in.kind) {
    case InstrKind::Assign:
      if (!in.path.empty()) out.insert(in.dst);
      for (const auto& p : in.path) collect_vars(p, out);
      collect_vars(in.value, out);
      break;
    case InstrKind::Call:
      for (const auto& a : in.args) collect_vars(a, out);
      for (const auto& a : in.controls) collect_vars(a, out);
      for (const auto& c : in.timing.constraints) {
        collect_vars(c.timer, out);
        collect_vars(c.time, out);
      }
      for (const auto& r : in.timing.resets) collect_vars(r, out);
      break;
    default:
      for (const auto& a : in.args) collect_vars(a, out);
      break;
  }
}

void defs(const Instr& in, std::set<std::string>& out) {
  switch (in.kind) {
    case InstrKind::Assign:
    case InstrKind::Call:
      if (!in.dst.empty()) out.insert(in.dst);
      break;
    case InstrKind::Alloc:
    case InstrKind::TimerReset:
      for (const auto& v : in.vars) out.insert(v);
      break;
    case InstrKind::Free: break;
  }
}

namespace {
void transfer(const Instr& in, std::set<std::string>& live) {
  std::set<std::string> d, u;
  defs(in, d);
  uses(in, u);
  for (const auto& v : d) live.erase(v);
  live.insert(u.begin(), u.end());
}
void term_uses(const Terminator& t, std::set<std::string>& live) {
  collect_vars(t.cond, live);
  collect_vars(t.value, live);
}
}  // namespace

Liveness liveness(const Proc& p) {
  Liveness lv;
  size_t n = p.blocks.size();
  lv.live_in.assign(n, {});
  lv.live_out.assign(n, {});
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = n; i-- > 0;) {
      const Block& b = p.blocks[i];
      std::set<std::string> out;
      for (int s : successors(b.term)) out.insert(lv.live_in[s].begin(), lv.live_in[s].end());
      std::set<std::string> in = out;
      term_uses(b.term, in);
      for (size_t k = b.instrs.size(); k-- > 0;) transfer(b.instrs[k], in);
      if (in != lv.live_in[i] || out != lv.live_out[i]) {
        lv.live_in[i] = std::move(in);
        lv.live_out[i] = std::move(out);
        changed = true;
      }
    }
  }
  return lv;
}

std::set<std::string> live_before(const Proc& p, const Liveness& lv, int block, size_t pc) {
  const Block& b = p.blocks[block];
  std::set<std::string> live = lv.live_out[block];
  term_uses(b.term, live);
  for (size_t k = b.instrs.size(); k-- > pc;) transfer(b.instrs[k], live);
  return live;
}

void prune(Proc& p) {
  std::vector<int> order;
  std::vector<int> remap(p.blocks.size(), -1);
  std::vector<int> stack{p.entry};
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    if (remap[b] >= 0) continue;
    remap[b] = static_cast<int>(order.size());
    order.push_back(b);
    auto succ = successors(p.blocks[b].term);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it)
      if (remap[*it] < 0) stack.push_back(*it);
  }
  std::vector<Block> blocks;
  blocks.reserve(order.size());
  for (int b : order) {
    Block blk = std::move(p.blocks[b]);
    if (blk.term.then_block >= 0) blk.term.then_block = remap[blk.term.then_block];
    if (blk.term.else_block >= 0) blk.term.else_block = remap[blk.term.else_block];
    if (blk.loop_test >= 0) blk.loop_test = remap[blk.loop_test];
    blocks.push_back(std::move(blk));
  }
  p.blocks = std::move(blocks);
  p.entry = 0;
}

size_t count_quantum_calls(const KernelIR& ir) {
  size_t n = 0;
  for (const auto& [_, p] : ir.procs)
    for (const auto& b : p.blocks)
      for (const auto& in : b.instrs)
        if (in.kind == InstrKind::Call && in.opaque) ++n;
  return n;
}

}  // namespace quingo::ir
