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

#include <cmath>

#include "quingo/ast.hpp"
#include "quingo/value.hpp"

namespace quingo::ast {

namespace {

int prec_of(const Expr& e) {
  if (e.kind == ExprKind::Binary) {
    const std::string& op = e.name;
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    return 6;
  }
  if (e.kind == ExprKind::Unary) return 7;
  if (e.kind == ExprKind::DoubleLit && std::signbit(e.double_value)) return 7;
  return 8;
}

std::string wrap(const Expr& e, int need) {
  std::string s = print_expr(e);
  return prec_of(e) < need ? "(" + s + ")" : s;
}

std::string list(const std::vector<ExprPtr>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += print_expr(*xs[i]);
  }
  return s;
}

std::string time_literal(double mag, const std::string& unit) {
  std::string m;
  if (mag == std::floor(mag) && mag < 9e15) {
    m = std::to_string(static_cast<int64_t>(mag));
  } else {
    m = value_to_literal(Value(mag));
  }
  return m + unit;
}

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Eq: return "==";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "==";
}

class Printer {
 public:
  std::string out;

  void line(int depth, const std::string& s) {
    out.append(static_cast<size_t>(depth) * 4, ' ');
    out += s;
    out += '\n';
  }

  void body(int depth, const std::vector<StmtPtr>& b) {
    for (const auto& s : b) stmt(depth, *s);
  }

  void stmt(int d, const Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl: {
        std::string t = print_type(s.decl_type) + " ";
        for (size_t i = 0; i < s.decls.size(); ++i) {
          if (i) t += ", ";
          t += s.decls[i].name;
          if (s.decls[i].init) t += " = " + print_expr(*s.decls[i].init);
        }
        line(d, t + ";");
        break;
      }
      case StmtKind::Assign:
        line(d, print_expr(*s.target) + " " + s.assign_op + " " + print_expr(*s.value) + ";");
        break;
      case StmtKind::If: {
        line(d, "if (" + print_expr(*s.cond) + ") {");
        body(d + 1, s.body);
        const Stmt* cur = &s;
        while (cur->has_else && cur->else_body.size() == 1 && cur->else_body[0]->kind == StmtKind::If) {
          cur = cur->else_body[0].get();
          line(d, "} else if (" + print_expr(*cur->cond) + ") {");
          body(d + 1, cur->body);
        }
        if (cur->has_else) {
          line(d, "} else {");
          body(d + 1, cur->else_body);
        }
        line(d, "}");
        break;
      }
      case StmtKind::While:
        line(d, "while (" + print_expr(*s.cond) + ") {");
        body(d + 1, s.body);
        line(d, "}");
        break;
      case StmtKind::Break: line(d, "break;"); break;
      case StmtKind::Continue: line(d, "continue;"); break;
      case StmtKind::Return:
        line(d, s.expr ? "return " + print_expr(*s.expr) + ";" : "return;");
        break;
      case StmtKind::Using: {
        std::string h = "using(";
        for (size_t i = 0; i < s.qubits.size(); ++i) {
          if (i) h += ", ";
          h += s.qubits[i].name + ": " + print_type(s.qubits[i].type);
        }
        line(d, h + ") {");
        body(d + 1, s.body);
        line(d, "}");
        break;
      }
      case StmtKind::ExprStmt: line(d, print_expr(*s.expr) + ";"); break;
      case StmtKind::Block:
        line(d, "{");
        body(d + 1, s.body);
        line(d, "}");
        break;
    }
  }
};

std::string params_text(const std::vector<Param>& ps) {
  std::string s;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ", ";
    s += ps[i].name + ": " + print_type(ps[i].type);
  }
  return s;
}

}  // namespace

std::string print_type(const TypePtr& t) { return type_to_string(t); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit: return std::to_string(e.int_value);
    case ExprKind::DoubleLit: return value_to_literal(Value(e.double_value));
    case ExprKind::BoolLit: return e.bool_value ? "true" : "false";
    case ExprKind::TimeLit: return time_literal(e.double_value, e.name);
    case ExprKind::Name: return e.name;
    case ExprKind::Unary: {
      // Avoid `--x` being read as two tokens of a different meaning later.
      std::string inner = wrap(*e.args[0], 7);
      if (!inner.empty() && inner[0] == '-') inner = "(" + inner + ")";
      return e.name + inner;
    }
    case ExprKind::Binary: {
      int p = prec_of(e);
      return wrap(*e.args[0], p) + " " + e.name + " " + wrap(*e.args[1], p + 1);
    }
    case ExprKind::Call: {
      std::string s;
      if (e.has_control) s += "control(" + list(e.controls) + ") ";
      if (e.inverted) s += "invert ";
      s += e.name + "(" + list(e.args) + ")";
      if (e.timing) {
        const TimingAnnotation& t = *e.timing;
        if (t.has_constraint_block) {
          s += " @{";
          for (size_t i = 0; i < t.constraints.size(); ++i) {
            if (i) s += " && ";
            const auto& c = t.constraints[i];
            s += c.timer + " " + cmp_text(c.cmp) + " " + wrap(*c.time, 5);
          }
          s += "}";
        }
        if (t.has_reset_block) {
          s += " !{";
          for (size_t i = 0; i < t.resets.size(); ++i) {
            if (i) s += ", ";
            s += t.resets[i];
          }
          s += "}";
        }
      }
      return s;
    }
    case ExprKind::Index: return wrap(*e.args[0], 8) + "[" + print_expr(*e.args[1]) + "]";
    case ExprKind::Length: return wrap(*e.args[0], 8) + ".length";
    case ExprKind::ArrayLit: return "{" + list(e.args) + "}";
    case ExprKind::TupleLit: return "(" + list(e.args) + ")";
    case ExprKind::Duration: return "duration(" + e.name + ")";
  }
  return "";
}

std::string print_unit(const SourceUnit& unit) {
  Printer p;
  if (unit.explicit_package) p.line(0, "package " + unit.package + ";");
  for (const auto& imp : unit.imports)
    p.line(0, "import " + imp.path + (imp.wildcard ? ".*" : "") + ";");
  for (const auto& d : unit.decls) {
    if (!p.out.empty()) p.out += '\n';
    std::string head = std::string(d.opaque ? "opaque " : "operation ") + d.name + "(" +
                       params_text(d.params) + "): " + print_type(d.ret);
    if (d.opaque) {
      p.line(0, head + ";");
    } else {
      p.line(0, head + " {");
      p.body(1, d.body);
      p.line(0, "}");
    }
  }
  return p.out;
}

// ---- structural equality ----

namespace {

bool eq_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool eq_list(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq_ptr(a[i], b[i])) return false;
  return true;
}

bool eq_params(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || !type_equal(a[i].type, b[i].type)) return false;
  return true;
}

bool eq_body(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b);

bool eq_stmt(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StmtKind::VarDecl:
      if (!type_equal(a.decl_type, b.decl_type) || a.decls.size() != b.decls.size()) return false;
      for (size_t i = 0; i < a.decls.size(); ++i)
        if (a.decls[i].name != b.decls[i].name || !eq_ptr(a.decls[i].init, b.decls[i].init))
          return false;
      return true;
    case StmtKind::Assign:
      return a.assign_op == b.assign_op && eq_ptr(a.target, b.target) && eq_ptr(a.value, b.value);
    case StmtKind::If:
      return eq_ptr(a.cond, b.cond) && eq_body(a.body, b.body) && a.has_else == b.has_else &&
             eq_body(a.else_body, b.else_body);
    case StmtKind::While: return eq_ptr(a.cond, b.cond) && eq_body(a.body, b.body);
    case StmtKind::Break:
    case StmtKind::Continue: return true;
    case StmtKind::Return:
    case StmtKind::ExprStmt: return eq_ptr(a.expr, b.expr);
    case StmtKind::Using: return eq_params(a.qubits, b.qubits) && eq_body(a.body, b.body);
    case StmtKind::Block: return eq_body(a.body, b.body);
  }
  return false;
}

bool eq_body(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq_stmt(*a[i], *b[i])) return false;
  return true;
}

bool eq_timing(const std::optional<TimingAnnotation>& a, const std::optional<TimingAnnotation>& b) {
  if (!a || !b) return !a && !b;
  if (a->has_constraint_block != b->has_constraint_block ||
      a->has_reset_block != b->has_reset_block || a->resets != b->resets ||
      a->constraints.size() != b->constraints.size())
    return false;
  for (size_t i = 0; i < a->constraints.size(); ++i) {
    const auto& x = a->constraints[i];
    const auto& y = b->constraints[i];
    if (x.timer != y.timer || x.cmp != y.cmp || !eq_ptr(x.time, y.time)) return false;
  }
  return true;
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::IntLit: return a.int_value == b.int_value;
    case ExprKind::DoubleLit: return a.double_value == b.double_value;
    case ExprKind::BoolLit: return a.bool_value == b.bool_value;
    case ExprKind::TimeLit: return a.double_value == b.double_value && a.name == b.name;
    default: break;
  }
  return a.name == b.name && eq_list(a.args, b.args) && a.has_control == b.has_control &&
         eq_list(a.controls, b.controls) && a.inverted == b.inverted && eq_timing(a.timing, b.timing);
}

bool equal(const SourceUnit& a, const SourceUnit& b) {
  if (a.package != b.package || a.imports.size() != b.imports.size() ||
      a.decls.size() != b.decls.size())
    return false;
  for (size_t i = 0; i < a.imports.size(); ++i)
    if (a.imports[i].path != b.imports[i].path || a.imports[i].wildcard != b.imports[i].wildcard)
      return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    const OpDecl& x = a.decls[i];
    const OpDecl& y = b.decls[i];
    if (x.opaque != y.opaque || x.name != y.name || !eq_params(x.params, y.params) ||
        !type_equal(x.ret, y.ret) || !eq_body(x.body, y.body))
      return false;
  }
  return true;
}

ExprPtr clone(const Expr& e) {
  auto c = std::make_unique<Expr>();
  c->kind = e.kind;
  c->loc = e.loc;
  c->int_value = e.int_value;
  c->double_value = e.double_value;
  c->bool_value = e.bool_value;
  c->name = e.name;
  for (const auto& a : e.args) c->args.push_back(clone(*a));
  for (const auto& a : e.controls) c->controls.push_back(clone(*a));
  c->has_control = e.has_control;
  c->inverted = e.inverted;
  if (e.timing) {
    TimingAnnotation t;
    t.has_constraint_block = e.timing->has_constraint_block;
    t.has_reset_block = e.timing->has_reset_block;
    t.resets = e.timing->resets;
    for (const auto& k : e.timing->constraints)
      t.constraints.push_back({k.timer, k.cmp, clone(*k.time), k.loc});
    c->timing = std::move(t);
  }
  c->type = e.type;
  c->ref = e.ref;
  c->resolved = e.resolved;
  return c;
}

}  // namespace quingo::ast
