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

#include "quingo/frontend.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "quingo/parser.hpp"

namespace quingo {

using namespace ast;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Linking

namespace {

std::string find_package_file(const std::string& pkg, const std::vector<std::string>& paths) {
  std::string nested = pkg;
  for (char& c : nested)
    if (c == '.') c = '/';
  for (const auto& dir : paths) {
    for (const std::string& cand : {nested + ".qu", pkg + ".qu"}) {
      fs::path p = fs::path(dir) / cand;
      std::error_code ec;
      if (fs::is_regular_file(p, ec)) return p.string();
    }
  }
  return {};
}

}  // namespace

LinkedProgram resolve_imports(std::vector<SourceUnit> roots, const std::vector<std::string>& search_paths,
                              const std::string& config_package) {
  LinkedProgram lp;
  lp.config_package = config_package;
  std::map<std::string, std::vector<size_t>> by_package;

  auto add = [&](SourceUnit u, bool root) {
    size_t idx = lp.units.size();
    by_package[u.package].push_back(idx);
    lp.units.push_back(std::make_unique<SourceUnit>(std::move(u)));
    lp.is_root.push_back(root);
    return idx;
  };
  for (auto& r : roots) add(std::move(r), true);

  // Breadth-first load of imported packages.
  std::vector<std::string> search = search_paths;
  for (size_t i = 0; i < lp.units.size(); ++i) {
    for (const Import& imp : lp.units[i]->imports) {
      if (!config_package.empty() && imp.path == config_package) continue;
      std::string pkg = imp.path;
      if (by_package.count(pkg)) continue;
      std::string file = find_package_file(pkg, search);
      if (file.empty() && !imp.wildcard) {
        // `import pkg.Name`: fall back to the enclosing package.
        auto dot = pkg.rfind('.');
        if (dot != std::string::npos) {
          std::string parent = pkg.substr(0, dot);
          if (by_package.count(parent) || (!config_package.empty() && parent == config_package)) continue;
          pkg = parent;
          file = find_package_file(pkg, search);
        }
      }
      if (file.empty())
        throw Error(Errc::UnresolvedImport, "cannot find package '" + imp.path + "'", imp.loc);
      if (by_package.count(pkg)) continue;
      SourceUnit u = parse_source(read_file(file), file, pkg);
      if (u.package != pkg)
        throw Error(Errc::UnresolvedImport,
                    "file '" + file + "' declares package '" + u.package + "', expected '" + pkg + "'", imp.loc);
      add(std::move(u), false);
    }
  }
  for (const auto& [pkg, _] : by_package) lp.packages.push_back(pkg);

  // Declarations, unique per package.
  for (size_t u = 0; u < lp.units.size(); ++u) {
    const SourceUnit& su = *lp.units[u];
    for (size_t d = 0; d < su.decls.size(); ++d) {
      std::string q = su.package + "." + su.decls[d].name;
      if (lp.decls.count(q))
        throw Error(Errc::AmbiguousName, "duplicate declaration of '" + su.decls[d].name + "' in package '" +
                                             su.package + "'",
                    su.decls[d].loc);
      lp.decls[q] = {u, d};
    }
  }

  auto exports = [&](const std::string& pkg) {
    std::vector<std::string> names;
    auto it = by_package.find(pkg);
    if (it == by_package.end()) return names;
    for (size_t u : it->second)
      for (const auto& d : lp.units[u]->decls) names.push_back(d.name);
    return names;
  };

  // Scopes.
  lp.scopes.resize(lp.units.size());
  for (size_t u = 0; u < lp.units.size(); ++u) {
    const SourceUnit& su = *lp.units[u];
    auto& scope = lp.scopes[u];
    std::map<std::string, std::string> imported;
    auto import_name = [&](const std::string& name, const std::string& pkg, const SourceLoc& loc) {
      std::string q = pkg + "." + name;
      auto it = imported.find(name);
      if (it != imported.end() && it->second != q)
        throw Error(Errc::AmbiguousName,
                    "'" + name + "' is exported by both '" + it->second + "' and '" + q + "'", loc);
      imported[name] = q;
    };
    for (const Import& imp : su.imports) {
      if (!config_package.empty() && (imp.path == config_package)) continue;
      if (by_package.count(imp.path)) {
        if (imp.wildcard)
          for (const auto& n : exports(imp.path)) import_name(n, imp.path, imp.loc);
        continue;
      }
      auto dot = imp.path.rfind('.');
      std::string parent = dot == std::string::npos ? "" : imp.path.substr(0, dot);
      if (!config_package.empty() && parent == config_package) continue;
      std::string name = imp.path.substr(dot + 1);
      if (!lp.decls.count(imp.path))
        throw Error(Errc::UnresolvedImport, "package '" + parent + "' has no declaration '" + name + "'", imp.loc);
      import_name(name, parent, imp.loc);
    }
    scope = imported;
    // Own declarations, and for root units every root declaration, shadow imports.
    std::map<std::string, std::string> own;
    for (size_t v = 0; v < lp.units.size(); ++v) {
      bool shared = v == u || (lp.is_root[u] && lp.is_root[v]) || lp.units[v]->package == su.package;
      if (!shared) continue;
      for (const auto& d : lp.units[v]->decls) {
        std::string q = lp.units[v]->package + "." + d.name;
        auto it = own.find(d.name);
        if (it != own.end() && it->second != q)
          throw Error(Errc::AmbiguousName, "'" + d.name + "' is declared by both '" + it->second + "' and '" + q + "'",
                      d.loc);
        own[d.name] = q;
      }
    }
    for (auto& [n, q] : own) scope[n] = q;
  }
  return lp;
}

// ---------------------------------------------------------------------------
// Type checking

const OpInfo* TypedProgram::find(const std::string& qualified) const {
  auto it = ops.find(qualified);
  return it == ops.end() ? nullptr : &it->second;
}

const OpInfo* TypedProgram::find_root(const std::string& name) const {
  for (size_t u = 0; u < linked.units.size(); ++u) {
    if (!linked.is_root[u]) continue;
    auto it = linked.scopes[u].find(name);
    if (it != linked.scopes[u].end()) return find(it->second);
  }
  return nullptr;
}

namespace {

[[noreturn]] void type_error(const std::string& msg, const SourceLoc& loc) {
  throw Error(Errc::TypeError, msg, loc);
}

std::string tname(const TypePtr& t) { return t ? type_to_string(t) : "<unknown>"; }

bool storable_elem(const TypePtr& t) {
  return !contains_kind(t, TypeKind::Qubit) && !contains_kind(t, TypeKind::Timer);
}

/// Common type of two values, widening int to double; null if none.
TypePtr unify(const TypePtr& a, const TypePtr& b) {
  if (type_equal(a, b)) return a;
  if (is_numeric(a) && is_numeric(b)) return types::real();
  if (a->kind == TypeKind::Array && b->kind == TypeKind::Array) {
    TypePtr e = unify(a->elem(), b->elem());
    return e ? types::array(e) : nullptr;
  }
  if (a->kind == TypeKind::Tuple && b->kind == TypeKind::Tuple && a->elems.size() == b->elems.size()) {
    std::vector<TypePtr> es;
    for (size_t i = 0; i < a->elems.size(); ++i) {
      TypePtr e = unify(a->elems[i], b->elems[i]);
      if (!e) return nullptr;
      es.push_back(e);
    }
    return types::tuple(es);
  }
  return nullptr;
}

void check_decl_type(const TypePtr& t, const SourceLoc& loc) {
  if (t->kind == TypeKind::Array || t->kind == TypeKind::Tuple) {
    for (const auto& e : t->elems) {
      if (!storable_elem(e)) type_error("qubits and timers cannot be stored in " + tname(t), loc);
      check_decl_type(e, loc);
    }
  }
}

struct Local {
  std::string unique;
  TypePtr type;
};

class Checker {
 public:
  Checker(TypedProgram& prog, const PlatformConfig& cfg) : prog_(prog), cfg_(cfg) {}

  void run() {
    const LinkedProgram& lp = prog_.linked;
    // Signatures first.
    for (const auto& [q, loc] : lp.decls) {
      const OpDecl& d = lp.units[loc.first]->decls[loc.second];
      OpInfo info;
      info.qualified = q;
      info.name = d.name;
      info.opaque = d.opaque;
      info.quantum = d.opaque;
      info.decl = &d;
      info.ret = d.ret;
      check_decl_type(d.ret, d.loc);
      if (contains_kind(d.ret, TypeKind::Qubit) || contains_kind(d.ret, TypeKind::Timer))
        type_error("operation '" + d.name + "' cannot return " + tname(d.ret), d.loc);
      std::set<std::string> seen;
      for (const auto& p : d.params) {
        check_decl_type(p.type, p.loc);
        if (!seen.insert(p.name).second) type_error("duplicate parameter '" + p.name + "'", p.loc);
        info.params.push_back(p.type);
      }
      if (d.opaque) check_opaque(d);
      prog_.ops[q] = std::move(info);
    }
    compute_quantum();
    for (const auto& [q, loc] : lp.decls) {
      OpDecl& d = lp.units[loc.first]->decls[loc.second];
      if (!d.opaque) check_body(prog_.ops[q], d, loc.first);
    }
  }

 private:
  // ---- opaque declarations vs. platform ----
  void check_opaque(const OpDecl& d) {
    const OpDef* def = cfg_.find(d.name);
    if (!def) type_error("opaque operation '" + d.name + "' is not defined by platform configuration", d.loc);
    int nq = 0;
    std::vector<TypePtr> classical;
    for (const auto& p : d.params) {
      if (p.type->kind == TypeKind::Qubit) {
        ++nq;
      } else {
        classical.push_back(p.type);
      }
    }
    if (nq != def->num_qubits)
      type_error("opaque operation '" + d.name + "' takes " + std::to_string(nq) + " qubit(s) but platform defines " +
                     std::to_string(def->num_qubits),
                 d.loc);
    if (classical.size() != def->params.size())
      type_error("opaque operation '" + d.name + "' classical parameters do not match platform definition", d.loc);
    for (size_t i = 0; i < classical.size(); ++i)
      if (!type_equal(classical[i], def->params[i].type))
        type_error("opaque operation '" + d.name + "' parameter '" + def->params[i].name + "' must be " +
                       tname(def->params[i].type),
                   d.loc);
    SemKind k = def->semantics.kind;
    if (k == SemKind::Measure) {
      if (d.ret->kind != TypeKind::Bool)
        type_error("measurement operation '" + d.name + "' must return bool", d.loc);
    } else if (d.ret->kind != TypeKind::Unit) {
      type_error("opaque operation '" + d.name + "' returns a value but is not a measurement", d.loc);
    }
  }

  // ---- call graph for quantum-ness ----
  void collect_calls(size_t unit, const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Call) {
      std::string q = lookup_op(unit, e.name, e.loc, /*quiet=*/true);
      if (!q.empty()) out.insert(q);
    }
    for (const auto& a : e.args) collect_calls(unit, *a, out);
    for (const auto& a : e.controls) collect_calls(unit, *a, out);
  }
  void collect_calls(size_t unit, const std::vector<StmtPtr>& body, std::set<std::string>& out) {
    for (const auto& s : body) {
      for (const auto& d : s->decls)
        if (d.init) collect_calls(unit, *d.init, out);
      for (const Expr* e : {s->target.get(), s->value.get(), s->cond.get(), s->expr.get()})
        if (e) collect_calls(unit, *e, out);
      collect_calls(unit, s->body, out);
      collect_calls(unit, s->else_body, out);
    }
  }
  void compute_quantum() {
    std::map<std::string, std::set<std::string>> calls;
    for (const auto& [q, loc] : prog_.linked.decls) {
      const OpDecl& d = prog_.linked.units[loc.first]->decls[loc.second];
      if (!d.opaque) collect_calls(loc.first, d.body, calls[q]);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& [q, info] : prog_.ops) {
        if (info.quantum) continue;
        for (const auto& c : calls[q])
          if (prog_.ops[c].quantum) {
            info.quantum = true;
            changed = true;
            break;
          }
      }
    }
  }

  std::string lookup_op(size_t unit, const std::string& name, const SourceLoc& loc, bool quiet = false) {
    const LinkedProgram& lp = prog_.linked;
    auto dot = name.rfind('.');
    if (dot == std::string::npos) {
      auto it = lp.scopes[unit].find(name);
      if (it != lp.scopes[unit].end()) return it->second;
    } else if (lp.decls.count(name)) {
      return name;
    }
    if (quiet) return {};
    type_error("unknown operation '" + name + "'", loc);
  }

  // ---- bodies ----
  void check_body(OpInfo& info, OpDecl& d, size_t unit) {
    info_ = &info;
    unit_ = unit;
    scopes_.clear();
    used_.clear();
    loops_ = 0;
    live_qubits_ = 0;
    scopes_.emplace_back();
    for (auto& p : d.params) p.unique = declare(p.name, p.type, p.loc);
    check_block(d.body, false);
    scopes_.clear();
    if (d.ret->kind != TypeKind::Unit && !returns(d.body))
      type_error("operation '" + d.name + "' may finish without returning a value", d.loc);
  }

  std::string declare(const std::string& name, const TypePtr& t, const SourceLoc& loc) {
    if (scopes_.back().count(name)) type_error("redeclaration of '" + name + "'", loc);
    if (name == "PI") type_error("'PI' is a predeclared constant", loc);
    std::string unique = name;
    for (int k = 1; used_.count(unique); ++k) unique = name + "_" + std::to_string(k);
    used_.insert(unique);
    scopes_.back()[name] = {unique, t};
    info_->locals[unique] = t;
    return unique;
  }

  const Local* find_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void check_block(std::vector<StmtPtr>& body, bool new_scope = true) {
    if (new_scope) scopes_.emplace_back();
    for (auto& s : body) check_stmt(*s);
    if (new_scope) scopes_.pop_back();
  }

  static bool returns(const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      switch (s->kind) {
        case StmtKind::Return: return true;
        case StmtKind::If:
          if (s->has_else && returns(s->body) && returns(s->else_body)) return true;
          break;
        case StmtKind::Block:
        case StmtKind::Using:
          if (returns(s->body)) return true;
          break;
        case StmtKind::While:
          if (s->cond->kind == ExprKind::BoolLit && s->cond->bool_value && !breaks(s->body)) return true;
          break;
        default: break;
      }
    }
    return false;
  }
  static bool breaks(const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == StmtKind::Break) return true;
      if (s->kind == StmtKind::While) continue;
      if (breaks(s->body) || breaks(s->else_body)) return true;
    }
    return false;
  }

  void expect_assignable(const TypePtr& target, Expr& e, const std::string& what) {
    TypePtr t = check(e, target);
    if (!assignable(target, t))
      type_error("cannot use " + tname(t) + " as " + tname(target) + " in " + what, e.loc);
  }

  void check_stmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl: {
        check_decl_type(s.decl_type, s.loc);
        if (s.decl_type->kind == TypeKind::Qubit)
          type_error("qubits can only be allocated with 'using'", s.loc);
        if (s.decl_type->kind == TypeKind::Unit) type_error("variables cannot have type unit", s.loc);
        for (auto& d : s.decls) {
          if (d.init) {
            if (s.decl_type->kind == TypeKind::Timer)
              type_error("timer '" + d.name + "' cannot be initialized", d.loc);
            expect_assignable(s.decl_type, *d.init, "initializer of '" + d.name + "'");
          }
          d.unique = declare(d.name, s.decl_type, d.loc);
        }
        break;
      }
      case StmtKind::Assign: {
        TypePtr target = check_lvalue(*s.target);
        if (s.assign_op == "=") {
          expect_assignable(target, *s.value, "assignment");
        } else {
          TypePtr v = check(*s.value);
          TypePtr r = arith(s.assign_op.substr(0, 1), target, v, s.loc);
          if (!assignable(target, r))
            type_error("compound assignment produces " + tname(r) + ", not " + tname(target), s.loc);
        }
        break;
      }
      case StmtKind::If:
        expect_bool(*s.cond, "if condition");
        check_block(s.body);
        check_block(s.else_body);
        break;
      case StmtKind::While:
        expect_bool(*s.cond, "while condition");
        ++loops_;
        check_block(s.body);
        --loops_;
        break;
      case StmtKind::Break:
      case StmtKind::Continue:
        if (loops_ == 0) type_error("'break'/'continue' outside a loop", s.loc);
        break;
      case StmtKind::Return:
        if (!s.expr) {
          if (info_->ret->kind != TypeKind::Unit)
            type_error("operation '" + info_->name + "' must return " + tname(info_->ret), s.loc);
        } else {
          expect_assignable(info_->ret, *s.expr, "return value");
        }
        break;
      case StmtKind::Using: {
        scopes_.emplace_back();
        for (auto& q : s.qubits) {
          if (q.type->kind != TypeKind::Qubit) type_error("'using' binds qubits only", q.loc);
          q.unique = declare(q.name, q.type, q.loc);
        }
        live_qubits_ += static_cast<int>(s.qubits.size());
        info_->max_using = std::max(info_->max_using, live_qubits_);
        if (live_qubits_ > cfg_.qubit_count)
          type_error("'using' needs " + std::to_string(live_qubits_) + " qubits but the platform has " +
                         std::to_string(cfg_.qubit_count),
                     s.loc);
        check_block(s.body);
        live_qubits_ -= static_cast<int>(s.qubits.size());
        scopes_.pop_back();
        break;
      }
      case StmtKind::ExprStmt:
        check(*s.expr);
        break;
      case StmtKind::Block:
        check_block(s.body);
        break;
    }
  }

  void expect_bool(Expr& e, const std::string& what) {
    TypePtr t = check(e);
    if (t->kind != TypeKind::Bool) type_error(what + " must be bool, found " + tname(t), e.loc);
  }

  TypePtr check_lvalue(Expr& e) {
    if (e.kind == ExprKind::Name) {
      TypePtr t = check(e);
      if (e.ref != RefKind::Local) type_error("cannot assign to '" + e.name + "'", e.loc);
      if (t->kind == TypeKind::Qubit || t->kind == TypeKind::Timer)
        type_error("cannot assign to " + tname(t) + " variable '" + e.name + "'", e.loc);
      return t;
    }
    if (e.kind == ExprKind::Index) {
      Expr* root = &e;
      while (root->kind == ExprKind::Index) {
        if (root->args[0]->kind == ExprKind::Index || root->args[0]->kind == ExprKind::Name) {
          root = root->args[0].get();
        } else {
          type_error("assignment target must be a variable or an array element", e.loc);
        }
      }
      TypePtr t = check(e);
      if (root->ref != RefKind::Local) type_error("cannot assign to '" + root->name + "'", e.loc);
      for (Expr* x = &e; x->kind == ExprKind::Index; x = x->args[0].get())
        if (x->args[0]->type->kind != TypeKind::Array) type_error("tuple elements cannot be assigned", x->loc);
      return t;
    }
    type_error("expression is not assignable", e.loc);
  }

  TypePtr arith(const std::string& op, const TypePtr& a, const TypePtr& b, const SourceLoc& loc) {
    auto bad = [&]() -> TypePtr {
      type_error("operator '" + op + "' cannot combine " + tname(a) + " and " + tname(b), loc);
    };
    TypeKind ka = a->kind, kb = b->kind;
    if (ka == TypeKind::Time || kb == TypeKind::Time) {
      if ((op == "+" || op == "-") && ka == TypeKind::Time && kb == TypeKind::Time) return types::time();
      if (op == "*" && ka == TypeKind::Time && is_numeric(b)) return types::time();
      if (op == "*" && kb == TypeKind::Time && is_numeric(a)) return types::time();
      if (op == "/" && ka == TypeKind::Time && is_numeric(b)) return types::time();
      return bad();
    }
    if (!is_numeric(a) || !is_numeric(b)) return bad();
    if (op == "%") {
      if (ka != TypeKind::Int || kb != TypeKind::Int) return bad();
      return types::integer();
    }
    if (ka == TypeKind::Int && kb == TypeKind::Int) return types::integer();
    return types::real();
  }

  TypePtr set(Expr& e, TypePtr t) {
    e.type = t;
    return t;
  }

  TypePtr check(Expr& e, const TypePtr& expected = nullptr) {
    switch (e.kind) {
      case ExprKind::IntLit: return set(e, types::integer());
      case ExprKind::DoubleLit: return set(e, types::real());
      case ExprKind::BoolLit: return set(e, types::boolean());
      case ExprKind::TimeLit:
        if (unit_scale_ns(e.name) == 0) type_error("unknown time unit '" + e.name + "'", e.loc);
        return set(e, types::time());
      case ExprKind::Name: {
        if (const Local* l = find_local(e.name)) {
          e.ref = RefKind::Local;
          e.resolved = l->unique;
          return set(e, l->type);
        }
        if (e.name == "PI") {
          e.ref = RefKind::Constant;
          e.resolved = "PI";
          return set(e, types::real());
        }
        if (!lookup_op(unit_, e.name, e.loc, true).empty())
          type_error("operation '" + e.name + "' used as a value", e.loc);
        type_error("use of undeclared identifier '" + e.name + "'", e.loc);
      }
      case ExprKind::Unary: {
        TypePtr t = check(*e.args[0]);
        if (e.name == "!") {
          if (t->kind != TypeKind::Bool) type_error("operator '!' needs bool, found " + tname(t), e.loc);
          return set(e, t);
        }
        if (!is_numeric(t) && t->kind != TypeKind::Time)
          type_error("unary '-' needs a number or time, found " + tname(t), e.loc);
        return set(e, t);
      }
      case ExprKind::Binary: {
        const std::string& op = e.name;
        TypePtr a = check(*e.args[0]);
        TypePtr b = check(*e.args[1]);
        if (op == "&&" || op == "||") {
          if (a->kind != TypeKind::Bool || b->kind != TypeKind::Bool)
            type_error("operator '" + op + "' needs bool operands", e.loc);
          return set(e, types::boolean());
        }
        if (op == "==" || op == "!=") {
          bool ok = (is_numeric(a) && is_numeric(b)) ||
                    (type_equal(a, b) && (a->kind == TypeKind::Bool || a->kind == TypeKind::Time));
          if (!ok) type_error("cannot compare " + tname(a) + " with " + tname(b), e.loc);
          return set(e, types::boolean());
        }
        if (op == "<" || op == "<=" || op == ">" || op == ">=") {
          bool ok = (is_numeric(a) && is_numeric(b)) || (a->kind == TypeKind::Time && b->kind == TypeKind::Time);
          if (!ok) type_error("cannot order " + tname(a) + " and " + tname(b), e.loc);
          return set(e, types::boolean());
        }
        return set(e, arith(op, a, b, e.loc));
      }
      case ExprKind::Call: return check_call(e);
      case ExprKind::Index: {
        TypePtr base = check(*e.args[0]);
        if (base->kind == TypeKind::Array) {
          TypePtr ix = check(*e.args[1]);
          if (ix->kind != TypeKind::Int) type_error("array index must be int, found " + tname(ix), e.args[1]->loc);
          return set(e, base->elem());
        }
        if (base->kind == TypeKind::Tuple) {
          check(*e.args[1]);
          if (e.args[1]->kind != ExprKind::IntLit) type_error("tuple index must be an integer literal", e.args[1]->loc);
          int64_t k = e.args[1]->int_value;
          if (k < 0 || k >= static_cast<int64_t>(base->elems.size()))
            type_error("tuple index " + std::to_string(k) + " out of range for " + tname(base), e.loc);
          return set(e, base->elems[static_cast<size_t>(k)]);
        }
        type_error("cannot index a value of type " + tname(base), e.loc);
      }
      case ExprKind::Length: {
        TypePtr base = check(*e.args[0]);
        if (base->kind != TypeKind::Array) type_error("'.length' needs an array, found " + tname(base), e.loc);
        return set(e, types::integer());
      }
      case ExprKind::ArrayLit: {
        TypePtr want_elem = expected && expected->kind == TypeKind::Array ? expected->elem() : nullptr;
        if (e.args.empty()) {
          if (!want_elem) type_error("cannot infer the type of an empty array", e.loc);
          return set(e, expected);
        }
        TypePtr elem;
        for (auto& a : e.args) {
          TypePtr t = check(*a, want_elem);
          if (!storable_elem(t)) type_error("qubits and timers cannot be stored in arrays", a->loc);
          if (!elem) {
            elem = t;
          } else {
            TypePtr u = unify(elem, t);
            if (!u) type_error("array elements must share one type: " + tname(elem) + " vs " + tname(t), a->loc);
            elem = u;
          }
        }
        if (want_elem && assignable(want_elem, elem)) elem = want_elem;
        return set(e, types::array(elem));
      }
      case ExprKind::TupleLit: {
        std::vector<TypePtr> es;
        for (size_t i = 0; i < e.args.size(); ++i) {
          TypePtr want = expected && expected->kind == TypeKind::Tuple && i < expected->elems.size()
                             ? expected->elems[i]
                             : nullptr;
          TypePtr t = check(*e.args[i], want);
          if (!storable_elem(t)) type_error("qubits and timers cannot be stored in tuples", e.args[i]->loc);
          es.push_back(t);
        }
        return set(e, types::tuple(es));
      }
      case ExprKind::Duration: {
        std::string q = lookup_op(unit_, e.name, e.loc);
        const OpInfo& op = prog_.ops.at(q);
        if (!op.opaque) type_error("duration() needs an opaque operation, '" + e.name + "' is not", e.loc);
        e.ref = RefKind::Opaque;
        e.resolved = op.name;
        return set(e, types::time());
      }
    }
    type_error("unsupported expression", e.loc);
  }

  TypePtr check_call(Expr& e) {
    std::string q = lookup_op(unit_, e.name, e.loc);
    const OpInfo& op = prog_.ops.at(q);
    e.resolved = q;
    e.ref = op.opaque ? RefKind::Opaque : RefKind::Operation;
    if (e.args.size() != op.params.size())
      throw Error(Errc::ArityError,
                  "'" + e.name + "' expects " + std::to_string(op.params.size()) + " argument(s), got " +
                      std::to_string(e.args.size()),
                  e.loc);
    for (size_t i = 0; i < e.args.size(); ++i)
      expect_assignable(op.params[i], *e.args[i], "argument " + std::to_string(i + 1) + " of '" + e.name + "'");
    if (e.has_control || e.inverted) {
      if (!op.quantum || op.ret->kind != TypeKind::Unit)
        type_error("modifiers apply only to quantum operations returning unit", e.loc);
      for (auto& c : e.controls) {
        TypePtr t = check(*c);
        if (t->kind != TypeKind::Qubit) type_error("control operands must be qubits, found " + tname(t), c->loc);
      }
    }
    if (e.timing) {
      if (!op.quantum)
        throw Error(Errc::TimingOnClassical,
                    "timing annotation on '" + e.name + "', which performs no quantum operation", e.loc);
      for (auto& c : e.timing->constraints) {
        const Local* l = find_local(c.timer);
        if (!l) type_error("use of undeclared identifier '" + c.timer + "'", c.loc);
        if (l->type->kind != TypeKind::Timer)
          type_error("timing constraint compares '" + c.timer + "' of type " + tname(l->type) + "; expected a timer",
                     c.loc);
        c.timer = l->unique;
        TypePtr t = check(*c.time);
        if (t->kind != TypeKind::Time) type_error("timer must be compared with a time, found " + tname(t), c.time->loc);
      }
      for (auto& r : e.timing->resets) {
        const Local* l = find_local(r);
        if (!l) type_error("use of undeclared identifier '" + r + "'", e.loc);
        if (l->type->kind != TypeKind::Timer) type_error("'" + r + "' is not a timer", e.loc);
        r = l->unique;
      }
    }
    return set(e, op.ret);
  }

  TypedProgram& prog_;
  const PlatformConfig& cfg_;
  OpInfo* info_ = nullptr;
  size_t unit_ = 0;
  std::vector<std::map<std::string, Local>> scopes_;
  std::set<std::string> used_;
  int loops_ = 0;
  int live_qubits_ = 0;
};

}  // namespace

TypedProgram typecheck(LinkedProgram linked, const PlatformConfig& config) {
  TypedProgram prog;
  prog.linked = std::move(linked);
  Checker(prog, config).run();
  return prog;
}

TypedProgram compile_frontend(const std::vector<SourceInput>& roots, const std::vector<std::string>& search_paths,
                              const PlatformConfig& config) {
  std::vector<SourceUnit> units;
  for (const auto& r : roots) units.push_back(parse_source(r.text, r.file));
  return typecheck(resolve_imports(std::move(units), search_paths, config.package_name), config);
}

}  // namespace quingo
