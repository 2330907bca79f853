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

#include "quingo/interpreter.hpp"

#include <cmath>
#include <limits>

#include "quingo/error.hpp"

namespace quingo {

using namespace ir;

double to_double(const Value& v) {
  if (v.is<double>()) return v.as<double>();
  if (v.is<int32_t>()) return v.as<int32_t>();
  throw Error(Errc::TypeError, "expected a number, found " + value_to_text(v));
}

namespace {

int32_t wrap(int64_t x) { return static_cast<int32_t>(static_cast<uint32_t>(static_cast<uint64_t>(x))); }

int64_t time_scale(int64_t ns, double k) {
  double r = std::round(static_cast<double>(ns) * k);
  return static_cast<int64_t>(r);
}

}  // namespace

Value eval_unary(const std::string& op, const Value& a, const TypePtr& result) {
  if (op == "!") return Value(!a.as<bool>());
  if (op == "itod") return Value(to_double(a));
  if (op == "-") {
    if (a.is<TimeVal>()) return Value(TimeVal{-a.as<TimeVal>().ns});
    if (result->kind == TypeKind::Double) return Value(-to_double(a));
    return Value(wrap(-static_cast<int64_t>(a.as<int32_t>())));
  }
  throw Error(Errc::TypeError, "unknown unary operator '" + op + "'");
}

Value eval_binary(const std::string& op, const Value& a, const Value& b, const TypePtr& result) {
  if (op == "&&") return Value(a.as<bool>() && b.as<bool>());
  if (op == "||") return Value(a.as<bool>() || b.as<bool>());
  const bool cmp = op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=";
  if (cmp) {
    int c;
    if (a.is<bool>()) {
      c = static_cast<int>(a.as<bool>()) - static_cast<int>(b.as<bool>());
    } else if (a.is<TimeVal>()) {
      int64_t x = a.as<TimeVal>().ns, y = b.as<TimeVal>().ns;
      c = x < y ? -1 : (x > y ? 1 : 0);
    } else if (a.is<double>() || b.is<double>()) {
      double x = to_double(a), y = to_double(b);
      c = x < y ? -1 : (x > y ? 1 : 0);
    } else {
      int32_t x = a.as<int32_t>(), y = b.as<int32_t>();
      c = x < y ? -1 : (x > y ? 1 : 0);
    }
    if (op == "==") return Value(c == 0);
    if (op == "!=") return Value(c != 0);
    if (op == "<") return Value(c < 0);
    if (op == "<=") return Value(c <= 0);
    if (op == ">") return Value(c > 0);
    return Value(c >= 0);
  }
  if (result->kind == TypeKind::Time) {
    if (a.is<TimeVal>() && b.is<TimeVal>()) {
      int64_t x = a.as<TimeVal>().ns, y = b.as<TimeVal>().ns;
      if (op == "+") return Value(TimeVal{x + y});
      if (op == "-") return Value(TimeVal{x - y});
    } else if (a.is<TimeVal>()) {
      double k = to_double(b);
      if (op == "*") return Value(TimeVal{time_scale(a.as<TimeVal>().ns, k)});
      if (op == "/") {
        if (k == 0) throw Error(Errc::DivisionByZero, "time divided by zero");
        return Value(TimeVal{time_scale(a.as<TimeVal>().ns, 1.0 / k)});
      }
    } else if (op == "*") {
      return Value(TimeVal{time_scale(b.as<TimeVal>().ns, to_double(a))});
    }
    throw Error(Errc::TypeError, "bad time operation '" + op + "'");
  }
  if (result->kind == TypeKind::Double) {
    double x = to_double(a), y = to_double(b);
    if (op == "+") return Value(x + y);
    if (op == "-") return Value(x - y);
    if (op == "*") return Value(x * y);
    if (op == "/") {
      if (y == 0) throw Error(Errc::DivisionByZero, "division by zero");
      return Value(x / y);
    }
    throw Error(Errc::TypeError, "bad double operation '" + op + "'");
  }
  int64_t x = a.as<int32_t>(), y = b.as<int32_t>();
  if (op == "+") return Value(wrap(x + y));
  if (op == "-") return Value(wrap(x - y));
  if (op == "*") return Value(wrap(x * y));
  if (op == "/" || op == "%") {
    if (y == 0) throw Error(Errc::DivisionByZero, "division by zero");
    if (op == "/") return Value(wrap(x / y));
    return Value(wrap(x % y));
  }
  throw Error(Errc::TypeError, "bad int operation '" + op + "'");
}

namespace {

struct QopRecord {
  const OpDef* op;
  std::vector<int> qubits;
  std::vector<Value> params;
  std::vector<int> controls;
  bool inverted;
};

struct Ctx {
  std::vector<int> controls;
  std::vector<QopRecord>* record = nullptr;  // non-null inside invert
  bool modified() const { return record != nullptr || !controls.empty(); }
};

class Interp {
 public:
  Interp(const KernelIR& ir, const PlatformConfig& cfg, const InterpOptions& o, int nq)
      : ir_(ir), cfg_(cfg), opts_(o), ex_(nq, o.seed, o.zero_init), in_use_(static_cast<size_t>(nq), false) {
    ex_.strict_pulse = o.strict_pulse;
  }

  InterpResult run() {
    InterpResult r;
    r.value = call(ir_.entry_proc(), {}, Ctx{});
    r.trace = ex_.trace();
    r.qops = std::move(qops_);
    return r;
  }

 private:
  using Env = std::map<std::string, Value>;

  void tick() {
    if (++steps_ > opts_.step_budget)
      throw Error(Errc::StepBudgetExceeded, "interpreter exceeded " + std::to_string(opts_.step_budget) + " steps");
  }

  Value eval(const ExprP& e, const Env& env) {
    switch (e->op) {
      case Op::Const: return e->value;
      case Op::Var: {
        auto it = env.find(e->name);
        if (it == env.end()) throw Error(Errc::TypeError, "read of unset variable '" + e->name + "'");
        return it->second;
      }
      case Op::Unary: return eval_unary(e->name, eval(e->args[0], env), e->type);
      case Op::Binary: return eval_binary(e->name, eval(e->args[0], env), eval(e->args[1], env), e->type);
      case Op::Index: {
        Value base = eval(e->args[0], env);
        Value ix = eval(e->args[1], env);
        const auto& elems = base.is<ArrayVal>() ? base.as<ArrayVal>().elems : base.as<TupleVal>().elems;
        int32_t i = ix.as<int32_t>();
        if (i < 0 || static_cast<size_t>(i) >= elems.size())
          throw Error(Errc::IndexOutOfRange,
                      "index " + std::to_string(i) + " out of range for length " + std::to_string(elems.size()));
        return elems[static_cast<size_t>(i)];
      }
      case Op::Length: return Value(static_cast<int32_t>(eval(e->args[0], env).as<ArrayVal>().elems.size()));
      case Op::MakeTuple: {
        std::vector<Value> xs;
        for (size_t i = 0; i < e->args.size(); ++i) xs.push_back(coerce(eval(e->args[i], env), e->type->elems[i]));
        return make_tuple(std::move(xs));
      }
      case Op::MakeArray: {
        std::vector<Value> xs;
        for (const auto& a : e->args) xs.push_back(coerce(eval(a, env), e->type->elem()));
        return make_array(std::move(xs));
      }
    }
    return Value();
  }

  void store(Env& env, const Proc& p, const Instr& in, Value v) {
    TypePtr t = p.vars.at(in.dst);
    if (in.path.empty()) {
      env[in.dst] = coerce(v, t);
      return;
    }
    Value* slot = &env.at(in.dst);
    for (const auto& pe : in.path) {
      int32_t i = eval(pe, env).as<int32_t>();
      auto& elems = slot->as<ArrayVal>().elems;
      if (i < 0 || static_cast<size_t>(i) >= elems.size())
        throw Error(Errc::IndexOutOfRange,
                    "index " + std::to_string(i) + " out of range for length " + std::to_string(elems.size()));
      slot = &elems[static_cast<size_t>(i)];
      t = t->elem();
    }
    *slot = coerce(v, t);
  }

  int alloc_qubit() {
    for (size_t i = 0; i < in_use_.size(); ++i)
      if (!in_use_[i]) {
        in_use_[i] = true;
        return static_cast<int>(i);
      }
    throw Error(Errc::TooManyQubits, "no free qubit left in a " + std::to_string(in_use_.size()) + "-qubit register");
  }

  void emit_qop(const QopRecord& r, const Ctx& ctx) {
    if (ctx.record) {
      ctx.record->push_back(r);
      return;
    }
    std::string s = r.op->name;
    for (int q : r.qubits) s += " q" + std::to_string(q);
    qops_.push_back(s);
    ex_.apply_op(*r.op, r.qubits, r.params, r.controls, r.inverted);
  }

  Value opaque(const Instr& in, const Env& env, const Ctx& ctx) {
    const OpDef& op = cfg_.at(in.callee);
    QopRecord r{&op, {}, {}, ctx.controls, in.inverted};
    for (const auto& c : in.controls) r.controls.push_back(eval(c, env).as<QubitVal>().index);
    size_t k = 0;
    for (const auto& a : in.args) {
      Value v = eval(a, env);
      if (v.is<QubitVal>()) {
        r.qubits.push_back(v.as<QubitVal>().index);
      } else {
        r.params.push_back(coerce(v, op.params.at(k++).type));
      }
    }
    bool modified = ctx.modified() || !in.controls.empty() || in.inverted;
    switch (op.semantics.kind) {
      case SemKind::Measure: {
        if (modified) throw Error(Errc::ModifierError, "measurement inside a controlled or inverted operation");
        std::string s = op.name + " q" + std::to_string(r.qubits.at(0));
        qops_.push_back(s);
        return Value(ex_.measure(r.qubits.at(0)) == 1);
      }
      case SemKind::Reset:
      case SemKind::Pulse:
        if (modified)
          throw Error(Errc::ModifierError, "'" + op.name + "' inside a controlled or inverted operation");
        emit_qop(r, ctx);
        return Value();
      default:
        if (in.inverted && ctx.record == nullptr) {
          emit_qop(r, ctx);
        } else if (in.inverted) {
          ctx.record->push_back(r);
        } else {
          emit_qop(r, ctx);
        }
        return Value();
    }
  }

  Value call(const Proc& p, std::vector<Value> args, const Ctx& ctx) {
    if (++depth_ > 10000) throw Error(Errc::StepBudgetExceeded, "recursion too deep");
    Env env;
    for (size_t i = 0; i < p.params.size(); ++i) env[p.params[i]] = coerce(args.at(i), p.vars.at(p.params[i]));
    int b = p.entry;
    for (;;) {
      const Block& blk = p.blocks[b];
      for (const Instr& in : blk.instrs) {
        tick();
        switch (in.kind) {
          case InstrKind::Assign: store(env, p, in, eval(in.value, env)); break;
          case InstrKind::Call: {
            Value v;
            if (in.opaque) {
              v = opaque(in, env, ctx);
            } else {
              std::vector<Value> av;
              for (const auto& a : in.args) av.push_back(eval(a, env));
              Ctx inner = ctx;
              for (const auto& c : in.controls) inner.controls.push_back(eval(c, env).as<QubitVal>().index);
              const Proc& callee = ir_.procs.at(in.callee);
              if (in.inverted) {
                std::vector<QopRecord> rec;
                inner.record = &rec;
                v = call(callee, std::move(av), inner);
                for (auto it = rec.rbegin(); it != rec.rend(); ++it) {
                  QopRecord r = *it;
                  r.inverted = !r.inverted;
                  emit_qop(r, ctx);
                }
              } else {
                v = call(callee, std::move(av), inner);
              }
            }
            if (!in.dst.empty()) store(env, p, in, v);
            break;
          }
          case InstrKind::TimerReset:
            for (const auto& v : in.vars) env[v] = Value(TimerVal{v + "#" + std::to_string(timers_++)});
            break;
          case InstrKind::Alloc:
            for (const auto& v : in.vars) env[v] = Value(QubitVal{alloc_qubit()});
            for (const auto& a : in.args) {
              int q = eval(a, env).as<QubitVal>().index;
              if (q < 0 || static_cast<size_t>(q) >= in_use_.size() || in_use_[q])
                throw Error(Errc::TooManyQubits, "qubit q" + std::to_string(q) + " unavailable");
              in_use_[q] = true;
            }
            break;
          case InstrKind::Free:
            for (const auto& a : in.args) in_use_.at(eval(a, env).as<QubitVal>().index) = false;
            break;
        }
      }
      tick();
      const Terminator& t = blk.term;
      if (t.kind == TermKind::Jump) {
        b = t.then_block;
      } else if (t.kind == TermKind::Branch) {
        b = eval(t.cond, env).as<bool>() ? t.then_block : t.else_block;
      } else {
        --depth_;
        if (!t.value) return Value();
        return coerce(eval(t.value, env), p.ret);
      }
    }
  }

  const KernelIR& ir_;
  const PlatformConfig& cfg_;
  InterpOptions opts_;
  QuantumExecutor ex_;
  std::vector<bool> in_use_;
  std::vector<std::string> qops_;
  int64_t steps_ = 0;
  int depth_ = 0;
  int timers_ = 0;
};

}  // namespace

InterpResult interpret(const KernelIR& ir, const PlatformConfig& cfg, const InterpOptions& opts) {
  int nq = opts.num_qubits >= 0 ? opts.num_qubits : std::min(cfg.qubit_count, 12);
  return Interp(ir, cfg, opts, nq).run();
}

}  // namespace quingo
