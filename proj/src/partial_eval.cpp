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

#include "quingo/partial_eval.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>

#include "quingo/error.hpp"
#include "quingo/interpreter.hpp"

namespace quingo {

using namespace ir;

namespace {

TypePtr kind_type(TypeKind k) {
  switch (k) {
    case TypeKind::Bool: return types::boolean();
    case TypeKind::Double: return types::real();
    default: return types::integer();
  }
}

std::string vname(int v) { return "%" + std::to_string(v); }

[[noreturn]] void unsupported(const std::string& what) {
  throw Error(Errc::DynamicUnsupported, what + " on a measurement-dependent value is not supported");
}

struct Frame {
  const Proc* proc = nullptr;
  int block = 0;
  size_t pc = 0;
  std::map<std::string, Value> env;
  std::string ret_dst;
  std::vector<int> controls;
  int buf = -1;  // invert buffer receiving this frame's quantum operations
  bool owns_buf = false;
  std::set<int> dyn_headers;  // loop headers whose exit test was dynamic

  bool modified() const { return buf >= 0 || !controls.empty(); }
};

struct Pending {
  Timing timing;
  size_t depth = 0;  // frame count while the annotated call is active
};

struct State {
  std::vector<Frame> frames;
  std::vector<bool> used;
  std::vector<std::vector<Instr>> bufs;
  std::optional<Pending> pending;
};

void visit_leaves(Value& v, const std::function<void(DynVal&)>& f) {
  if (v.is<DynVal>()) {
    f(v.as<DynVal>());
  } else if (v.is<TupleVal>()) {
    for (auto& e : v.as<TupleVal>().elems) visit_leaves(e, f);
  } else if (v.is<ArrayVal>()) {
    for (auto& e : v.as<ArrayVal>().elems) visit_leaves(e, f);
  }
}

std::string canon(const Value& v) {
  if (v.is<DynVal>()) return "D" + std::to_string(static_cast<int>(v.as<DynVal>().kind));
  if (v.is<TupleVal>() || v.is<ArrayVal>()) {
    const auto& es = v.is<TupleVal>() ? v.as<TupleVal>().elems : v.as<ArrayVal>().elems;
    std::string s = v.is<TupleVal>() ? "(" : "[";
    for (const auto& e : es) s += canon(e) + ",";
    return s + (v.is<TupleVal>() ? ")" : "]");
  }
  if (v.is<double>()) {
    // Bit-exact for memo keys.
    uint64_t bits;
    double d = v.as<double>();
    std::memcpy(&bits, &d, sizeof bits);
    return "d" + std::to_string(bits);
  }
  return value_to_text(v);
}

class PartialEvaluator {
 public:
  PartialEvaluator(const KernelIR& ir, const PlatformConfig& cfg, const PeOptions& opts)
      : ir_(ir), cfg_(cfg), opts_(opts) {}

  KernelIR run() {
    const Proc& entry = ir_.entry_proc();
    out_.name = "main";
    out_.ret = entry.ret;
    if (!entry.params.empty()) throw Error(Errc::ArgTypeError, "kernel entry must take no parameters");
    State s;
    s.used.assign(static_cast<size_t>(cfg_.qubit_count), false);
    Frame f;
    f.proc = &entry;
    f.block = entry.entry;
    s.frames.push_back(std::move(f));
    out_.entry = new_block();
    work_.emplace_back(std::move(s), out_.entry);
    while (!work_.empty()) {
      auto [st, blk] = std::move(work_.front());
      work_.pop_front();
      run_path(st, blk);
    }
    cleanup(out_);
    KernelIR res;
    res.entry = "main";
    res.procs["main"] = std::move(out_);
    return res;
  }

 private:
  // ---- residual construction ----
  int new_block() {
    out_.blocks.emplace_back();
    return static_cast<int>(out_.blocks.size()) - 1;
  }

  int fresh(TypeKind k) {
    int v = next_vreg_++;
    out_.vars[vname(v)] = kind_type(k);
    return v;
  }

  void put(Instr in) {
    if (++residual_size_ > opts_.residual_budget)
      throw Error(Errc::StepBudgetExceeded,
                  "residual program exceeds " + std::to_string(opts_.residual_budget) + " instructions");
    out_.blocks[cur_].instrs.push_back(std::move(in));
  }

  void assign(const std::string& dst, ExprP v) {
    Instr in;
    in.kind = InstrKind::Assign;
    in.dst = dst;
    in.value = std::move(v);
    put(std::move(in));
  }

  // Quantum operations go to the innermost invert buffer, if any.
  void put_quantum(State& s, Instr in) {
    const Frame& f = s.frames.back();
    if (f.buf >= 0) {
      s.bufs[static_cast<size_t>(f.buf)].push_back(std::move(in));
    } else {
      put(std::move(in));
    }
  }

  void tick() {
    if (++steps_ > opts_.step_budget)
      throw Error(Errc::StepBudgetExceeded,
                  "partial evaluation exceeded " + std::to_string(opts_.step_budget) + " steps");
  }

  // ---- dynamic values ----
  std::string to_var(const Value& v, TypeKind want) {
    if (v.is<DynVal>()) {
      const DynVal& d = v.as<DynVal>();
      if (d.kind == want) return vname(d.vreg);
      if (d.kind == TypeKind::Int && want == TypeKind::Double) {
        int r = fresh(TypeKind::Double);
        assign(vname(r), unary("itod", var(vname(d.vreg), types::integer()), types::real()));
        return vname(r);
      }
      throw Error(Errc::TypeError, "internal: dynamic value kind mismatch");
    }
    int r = fresh(want);
    assign(vname(r), cst(coerce(v, kind_type(want)), kind_type(want)));
    return vname(r);
  }

  Value coerce_pe(const Value& v, const TypePtr& t) {
    if (is_static(v)) return coerce(v, t);
    if (v.is<DynVal>()) {
      const DynVal& d = v.as<DynVal>();
      if (t->kind == TypeKind::Double && d.kind == TypeKind::Int) {
        std::string r = to_var(v, TypeKind::Double);
        return Value(DynVal{std::stoi(r.substr(1)), TypeKind::Double});
      }
      return v;
    }
    if (v.is<TupleVal>()) {
      std::vector<Value> es;
      for (size_t i = 0; i < t->elems.size(); ++i) es.push_back(coerce_pe(v.as<TupleVal>().elems[i], t->elems[i]));
      return make_tuple(std::move(es));
    }
    std::vector<Value> es;
    for (const auto& e : v.as<ArrayVal>().elems) es.push_back(coerce_pe(e, t->elem()));
    return make_array(std::move(es));
  }

  static TypeKind scalar_kind(const Value& v) {
    if (v.is<DynVal>()) return v.as<DynVal>().kind;
    if (v.is<bool>()) return TypeKind::Bool;
    if (v.is<double>()) return TypeKind::Double;
    if (v.is<int32_t>()) return TypeKind::Int;
    if (v.is<TimeVal>()) return TypeKind::Time;
    return TypeKind::Unit;
  }

  Value dyn_binary(const std::string& op, const Value& a, const Value& b, const TypePtr& result) {
    TypeKind ka = scalar_kind(a), kb = scalar_kind(b);
    if (result->kind == TypeKind::Time || ka == TypeKind::Time || kb == TypeKind::Time) unsupported("time arithmetic");
    if (op == "&&" || op == "||") {
      // Partial short-circuit on a static operand.
      for (const Value* s : {&a, &b}) {
        if (!s->is<bool>()) continue;
        bool x = s->as<bool>();
        const Value& other = s == &a ? b : a;
        if (op == "&&") return x ? other : Value(false);
        return x ? Value(true) : other;
      }
    }
    TypeKind operand;
    bool cmp = op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=";
    if (cmp) {
      operand = (ka == TypeKind::Double || kb == TypeKind::Double) ? TypeKind::Double : ka;
    } else {
      operand = result->kind;
    }
    if (operand == TypeKind::Int && (op == "/" || op == "%")) unsupported("integer division");
    if (operand == TypeKind::Double && op == "/") unsupported("double division");
    std::string x = to_var(a, operand), y = to_var(b, operand);
    TypePtr ot = kind_type(operand);
    TypeKind rk = cmp ? TypeKind::Bool : result->kind;
    int r = fresh(rk);
    assign(vname(r), binary(op, var(x, ot), var(y, ot), kind_type(rk)));
    return Value(DynVal{r, rk});
  }

  Value peval(const ExprP& e, Frame& f) {
    switch (e->op) {
      case Op::Const: return e->value;
      case Op::Var: {
        auto it = f.env.find(e->name);
        if (it == f.env.end()) throw Error(Errc::TypeError, "read of unset variable '" + e->name + "'");
        return it->second;
      }
      case Op::Unary: {
        Value a = peval(e->args[0], f);
        if (is_static(a)) return eval_unary(e->name, a, e->type);
        const DynVal& d = a.as<DynVal>();
        TypeKind rk = e->name == "itod" ? TypeKind::Double : (e->name == "!" ? TypeKind::Bool : d.kind);
        int r = fresh(rk);
        assign(vname(r), unary(e->name, var(vname(d.vreg), kind_type(d.kind)), kind_type(rk)));
        return Value(DynVal{r, rk});
      }
      case Op::Binary: {
        Value a = peval(e->args[0], f);
        Value b = peval(e->args[1], f);
        if (is_static(a) && is_static(b)) return eval_binary(e->name, a, b, e->type);
        return dyn_binary(e->name, a, b, e->type);
      }
      case Op::Index: {
        Value base = peval(e->args[0], f);
        Value ix = peval(e->args[1], f);
        if (!is_static(ix)) unsupported("array indexing");
        const auto& elems = base.is<ArrayVal>() ? base.as<ArrayVal>().elems : base.as<TupleVal>().elems;
        int32_t i = ix.as<int32_t>();
        if (i < 0 || static_cast<size_t>(i) >= elems.size())
          throw Error(Errc::IndexOutOfRange,
                      "index " + std::to_string(i) + " out of range for length " + std::to_string(elems.size()));
        return elems[static_cast<size_t>(i)];
      }
      case Op::Length: return Value(static_cast<int32_t>(peval(e->args[0], f).as<ArrayVal>().elems.size()));
      case Op::MakeTuple: {
        std::vector<Value> xs;
        for (size_t i = 0; i < e->args.size(); ++i) xs.push_back(coerce_pe(peval(e->args[i], f), e->type->elems[i]));
        return make_tuple(std::move(xs));
      }
      case Op::MakeArray: {
        std::vector<Value> xs;
        for (const auto& a : e->args) xs.push_back(coerce_pe(peval(a, f), e->type->elem()));
        return make_array(std::move(xs));
      }
    }
    return Value();
  }

  ExprP materialize(const Value& v, const TypePtr& t) {
    if (is_static(v)) return cst(coerce(v, t), t);
    if (v.is<DynVal>()) return var(vname(v.as<DynVal>().vreg), kind_type(v.as<DynVal>().kind));
    std::vector<ExprP> xs;
    if (v.is<TupleVal>()) {
      for (size_t i = 0; i < t->elems.size(); ++i) xs.push_back(materialize(v.as<TupleVal>().elems[i], t->elems[i]));
      return make_tuple(std::move(xs), t);
    }
    for (const auto& e : v.as<ArrayVal>().elems) xs.push_back(materialize(e, t->elem()));
    return ir::make_array(std::move(xs), t);
  }

  // ---- liveness / memo keys ----
  const Liveness& live(const Proc* p) {
    auto it = live_.find(p);
    if (it == live_.end()) it = live_.emplace(p, liveness(*p)).first;
    return it->second;
  }

  int header_of_test(const Proc* p, int block) {
    auto it = tests_.find(p);
    if (it == tests_.end()) {
      std::map<int, int> m;
      for (size_t b = 0; b < p->blocks.size(); ++b)
        if (p->blocks[b].loop_header) m[p->blocks[b].loop_test] = static_cast<int>(b);
      it = tests_.emplace(p, std::move(m)).first;
    }
    auto f = it->second.find(block);
    return f == it->second.end() ? -1 : f->second;
  }

  void drop_dead(State& s) {
    for (size_t i = 0; i < s.frames.size(); ++i) {
      Frame& f = s.frames[i];
      const Liveness& lv = live(f.proc);
      std::set<std::string> keep;
      if (i + 1 == s.frames.size()) {
        keep = f.pc == 0 ? lv.live_in[f.block] : live_before(*f.proc, lv, f.block, f.pc);
      } else {
        keep = live_before(*f.proc, lv, f.block, f.pc + 1);
        keep.erase(s.frames[i + 1].ret_dst);
      }
      for (auto it = f.env.begin(); it != f.env.end();) {
        if (keep.count(it->first)) {
          ++it;
        } else {
          it = f.env.erase(it);
        }
      }
    }
  }

  std::string key(const State& s) {
    std::ostringstream os;
    for (const Frame& f : s.frames) {
      os << f.proc->name << '|' << f.block << '|' << f.pc << '|' << f.ret_dst << '|';
      for (const auto& [k, v] : f.env) os << k << '=' << canon(v) << ';';
      os << '\n';
    }
    for (bool u : s.used) os << (u ? '1' : '0');
    if (s.pending) {
      Instr tmp;
      tmp.kind = InstrKind::Call;
      tmp.timing = s.pending->timing;
      os << "|pending " << instr_to_string(tmp) << ' ' << s.pending->depth;
    }
    return os.str();
  }

  static std::vector<DynVal*> leaves(State& s) {
    std::vector<DynVal*> out;
    for (Frame& f : s.frames)
      for (auto& [k, v] : f.env) visit_leaves(v, [&](DynVal& d) { out.push_back(&d); });
    return out;
  }

  struct Memo {
    int block;
    std::vector<int> params;
  };

  // Residual block continuing from `s` (at a block entry); emits the
  // parallel copies into the memoized block's parameters.
  int edge(State s) {
    drop_dead(s);
    if (!s.bufs.empty() || s.frames.back().modified())
      throw Error(Errc::ModifierError, "measurement-dependent control flow inside a controlled or inverted operation");
    std::string k = key(s);
    std::vector<DynVal*> ls = leaves(s);
    auto it = memo_.find(k);
    if (it == memo_.end()) {
      Memo m;
      m.block = new_block();
      State copy = s;
      std::vector<DynVal*> cl = leaves(copy);
      for (DynVal* d : cl) {
        int p = fresh(d->kind);
        m.params.push_back(p);
        d->vreg = p;
      }
      out_.blocks[m.block].join = true;
      for (int p : m.params) out_.blocks[m.block].params.push_back(vname(p));
      it = memo_.emplace(k, m).first;
      work_.emplace_back(std::move(copy), m.block);
    }
    const Memo& m = it->second;
    std::vector<std::pair<int, int>> copies;  // (param, source)
    std::set<int> params(m.params.begin(), m.params.end());
    bool clash = false;
    for (size_t i = 0; i < ls.size(); ++i) {
      if (ls[i]->vreg == m.params[i]) continue;
      copies.emplace_back(m.params[i], ls[i]->vreg);
      if (params.count(ls[i]->vreg)) clash = true;
    }
    if (copies.empty()) return m.block;
    int saved = cur_;
    cur_ = new_block();
    int e = cur_;
    if (clash) {
      std::vector<std::pair<int, int>> staged;
      for (auto [p, src] : copies) {
        TypeKind kd = ls[0]->kind;
        for (size_t i = 0; i < ls.size(); ++i)
          if (ls[i]->vreg == src) kd = ls[i]->kind;
        int t = fresh(kd);
        assign(vname(t), var(vname(src), kind_type(kd)));
        staged.emplace_back(p, t);
      }
      copies = staged;
    }
    for (auto [p, src] : copies) assign(vname(p), var(vname(src), out_.vars.at(vname(src))));
    out_.blocks[e].term = Terminator{TermKind::Jump, nullptr, nullptr, m.block, -1};
    cur_ = saved;
    return e;
  }

  // Lifts static scalars of `names` in the top frame to registers.
  void generalize(State& s, const std::set<std::string>& names) {
    Frame& f = s.frames.back();
    for (const auto& n : names) {
      auto it = f.env.find(n);
      if (it == f.env.end()) continue;
      std::function<void(Value&)> lift = [&](Value& v) {
        if (v.is<TupleVal>()) {
          for (auto& e : v.as<TupleVal>().elems) lift(e);
        } else if (v.is<ArrayVal>()) {
          for (auto& e : v.as<ArrayVal>().elems) lift(e);
        } else if (v.is<bool>() || v.is<int32_t>() || v.is<double>()) {
          TypeKind k = scalar_kind(v);
          int r = fresh(k);
          assign(vname(r), cst(v, kind_type(k)));
          v = Value(DynVal{r, k});
        }
      };
      lift(it->second);
    }
  }

  // ---- driving ----
  // Moves the top frame to `target`; returns false when the path ended at
  // a memoized join.
  bool go(State& s, int target) {
    Frame& f = s.frames.back();
    f.block = target;
    f.pc = 0;
    const Block& b = f.proc->blocks[static_cast<size_t>(target)];
    bool join_in = b.join && !b.params.empty();
    if ((b.loop_header && f.dyn_headers.count(target)) || join_in) {
      drop_dead(s);
      if (join_in) {
        generalize(s, std::set<std::string>(b.params.begin(), b.params.end()));
      } else {
        generalize(s, b.loop_assigned);
      }
      int t = edge(s);
      out_.blocks[cur_].term = Terminator{TermKind::Jump, nullptr, nullptr, t, -1};
      return false;
    }
    return true;
  }

  void run_path(State& s, int blk) {
    cur_ = blk;
    for (;;) {
      tick();
      Frame& f = s.frames.back();
      const Block& b = f.proc->blocks[static_cast<size_t>(f.block)];
      if (f.pc < b.instrs.size()) {
        exec(s, b.instrs[f.pc]);
        continue;
      }
      const Terminator& t = b.term;
      if (t.kind == TermKind::Jump) {
        if (!go(s, t.then_block)) return;
        continue;
      }
      if (t.kind == TermKind::Branch) {
        Value c = peval(t.cond, f);
        if (is_static(c)) {
          if (!go(s, c.as<bool>() ? t.then_block : t.else_block)) return;
          continue;
        }
        if (f.modified() || !s.bufs.empty())
          throw Error(Errc::ModifierError, "measurement-dependent branch inside a controlled or inverted operation");
        int h = header_of_test(f.proc, f.block);
        if (h >= 0) f.dyn_headers.insert(h);
        std::string cv = to_var(c, TypeKind::Bool);
        State ts = s, es = s;
        ts.frames.back().block = t.then_block;
        ts.frames.back().pc = 0;
        es.frames.back().block = t.else_block;
        es.frames.back().pc = 0;
        int from = cur_;
        int tb = edge(std::move(ts));
        int eb = edge(std::move(es));
        out_.blocks[from].term = Terminator{TermKind::Branch, var(cv, types::boolean()), nullptr, tb, eb};
        return;
      }
      // Return
      Value v = t.value ? coerce_pe(peval(t.value, f), f.proc->ret) : Value();
      Frame done = std::move(s.frames.back());
      s.frames.pop_back();
      if (s.pending && s.pending->depth > s.frames.size()) s.pending.reset();
      if (done.owns_buf) {
        std::vector<Instr> ops = std::move(s.bufs.back());
        s.bufs.pop_back();
        std::reverse(ops.begin(), ops.end());
        for (auto& q : ops) {
          q.inverted = !q.inverted;
          if (!s.frames.empty()) {
            put_quantum(s, std::move(q));
          } else {
            put(std::move(q));
          }
        }
      }
      if (s.frames.empty()) {
        out_.blocks[cur_].term = Terminator{TermKind::Return, nullptr, t.value ? materialize(v, done.proc->ret) : nullptr,
                                            -1, -1};
        return;
      }
      Frame& caller = s.frames.back();
      if (!done.ret_dst.empty()) caller.env[done.ret_dst] = coerce_pe(v, caller.proc->vars.at(done.ret_dst));
      caller.pc++;
    }
  }

  Timing static_timing(const Timing& t, Frame& f) {
    Timing out;
    for (const auto& c : t.constraints) {
      Value tm = peval(c.timer, f);
      Value tv = peval(c.time, f);
      if (!is_static(tv)) unsupported("timing constraint");
      out.constraints.push_back({cst(tm, types::timer()), c.cmp, cst(tv, types::time())});
    }
    for (const auto& r : t.resets) out.resets.push_back(cst(peval(r, f), types::timer()));
    return out;
  }

  int alloc_qubit(State& s) {
    for (size_t i = 0; i < s.used.size(); ++i)
      if (!s.used[i]) {
        s.used[i] = true;
        return static_cast<int>(i);
      }
    throw Error(Errc::TooManyQubits,
                "kernel needs more than the platform's " + std::to_string(s.used.size()) + " qubits");
  }

  void exec(State& s, const Instr& in) {
    Frame& f = s.frames.back();
    switch (in.kind) {
      case InstrKind::Assign: {
        Value v = peval(in.value, f);
        TypePtr t = f.proc->vars.at(in.dst);
        if (in.path.empty()) {
          f.env[in.dst] = coerce_pe(v, t);
        } else {
          std::vector<int32_t> idx;
          for (const auto& p : in.path) {
            Value i = peval(p, f);
            if (!is_static(i)) unsupported("array element assignment");
            idx.push_back(i.as<int32_t>());
          }
          Value* slot = &f.env.at(in.dst);
          for (int32_t i : idx) {
            auto& elems = slot->as<ArrayVal>().elems;
            if (i < 0 || static_cast<size_t>(i) >= elems.size())
              throw Error(Errc::IndexOutOfRange,
                          "index " + std::to_string(i) + " out of range for length " + std::to_string(elems.size()));
            slot = &elems[static_cast<size_t>(i)];
            t = t->elem();
          }
          *slot = coerce_pe(v, t);
        }
        f.pc++;
        return;
      }
      case InstrKind::Call:
        if (in.opaque) {
          call_opaque(s, in);
          s.frames.back().pc++;
        } else {
          call_user(s, in);
        }
        return;
      case InstrKind::TimerReset: {
        if (f.modified()) throw Error(Errc::ModifierError, "timer inside a controlled or inverted operation");
        Instr r;
        r.kind = InstrKind::TimerReset;
        for (const auto& v : in.vars) {
          std::string id = f.proc->name + "." + v + "#" + std::to_string(s.frames.size() - 1);
          f.env[v] = Value(TimerVal{id});
          r.args.push_back(cst(Value(TimerVal{id}), types::timer()));
        }
        for (const auto& a : in.args) r.args.push_back(cst(peval(a, f), types::timer()));
        put(std::move(r));
        f.pc++;
        return;
      }
      case InstrKind::Alloc: {
        Instr r;
        r.kind = InstrKind::Alloc;
        for (const auto& v : in.vars) {
          int q = alloc_qubit(s);
          f.env[v] = Value(QubitVal{q});
          r.args.push_back(cst(Value(QubitVal{q}), types::qubit()));
        }
        for (const auto& a : in.args) {
          Value q = peval(a, f);
          int i = q.as<QubitVal>().index;
          if (i < 0 || static_cast<size_t>(i) >= s.used.size() || s.used[i])
            throw Error(Errc::TooManyQubits, "qubit q" + std::to_string(i) + " unavailable");
          s.used[i] = true;
          r.args.push_back(cst(q, types::qubit()));
        }
        put(std::move(r));
        f.pc++;
        return;
      }
      case InstrKind::Free: {
        Instr r;
        r.kind = InstrKind::Free;
        for (const auto& a : in.args) {
          Value q = peval(a, f);
          s.used.at(q.as<QubitVal>().index) = false;
          r.args.push_back(cst(q, types::qubit()));
        }
        put(std::move(r));
        f.pc++;
        return;
      }
    }
  }

  void call_opaque(State& s, const Instr& in) {
    Frame& f = s.frames.back();
    const OpDef& op = cfg_.at(in.callee);
    Instr q;
    q.kind = InstrKind::Call;
    q.opaque = true;
    q.callee = in.callee;
    q.inverted = in.inverted;
    for (int c : f.controls) q.controls.push_back(cst(Value(QubitVal{c}), types::qubit()));
    for (const auto& c : in.controls) {
      Value v = peval(c, f);
      q.controls.push_back(cst(v, types::qubit()));
    }
    size_t k = 0;
    for (const auto& a : in.args) {
      Value v = peval(a, f);
      if (v.is<QubitVal>()) {
        q.args.push_back(cst(v, types::qubit()));
      } else {
        const TypePtr& pt = op.params.at(k++).type;
        q.args.push_back(materialize(coerce_pe(v, pt), pt));
      }
    }
    Timing own = static_timing(in.timing, f);
    if (s.pending) {
      Timing t = s.pending->timing;
      t.constraints.insert(t.constraints.end(), own.constraints.begin(), own.constraints.end());
      t.resets.insert(t.resets.end(), own.resets.begin(), own.resets.end());
      own = std::move(t);
      s.pending.reset();
    }
    q.timing = std::move(own);
    bool modified = f.modified() || !in.controls.empty() || in.inverted;
    SemKind kind = op.semantics.kind;
    if (modified && (kind == SemKind::Measure || kind == SemKind::Reset || kind == SemKind::Pulse))
      throw Error(Errc::ModifierError, "'" + op.name + "' cannot be controlled or inverted");
    if (modified && !q.timing.empty())
      throw Error(Errc::ModifierError, "timing annotation inside a controlled or inverted operation");
    if (kind == SemKind::Measure && !in.dst.empty()) {
      int r = fresh(TypeKind::Bool);
      q.dst = vname(r);
      f.env[in.dst] = Value(DynVal{r, TypeKind::Bool});
    }
    put_quantum(s, std::move(q));
  }

  void call_user(State& s, const Instr& in) {
    Frame& f = s.frames.back();
    const Proc& callee = ir_.procs.at(in.callee);
    Frame nf;
    nf.proc = &callee;
    nf.block = callee.entry;
    nf.ret_dst = in.dst;
    nf.controls = f.controls;
    for (const auto& c : in.controls) nf.controls.push_back(peval(c, f).as<QubitVal>().index);
    for (size_t i = 0; i < callee.params.size(); ++i) {
      const std::string& p = callee.params[i];
      nf.env[p] = coerce_pe(peval(in.args.at(i), f), callee.vars.at(p));
    }
    Timing t = static_timing(in.timing, f);
    if (in.inverted) {
      s.bufs.emplace_back();
      nf.buf = static_cast<int>(s.bufs.size()) - 1;
      nf.owns_buf = true;
    } else {
      nf.buf = f.buf;
    }
    if (!t.empty()) {
      if (nf.modified()) throw Error(Errc::ModifierError, "timing annotation on a controlled or inverted call");
      if (s.pending) {
        s.pending->timing.constraints.insert(s.pending->timing.constraints.end(), t.constraints.begin(),
                                             t.constraints.end());
        s.pending->timing.resets.insert(s.pending->timing.resets.end(), t.resets.begin(), t.resets.end());
      } else {
        s.pending = Pending{std::move(t), 0};
      }
      s.pending->depth = s.frames.size() + 1;
    }
    if (s.frames.size() > 100000) throw Error(Errc::StepBudgetExceeded, "call depth limit reached");
    s.frames.push_back(std::move(nf));
    // Entering the callee's entry block is never a loop header.
  }

  const KernelIR& ir_;
  const PlatformConfig& cfg_;
  PeOptions opts_;
  Proc out_;
  int cur_ = 0;
  int next_vreg_ = 0;
  int64_t steps_ = 0;
  size_t residual_size_ = 0;
  std::deque<std::pair<State, int>> work_;
  std::map<std::string, Memo> memo_;
  std::map<const Proc*, Liveness> live_;
  std::map<const Proc*, std::map<int, int>> tests_;
};

// ---------------------------------------------------------------------------
// cleanup

ExprP substitute(const ExprP& e, const std::map<std::string, std::string>& ren) {
  if (!e) return e;
  if (e->op == Op::Var) {
    auto it = ren.find(e->name);
    if (it == ren.end()) return e;
    return var(it->second, e->type);
  }
  if (e->args.empty()) return e;
  auto c = std::make_shared<Expr>(*e);
  for (auto& a : c->args) a = substitute(a, ren);
  return c;
}

void rename_all(Proc& p, const std::map<std::string, std::string>& ren) {
  auto r = [&](std::string& n) {
    auto it = ren.find(n);
    if (it != ren.end()) n = it->second;
  };
  for (Block& b : p.blocks) {
    for (Instr& in : b.instrs) {
      r(in.dst);
      for (auto& v : in.vars) r(v);
      for (auto& x : in.path) x = substitute(x, ren);
      in.value = substitute(in.value, ren);
      for (auto& x : in.args) x = substitute(x, ren);
      for (auto& x : in.controls) x = substitute(x, ren);
      for (auto& c : in.timing.constraints) {
        c.timer = substitute(c.timer, ren);
        c.time = substitute(c.time, ren);
      }
      for (auto& x : in.timing.resets) x = substitute(x, ren);
    }
    b.term.cond = substitute(b.term.cond, ren);
    b.term.value = substitute(b.term.value, ren);
    for (auto& v : b.params) r(v);
  }
}

std::vector<int> pred_counts(const Proc& p) {
  std::vector<int> n(p.blocks.size(), 0);
  for (const Block& b : p.blocks)
    for (int s : successors(b.term)) n[s]++;
  n[p.entry]++;
  return n;
}

bool thread_and_merge(Proc& p) {
  bool changed = false;
  for (Block& b : p.blocks)
    if (b.term.kind == TermKind::Branch && b.term.then_block == b.term.else_block) {
      b.term = Terminator{TermKind::Jump, nullptr, nullptr, b.term.then_block, -1};
      changed = true;
    }
  // Empty forwarding blocks.
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    Block& b = p.blocks[i];
    if (!b.instrs.empty() || b.term.kind != TermKind::Jump || b.join) continue;
    int target = b.term.then_block;
    if (target == static_cast<int>(i)) continue;
    for (Block& o : p.blocks) {
      if (o.term.then_block == static_cast<int>(i)) {
        o.term.then_block = target;
        changed = true;
      }
      if (o.term.kind == TermKind::Branch && o.term.else_block == static_cast<int>(i)) {
        o.term.else_block = target;
        changed = true;
      }
    }
    if (p.entry == static_cast<int>(i)) {
      p.entry = target;
      changed = true;
    }
  }
  // Merge single-predecessor jump targets.
  std::vector<int> preds = pred_counts(p);
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    Block& a = p.blocks[i];
    while (a.term.kind == TermKind::Jump) {
      int t = a.term.then_block;
      if (t == static_cast<int>(i) || preds[t] != 1 || t == p.entry) break;
      Block& b = p.blocks[t];
      for (auto& in : b.instrs) a.instrs.push_back(std::move(in));
      b.instrs.clear();
      a.term = b.term;
      // b is now unreachable; make it inert.
      b.term = Terminator{TermKind::Return, nullptr, nullptr, -1, -1};
      b.join = false;
      b.params.clear();
      preds[t] = 0;
      changed = true;
    }
  }
  return changed;
}

bool propagate(Proc& p) {
  std::map<std::string, int> ndefs;
  std::map<std::string, const Instr*> def_of;
  for (const Block& b : p.blocks)
    for (const Instr& in : b.instrs) {
      std::set<std::string> d;
      defs(in, d);
      for (const auto& v : d) {
        ndefs[v]++;
        def_of[v] = &in;
      }
    }
  std::map<std::string, std::string> ren;
  bool changed = false;
  for (Block& b : p.blocks)
    for (Instr& in : b.instrs) {
      if (in.kind != InstrKind::Assign || !in.path.empty() || in.value->op != Op::Var) continue;
      const std::string& src = in.value->name;
      if (ndefs[src] != 1) continue;
      const Instr* sd = def_of[src];
      if (sd->kind == InstrKind::Assign && sd->path.empty() && sd->value->op == Op::Const) {
        in.value = sd->value;  // constant forwarding
        changed = true;
        continue;
      }
      if (ndefs[in.dst] == 1 && !ren.count(src)) ren[in.dst] = src;
    }
  if (!ren.empty()) {
    // Resolve chains a -> b -> c.
    for (auto& [k, v] : ren)
      while (ren.count(v) && ren[v] != k) v = ren[v];
    for (Block& b : p.blocks)
      b.instrs.erase(std::remove_if(b.instrs.begin(), b.instrs.end(),
                                    [&](const Instr& in) {
                                      return in.kind == InstrKind::Assign && in.path.empty() &&
                                             ren.count(in.dst) && in.value->op == Op::Var;
                                    }),
                     b.instrs.end());
    rename_all(p, ren);
    changed = true;
  }
  return changed;
}

bool dead_assignments(Proc& p) {
  Liveness lv = liveness(p);
  bool changed = false;
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    Block& b = p.blocks[i];
    std::set<std::string> live = lv.live_out[i];
    collect_vars(b.term.cond, live);
    collect_vars(b.term.value, live);
    std::vector<bool> keep(b.instrs.size(), true);
    for (size_t k = b.instrs.size(); k-- > 0;) {
      const Instr& in = b.instrs[k];
      if (in.kind == InstrKind::Assign && !live.count(in.dst)) {
        keep[k] = false;
        changed = true;
        continue;
      }
      std::set<std::string> d, u;
      defs(in, d);
      uses(in, u);
      for (const auto& v : d) live.erase(v);
      live.insert(u.begin(), u.end());
    }
    std::vector<Instr> kept;
    for (size_t k = 0; k < b.instrs.size(); ++k)
      if (keep[k]) kept.push_back(std::move(b.instrs[k]));
    b.instrs = std::move(kept);
  }
  return changed;
}

void renumber(Proc& p) {
  std::map<std::string, std::string> ren;
  int n = 0;
  auto see = [&](const std::string& v) {
    if (!v.empty() && v[0] == '%' && !ren.count(v)) ren[v] = "%" + std::to_string(n++);
  };
  std::function<void(const ExprP&)> see_expr = [&](const ExprP& e) {
    if (!e) return;
    if (e->op == Op::Var) see(e->name);
    for (const auto& a : e->args) see_expr(a);
  };
  for (const Block& b : p.blocks) {
    for (const auto& v : b.params) see(v);
    for (const Instr& in : b.instrs) {
      for (const auto& x : in.path) see_expr(x);
      see_expr(in.value);
      for (const auto& x : in.args) see_expr(x);
      for (const auto& x : in.controls) see_expr(x);
      see(in.dst);
    }
    see_expr(b.term.cond);
    see_expr(b.term.value);
  }
  rename_all(p, ren);
  std::map<std::string, TypePtr> vars;
  for (const auto& [old, nw] : ren) vars[nw] = p.vars.at(old);
  p.vars = std::move(vars);
}

}  // namespace

void cleanup(Proc& p) {
  for (int round = 0; round < 100; ++round) {
    bool changed = thread_and_merge(p);
    prune(p);
    changed |= propagate(p);
    changed |= dead_assignments(p);
    if (!changed) break;
  }
  // Join markers only matter where paths meet.
  std::vector<int> preds = pred_counts(p);
  std::set<std::string> defined;
  for (const Block& b : p.blocks)
    for (const Instr& in : b.instrs) defs(in, defined);
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    Block& b = p.blocks[i];
    if (preds[i] <= 1) {
      b.join = false;
      b.params.clear();
      continue;
    }
    std::vector<std::string> ps;
    for (const auto& v : b.params)
      if (defined.count(v)) ps.push_back(v);
    b.params = std::move(ps);
  }
  renumber(p);
}

KernelIR partially_execute(const KernelIR& ir, const PlatformConfig& cfg, const PeOptions& opts) {
  return PartialEvaluator(ir, cfg, opts).run();
}

}  // namespace quingo
