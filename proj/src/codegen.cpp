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

#include "quingo/codegen.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "quingo/error.hpp"

namespace quingo {

using namespace ir;

int32_t to_q16(double d) {
  double scaled = std::nearbyint(d * 65536.0);
  if (!std::isfinite(scaled) || scaled < INT32_MIN || scaled > INT32_MAX)
    throw Error(Errc::UnencodableImmediate, "double constant " + format_double(d) + " does not fit in Q16 fixed point");
  return static_cast<int32_t>(scaled);
}

namespace {

MInstr mk(Opcode op) {
  MInstr m;
  m.op = op;
  return m;
}

MInstr rrr(Opcode op, int d, int a, int b) {
  MInstr m = mk(op);
  m.rd = d;
  m.ra = a;
  m.rb = b;
  return m;
}

MInstr ldi(int r, int64_t v) {
  MInstr m = mk(Opcode::Ldi);
  m.rd = r;
  m.imm = v;
  return m;
}

MInstr store(Opcode op, int r, size_t at) {
  MInstr m = mk(op);
  m.ra = r;
  m.imm = static_cast<int64_t>(at);
  return m;
}

class Epilogue {
 public:
  Epilogue(const std::map<std::string, int>& regs, WireFormat fmt) : regs_(regs), fmt_(fmt) {}

  std::vector<MInstr> run(const ExprP& value, const TypePtr& type) {
    if (!is_classical(type))
      throw Error(Errc::UnsupportedReturn, "kernel return type " + type_to_string(type) + " cannot be serialized");
    end_ = fixed_size(type, fmt_);
    if (value && type->kind != TypeKind::Unit) put(value, type, 0);
    out_.push_back(mk(Opcode::Halt));
    return std::move(out_);
  }

 private:
  void check(size_t at) const {
    if (at > 65536)
      throw Error(Errc::UnsupportedReturn, "serialized result exceeds the 64 KiB shared memory");
  }

  void put(const ExprP& e, const TypePtr& t, size_t at) {
    switch (e->op) {
      case Op::Const: put_const(e->value, t, at); return;
      case Op::Var: put_reg(regs_.at(e->name), e->type, t, at); return;
      case Op::MakeTuple: {
        size_t off = at;
        for (size_t i = 0; i < t->elems.size(); ++i) {
          put(e->args[i], t->elems[i], off);
          off += fixed_size(t->elems[i], fmt_);
        }
        return;
      }
      case Op::MakeArray: {
        size_t region = open_region(at, e->args.size(), t);
        size_t es = fixed_size(t->elem(), fmt_);
        for (size_t i = 0; i < e->args.size(); ++i) put(e->args[i], t->elem(), region + 4 + i * es);
        return;
      }
      default:
        throw Error(Errc::UnsupportedReturn, "return value " + expr_to_string(e) + " is not in stored form");
    }
  }

  size_t open_region(size_t at, size_t n, const TypePtr& t) {
    size_t region = end_;
    end_ += 4 + n * fixed_size(t->elem(), fmt_);
    check(end_);
    word(static_cast<uint32_t>(region - at), at);
    word(static_cast<uint32_t>(n), region);
    return region;
  }

  void word(uint32_t v, size_t at) {
    if (v == 0) {
      out_.push_back(store(Opcode::Stw, 0, at));
      return;
    }
    out_.push_back(ldi(kScratchA, static_cast<int32_t>(v)));
    out_.push_back(store(Opcode::Stw, kScratchA, at));
  }

  void put_const(const Value& v, const TypePtr& t, size_t at) {
    switch (t->kind) {
      case TypeKind::Bool: {
        bool b = v.as<bool>();
        if (b) out_.push_back(ldi(kScratchA, 1));
        out_.push_back(store(Opcode::Stb, b ? kScratchA : 0, at));
        return;
      }
      case TypeKind::Int: word(static_cast<uint32_t>(v.as<int32_t>()), at); return;
      case TypeKind::Double: {
        double d = v.is<int32_t>() ? v.as<int32_t>() : v.as<double>();
        if (fmt_.f32_doubles) {
          word(std::bit_cast<uint32_t>(static_cast<float>(d)), at);
          return;
        }
        uint64_t bits = std::bit_cast<uint64_t>(d);
        uint32_t lo = static_cast<uint32_t>(bits), hi = static_cast<uint32_t>(bits >> 32);
        int ra = 0, rb = 0;
        if (lo) {
          out_.push_back(ldi(kScratchA, static_cast<int32_t>(lo)));
          ra = kScratchA;
        }
        if (hi) {
          out_.push_back(ldi(kScratchB, static_cast<int32_t>(hi)));
          rb = kScratchB;
        }
        MInstr m = mk(Opcode::Std);
        m.ra = ra;
        m.rb = rb;
        m.imm = static_cast<int64_t>(at);
        out_.push_back(m);
        return;
      }
      case TypeKind::Unit: return;
      case TypeKind::Tuple: {
        size_t off = at;
        for (size_t i = 0; i < t->elems.size(); ++i) {
          put_const(v.as<TupleVal>().elems[i], t->elems[i], off);
          off += fixed_size(t->elems[i], fmt_);
        }
        return;
      }
      case TypeKind::Array: {
        const auto& es = v.as<ArrayVal>().elems;
        size_t region = open_region(at, es.size(), t);
        size_t sz = fixed_size(t->elem(), fmt_);
        for (size_t i = 0; i < es.size(); ++i) put_const(es[i], t->elem(), region + 4 + i * sz);
        return;
      }
      default:
        throw Error(Errc::UnsupportedReturn, "cannot serialize a value of type " + type_to_string(t));
    }
  }

  void put_reg(int r, const TypePtr& have, const TypePtr& t, size_t at) {
    switch (t->kind) {
      case TypeKind::Bool: out_.push_back(store(Opcode::Stb, r, at)); return;
      case TypeKind::Int: out_.push_back(store(Opcode::Stw, r, at)); return;
      case TypeKind::Double: {
        if (have->kind == TypeKind::Int) {
          MInstr s = mk(Opcode::Shl);
          s.rd = kScratchA;
          s.ra = r;
          s.imm = 16;
          out_.push_back(s);
          r = kScratchA;
        }
        out_.push_back(store(fmt_.f32_doubles ? Opcode::StfxS : Opcode::Stfx, r, at));
        return;
      }
      default:
        throw Error(Errc::UnsupportedReturn, "a register cannot hold a value of type " + type_to_string(t));
    }
  }

  const std::map<std::string, int>& regs_;
  WireFormat fmt_;
  size_t end_ = 0;
  std::vector<MInstr> out_;
};

// Greedy colouring of the interference graph over r1..r29.
std::map<std::string, int> allocate(const Proc& p) {
  Liveness lv = liveness(p);
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [v, t] : p.vars) adj[v];
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    const Block& blk = p.blocks[b];
    std::set<std::string> live = lv.live_out[b];
    collect_vars(blk.term.cond, live);
    collect_vars(blk.term.value, live);
    for (size_t k = blk.instrs.size(); k-- > 0;) {
      std::set<std::string> d, u;
      defs(blk.instrs[k], d);
      uses(blk.instrs[k], u);
      for (const auto& x : d)
        for (const auto& y : live)
          if (x != y) {
            adj[x].insert(y);
            adj[y].insert(x);
          }
      for (const auto& x : d) live.erase(x);
      live.insert(u.begin(), u.end());
    }
    // Values live into a block coexist there.
    for (const auto& x : lv.live_in[b])
      for (const auto& y : lv.live_in[b])
        if (x != y) adj[x].insert(y);
  }
  // Allocate in order of the numeric vreg id.
  std::vector<std::string> order;
  for (const auto& [v, n] : adj) order.push_back(v);
  std::sort(order.begin(), order.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::map<std::string, int> regs;
  for (const auto& v : order) {
    std::set<int> taken;
    for (const auto& n : adj[v]) {
      auto it = regs.find(n);
      if (it != regs.end()) taken.insert(it->second);
    }
    int r = 1;
    while (taken.count(r)) ++r;
    if (r >= kScratchA)
      throw Error(Errc::RegisterPressure, "more than " + std::to_string(kScratchA - 1) +
                                              " values are live at once; the control processor does not spill");
    regs[v] = r;
  }
  return regs;
}

Cond cond_of(const std::string& op) {
  if (op == "==") return Cond::Eq;
  if (op == "!=") return Cond::Ne;
  if (op == "<") return Cond::Lt;
  if (op == "<=") return Cond::Le;
  if (op == ">") return Cond::Gt;
  return Cond::Ge;
}

class Emitter {
 public:
  Emitter(const TimedIR& timed, const PlatformConfig& cfg, WireFormat fmt)
      : t_(timed), p_(*timed.proc), cfg_(cfg), fmt_(fmt) {}

  QProgram run() {
    regs_ = allocate(p_);
    prog_.rettype = descriptor_or_throw(p_.ret);
    prog_.f32_doubles = fmt_.f32_doubles;
    if (p_.entry != 0) jump_to(label(p_.entry));
    for (size_t b = 0; b < p_.blocks.size(); ++b) block(static_cast<int>(b));
    for (auto& m : prog_.code)
      for (auto* qs : {&m.qubits, &m.controls})
        for (int q : *qs) max_q_ = std::max(max_q_, q + 1);
    prog_.qubits = max_q_;
    // Resolve labels.
    std::map<std::string, int> at;
    for (const auto& [i, n] : prog_.labels) at[n] = i;
    for (auto& m : prog_.code)
      if (m.op == Opcode::Br || m.op == Opcode::Jmp) m.target = at.at(m.label);
    return std::move(prog_);
  }

 private:
  static std::string descriptor_or_throw(const TypePtr& t) {
    if (!is_classical(t))
      throw Error(Errc::UnsupportedReturn, "kernel return type " + type_to_string(t) + " cannot be serialized");
    return descriptor(t);
  }

  static std::string label(int b) { return "B" + std::to_string(b); }

  void put(MInstr m) { prog_.code.push_back(std::move(m)); }
  void mark(const std::string& l) { prog_.labels.emplace_back(static_cast<int>(prog_.code.size()), l); }

  void jump_to(const std::string& l) {
    MInstr j = mk(Opcode::Jmp);
    j.label = l;
    put(j);
  }

  void wait(int64_t n) {
    if (n <= 0) return;
    MInstr w = mk(Opcode::Qwait);
    w.imm = n;
    put(w);
  }

  int reg(const ExprP& e) {
    if (e->op != Op::Var)
      throw Error(Errc::DynamicUnsupported, "operand " + expr_to_string(e) + " is not in register form");
    return regs_.at(e->name);
  }

  static bool is_double(const ExprP& e) { return e->type && e->type->kind == TypeKind::Double; }

  void assign(const Instr& in) {
    if (!in.path.empty()) throw Error(Errc::DynamicUnsupported, "element assignment survived partial evaluation");
    int d = regs_.at(in.dst);
    const ExprP& v = in.value;
    switch (v->op) {
      case Op::Const: {
        const Value& c = v->value;
        if (c.is<bool>()) {
          put(ldi(d, c.as<bool>() ? 1 : 0));
        } else if (c.is<int32_t>()) {
          put(ldi(d, is_double(v) ? to_q16(c.as<int32_t>()) : c.as<int32_t>()));
        } else if (c.is<double>()) {
          put(ldi(d, to_q16(c.as<double>())));
        } else {
          throw Error(Errc::DynamicUnsupported, "constant " + value_to_text(c) + " cannot live in a register");
        }
        return;
      }
      case Op::Var: put(rrr(Opcode::Add, d, reg(v), 0)); return;
      case Op::Unary: {
        int a = reg(v->args[0]);
        if (v->name == "-") {
          put(rrr(Opcode::Sub, d, 0, a));
        } else if (v->name == "!") {
          put(ldi(kScratchA, 1));
          put(rrr(Opcode::Xor, d, a, kScratchA));
        } else {
          MInstr s = mk(Opcode::Shl);
          s.rd = d;
          s.ra = a;
          s.imm = 16;
          put(s);
        }
        return;
      }
      case Op::Binary: {
        int a = reg(v->args[0]), b = reg(v->args[1]);
        const std::string& o = v->name;
        if (o == "+") return put(rrr(Opcode::Add, d, a, b));
        if (o == "-") return put(rrr(Opcode::Sub, d, a, b));
        if (o == "*") return put(rrr(is_double(v->args[0]) ? Opcode::Mulq : Opcode::Mul, d, a, b));
        if (o == "&&") return put(rrr(Opcode::And, d, a, b));
        if (o == "||") return put(rrr(Opcode::Or, d, a, b));
        if (o == "==" || o == "!=" || o == "<" || o == "<=" || o == ">" || o == ">=") {
          MInstr c = mk(Opcode::Cmp);
          c.ra = a;
          c.rb = b;
          put(c);
          MInstr s = mk(Opcode::Set);
          s.cond = cond_of(o);
          s.rd = d;
          put(s);
          return;
        }
        throw Error(Errc::DynamicUnsupported, "operator '" + o + "' has no control-processor instruction");
      }
      default:
        throw Error(Errc::DynamicUnsupported, "expression " + expr_to_string(v) + " survived partial evaluation");
    }
  }

  static int qubit_of(const ExprP& e) {
    if (e->op != Op::Const || !e->value.is<QubitVal>())
      throw Error(Errc::DynamicUnsupported, "qubit operand " + expr_to_string(e) + " is not resolved");
    return e->value.as<QubitVal>().index;
  }

  void quantum(const Instr& in) {
    const OpDef& op = cfg_.at(in.callee);
    MInstr m;
    for (const auto& c : in.controls) m.controls.push_back(qubit_of(c));
    for (const auto& a : in.args) {
      if (a->op == Op::Const && a->value.is<QubitVal>()) {
        m.qubits.push_back(a->value.as<QubitVal>().index);
        continue;
      }
      QParam qp;
      if (a->op == Op::Var) {
        qp.kind = QParam::Reg;
        qp.reg = regs_.at(a->name);
      } else if (a->op == Op::Const && a->value.is<int32_t>()) {
        qp.kind = QParam::Int;
        qp.i = a->value.as<int32_t>();
      } else if (a->op == Op::Const && a->value.is<double>()) {
        qp.kind = QParam::Double;
        qp.d = a->value.as<double>();
      } else if (a->op == Op::Const && a->value.is<bool>()) {
        qp.kind = QParam::Int;
        qp.i = a->value.as<bool>() ? 1 : 0;
      } else {
        throw Error(Errc::DynamicUnsupported, "parameter " + expr_to_string(a) + " of " + in.callee +
                                                  " cannot be encoded");
      }
      m.params.push_back(qp);
    }
    m.inverted = in.inverted;
    switch (op.semantics.kind) {
      case SemKind::Measure:
        m.op = Opcode::Measure;
        if (op.name != "measure") m.name = op.name;
        break;
      case SemKind::Reset:
        m.op = Opcode::Init;
        if (op.name != "init") m.name = op.name;
        break;
      case SemKind::Pulse:
        m.op = Opcode::Pulse;
        m.name = op.name;
        m.text = op.semantics.pulse;
        break;
      default:
        m.op = Opcode::Qop;
        m.name = op.name;
    }
    int q0 = m.qubits.empty() ? 0 : m.qubits[0];
    put(std::move(m));
    if (op.semantics.kind == SemKind::Measure && !in.dst.empty()) {
      MInstr f = mk(Opcode::Fmr);
      f.rd = regs_.at(in.dst);
      f.qubits = {q0};
      put(f);
    }
  }

  void block(int b) {
    const Block& blk = p_.blocks[static_cast<size_t>(b)];
    const BlockSchedule& s = t_.blocks[static_cast<size_t>(b)];
    if (s.wait.size() != blk.instrs.size()) return;  // unreachable
    mark(label(b));
    for (size_t i = 0; i < blk.instrs.size(); ++i) {
      const Instr& in = blk.instrs[i];
      for (const auto& a : in.args)
        if (in.kind == InstrKind::Alloc && a->value.is<QubitVal>())
          max_q_ = std::max(max_q_, a->value.as<QubitVal>().index + 1);
      wait(s.wait[i]);
      size_t before = prog_.code.size();
      if (is_quantum(in)) {
        quantum(in);
        before += 1;
      } else if (in.kind == InstrKind::Assign) {
        assign(in);
      }
      if (static_cast<int64_t>(prog_.code.size() - before) != classical_cost(in))
        throw std::logic_error("codegen emitted a different instruction count than the scheduler assumed");
    }
    const Terminator& t = blk.term;
    switch (t.kind) {
      case TermKind::Jump:
        wait(s.edge_pad[0]);
        jump_to(label(t.then_block));
        return;
      case TermKind::Branch: {
        MInstr c = mk(Opcode::Cmp);
        c.ra = reg(t.cond);
        c.rb = 0;
        put(c);
        std::string then_l = s.edge_pad[0] ? label(b) + "_then" : label(t.then_block);
        std::string else_l = s.edge_pad[1] ? label(b) + "_else" : label(t.else_block);
        MInstr br = mk(Opcode::Br);
        br.cond = Cond::Ne;
        br.label = then_l;
        put(br);
        jump_to(else_l);
        // Padding trampolines: qwait plus the jump itself make up the pad.
        for (int k = 0; k < 2; ++k) {
          if (!s.edge_pad[k]) continue;
          mark(label(b) + (k == 0 ? "_then" : "_else"));
          wait(s.edge_pad[k] - 1);
          jump_to(label(k == 0 ? t.then_block : t.else_block));
        }
        return;
      }
      case TermKind::Return:
        for (auto& m : emit_result_epilogue(t.value, p_.ret, regs_, fmt_)) put(std::move(m));
        return;
    }
  }

  const TimedIR& t_;
  const Proc& p_;
  const PlatformConfig& cfg_;
  WireFormat fmt_;
  std::map<std::string, int> regs_;
  QProgram prog_;
  int max_q_ = 0;
};

}  // namespace

std::vector<MInstr> emit_result_epilogue(const ExprP& value, const TypePtr& type,
                                         const std::map<std::string, int>& regs, WireFormat fmt) {
  return Epilogue(regs, fmt).run(value, type);
}

QProgram emit_program(const TimedIR& timed, const PlatformConfig& cfg, WireFormat fmt) {
  return Emitter(timed, cfg, fmt).run();
}

std::string emit(const TimedIR& timed, const PlatformConfig& cfg, WireFormat fmt) {
  return disassemble(emit_program(timed, cfg, fmt));
}

}  // namespace quingo
