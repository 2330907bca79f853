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

#include "quingo/qvm.hpp"

#include <bit>
#include <cmath>

#include <json.hpp>

#include "quingo/error.hpp"

namespace quingo {

namespace {

int qubits_needed(const QProgram& p, const PlatformConfig& cfg) {
  if (p.qubits > cfg.qubit_count)
    throw Error(Errc::TooManyQubits, "program needs " + std::to_string(p.qubits) + " qubits, platform has " +
                                         std::to_string(cfg.qubit_count));
  if (p.qubits < 0) throw Error(Errc::AsmSyntax, "negative qubit count");
  return p.qubits;
}

bool holds(Cond c, int32_t a, int32_t b) {
  switch (c) {
    case Cond::Eq: return a == b;
    case Cond::Ne: return a != b;
    case Cond::Lt: return a < b;
    case Cond::Le: return a <= b;
    case Cond::Gt: return a > b;
    default: return a >= b;
  }
}

int32_t wrap(int64_t v) { return static_cast<int32_t>(static_cast<uint32_t>(static_cast<uint64_t>(v))); }

}  // namespace

Vm::Vm(QProgram program, const PlatformConfig& cfg, VmOptions opts)
    : prog_(std::move(program)),
      cfg_(cfg),
      opts_(opts),
      q_(qubits_needed(prog_, cfg), opts.seed, opts.zero_init),
      regs_(kNumRegs, 0),
      mem_(opts.memory_size, 0) {
  q_.strict_pulse = opts.strict_pulse;
}

Bytes Vm::read_memory(size_t addr, size_t len) const {
  if (addr > mem_.size() || len > mem_.size() - addr)
    throw Error(Errc::MemoryOutOfRange, "read of " + std::to_string(len) + " bytes at " + std::to_string(addr) +
                                            " leaves the " + std::to_string(mem_.size()) + "-byte shared memory");
  return Bytes(mem_.begin() + static_cast<std::ptrdiff_t>(addr), mem_.begin() + static_cast<std::ptrdiff_t>(addr + len));
}

void Vm::store(size_t addr, uint64_t v, int width) {
  if (addr > mem_.size() || static_cast<size_t>(width) > mem_.size() - addr)
    throw Error(Errc::MemoryOutOfRange, "store at address " + std::to_string(addr) + " leaves shared memory");
  for (int i = 0; i < width; ++i) mem_[addr + i] = static_cast<uint8_t>(v >> (8 * i));
}

const OpDef& Vm::find_op(const std::string& name, SemKind kind) const {
  if (!name.empty()) {
    const OpDef* op = cfg_.find(name);
    if (!op) throw Error(Errc::IllegalInstruction, "platform has no operation '" + name + "'");
    return *op;
  }
  const char* dflt = kind == SemKind::Measure ? "measure" : "init";
  if (const OpDef* op = cfg_.find(dflt); op && op->semantics.kind == kind) return *op;
  for (const auto& [n, op] : cfg_.operations)
    if (op.semantics.kind == kind) return op;
  throw Error(Errc::IllegalInstruction, std::string("platform defines no ") + dflt + " operation");
}

std::vector<Value> Vm::params(const MInstr& in, const OpDef& op) const {
  if (in.params.size() != op.params.size())
    throw Error(Errc::IllegalInstruction, "'" + op.name + "' takes " + std::to_string(op.params.size()) +
                                              " parameters, instruction has " + std::to_string(in.params.size()));
  std::vector<Value> out;
  for (size_t i = 0; i < in.params.size(); ++i) {
    const QParam& p = in.params[i];
    bool dbl = op.params[i].type->kind == TypeKind::Double;
    switch (p.kind) {
      case QParam::Reg: {
        int32_t r = reg(p.reg);
        if (dbl) {
          out.emplace_back(static_cast<double>(r) / 65536.0);
        } else if (op.params[i].type->kind == TypeKind::Bool) {
          out.emplace_back(r != 0);
        } else {
          out.emplace_back(r);
        }
        break;
      }
      case QParam::Int:
        if (dbl) {
          out.emplace_back(static_cast<double>(p.i));
        } else if (op.params[i].type->kind == TypeKind::Bool) {
          out.emplace_back(p.i != 0);
        } else {
          out.emplace_back(static_cast<int32_t>(p.i));
        }
        break;
      case QParam::Double:
        if (!dbl) throw Error(Errc::IllegalInstruction, "'" + op.name + "' parameter " + op.params[i].name + " is not a double");
        out.emplace_back(p.d);
        break;
    }
  }
  return out;
}

VmStatus Vm::step() {
  if (halted_) return VmStatus::Halted;
  if (pc_ < 0 || static_cast<size_t>(pc_) >= prog_.code.size())
    throw Error(Errc::IllegalInstruction, "execution ran past the end of the program (pc " + std::to_string(pc_) + ")");
  if (++steps_ > opts_.max_steps) throw Error(Errc::CycleBudgetExceeded, "instruction budget exhausted");
  const MInstr& in = prog_.code[static_cast<size_t>(pc_)];
  int64_t issued = cycle_;
  int next = pc_ + 1;
  int64_t cost = is_classical_op(in.op) ? opts_.classical_cycle_ns : 0;
  std::optional<int> outcome;
  auto set = [&](int r, int32_t v) {
    if (r != 0) regs_[static_cast<size_t>(r)] = v;
  };
  switch (in.op) {
    case Opcode::Ldi: set(in.rd, wrap(in.imm)); break;
    case Opcode::Add: set(in.rd, wrap(int64_t{reg(in.ra)} + reg(in.rb))); break;
    case Opcode::Sub: set(in.rd, wrap(int64_t{reg(in.ra)} - reg(in.rb))); break;
    case Opcode::Mul: set(in.rd, wrap(int64_t{reg(in.ra)} * reg(in.rb))); break;
    case Opcode::Mulq: set(in.rd, wrap((int64_t{reg(in.ra)} * reg(in.rb)) >> 16)); break;
    case Opcode::And: set(in.rd, reg(in.ra) & reg(in.rb)); break;
    case Opcode::Or: set(in.rd, reg(in.ra) | reg(in.rb)); break;
    case Opcode::Xor: set(in.rd, reg(in.ra) ^ reg(in.rb)); break;
    case Opcode::Not: set(in.rd, ~reg(in.ra)); break;
    case Opcode::Shl: set(in.rd, wrap(static_cast<int64_t>(static_cast<uint32_t>(reg(in.ra)) << in.imm))); break;
    case Opcode::Sra: set(in.rd, reg(in.ra) >> in.imm); break;
    case Opcode::Cmp:
      cmp_a_ = reg(in.ra);
      cmp_b_ = reg(in.rb);
      break;
    case Opcode::Set: set(in.rd, holds(in.cond, cmp_a_, cmp_b_) ? 1 : 0); break;
    case Opcode::Br:
      if (holds(in.cond, cmp_a_, cmp_b_)) next = in.target;
      break;
    case Opcode::Jmp: next = in.target; break;
    case Opcode::Fmr: {
      auto last = q_.last_outcome(in.qubits.at(0));
      if (!last)
        throw Error(Errc::FmrBeforeMeasure, "fmr reads q" + std::to_string(in.qubits[0]) + " before it was measured");
      set(in.rd, *last);
      break;
    }
    case Opcode::Nop: break;
    case Opcode::Qwait: cost = in.imm; break;
    case Opcode::Qop: {
      const OpDef* op = cfg_.find(in.name);
      if (!op) throw Error(Errc::IllegalInstruction, "platform has no operation '" + in.name + "'");
      if (op->semantics.kind != SemKind::Rotation && op->semantics.kind != SemKind::Matrix)
        throw Error(Errc::IllegalInstruction, "'" + in.name + "' is not a unitary operation");
      if (static_cast<int>(in.qubits.size()) != op->num_qubits)
        throw Error(Errc::IllegalInstruction, "'" + in.name + "' acts on " + std::to_string(op->num_qubits) + " qubits");
      q_.apply_op(*op, in.qubits, params(in, *op), in.controls, in.inverted);
      cost = op->duration_ns;
      break;
    }
    case Opcode::Pulse: {
      const OpDef* op = cfg_.find(in.name);
      if (!op) throw Error(Errc::IllegalInstruction, "platform has no operation '" + in.name + "'");
      q_.apply_op(*op, in.qubits, {}, {}, false);
      cost = op->duration_ns;
      break;
    }
    case Opcode::Measure: {
      const OpDef& op = find_op(in.name, SemKind::Measure);
      outcome = q_.measure(in.qubits.at(0));
      cost = op.duration_ns;
      break;
    }
    case Opcode::Init: {
      const OpDef& op = find_op(in.name, SemKind::Reset);
      q_.reset(in.qubits.at(0));
      cost = op.duration_ns;
      break;
    }
    case Opcode::Stb: store(static_cast<size_t>(in.imm), static_cast<uint32_t>(reg(in.ra)), 1); break;
    case Opcode::Stw: store(static_cast<size_t>(in.imm), static_cast<uint32_t>(reg(in.ra)), 4); break;
    case Opcode::Std:
      store(static_cast<size_t>(in.imm), static_cast<uint32_t>(reg(in.ra)), 4);
      store(static_cast<size_t>(in.imm) + 4, static_cast<uint32_t>(reg(in.rb)), 4);
      break;
    case Opcode::Stfx: {
      double d = static_cast<double>(reg(in.ra)) / 65536.0;
      store(static_cast<size_t>(in.imm), std::bit_cast<uint64_t>(d), 8);
      break;
    }
    case Opcode::StfxS: {
      float f = static_cast<float>(static_cast<double>(reg(in.ra)) / 65536.0);
      store(static_cast<size_t>(in.imm), std::bit_cast<uint32_t>(f), 4);
      break;
    }
    case Opcode::Halt: halted_ = true; break;
  }
  if (!is_classical_op(in.op) && in.op != Opcode::Qwait && in.op != Opcode::Halt && opts_.check_norm) {
    double n = q_.state().norm();
    if (std::abs(n - 1.0) > 1e-9)
      throw Error(Errc::NormViolation, "state norm " + std::to_string(n) + " after '" + instr_text(in) + "'");
  }
  if (tracing_) trace_.push_back({issued, pc_, instr_text(in), outcome});
  cycle_ += cost;
  pc_ = next;
  if (cycle_ > opts_.max_cycles)
    throw Error(Errc::CycleBudgetExceeded, "program ran past " + std::to_string(opts_.max_cycles) + " cycles");
  return halted_ ? VmStatus::Halted : VmStatus::Running;
}

void Vm::run() {
  while (step() == VmStatus::Running) {
  }
}

std::string trace_to_jsonl(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (const auto& e : trace) {
    nlohmann::json j;
    j["cycle"] = e.cycle;
    j["pc"] = e.pc;
    j["instruction"] = e.instruction;
    if (e.outcome) j["outcome"] = *e.outcome;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace quingo
