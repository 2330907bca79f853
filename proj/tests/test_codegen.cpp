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

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "quingo/isa.hpp"
#include "support.hpp"

namespace quingo {
namespace {

using namespace quingo::testing;

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

std::vector<std::string> texts(const std::vector<MInstr>& code) {
  std::vector<std::string> out;
  for (const auto& m : code) out.push_back(instr_text(m));
  return out;
}

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

QProgram with_epilogue(std::vector<MInstr> code, const TypePtr& t) {
  QProgram p;
  p.rettype = descriptor(t);
  p.code = std::move(code);
  return p;
}

TEST(Epilogue, ConstantPair) {
  TypePtr t = types::tuple({types::integer(), types::integer()});
  auto code = emit_result_epilogue(ir::cst(make_tuple({Value(int32_t{16}), Value(int32_t{0})}), t), t, {});
  EXPECT_EQ(texts(code), (std::vector<std::string>{"ldi r30 16", "stw r30 0", "stw r0 4", "halt"}));
  Vm vm(with_epilogue(code, t), platform());
  vm.run();
  EXPECT_EQ(vm.read_memory(0, 8), (Bytes{0x10, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Epilogue, DynamicBool) {
  auto code = emit_result_epilogue(ir::var("%0", types::boolean()), types::boolean(), {{"%0", 3}});
  EXPECT_EQ(texts(code), (std::vector<std::string>{"stb r3 0", "halt"}));
}

TEST(Epilogue, ConstantIntArray) {
  TypePtr t = types::array(types::integer());
  Value v = int_array({2, 6, 8});
  auto code = emit_result_epilogue(ir::cst(v, t), t, {});
  Vm vm(with_epilogue(code, t), platform());
  vm.run();
  Bytes want{4, 0, 0, 0, 3, 0, 0, 0, 2, 0, 0, 0, 6, 0, 0, 0, 8, 0, 0, 0};
  EXPECT_EQ(vm.read_memory(0, 20), want);
}

TEST(Epilogue, UnitIsHaltOnly) {
  auto code = emit_result_epilogue(nullptr, types::unit(), {});
  EXPECT_EQ(texts(code), (std::vector<std::string>{"halt"}));
  auto k = compile_source("cg_unit", "operation f(): unit { }", "f");
  EXPECT_EQ(k.program.code.size(), 1u);
  EXPECT_EQ(k.program.code[0].op, Opcode::Halt);
}

TEST(Epilogue, QuantumReturnRejected) {
  EXPECT_EQ(error_of([] { emit_result_epilogue(ir::var("q", types::qubit()), types::qubit(), {}); }),
            Errc::UnsupportedReturn);
}

TEST(Emit, StaticSumRandomIsOnlyStores) {
  auto k = compile_case(kernel_cases()[0]);
  for (const auto& m : k.program.code) {
    EXPECT_FALSE(m.op == Opcode::Qop || m.op == Opcode::Measure || m.op == Opcode::Init) << instr_text(m);
    EXPECT_TRUE(m.op == Opcode::Ldi || m.op == Opcode::Stw || m.op == Opcode::Halt) << instr_text(m);
  }
  EXPECT_EQ(k.program.code.back().op, Opcode::Halt);
}

TEST(Emit, DynamicSelection) {
  auto k = compile_case(kernel_cases()[1]);
  std::vector<Opcode> ops;
  for (const auto& m : k.program.code) ops.push_back(m.op);
  auto at = [&](Opcode o) { return std::find(ops.begin(), ops.end(), o) - ops.begin(); };
  EXPECT_LT(at(Opcode::Measure), at(Opcode::Fmr));
  EXPECT_LT(at(Opcode::Fmr), at(Opcode::Cmp));
  EXPECT_LT(at(Opcode::Cmp), at(Opcode::Br));
  EXPECT_EQ(std::count(ops.begin(), ops.end(), Opcode::Halt), 2);
  EXPECT_EQ(std::count(ops.begin(), ops.end(), Opcode::Stw), 4);
}

TEST(Emit, PulseForwarded) {
  auto k = compile_source("cg_pulse", "operation f(): unit { using(q: qubit) { init(q); Y(q); } }", "f");
  bool found = false;
  for (const auto& m : k.program.code)
    if (m.op == Opcode::Pulse) {
      found = true;
      EXPECT_EQ(m.text, "wave Y180 awg0 ch1");
    }
  EXPECT_TRUE(found);
}

TEST(Emit, WaitsRealizeGaps) {
  auto k = compile_case(kernel_cases()[4]);
  // Ramsey: X90 at 200, X90 at 400 -> a qwait of 180 between them.
  bool found = false;
  for (const auto& m : k.program.code) found |= m.op == Opcode::Qwait && m.imm == 180;
  EXPECT_TRUE(found) << k.assembly;
}

TEST(Assembler, RoundTripsEveryProgram) {
  for (const auto& kc : kernel_cases()) {
    auto k = compile_case(kc);
    EXPECT_EQ(tokens(disassemble(assemble(k.assembly))), tokens(k.assembly)) << kc.label;
  }
}

TEST(Assembler, HandWritten) {
  std::string text =
      ".qubits 2\n.rettype int\nstart:\n    ldi r1 -5\n    qop X q1 0.5\n    qop CZ q0,q1 inv\n"
      "    qop U q1 ctrl q0\n    measure q0\n    fmr r2 q0\n    cmp r2 r0  # compare\n    br eq start\n"
      "    pulse Y q0 \"wave Y180 awg0 ch1\"\n    stw r1 0\n    halt\n";
  QProgram p = assemble(text);
  EXPECT_EQ(p.qubits, 2);
  EXPECT_EQ(p.rettype, "int");
  ASSERT_EQ(p.code.size(), 11u);
  EXPECT_EQ(p.code[0].imm, -5);
  EXPECT_EQ(p.code[7].target, 0);
  EXPECT_EQ(p.code[8].text, "wave Y180 awg0 ch1");
  QProgram again = assemble(disassemble(p));
  EXPECT_EQ(again.code, p.code);
}

TEST(Assembler, Errors) {
  EXPECT_EQ(error_of([] { assemble(".qubits 1\n    br eq nowhere\n    halt\n"); }), Errc::UndefinedLabel);
  EXPECT_EQ(error_of([] { assemble(".qubits 1\n    frobnicate r1\n"); }), Errc::AsmSyntax);
  EXPECT_EQ(error_of([] { assemble(".qubits 1\n    ldi r40 1\n"); }), Errc::AsmSyntax);
  EXPECT_EQ(error_of([] { assemble(".qubits 1\n    ldi r1 8589934592\n"); }), Errc::UnencodableImmediate);
}

TEST(Q16, Encoding) {
  EXPECT_EQ(to_q16(1.0), 65536);
  EXPECT_EQ(to_q16(-0.5), -32768);
  EXPECT_EQ(error_of([] { to_q16(1e6); }), Errc::UnencodableImmediate);
}

// Random classical types and values that have a Quingo literal.
class LiteralGen {
 public:
  explicit LiteralGen(uint64_t seed) : rng_(seed) {}

  TypePtr type(int depth) {
    switch (pick(0, depth > 0 ? 4 : 2)) {
      case 0: return types::boolean();
      case 1: return types::integer();
      case 2: return types::real();
      case 3: return types::array(type(depth - 1));
      default: {
        std::vector<TypePtr> es;
        int n = pick(2, 3);
        for (int i = 0; i < n; ++i) es.push_back(type(depth - 1));
        return types::tuple(std::move(es));
      }
    }
  }

  Value value(const TypePtr& t) {
    switch (t->kind) {
      case TypeKind::Bool: return Value(pick(0, 1) == 1);
      case TypeKind::Int: return Value(static_cast<int32_t>(static_cast<uint32_t>(rng_())));
      case TypeKind::Double: return Value(std::uniform_real_distribution<double>(-1e6, 1e6)(rng_));
      case TypeKind::Tuple: {
        std::vector<Value> es;
        for (const auto& e : t->elems) es.push_back(value(e));
        return make_tuple(std::move(es));
      }
      default: {
        std::vector<Value> es;
        int n = pick(1, 3);
        for (int i = 0; i < n; ++i) es.push_back(value(t->elem()));
        return make_array(std::move(es));
      }
    }
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// The bytes a kernel leaves in shared memory equal the host serializer's
// encoding of the value it returns.
TEST(Epilogue, MatchesSerializerOnRandomConstants) {
  LiteralGen g(314);
  for (int i = 0; i < 200; ++i) {
    TypePtr t = g.type(2);
    Value v = g.value(t);
    std::string src = "operation k(): " + type_to_string(t) + " {\n    return " + value_to_literal(v) + ";\n}\n";
    auto k = compile_source("cg_const_" + std::to_string(i), src, "k");
    VmRun run = run_program(k.program, static_cast<uint64_t>(i));
    ASSERT_EQ(run.result, encode_value(v, t)) << src;
  }
}

// Issue cycles on the VM equal the scheduled start cycles.
TEST(Timing, VmIssuesAtScheduledCycles) {
  for (size_t c : {1u, 3u, 4u}) {
    auto k = compile_case(kernel_cases()[c]);
    TimedIR timed = schedule(k.residual.entry_proc(), platform());
    VmOptions o;
    o.seed = 3;
    Vm vm(k.program, platform(), o);
    vm.enable_trace();
    vm.run();
    std::vector<int64_t> issued;
    for (const auto& e : vm.trace()) {
      std::string op = e.instruction.substr(0, e.instruction.find(' '));
      if (op == "qop" || op == "measure" || op == "init" || op == "pulse") issued.push_back(e.cycle);
    }
    // block 0 starts at cycle 0
    const auto& b0 = timed.proc->blocks[0];
    size_t n = 0;
    for (size_t i = 0; i < b0.instrs.size(); ++i)
      if (is_quantum(b0.instrs[i])) {
        ASSERT_LT(n, issued.size());
        EXPECT_EQ(issued[n++], timed.blocks[0].start[i]) << kernel_cases()[c].label;
      }
    // The next block on the taken path keeps its relative schedule.
    int next = -1;
    for (int s : ir::successors(b0.term)) {
      bool quantum = false;
      for (const auto& in : timed.proc->blocks[static_cast<size_t>(s)].instrs) quantum |= is_quantum(in);
      if (quantum) next = s;
    }
    if (next < 0 || n >= issued.size()) continue;
    const auto& bn = timed.proc->blocks[static_cast<size_t>(next)];
    std::vector<int64_t> starts;
    for (size_t i = 0; i < bn.instrs.size(); ++i)
      if (is_quantum(bn.instrs[i])) starts.push_back(timed.blocks[static_cast<size_t>(next)].start[i]);
    for (size_t j = 1; j < starts.size() && n + j < issued.size(); ++j)
      EXPECT_EQ(issued[n + j] - issued[n], starts[j] - starts[0]) << kernel_cases()[c].label;
  }
}

}  // namespace
}  // namespace quingo
