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

#include "quingo/interpreter.hpp"
#include "quingo/main_gen.hpp"
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

std::vector<std::string> quantum_calls(const ir::Proc& p) {
  std::vector<std::string> out;
  for (const auto& b : p.blocks)
    for (const auto& in : b.instrs)
      if (in.kind == ir::InstrKind::Call && in.opaque) out.push_back(in.callee);
  return out;
}

size_t count_kind(const ir::Proc& p, ir::InstrKind k) {
  size_t n = 0;
  for (const auto& b : p.blocks)
    for (const auto& in : b.instrs) n += in.kind == k;
  return n;
}

TEST(GenerateMain, SumRandom) {
  std::string got = generate_main("sum_random", {int_array({2, 6, 8}), Value(false)},
                                  {types::array(types::integer()), types::boolean()},
                                  types::tuple({types::integer(), types::integer()}));
  EXPECT_EQ(got,
            "operation main(): (int, int) {\n"
            "    int[] var0_arr = {2, 6, 8};\n"
            "    bool var1_bool = false;\n"
            "    return sum_random(var0_arr,var1_bool);\n"
            "}\n");
}

TEST(GenerateMain, ScalarIsInlined) {
  std::string got = generate_main("ipe", {Value(int32_t{5})}, {types::integer()}, types::real());
  EXPECT_EQ(got, "operation main(): double {\n    return ipe(5);\n}\n");
}

TEST(GenerateMain, HeterogeneousArray) {
  EXPECT_EQ(error_of([] { parse_args_json("[[1, true]]"); }), Errc::ArgTypeError);
}

TEST(GenerateMain, ArgumentChecks) {
  EXPECT_EQ(error_of([] { generate_main("ipe", {}, {types::integer()}, types::real()); }), Errc::ArgTypeError);
  EXPECT_EQ(error_of([] { generate_main("ipe", {Value(true)}, {types::integer()}, types::real()); }),
            Errc::ArgTypeError);
  EXPECT_EQ(error_of([] { parse_args_json("[4294967296]"); }), Errc::ArgTypeError);
  EXPECT_EQ(error_of([] { parse_args_json("{\"a\": 1}"); }), Errc::ArgTypeError);
}

TEST(GenerateMain, IsDeterministic) {
  auto a = parse_args_json("[[2, 6, 8], true]");
  std::vector<TypePtr> ps{types::array(types::integer()), types::boolean()};
  TypePtr r = types::tuple({types::integer(), types::integer()});
  EXPECT_EQ(generate_main("sum_random", a, ps, r), generate_main("sum_random", a, ps, r));
}

TEST(Lower, LoopOnMeasurement) {
  auto k = compile_source("lower_loop",
                          "operation f(): int { int n = 0; using(q: qubit) { init(q); "
                          "while (!measure(q)) { n += 1; } } return n; }",
                          "f");
  bool found = false;
  for (const auto& [name, p] : k.lowered.procs)
    for (const auto& b : p.blocks) {
      if (!b.loop_header) continue;
      const auto& test = p.blocks[static_cast<size_t>(b.loop_test)];
      EXPECT_EQ(test.term.kind, ir::TermKind::Branch);
      for (const auto& blk : {&b, &test})
        for (const auto& in : blk->instrs) found |= in.kind == ir::InstrKind::Call && in.callee == "measure";
    }
  EXPECT_TRUE(found);
}

TEST(Lower, StraightLine) {
  auto k = compile_source("lower_straight",
                          "operation f(): bool { bool r = false; using(q: qubit) { H(q); r = measure(q); } "
                          "return r; }",
                          "f");
  for (const auto& [name, p] : k.lowered.procs) {
    if (name == k.lowered.entry) continue;
    ASSERT_EQ(p.blocks.size(), 1u) << ir::dump(k.lowered);
    EXPECT_EQ(quantum_calls(p), (std::vector<std::string>{"H", "measure"}));
  }
}

TEST(Lower, NestedUsingAllocFreeOrder) {
  auto k = compile_source("lower_nested",
                          "operation f(): unit { using(a: qubit) { using(b: qubit) { H(b); } H(a); } }", "f");
  std::vector<std::string> seq;
  for (const auto& [name, p] : k.lowered.procs)
    for (const auto& b : p.blocks)
      for (const auto& in : b.instrs) {
        if (in.kind == ir::InstrKind::Alloc) seq.push_back("alloc " + in.vars.at(0));
        if (in.kind == ir::InstrKind::Free) seq.push_back("free " + ir::expr_to_string(in.args.at(0)));
      }
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[0].substr(0, 7), "alloc a");
  EXPECT_EQ(seq[1].substr(0, 7), "alloc b");
  EXPECT_EQ(seq[2].substr(0, 6), "free b");
  EXPECT_EQ(seq[3].substr(0, 6), "free a");
}

TEST(PartialEval, StaticSumRandomVanishes) {
  auto k = compile_case(kernel_cases()[0]);
  const ir::Proc& p = k.residual.entry_proc();
  EXPECT_EQ(ir::count_quantum_calls(k.residual), 0u);
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_TRUE(p.blocks[0].instrs.empty());
  ASSERT_EQ(p.blocks[0].term.kind, ir::TermKind::Return);
  ASSERT_TRUE(ir::is_const(p.blocks[0].term.value));
  EXPECT_EQ(value_to_text(p.blocks[0].term.value->value), "(16, 0)");
}

TEST(PartialEval, DynamicSumRandomKeepsSelection) {
  auto k = compile_case(kernel_cases()[1]);
  const ir::Proc& p = k.residual.entry_proc();
  EXPECT_EQ(quantum_calls(p), (std::vector<std::string>{"init", "H", "measure"}));
  EXPECT_EQ(count_kind(p, ir::InstrKind::Alloc), 1u);
  EXPECT_GE(count_kind(p, ir::InstrKind::Free), 1u);
  std::set<std::string> returns;
  int branches = 0;
  for (const auto& b : p.blocks) {
    if (b.term.kind == ir::TermKind::Branch) ++branches;
    if (b.term.kind == ir::TermKind::Return) returns.insert(ir::expr_to_string(b.term.value));
  }
  EXPECT_EQ(branches, 1);
  EXPECT_EQ(returns, (std::set<std::string>{"(16, 2)", "(16, 6)"}));
}

TEST(PartialEval, ConstantConditionPicksBranch) {
  std::string body =
      "operation f(x: bool): unit { using(q: qubit) { if (x) { X(q, PI); } else { Y(q); } } }";
  auto t = compile_source("pe_if_true", body, "f", {Value(true)});
  EXPECT_EQ(quantum_calls(t.residual.entry_proc()), (std::vector<std::string>{"X"}));
  auto f = compile_source("pe_if_false", body, "f", {Value(false)});
  EXPECT_EQ(quantum_calls(f.residual.entry_proc()), (std::vector<std::string>{"Y"}));
}

TEST(PartialEval, StaticLoopUnrolls) {
  auto k = compile_source("pe_unroll",
                          "operation f(n: int): unit { using(q: qubit) { int i = 0; while (i < n) { H(q); i += 1; } } }",
                          "f", {Value(int32_t{4})});
  EXPECT_EQ(quantum_calls(k.residual.entry_proc()).size(), 4u);
  for (const auto& b : k.residual.entry_proc().blocks) EXPECT_NE(b.term.kind, ir::TermKind::Branch);
}

TEST(PartialEval, DynamicLoopSurvives) {
  auto k = compile_case(kernel_cases()[5]);
  int back_edges = 0;
  const auto& p = k.residual.entry_proc();
  for (size_t b = 0; b < p.blocks.size(); ++b)
    for (int s : ir::successors(p.blocks[b].term)) back_edges += s <= static_cast<int>(b);
  EXPECT_GE(back_edges, 1) << ir::dump(k.residual);
}

TEST(PartialEval, StepBudget) {
  auto lowered = compile_case(kernel_cases()[2]).lowered;
  PeOptions o;
  o.step_budget = 50;
  EXPECT_EQ(error_of([&] { partially_execute(lowered, platform(), o); }), Errc::StepBudgetExceeded);
}

class Residual : public ::testing::TestWithParam<KernelCase> {};

TEST_P(Residual, Idempotent) {
  auto k = compile_case(GetParam());
  ir::KernelIR again = partially_execute(k.residual, platform());
  EXPECT_EQ(ir::dump(again), ir::dump(k.residual));
}

bool all_const(const ir::ExprP& e) {
  if (!e) return true;
  if (e->op == ir::Op::Var) return false;
  for (const auto& a : e->args)
    if (!all_const(a)) return false;
  return true;
}

TEST_P(Residual, NoFoldableWorkLeft) {
  auto k = compile_case(GetParam());
  for (const auto& b : k.residual.entry_proc().blocks) {
    if (b.term.kind == ir::TermKind::Branch) {
      EXPECT_FALSE(ir::is_const(b.term.cond)) << ir::dump(k.residual);
    }
    for (const auto& in : b.instrs) {
      if (in.kind != ir::InstrKind::Assign) continue;
      bool computes = in.value->op == ir::Op::Unary || in.value->op == ir::Op::Binary;
      EXPECT_FALSE(computes && all_const(in.value)) << ir::instr_to_string(in);
    }
  }
}

// The lowered program on the reference interpreter and the residual program
// on the VM agree on result bytes and on every measurement.
TEST_P(Residual, PreservesSemantics) {
  const KernelCase& kc = GetParam();
  auto k = compile_case(kc);
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    InterpOptions io;
    io.seed = seed;
    InterpResult ref = interpret(k.lowered, platform(), io);
    VmRun vm = run_program(k.program, seed);
    EXPECT_EQ(encode_value(ref.value, k.ret), vm.result) << kc.label << " seed " << seed;
    EXPECT_EQ(ref.trace, vm.measurements) << kc.label << " seed " << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Programs, Residual, ::testing::ValuesIn(kernel_cases()),
                         [](const auto& info) { return info.param.label; });

// Compile-time errors, one fixture per class.
class CompileNegative : public ::testing::TestWithParam<std::string> {};

TEST_P(CompileNegative, RejectedWithCode) {
  std::string path = fixture_path("negative/" + GetParam() + ".qu");
  Errc got = error_of([&] { compile_kernel(path, "k", {}, platform(), runtime_config()); });
  EXPECT_EQ(errc_name(got), GetParam());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, CompileNegative,
                         ::testing::Values("DivisionByZero", "IndexOutOfRange", "StepBudgetExceeded",
                                           "DynamicUnsupported", "ModifierError", "TooManyQubits", "Infeasible",
                                           "SyncError", "UnsupportedReturn", "RegisterPressure"));

}  // namespace
}  // namespace quingo
