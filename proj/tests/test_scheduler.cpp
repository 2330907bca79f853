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

#include <chrono>
#include <functional>

#include "oracle.hpp"
#include "support.hpp"
#include "systems.hpp"

namespace quingo {
namespace {

using namespace quingo::testing;
using ir::cst;

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

ir::ExprP timer(const std::string& name) { return cst(Value(TimerVal{"k." + name + "#0"}), types::timer()); }

ir::Instr call(const std::string& op, int q) {
  ir::Instr in;
  in.kind = ir::InstrKind::Call;
  in.opaque = true;
  in.callee = op;
  in.args.push_back(cst(Value(QubitVal{q}), types::qubit()));
  return in;
}

ir::Instr start_timer(const std::string& name) {
  ir::Instr in;
  in.kind = ir::InstrKind::TimerReset;
  in.args.push_back(timer(name));
  return in;
}

void constrain(ir::Instr& in, const std::string& t, int64_t ns) {
  in.timing.constraints.push_back({timer(t), ast::Cmp::Eq, cst(Value(TimeVal{ns}), types::time())});
}

ir::Proc straight(std::vector<ir::Instr> instrs) {
  ir::Proc p;
  p.name = "main";
  p.ret = types::unit();
  ir::Block b;
  b.instrs = std::move(instrs);
  p.blocks.push_back(b);
  return p;
}

struct Issued {
  std::string op;
  int64_t start;
};

std::vector<Issued> issued(const TimedIR& t, size_t block) {
  std::vector<Issued> out;
  const auto& b = t.proc->blocks[block];
  for (size_t i = 0; i < b.instrs.size(); ++i)
    if (is_quantum(b.instrs[i])) out.push_back({b.instrs[i].callee, t.blocks[block].start[i]});
  return out;
}

TEST(Schedule, BackToBackAsap) {
  ir::Proc p = straight({call("H", 0), call("U", 0)});
  TimedIR t = schedule(p, platform());
  auto ops = issued(t, 0);
  ASSERT_EQ(ops.size(), 2u);
  EXPECT_EQ(ops[0].start, 0);
  EXPECT_EQ(ops[1].start, 20);
  EXPECT_FALSE(verify_schedule(t, platform()).has_value());
}

TEST(Schedule, EqualityAfterBusyQubitIsInfeasible) {
  // init keeps q0 busy until cycle 200; the constraint wants cycle 10
  ir::Instr a = call("H", 0);
  constrain(a, "tmr", 10);
  ir::Proc p = straight({start_timer("tmr"), call("init", 0), a});
  try {
    schedule(p, platform());
    FAIL() << "expected Infeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Infeasible);
    EXPECT_NE(e.message().find("tmr == 10ns"), std::string::npos) << e.message();
  }
}

TEST(Schedule, TimerAcrossGap) {
  ir::Instr first = call("X90", 0);
  first.timing.resets.push_back(timer("tmr"));
  ir::Instr second = call("X90", 0);
  constrain(second, "tmr", 200);
  ir::Proc p = straight({start_timer("tmr"), call("init", 0), first, second});
  auto ops = issued(schedule(p, platform()), 0);
  EXPECT_EQ(ops[1].start, 200);
  EXPECT_EQ(ops[2].start, 400);
}

TEST(Schedule, ClassicalWorkTakesCycles) {
  ir::Instr assign;
  assign.kind = ir::InstrKind::Assign;
  assign.dst = "x";
  assign.value = cst(Value(int32_t{1}), types::integer());
  ir::Proc p = straight({call("H", 0), assign, assign, call("H", 0)});
  auto ops = issued(schedule(p, platform()), 0);
  EXPECT_EQ(ops[1].start, 22);
}

// Measured against a hand schedule of the T2 kernel: init 200 ns, X90 20 ns.
TEST(Schedule, T2EchoHandSchedule) {
  auto k = compile_case(kernel_cases()[3]);
  TimedIR t = schedule(k.residual.entry_proc(), platform());
  EXPECT_FALSE(verify_schedule(t, platform()).has_value());
  auto ops = issued(t, 0);
  std::vector<std::pair<std::string, int64_t>> got;
  for (const auto& o : ops) got.emplace_back(o.op, o.start);
  EXPECT_EQ(got, (std::vector<std::pair<std::string, int64_t>>{
                     {"init", 0}, {"X90", 200}, {"X", 300}, {"X90", 400}, {"measure", 420}}));
}

TEST(Schedule, T2SecondIntervalAndRamsey) {
  for (size_t c : {3u, 4u}) {
    auto k = compile_case(kernel_cases()[c]);
    TimedIR t = schedule(k.residual.entry_proc(), platform());
    EXPECT_FALSE(verify_schedule(t, platform()).has_value());
    int intervals = 0;
    for (size_t b = 0; b < t.blocks.size(); ++b) {
      auto ops = issued(t, b);
      if (ops.empty()) continue;
      std::vector<int64_t> x90;
      int64_t x = -1, m = -1;
      for (const auto& o : ops) {
        if (o.op == "X90") x90.push_back(o.start);
        if (o.op == "X") x = o.start;
        if (o.op == "measure") m = o.start;
      }
      ASSERT_EQ(x90.size(), 2u);
      int64_t interval = b == 0 ? 200 : 400;
      EXPECT_EQ(x90[1] - x90[0], interval);
      EXPECT_EQ(m, x90[1] + 20);
      if (c == 3) EXPECT_EQ(x - x90[0], interval / 2);
      else EXPECT_EQ(x, -1);
      ++intervals;
    }
    EXPECT_EQ(intervals, 3);
  }
}

TEST(Verify, AcceptsEveryProgram) {
  for (const auto& kc : kernel_cases()) {
    auto k = compile_case(kc);
    TimedIR t = schedule(k.residual.entry_proc(), platform());
    auto v = verify_schedule(t, platform());
    EXPECT_FALSE(v.has_value()) << kc.label << ": " << v->message;
  }
}

TEST(Verify, ShiftedOpNamesEqualityConstraint) {
  auto k = compile_case(kernel_cases()[3]);
  TimedIR t = schedule(k.residual.entry_proc(), platform());
  const auto& b = t.proc->blocks[0];
  for (size_t i = 0; i < b.instrs.size(); ++i)
    if (b.instrs[i].callee == "X") t.blocks[0].start[i] += 1;
  auto v = verify_schedule(t, platform());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, "constraint");
  EXPECT_NE(v->message.find("tmr == 100ns"), std::string::npos) << v->message;
}

TEST(Verify, OverlapOnOneQubit) {
  ir::Proc p = straight({call("measure", 0), call("H", 1), call("H", 0)});
  TimedIR t = schedule(p, platform());
  t.blocks[0].start[2] = 100;
  auto v = verify_schedule(t, platform());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, "qubit-overlap") << v->message;
}

TEST(Verify, IssueOrder) {
  ir::Proc p = straight({call("H", 0), call("H", 1)});
  TimedIR t = schedule(p, platform());
  t.blocks[0].start[1] = 5;
  auto v = verify_schedule(t, platform());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, "order");
}

TEST(Schedule, DynamicBranchesPadded) {
  auto k = compile_source("sched_pad",
                          "operation f(): int { int r = 0; using(q: qubit) { timer t; init(q); X90(q) !{t}; "
                          "bool b = measure(q); if (b) { H(q); } else { X90(q); X90(q); } "
                          "X90(q) @{t >= 2000ns}; } return r; }",
                          "f");
  TimedIR t = schedule(k.residual.entry_proc(), platform());
  EXPECT_FALSE(verify_schedule(t, platform()).has_value());
}

TEST(Schedule, ReadBeforeStart) {
  ir::Instr a = call("H", 0);
  constrain(a, "never", 10);
  EXPECT_EQ(error_of([&] { schedule(straight({a}), platform()); }), Errc::SyncError);
}

// Exhaustive search over start cycles below the horizon decides
// feasibility; the scheduler must agree and pick the least start of every
// op given the ones before it.
TEST(Oracle, RandomSystemsMatchExhaustiveSearch) {
  PlatformConfig cfg = system_platform();
  std::mt19937_64 rng(64);
  int feasible = 0;
  for (int n = 0; n < 200; ++n) {
    oracle::System sys = random_system(rng);
    std::vector<size_t> index;
    ir::Proc p = system_proc(sys, &index);
    oracle::ScheduleSearch search(sys, 64);
    bool want = search.feasible();
    std::optional<TimedIR> t;
    try {
      t = schedule(p, cfg);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::Infeasible);
    }
    ASSERT_EQ(t.has_value(), want) << "system " << n << "\n" << ir::instr_to_string(p.blocks[0].instrs.back());
    if (!want) continue;
    ++feasible;
    EXPECT_FALSE(verify_schedule(*t, cfg).has_value());
    std::vector<int64_t> prefix;
    for (size_t i = 0; i < sys.ops.size(); ++i) {
      int64_t got = t->blocks[0].start[index[i]];
      auto least = search.min_start(prefix);
      ASSERT_TRUE(least.has_value());
      EXPECT_EQ(got, *least) << "system " << n << " op " << i;
      prefix.push_back(got);
    }
  }
  // Both outcomes must be exercised.
  EXPECT_GT(feasible, 40);
  EXPECT_LT(feasible, 190);
}

TEST(Dump, OneLinePerQuantumOp) {
  auto k = compile_case(kernel_cases()[1]);
  TimedIR t = schedule(k.residual.entry_proc(), platform());
  EXPECT_EQ(dump_schedule(t), "# block 0\n0 init q0\n200 H q0\n220 measure q0\n");
}

}  // namespace
}  // namespace quingo
