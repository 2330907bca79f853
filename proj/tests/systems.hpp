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

#pragma once

// Random timing-constraint systems expressed both as oracle::System and as
// a one-block residual procedure the scheduler accepts.

#include <random>
#include <string>

#include "oracle.hpp"
#include "quingo/ir.hpp"
#include "quingo/platform_config.hpp"

namespace quingo::testing {

/// Ops A1, A2, A3 with durations of 1, 2 and 3 ns.
inline PlatformConfig system_platform() {
  PlatformConfig cfg;
  cfg.package_name = "sys";
  cfg.qubit_count = 2;
  for (int d = 1; d <= 3; ++d) {
    OpDef op;
    op.name = "A" + std::to_string(d);
    op.duration_ns = d;
    op.semantics.kind = SemKind::Matrix;
    op.semantics.matrix = Matrix::identity(2);
    cfg.operations[op.name] = op;
  }
  return cfg;
}

inline oracle::System random_system(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  oracle::System s;
  s.timers = pick(1, 2);
  int n = pick(1, 5);
  for (int i = 0; i < n; ++i) {
    oracle::SysOp op;
    op.busy = pick(1, 3);
    op.gap = pick(0, 9) < 7 ? 0 : pick(1, 2);
    int nc = pick(0, 9);
    nc = nc < 4 ? 0 : (nc < 8 ? 1 : 2);
    for (int c = 0; c < nc; ++c)
      op.constraints.push_back({pick(0, s.timers - 1), static_cast<oracle::Rel>(pick(0, 2)), pick(0, 9)});
    if (pick(0, 9) < 3) op.resets.push_back(pick(0, s.timers - 1));
    s.ops.push_back(op);
  }
  return s;
}

/// The same system as IR. Each unit of gap is a one-cycle assignment; all
/// timers start at block entry.
inline ir::Proc system_proc(const oracle::System& s, std::vector<size_t>* op_index = nullptr) {
  using namespace ir;
  auto timer = [](int t) { return cst(Value(TimerVal{"sys.t" + std::to_string(t) + "#0"}), types::timer()); };
  Proc p;
  p.name = "main";
  p.ret = types::unit();
  p.vars["x"] = types::integer();
  Block b;
  Instr start;
  start.kind = InstrKind::TimerReset;
  for (int t = 0; t < s.timers; ++t) start.args.push_back(timer(t));
  b.instrs.push_back(start);
  for (size_t i = 0; i < s.ops.size(); ++i) {
    const auto& op = s.ops[i];
    for (int64_t g = 0; g < op.gap; ++g) {
      Instr a;
      a.kind = InstrKind::Assign;
      a.dst = "x";
      a.value = cst(Value(int32_t{1}), types::integer());
      b.instrs.push_back(a);
    }
    Instr call;
    call.kind = InstrKind::Call;
    call.opaque = true;
    call.callee = "A" + std::to_string(op.busy);
    call.args.push_back(cst(Value(QubitVal{static_cast<int>(i % 2)}), types::qubit()));
    for (const auto& c : op.constraints) {
      TimingConstraint tc;
      tc.timer = timer(c.timer);
      tc.cmp = c.rel == oracle::Rel::Eq ? ast::Cmp::Eq : (c.rel == oracle::Rel::Gt ? ast::Cmp::Gt : ast::Cmp::Ge);
      tc.time = cst(Value(TimeVal{c.value}), types::time());
      call.timing.constraints.push_back(tc);
    }
    for (int r : op.resets) call.timing.resets.push_back(timer(r));
    if (op_index) op_index->push_back(b.instrs.size());
    b.instrs.push_back(call);
  }
  b.term.kind = TermKind::Return;
  p.blocks.push_back(b);
  return p;
}

}  // namespace quingo::testing
