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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quingo/ir.hpp"
#include "quingo/platform_config.hpp"

namespace quingo {

/// Machine instructions (1 ns each) that codegen emits for a non-quantum
/// IR instruction, and for the fmr following a measurement.
int64_t classical_cost(const ir::Instr& in);

/// Cycles from the end of a block's body to the successor's entry:
/// `which` is 0 for the then/jump edge, 1 for the else edge.
int64_t edge_cost(const ir::Terminator& t, int which);

/// Cycles the instruction occupies once issued (duration plus fmr).
int64_t busy_cost(const ir::Instr& in, const PlatformConfig& cfg);

bool is_quantum(const ir::Instr& in);

struct BlockSchedule {
  std::vector<int64_t> wait;   // qwait cycles inserted before each instruction
  std::vector<int64_t> start;  // issue cycle of each instruction, from block entry
  int64_t end = 0;             // cycle at which the terminator starts
  int64_t edge_pad[2] = {0, 0};
  // Elapsed ns of each started, live timer at block entry.
  std::map<std::string, int64_t> entry_timers;
};

/// Start cycles for the residual procedure. Quantum operations are issued
/// in program order on one timeline; each starts at the earliest cycle
/// meeting its timer constraints.
struct TimedIR {
  const ir::Proc* proc = nullptr;
  std::vector<BlockSchedule> blocks;
};

/// Infeasible (with the conflicting constraints) or SyncError (timer
/// values differ across the paths reaching a use).
TimedIR schedule(const ir::Proc& proc, const PlatformConfig& cfg);

struct Violation {
  std::string kind;  // "constraint", "qubit-overlap", "order", "timer-sync"
  std::string message;
};

/// Independent replay of the recorded start cycles.
std::optional<Violation> verify_schedule(const TimedIR& timed, const PlatformConfig& cfg);

/// `cycle op qubits` per quantum operation, one block section at a time.
std::string dump_schedule(const TimedIR& timed);

}  // namespace quingo
