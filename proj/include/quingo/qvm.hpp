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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quingo/isa.hpp"
#include "quingo/platform_config.hpp"
#include "quingo/quantum_state.hpp"
#include "quingo/serialize.hpp"

namespace quingo {

struct VmOptions {
  uint64_t seed = 0;
  bool zero_init = false;
  bool strict_pulse = false;
  int64_t classical_cycle_ns = 1;
  int64_t max_cycles = 1'000'000'000;
  int64_t max_steps = 100'000'000;
  size_t memory_size = 64 * 1024;
  bool check_norm = true;  // NormViolation if |psi| drifts beyond 1e-9
};

struct TraceEntry {
  int64_t cycle = 0;  // issue cycle
  int pc = 0;
  std::string instruction;
  std::optional<int> outcome;  // measure only
};

enum class VmStatus { Running, Halted };

/// Control processor plus state-vector backend.
class Vm {
 public:
  /// TooManyQubits when the program needs more qubits than the platform
  /// offers or than the 12-qubit simulator cap.
  Vm(QProgram program, const PlatformConfig& cfg, VmOptions opts = {});

  VmStatus step();
  /// Steps until `halt`; CycleBudgetExceeded past `max_cycles`.
  void run();

  bool halted() const { return halted_; }
  int pc() const { return pc_; }
  int64_t cycle() const { return cycle_; }
  int32_t reg(int r) const { return r == 0 ? 0 : regs_[static_cast<size_t>(r)]; }
  /// MemoryOutOfRange when [addr, addr+len) leaves the shared memory.
  Bytes read_memory(size_t addr, size_t len) const;
  const std::vector<MeasureEvent>& measurements() const { return q_.trace(); }
  const QuantumState& state() const { return q_.state(); }
  const QProgram& program() const { return prog_; }

  /// Off by default; records one entry per retired instruction.
  void enable_trace(bool on = true) { tracing_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  void store(size_t addr, uint64_t v, int width);
  std::vector<Value> params(const MInstr& in, const OpDef& op) const;
  const OpDef& find_op(const std::string& name, SemKind kind) const;

  QProgram prog_;
  const PlatformConfig& cfg_;
  VmOptions opts_;
  QuantumExecutor q_;
  std::vector<int32_t> regs_;
  int32_t cmp_a_ = 0, cmp_b_ = 0;
  std::vector<uint8_t> mem_;
  int pc_ = 0;
  int64_t cycle_ = 0;
  int64_t steps_ = 0;
  bool halted_ = false;
  bool tracing_ = false;
  std::vector<TraceEntry> trace_;
};

/// One JSON object per line: {"cycle":..,"pc":..,"instruction":"..",["outcome":b]}.
std::string trace_to_jsonl(const std::vector<TraceEntry>& trace);

}  // namespace quingo
