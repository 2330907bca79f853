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

#include "quingo/error.hpp"
#include "quingo/ir.hpp"
#include "quingo/isa.hpp"
#include "quingo/platform_config.hpp"
#include "quingo/quantum_state.hpp"
#include "quingo/serialize.hpp"
#include "quingo/value.hpp"

namespace quingo {

struct RuntimeConfig {
  std::string backend = "qvm";
  std::string config_path;
  uint64_t seed = 0;
  std::vector<std::string> search_paths;
  size_t memory_size = 64 * 1024;
  bool strict_pulse = false;
  bool zero_init = false;
  bool f32_doubles = false;
  int64_t step_budget = 1'000'000;
  int64_t max_cycles = 1'000'000'000;
  int64_t classical_cycle_ns = 1;
};

/// Driver for something that runs a QProgram and exposes shared memory.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual void upload(const QProgram& program, const PlatformConfig& cfg, const RuntimeConfig& rt) = 0;
  virtual void start() = 0;
  virtual void wait() = 0;
  virtual Bytes read(size_t addr, size_t len) = 0;
  virtual std::vector<MeasureEvent> measurements() const { return {}; }
  virtual int64_t cycles() const { return 0; }
};

using BackendFactory = std::function<std::unique_ptr<Backend>()>;

void register_backend(const std::string& name, BackendFactory factory);
/// UnknownBackend if `name` was never registered. "qvm" is built in.
std::unique_ptr<Backend> make_backend(const std::string& name);
std::vector<std::string> backend_names();

/// Outputs of the classical pre-execution and quantum compilation phases.
struct CompiledKernel {
  std::string main_source;
  TypePtr ret;
  ir::KernelIR lowered;
  ir::KernelIR residual;
  std::string schedule_dump;
  std::string assembly;
  QProgram program;
};

/// Phase 3: main generation; phase 4: frontend, partial evaluation,
/// scheduling, code generation and assembly. `log` receives phase lines.
CompiledKernel compile_kernel(const std::string& kernel_path, const std::string& op, const std::vector<Value>& args,
                              const PlatformConfig& cfg, const RuntimeConfig& rt,
                              std::vector<std::string>* log = nullptr);

enum class RunStatus { Pending, Completed, Failed };

struct RunHandle {
  RunStatus status = RunStatus::Pending;
  std::optional<Error> error;
  int failed_phase = 0;
  std::vector<std::string> phase_log;  // "phase N: ..." lines in order
  CompiledKernel compiled;
  Bytes result;  // result block
  TypePtr type;
  std::string descriptor;
  Value value;
  std::vector<MeasureEvent> measurements;
  int64_t cycles = 0;
};

/// Runs phases 3 to 6. Never throws for kernel errors: the handle records
/// the error and the phase it came from.
RunHandle call_kernel(const std::string& kernel_path, const std::string& op, const std::vector<Value>& args,
                      const RuntimeConfig& rt);

/// NotCompleted unless the call succeeded.
const Value& read_result(const RunHandle& handle);

}  // namespace quingo
