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
#include <string>
#include <vector>

#include "quingo/ir.hpp"
#include "quingo/platform_config.hpp"
#include "quingo/quantum_state.hpp"
#include "quingo/value.hpp"

namespace quingo {

/// Value-level operators shared by the interpreter and the partial
/// evaluator. `result` is the static result type (drives int->double).
Value eval_unary(const std::string& op, const Value& a, const TypePtr& result);
Value eval_binary(const std::string& op, const Value& a, const Value& b, const TypePtr& result);
double to_double(const Value& v);

struct InterpOptions {
  uint64_t seed = 0;
  bool zero_init = false;
  bool strict_pulse = false;
  int64_t step_budget = 10'000'000;
  int num_qubits = -1;  // state size; -1 means min(platform qubit_count, 12)
};

struct InterpResult {
  Value value;
  std::vector<MeasureEvent> trace;
  std::vector<std::string> qops;  // applied quantum operations, in order
};

/// Reference semantics of KernelIR (lowered or residual) on the shared
/// quantum backend. Timing annotations do not affect results.
InterpResult interpret(const ir::KernelIR& ir, const PlatformConfig& cfg, const InterpOptions& opts = {});

}  // namespace quingo
