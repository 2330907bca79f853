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

#include <string>
#include <vector>

#include "quingo/ir.hpp"
#include "quingo/isa.hpp"
#include "quingo/platform_config.hpp"
#include "quingo/scheduler.hpp"
#include "quingo/serialize.hpp"

namespace quingo {

/// Machine code for a scheduled residual procedure. Dynamic doubles live in
/// registers as Q16 fixed point. RegisterPressure when more values are live
/// than r1..r29 can hold; UnencodableImmediate for out-of-range constants.
QProgram emit_program(const TimedIR& timed, const PlatformConfig& cfg, WireFormat fmt = {});

/// emit_program() rendered as `.eqa` text.
std::string emit(const TimedIR& timed, const PlatformConfig& cfg, WireFormat fmt = {});

/// Stores a return value (constants, registers, tuples and arrays of them)
/// at shared address 0 in the serialized layout, then `halt`. `regs` maps
/// variable names to registers. UnsupportedReturn for quantum types.
std::vector<MInstr> emit_result_epilogue(const ir::ExprP& value, const TypePtr& type,
                                         const std::map<std::string, int>& regs, WireFormat fmt = {});

/// Q16 encoding of a double; UnencodableImmediate if it does not fit.
int32_t to_q16(double d);

}  // namespace quingo
