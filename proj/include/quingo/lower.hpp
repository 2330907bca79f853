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

#include "quingo/frontend.hpp"
#include "quingo/ir.hpp"
#include "quingo/platform_config.hpp"

namespace quingo {

/// Flattens every user operation of `prog` into a CFG procedure. The entry
/// procedure is the root-namespace operation `entry`.
ir::KernelIR lower(const TypedProgram& prog, const PlatformConfig& cfg, const std::string& entry = "main");

/// Nanoseconds of a time literal, rounded to the nearest ns.
int64_t time_literal_ns(double magnitude, const std::string& unit);

}  // namespace quingo
