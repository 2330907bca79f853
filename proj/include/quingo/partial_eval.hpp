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

#include "quingo/ir.hpp"
#include "quingo/platform_config.hpp"

namespace quingo {

struct PeOptions {
  int64_t step_budget = 1'000'000;
  size_t residual_budget = 200'000;  // residual instructions
};

/// Online specializer. Static computation is executed; measurement-
/// dependent values survive as three-address code over `%N` registers in
/// a single residual procedure `main`. Dynamic branches split the
/// continuation; loops whose exit test turned dynamic are generalized
/// and closed through memoized join blocks.
ir::KernelIR partially_execute(const ir::KernelIR& ir, const PlatformConfig& cfg, const PeOptions& opts = {});

/// Jump threading, block merging, copy propagation, dead assignment
/// removal and canonical renumbering of a residual procedure.
void cleanup(ir::Proc& p);

}  // namespace quingo
