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
#include <string_view>
#include <vector>

#include "quingo/types.hpp"
#include "quingo/value.hpp"

namespace quingo {

/// Zero-parameter `main` wrapper calling `op` with constant arguments.
/// Scalars are inlined; bools and arrays get `varN_<kind>` declarations.
/// ArgTypeError when the arguments do not fit `params`.
std::string generate_main(const std::string& op, const std::vector<Value>& args,
                          const std::vector<TypePtr>& params, const TypePtr& ret);

/// Host argument manifest: a JSON array of bools, ints, floats and nested
/// homogeneous arrays.
std::vector<Value> parse_args_json(std::string_view text);

}  // namespace quingo
