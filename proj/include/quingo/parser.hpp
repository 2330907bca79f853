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

#include "quingo/ast.hpp"
#include "quingo/lexer.hpp"

namespace quingo {

/// Parses a token stream into a SourceUnit. When the source has no
/// `package` statement the package is named after `default_package`.
ast::SourceUnit parse(const std::vector<Token>& tokens, const std::string& file = {},
                      const std::string& default_package = {});

/// tokenize + parse.
ast::SourceUnit parse_source(std::string_view source, const std::string& file = {},
                             const std::string& default_package = {});

}  // namespace quingo
