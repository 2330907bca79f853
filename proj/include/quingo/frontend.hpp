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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quingo/ast.hpp"
#include "quingo/platform_config.hpp"

namespace quingo {

struct SourceInput {
  std::string file;
  std::string text;
};

/// Declarations visible to one package after linking.
struct LinkedProgram {
  std::vector<std::unique_ptr<ast::SourceUnit>> units;
  std::vector<bool> is_root;
  // unit index -> unqualified name -> qualified name
  std::vector<std::map<std::string, std::string>> scopes;
  // qualified name -> (unit index, decl index)
  std::map<std::string, std::pair<size_t, size_t>> decls;
  std::vector<std::string> packages;
  std::string config_package;
};

/// Loads every package transitively imported by `roots`. Root units share
/// one namespace. A package `a.b` is looked up as `a/b.qu` then `a.b.qu`
/// in each search path; the config package name resolves without a file.
LinkedProgram resolve_imports(std::vector<ast::SourceUnit> roots,
                              const std::vector<std::string>& search_paths,
                              const std::string& config_package = {});

struct OpInfo {
  std::string qualified;
  std::string name;
  bool opaque = false;
  bool quantum = false;  // opaque, or calls a quantum operation
  const ast::OpDecl* decl = nullptr;
  std::vector<TypePtr> params;
  TypePtr ret;
  // unique local name -> type, params included
  std::map<std::string, TypePtr> locals;
  // largest number of qubits live at once from this op's own using blocks
  int max_using = 0;
};

struct TypedProgram {
  LinkedProgram linked;
  std::map<std::string, OpInfo> ops;

  const OpInfo* find(const std::string& qualified) const;
  /// Looks up an unqualified name in the root namespace.
  const OpInfo* find_root(const std::string& name) const;
};

TypedProgram typecheck(LinkedProgram linked, const PlatformConfig& config);

/// Reads a file into memory; IoError if it cannot be opened.
std::string read_file(const std::string& path);

/// Parse + resolve + typecheck in one step.
TypedProgram compile_frontend(const std::vector<SourceInput>& roots,
                              const std::vector<std::string>& search_paths,
                              const PlatformConfig& config);

constexpr double kPi = 3.141592653589793;

}  // namespace quingo
