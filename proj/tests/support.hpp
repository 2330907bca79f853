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

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "quingo/codegen.hpp"
#include "quingo/frontend.hpp"
#include "quingo/lower.hpp"
#include "quingo/partial_eval.hpp"
#include "quingo/platform_config.hpp"
#include "quingo/qvm.hpp"
#include "quingo/runtime.hpp"
#include "quingo/scheduler.hpp"
#include "quingo/serialize.hpp"

namespace quingo::testing {

inline std::string program_path(const std::string& name) { return std::string(QUINGO_PROGRAMS_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(QUINGO_FIXTURES_DIR) + "/" + name; }

inline const PlatformConfig& platform() {
  static const PlatformConfig cfg = load_config(program_path("config.qfg"));
  return cfg;
}

inline RuntimeConfig runtime_config(uint64_t seed = 0) {
  RuntimeConfig rt;
  rt.config_path = program_path("config.qfg");
  rt.seed = seed;
  rt.search_paths = {QUINGO_PROGRAMS_DIR};
  return rt;
}

struct KernelCase {
  std::string label;
  std::string file;
  std::string op;
  std::vector<Value> args;
};

inline void PrintTo(const KernelCase& k, std::ostream* os) { *os << k.label; }

inline Value int_array(std::vector<int32_t> xs) {
  std::vector<Value> v;
  for (int32_t x : xs) v.emplace_back(x);
  return make_array(std::move(v));
}

/// Every kernel shipped under programs/.
inline std::vector<KernelCase> kernel_cases() {
  return {
      {"sum_random_static", "kernel.qu", "sum_random", {int_array({2, 6, 8}), Value(false)}},
      {"sum_random_dynamic", "kernel.qu", "sum_random", {int_array({2, 6, 8}), Value(true)}},
      {"ipe3", "ipe.qu", "ipe", {Value(int32_t{3})}},
      {"t2_echo", "t2.qu", "t2", {Value(true)}},
      {"t2_ramsey", "t2.qu", "t2", {Value(false)}},
      {"rus", "rus.qu", "rus", {}},
  };
}

inline CompiledKernel compile_case(const KernelCase& k) {
  return compile_kernel(program_path(k.file), k.op, k.args, platform(), runtime_config());
}

/// Writes `body` (after the standard imports) to a scratch kernel file.
inline std::string write_kernel(const std::string& name, const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "quingo_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / (name + ".qu");
  std::ofstream(path) << "import config.json.*\nimport operations.*\n\n" << body;
  return path.string();
}

inline CompiledKernel compile_source(const std::string& name, const std::string& body, const std::string& op,
                                     const std::vector<Value>& args = {}) {
  return compile_kernel(write_kernel(name, body), op, args, platform(), runtime_config());
}

/// Runs an assembled program to completion and returns the result block.
struct VmRun {
  Bytes result;
  Value value;
  std::vector<MeasureEvent> measurements;
  int64_t cycles = 0;
};

inline VmRun run_program(const QProgram& prog, uint64_t seed, bool zero_init = false) {
  VmOptions o;
  o.seed = seed;
  o.zero_init = zero_init;
  Vm vm(prog, platform(), o);
  vm.run();
  TypePtr t = parse_descriptor(prog.rettype);
  WireFormat fmt{prog.f32_doubles};
  Bytes mem = vm.read_memory(0, o.memory_size);
  Decoded d = decode_value(mem, t, 0, fmt);
  VmRun r;
  r.value = d.value;
  r.result.assign(mem.begin(), mem.begin() + static_cast<std::ptrdiff_t>(d.extent));
  r.measurements = vm.measurements();
  r.cycles = vm.cycle();
  return r;
}

}  // namespace quingo::testing
