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

// qgrt: compile and run Quingo kernels, decode result blocks.
//
//   qgrt call --kernel F.qu --op NAME --args-json '[...]' --config C.qfg
//             --seed N --out result.bin --desc result.desc
//   qgrt compile --kernel F.qu --op NAME --args-json '[...]' --config C.qfg -o out.eqa
//   qgrt decode --bin result.bin --desc result.desc
//
// Exit status: 0 success, 2 compile error, 3 runtime error.

#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "quingo/error.hpp"
#include "quingo/frontend.hpp"
#include "quingo/ir.hpp"
#include "quingo/main_gen.hpp"
#include "quingo/runtime.hpp"

namespace {

constexpr int kCompileError = 2;
constexpr int kRuntimeError = 3;

struct Common {
  std::string kernel, op, args_json = "[]", config;
  std::vector<std::string> search;
  int64_t step_budget = 1'000'000;
  bool f32 = false;
  bool dump_ir = false, dump_schedule = false, dump_main = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--kernel", c.kernel, "Quingo source file holding the kernel")->required();
  app->add_option("--op", c.op, "operation to call")->required();
  app->add_option("--args-json", c.args_json, "JSON array of kernel arguments");
  app->add_option("--config", c.config, "platform configuration (.qfg)")->required();
  app->add_option("-I,--search-path", c.search, "extra package search directory");
  app->add_option("--step-budget", c.step_budget, "partial evaluation step budget");
  app->add_flag("--f32-doubles", c.f32, "serialize doubles as 4-byte IEEE singles");
  app->add_flag("--dump-ir", c.dump_ir, "print the residual IR");
  app->add_flag("--dump-schedule", c.dump_schedule, "print `cycle op qubits` for every quantum operation");
  app->add_flag("--dump-main", c.dump_main, "print the generated main operation");
}

quingo::RuntimeConfig runtime_config(const Common& c) {
  quingo::RuntimeConfig rt;
  rt.config_path = c.config;
  rt.search_paths = c.search;
  rt.step_budget = c.step_budget;
  rt.f32_doubles = c.f32;
  return rt;
}

void dumps(const Common& c, const quingo::CompiledKernel& k) {
  if (c.dump_main) std::cout << k.main_source;
  if (c.dump_ir) std::cout << quingo::ir::dump(k.residual);
  if (c.dump_schedule) std::cout << k.schedule_dump;
}

bool write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  return static_cast<bool>(f);
}

int report(const quingo::Error& e, int code) {
  std::cerr << e.diagnostic() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quingo runtime"};
  app.require_subcommand(1);

  Common call_opts;
  uint64_t seed = 0;
  std::string out_bin = "result.bin", out_desc = "result.desc", backend = "qvm";
  bool zero_init = false, strict_pulse = false;
  auto* call = app.add_subcommand("call", "compile and run a kernel, write result.bin/result.desc");
  add_common(call, call_opts);
  call->add_option("--seed", seed, "simulator seed");
  call->add_option("--out", out_bin, "result block output");
  call->add_option("--desc", out_desc, "type descriptor output");
  call->add_option("--backend", backend, "execution backend");
  call->add_flag("--zero-init", zero_init, "start qubits in |0> instead of a random state");
  call->add_flag("--strict-pulse", strict_pulse, "executing a pulse operation is an error");

  Common compile_opts;
  std::string out_asm;
  auto* compile = app.add_subcommand("compile", "compile a kernel call to assembly");
  add_common(compile, compile_opts);
  compile->add_option("-o,--output", out_asm, "assembly output (default: stdout)");

  std::string bin, desc;
  bool dec_f32 = false;
  auto* decode = app.add_subcommand("decode", "decode a result block");
  decode->add_option("--bin", bin, "result block")->required();
  decode->add_option("--desc", desc, "type descriptor file")->required();
  decode->add_flag("--f32-doubles", dec_f32, "doubles are 4-byte IEEE singles");

  CLI11_PARSE(app, argc, argv);

  if (*call) {
    std::vector<quingo::Value> args;
    try {
      args = quingo::parse_args_json(call_opts.args_json);
    } catch (const quingo::Error& e) {
      return report(e, kCompileError);
    }
    quingo::RuntimeConfig rt = runtime_config(call_opts);
    rt.seed = seed;
    rt.backend = backend;
    rt.zero_init = zero_init;
    rt.strict_pulse = strict_pulse;
    quingo::RunHandle h = quingo::call_kernel(call_opts.kernel, call_opts.op, args, rt);
    if (h.status != quingo::RunStatus::Completed) {
      std::cerr << "phase " << h.failed_phase << ": ";
      return report(*h.error, h.failed_phase <= 4 ? kCompileError : kRuntimeError);
    }
    dumps(call_opts, h.compiled);
    if (!write_file(out_bin, std::string(h.result.begin(), h.result.end())) || !write_file(out_desc, h.descriptor + "\n"))
      return report(quingo::Error(quingo::Errc::IoError, "cannot write " + out_bin + " / " + out_desc), kRuntimeError);
    std::cout << quingo::value_to_text(h.value) << "\n";
    return 0;
  }

  if (*compile) {
    try {
      auto args = quingo::parse_args_json(compile_opts.args_json);
      quingo::RuntimeConfig rt = runtime_config(compile_opts);
      quingo::PlatformConfig cfg = quingo::load_config(rt.config_path);
      quingo::CompiledKernel k = quingo::compile_kernel(compile_opts.kernel, compile_opts.op, args, cfg, rt);
      dumps(compile_opts, k);
      if (out_asm.empty()) {
        std::cout << k.assembly;
      } else if (!write_file(out_asm, k.assembly)) {
        return report(quingo::Error(quingo::Errc::IoError, "cannot write " + out_asm), kCompileError);
      }
      return 0;
    } catch (const quingo::Error& e) {
      return report(e, kCompileError);
    }
  }

  try {
    std::string d = quingo::read_file(desc);
    while (!d.empty() && (d.back() == '\n' || d.back() == '\r' || d.back() == ' ')) d.pop_back();
    quingo::TypePtr t = quingo::parse_descriptor(d);
    std::string raw = quingo::read_file(bin);
    quingo::Bytes bytes(raw.begin(), raw.end());
    quingo::Decoded v = quingo::decode_value(bytes, t, 0, quingo::WireFormat{dec_f32});
    std::cout << quingo::value_to_text(v.value) << "\n";
    return 0;
  } catch (const quingo::Error& e) {
    return report(e, kRuntimeError);
  }
}
