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

// qvm: run an assembled program on the functional control processor.
//
//   qvm run prog.eqa --config cfg.qfg --seed N [--trace out.jsonl]
//
// Prints the cycle count, the measurement record and the decoded result
// block. Exit status: 0 halted, 2 bad program or config, 3 runtime error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quingo/error.hpp"
#include "quingo/frontend.hpp"
#include "quingo/isa.hpp"
#include "quingo/qvm.hpp"
#include "quingo/serialize.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quingo control-processor VM"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "execute a .eqa program");
  std::string prog_path, config_path, trace_path;
  quingo::VmOptions opts;
  run->add_option("program", prog_path, "assembly file")->required();
  run->add_option("--config", config_path, "platform configuration (.qfg)")->required();
  run->add_option("--seed", opts.seed, "simulator seed");
  run->add_option("--trace", trace_path, "write a JSONL instruction trace");
  run->add_flag("--zero-init", opts.zero_init, "start qubits in |0>");
  run->add_flag("--strict-pulse", opts.strict_pulse, "executing a pulse operation is an error");
  run->add_option("--classical-cycle-ns", opts.classical_cycle_ns, "cost of one classical instruction");
  run->add_option("--max-cycles", opts.max_cycles, "cycle budget");
  CLI11_PARSE(app, argc, argv);

  quingo::PlatformConfig cfg;
  quingo::QProgram prog;
  try {
    cfg = quingo::load_config(config_path);
    prog = quingo::assemble(quingo::read_file(prog_path));
  } catch (const quingo::Error& e) {
    std::cerr << e.diagnostic() << "\n";
    return 2;
  }
  std::string rettype = prog.rettype;
  bool f32 = prog.f32_doubles;
  try {
    quingo::Vm vm(std::move(prog), cfg, opts);
    vm.enable_trace(!trace_path.empty());
    std::optional<quingo::Error> failure;
    try {
      vm.run();
    } catch (const quingo::Error& e) {
      failure = e;
    }
    if (!trace_path.empty()) {
      std::ofstream f(trace_path);
      f << quingo::trace_to_jsonl(vm.trace());
    }
    if (failure) throw *failure;
    std::cout << "cycles " << vm.cycle() << "\n";
    std::cout << "measurements";
    for (const auto& m : vm.measurements()) std::cout << " q" << m.qubit << "=" << m.outcome;
    std::cout << "\n";
    quingo::TypePtr t = quingo::parse_descriptor(rettype);
    quingo::Bytes mem = vm.read_memory(0, opts.memory_size);
    std::cout << "result " << quingo::value_to_text(quingo::decode_value(mem, t, 0, {f32}).value) << "\n";
    return 0;
  } catch (const quingo::Error& e) {
    std::cerr << e.diagnostic() << "\n";
    return 3;
  }
}
