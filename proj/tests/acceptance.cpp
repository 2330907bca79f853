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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// check fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hpp"
#include "oracle.hpp"
#include "quingo/interpreter.hpp"
#include "support.hpp"
#include "systems.hpp"

namespace {

using namespace quingo;
using namespace quingo::testing;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// A check returns an empty string on success, otherwise the reason.
struct Criterion {
  std::string name;
  std::function<std::string(std::ostringstream&)> check;
};

std::string ipe() {
  auto want = oracle::ipe_estimate(5.0 / 8.0, 3);
  if (!want || *want != 0.625) return "oracle disagrees with 0.625";
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto t0 = Clock::now();
    RunHandle h = call_kernel(program_path("ipe.qu"), "ipe", {Value(int32_t{3})}, runtime_config(seed));
    double s = seconds_since(t0);
    if (h.status != RunStatus::Completed) return h.error->diagnostic();
    double got = read_result(h).as<double>();
    if (got != *want) return "seed " + std::to_string(seed) + " gave " + format_double(got);
    if (s >= 1.0) return "call took " + std::to_string(s) + " s";
  }
  return {};
}

std::string static_sum_random() {
  auto k = compile_case(kernel_cases()[0]);
  for (const auto& m : k.program.code)
    if (m.op != Opcode::Ldi && m.op != Opcode::Stw && m.op != Opcode::Halt) return "unexpected " + instr_text(m);
  if (k.program.code.back().op != Opcode::Halt) return "does not end in halt";
  RunHandle h = call_kernel(program_path("kernel.qu"), "sum_random", kernel_cases()[0].args, runtime_config(1));
  if (h.status != RunStatus::Completed) return h.error->diagnostic();
  if (value_to_text(read_result(h)) != "(16, 0)") return "result " + value_to_text(h.value);
  return {};
}

std::string dynamic_sum_random(std::ostringstream& detail) {
  auto k = compile_case(kernel_cases()[1]);
  const int n = 10000;
  int twos = 0;
  for (int s = 1; s <= n; ++s) {
    VmRun r = run_program(k.program, static_cast<uint64_t>(s));
    const auto& t = r.value.as<TupleVal>().elems;
    if (t.at(0).as<int32_t>() != 16) return "first component " + value_to_text(t[0]);
    int32_t second = t.at(1).as<int32_t>();
    if (second != 2 && second != 6) return "second component " + std::to_string(second);
    twos += second == 2;
  }
  double f = static_cast<double>(twos) / n;
  detail << "P(2) = " << f;
  if (f < 0.48 || f > 0.52) return "frequency of 2 is " + format_double(f);
  return {};
}

std::string repeat_until_success(std::ostringstream& detail) {
  auto k = compile_case(kernel_cases()[5]);
  double total = 0;
  const int n = 1000;
  for (int s = 1; s <= n; ++s) {
    VmRun r = run_program(k.program, static_cast<uint64_t>(s));
    total += r.value.as<int32_t>();
  }
  double mean = total / n;
  detail << "mean attempts " << mean;
  if (mean < 1.85 || mean > 2.15) return "mean " + format_double(mean);
  return {};
}

std::string t2_schedule() {
  for (size_t c : {3u, 4u}) {
    auto k = compile_case(kernel_cases()[c]);
    TimedIR t = schedule(k.residual.entry_proc(), platform());
    if (auto v = verify_schedule(t, platform())) return kernel_cases()[c].label + ": " + v->message;
    int blocks = 0;
    for (size_t b = 0; b < t.blocks.size(); ++b) {
      const auto& instrs = t.proc->blocks[b].instrs;
      std::vector<int64_t> x90;
      int64_t m = -1;
      for (size_t i = 0; i < instrs.size(); ++i) {
        if (!is_quantum(instrs[i])) continue;
        if (instrs[i].callee == "X90") x90.push_back(t.blocks[b].start[i]);
        if (instrs[i].callee == "measure") m = t.blocks[b].start[i];
      }
      if (x90.empty()) continue;
      ++blocks;
      if (x90.size() != 2 || m != x90[1] + 20)
        return kernel_cases()[c].label + ": block " + std::to_string(b) + " measure not 20 ns after second X90";
    }
    if (blocks == 0) return kernel_cases()[c].label + ": no quantum blocks";
  }
  return {};
}

std::string scheduler_oracle(std::ostringstream& detail) {
  auto t0 = Clock::now();
  PlatformConfig cfg = system_platform();
  std::mt19937_64 rng(64);
  int feasible = 0;
  for (int n = 0; n < 200; ++n) {
    oracle::System sys = random_system(rng);
    std::vector<size_t> index;
    ir::Proc p = system_proc(sys, &index);
    oracle::ScheduleSearch search(sys, 64);
    bool want = search.feasible();
    std::optional<TimedIR> t;
    try {
      t = schedule(p, cfg);
    } catch (const Error& e) {
      if (e.code() != Errc::Infeasible) return "system " + std::to_string(n) + ": " + e.diagnostic();
    }
    if (t.has_value() != want) return "system " + std::to_string(n) + ": feasibility disagrees";
    if (!want) continue;
    ++feasible;
    if (verify_schedule(*t, cfg)) return "system " + std::to_string(n) + ": verify failed";
    std::vector<int64_t> prefix;
    for (size_t i = 0; i < sys.ops.size(); ++i) {
      int64_t got = t->blocks[0].start[index[i]];
      if (search.min_start(prefix) != got) return "system " + std::to_string(n) + ": start not minimal";
      prefix.push_back(got);
    }
  }
  double s = seconds_since(t0);
  detail << feasible << "/200 feasible, " << s << " s";
  if (s >= 30) return "took " + std::to_string(s) + " s";
  return {};
}

std::string serialization() {
  Gen g(2026);
  for (int i = 0; i < 1000; ++i) {
    TypePtr t = g.type(3);
    Value v = g.value(t);
    Bytes b = encode_value(v, t);
    Decoded d = decode_value(b, t);
    if (!bit_equal(d.value, v) || d.extent != b.size()) return "round trip of " + descriptor(t);
  }
  Bytes want{4, 0, 0, 0, 3, 0, 0, 0, 2, 0, 0, 0, 6, 0, 0, 0, 8, 0, 0, 0};
  if (encode_value(int_array({2, 6, 8}), types::array(types::integer())) != want) return "[2, 6, 8] image";
  return {};
}

std::string vm_physics() {
  for (const auto& kc : kernel_cases()) {
    auto k = compile_case(kc);
    for (uint64_t s = 1; s <= 10; ++s) {
      VmOptions o;
      o.seed = s;
      o.check_norm = false;
      Vm vm(k.program, platform(), o);
      while (!vm.halted()) {
        vm.step();
        if (std::abs(vm.state().norm() - 1.0) > 1e-9) return kc.label + ": norm drift";
      }
    }
  }
  const int n = 10000;
  for (double theta : {0.0, kPi / 4, kPi / 2, kPi}) {
    QProgram p = assemble(".qubits 1\n.rettype unit\n    init q0\n    qop X q0 " + format_double(theta) +
                          "\n    measure q0\n    halt\n");
    int ones = 0;
    for (int s = 1; s <= n; ++s) {
      VmOptions o;
      o.seed = static_cast<uint64_t>(s);
      Vm vm(p, platform(), o);
      vm.run();
      ones += vm.measurements().back().outcome;
    }
    double f = static_cast<double>(ones) / n;
    if (!oracle::within_3sigma(f, std::pow(std::sin(theta / 2), 2), n))
      return "X(" + format_double(theta) + ") frequency " + format_double(f);
  }
  return {};
}

std::string semantic_preservation() {
  for (const auto& kc : kernel_cases()) {
    auto k = compile_case(kc);
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      InterpOptions io;
      io.seed = seed;
      InterpResult ref = interpret(k.lowered, platform(), io);
      VmRun vm = run_program(k.program, seed);
      if (encode_value(ref.value, k.ret) != vm.result) return kc.label + " seed " + std::to_string(seed) + ": result";
      if (ref.trace != vm.measurements) return kc.label + " seed " + std::to_string(seed) + ": measurements";
    }
  }
  return {};
}

template <typename F>
std::function<std::string(std::ostringstream&)> plain(F f) {
  return [f](std::ostringstream&) { return f(); };
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"ipe_estimate", plain(ipe)},
      {"sum_random_static", plain(static_sum_random)},
      {"sum_random_dynamic", dynamic_sum_random},
      {"repeat_until_success", repeat_until_success},
      {"t2_schedule", plain(t2_schedule)},
      {"scheduler_oracle", scheduler_oracle},
      {"serialization", plain(serialization)},
      {"vm_physics", plain(vm_physics)},
      {"semantic_preservation", plain(semantic_preservation)},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream detail;
    std::string why;
    try {
      why = c.check(detail);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      std::cout << "PASS " << c.name << (detail.str().empty() ? "" : ": " + detail.str()) << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << c.name << ": " << why << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
