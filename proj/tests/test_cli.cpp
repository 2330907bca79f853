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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

namespace quingo {
namespace {

using namespace quingo::testing;
namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome sh(const std::string& cmd) {
  Outcome o;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return o;
  std::array<char, 4096> buf{};
  for (size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) o.out.append(buf.data(), n);
  int st = pclose(p);
  o.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return o;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "quingo_cli";
  fs::create_directories(d);
  return d / name;
}

std::string qgrt_call(const std::string& kernel, const std::string& op, const std::string& args,
                      const std::string& extra = "") {
  return std::string(QGRT_BIN) + " call --kernel " + q(program_path(kernel)) + " --op " + op + " --args-json " +
         q(args) + " --config " + q(program_path("config.qfg")) + " " + extra;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

TEST(Qgrt, CallWritesResultFiles) {
  fs::path bin = scratch("sr.bin"), desc = scratch("sr.desc");
  auto r = sh(qgrt_call("kernel.qu", "sum_random", "[[2,6,8], false]",
                        "--out " + q(bin.string()) + " --desc " + q(desc.string())));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "(16, 0)\n");
  EXPECT_EQ(slurp(bin), std::string("\x10\0\0\0\0\0\0\0", 8));
  EXPECT_EQ(slurp(desc), "(int,int)\n");

  auto d = sh(std::string(QGRT_BIN) + " decode --bin " + q(bin.string()) + " --desc " + q(desc.string()));
  EXPECT_EQ(d.status, 0) << d.out;
  EXPECT_EQ(d.out, "(16, 0)\n");
}

TEST(Qgrt, CallDynamic) {
  fs::path bin = scratch("dyn.bin"), desc = scratch("dyn.desc");
  auto r = sh(qgrt_call("kernel.qu", "sum_random", "[[2,6,8], true]",
                        "--seed 4 --out " + q(bin.string()) + " --desc " + q(desc.string())));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(r.out == "(16, 2)\n" || r.out == "(16, 6)\n") << r.out;
}

TEST(Qgrt, DumpSchedule) {
  fs::path bin = scratch("ds.bin"), desc = scratch("ds.desc");
  auto r = sh(qgrt_call("kernel.qu", "sum_random", "[[2,6,8], true]",
                        "--dump-schedule --out " + q(bin.string()) + " --desc " + q(desc.string())));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("200 H q0"), std::string::npos) << r.out;
}

TEST(Qgrt, CompileErrorExitsTwo) {
  auto r = sh(std::string(QGRT_BIN) + " call --kernel " + q(fixture_path("negative/TypeError.qu")) +
              " --op k --config " + q(program_path("config.qfg")) + " -I " + q(QUINGO_PROGRAMS_DIR) +
              " --out /dev/null --desc /dev/null");
  EXPECT_EQ(r.status, 2) << r.out;
  EXPECT_NE(r.out.find("TypeError"), std::string::npos) << r.out;
  auto bad_args = sh(qgrt_call("ipe.qu", "ipe", "[true]", "--out /dev/null --desc /dev/null"));
  EXPECT_EQ(bad_args.status, 2) << bad_args.out;
}

TEST(Qgrt, RuntimeErrorExitsThree) {
  auto r = sh(qgrt_call("ipe.qu", "ipe", "[3]", "--backend nowhere --out /dev/null --desc /dev/null"));
  EXPECT_EQ(r.status, 3) << r.out;
  EXPECT_NE(r.out.find("UnknownBackend"), std::string::npos) << r.out;
}

TEST(Qgrt, CompileToAssemblyThenRun) {
  fs::path eqa = scratch("ipe.eqa");
  auto c = sh(std::string(QGRT_BIN) + " compile --kernel " + q(program_path("ipe.qu")) +
              " --op ipe --args-json '[3]' --config " + q(program_path("config.qfg")) + " -o " + q(eqa.string()));
  ASSERT_EQ(c.status, 0) << c.out;
  EXPECT_EQ(slurp(eqa).rfind(".qubits 2", 0), 0u);

  fs::path trace = scratch("ipe.jsonl");
  auto r = sh(std::string(QVM_BIN) + " run " + q(eqa.string()) + " --config " + q(program_path("config.qfg")) +
              " --seed 3 --trace " + q(trace.string()));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("result 0.625"), std::string::npos) << r.out;
  std::string jl = slurp(trace);
  EXPECT_EQ(jl.rfind("{\"cycle\":0", 0), 0u) << jl.substr(0, 80);
  EXPECT_NE(jl.find("\"outcome\":"), std::string::npos);
}

TEST(Qvm, BadProgramExitsTwo) {
  fs::path eqa = scratch("bad.eqa");
  std::ofstream(eqa) << ".qubits 1\n    frobnicate q0\n";
  auto r = sh(std::string(QVM_BIN) + " run " + q(eqa.string()) + " --config " + q(program_path("config.qfg")));
  EXPECT_EQ(r.status, 2) << r.out;
  EXPECT_NE(r.out.find("AsmSyntax"), std::string::npos) << r.out;
}

TEST(Qvm, FaultExitsThree) {
  fs::path eqa = scratch("fault.eqa");
  std::ofstream(eqa) << ".qubits 1\n.rettype unit\n    fmr r1 q0\n    halt\n";
  auto r = sh(std::string(QVM_BIN) + " run " + q(eqa.string()) + " --config " + q(program_path("config.qfg")));
  EXPECT_EQ(r.status, 3) << r.out;
  EXPECT_NE(r.out.find("FmrBeforeMeasure"), std::string::npos) << r.out;
}

TEST(Qvm, StrictPulse) {
  fs::path eqa = scratch("pulse.eqa");
  std::ofstream(eqa) << ".qubits 1\n.rettype unit\n    pulse Y q0 \"w\"\n    halt\n";
  std::string base = std::string(QVM_BIN) + " run " + q(eqa.string()) + " --config " + q(program_path("config.qfg"));
  auto lax = sh(base);
  EXPECT_EQ(lax.status, 0) << lax.out;
  EXPECT_NE(lax.out.find("cycles 20"), std::string::npos) << lax.out;
  EXPECT_EQ(sh(base + " --strict-pulse").status, 3);
}

}  // namespace
}  // namespace quingo
