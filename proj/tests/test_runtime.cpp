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

#include <chrono>

#include "support.hpp"

namespace quingo {
namespace {

using namespace quingo::testing;

RunHandle call(const std::string& file, const std::string& op, const std::vector<Value>& args, uint64_t seed = 1,
               const std::string& backend = "qvm") {
  RuntimeConfig rt = runtime_config(seed);
  rt.backend = backend;
  return call_kernel(program_path(file), op, args, rt);
}

TEST(CallKernel, StaticSumRandom) {
  RunHandle h = call("kernel.qu", "sum_random", {int_array({2, 6, 8}), Value(false)});
  ASSERT_EQ(h.status, RunStatus::Completed) << (h.error ? h.error->diagnostic() : "");
  EXPECT_EQ(value_to_text(read_result(h)), "(16, 0)");
  EXPECT_EQ(h.descriptor, "(int,int)");
  EXPECT_EQ(h.result, (Bytes{0x10, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(h.measurements.empty());
}

TEST(CallKernel, PhaseEstimation) {
  for (uint64_t seed : {1u, 2u, 99u}) {
    RunHandle h = call("ipe.qu", "ipe", {Value(int32_t{3})}, seed);
    ASSERT_EQ(h.status, RunStatus::Completed) << (h.error ? h.error->diagnostic() : "");
    EXPECT_EQ(read_result(h).as<double>(), 0.625);
  }
}

TEST(CallKernel, PhaseLogInOrder) {
  RunHandle h = call("kernel.qu", "sum_random", {int_array({2, 6, 8}), Value(true)});
  ASSERT_EQ(h.status, RunStatus::Completed);
  std::vector<int> phases;
  for (const auto& line : h.phase_log) phases.push_back(line.at(6) - '0');
  EXPECT_EQ(phases, (std::vector<int>{3, 4, 5, 6}));
}

TEST(CallKernel, UnknownOperation) {
  RunHandle h = call("kernel.qu", "no_such_op", {});
  EXPECT_EQ(h.status, RunStatus::Failed);
  ASSERT_TRUE(h.error.has_value());
  EXPECT_EQ(h.error->code(), Errc::UnknownKernelOp);
  EXPECT_EQ(h.failed_phase, 3);
}

TEST(CallKernel, ArgumentMismatchIsPhaseThree) {
  RunHandle h = call("ipe.qu", "ipe", {Value(true)});
  ASSERT_EQ(h.status, RunStatus::Failed);
  EXPECT_EQ(h.error->code(), Errc::ArgTypeError);
  EXPECT_EQ(h.failed_phase, 3);
}

TEST(CallKernel, CompileErrorIsPhaseFour) {
  RuntimeConfig rt = runtime_config();
  RunHandle h = call_kernel(fixture_path("negative/DivisionByZero.qu"), "k", {}, rt);
  ASSERT_EQ(h.status, RunStatus::Failed);
  EXPECT_EQ(h.error->code(), Errc::DivisionByZero);
  EXPECT_EQ(h.failed_phase, 4);
}

TEST(CallKernel, ResultOfFailedCall) {
  RunHandle pending;
  EXPECT_THROW(read_result(pending), Error);
  RunHandle h = call("kernel.qu", "no_such_op", {});
  try {
    read_result(h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCompleted);
  }
}

TEST(CallKernel, UnitResult) {
  RuntimeConfig rt = runtime_config();
  RunHandle h = call_kernel(write_kernel("rt_unit", "operation f(): unit { using(q: qubit) { H(q); } }"), "f", {}, rt);
  ASSERT_EQ(h.status, RunStatus::Completed) << (h.error ? h.error->diagnostic() : "");
  EXPECT_TRUE(read_result(h).is<UnitVal>());
  EXPECT_TRUE(h.result.empty());
}

TEST(CallKernel, StrictPulseFailsAtExecution) {
  RuntimeConfig rt = runtime_config();
  rt.strict_pulse = true;
  RunHandle h =
      call_kernel(write_kernel("rt_pulse", "operation f(): unit { using(q: qubit) { Y(q); } }"), "f", {}, rt);
  ASSERT_EQ(h.status, RunStatus::Failed);
  EXPECT_EQ(h.error->code(), Errc::IllegalInstruction);
  EXPECT_EQ(h.failed_phase, 5);
}

// Consecutive calls see only their own arguments; the generated entry
// point never leaks into the next call.
TEST(CallKernel, MainIsPerCall) {
  RunHandle a = call("kernel.qu", "sum_random", {int_array({1, 2}), Value(false)});
  RunHandle b = call("kernel.qu", "sum_random", {int_array({5}), Value(false)});
  RunHandle c = call("kernel.qu", "sum_random", {int_array({1, 2}), Value(false)});
  ASSERT_EQ(a.status, RunStatus::Completed);
  ASSERT_EQ(b.status, RunStatus::Completed);
  EXPECT_NE(a.compiled.main_source, b.compiled.main_source);
  EXPECT_EQ(a.compiled.main_source, c.compiled.main_source);
  EXPECT_EQ(a.result, c.result);
  EXPECT_NE(a.result, b.result);
}

TEST(CallKernel, SeedsReproduce) {
  std::vector<Value> args{int_array({2, 6, 8}), Value(true)};
  for (uint64_t s = 1; s <= 10; ++s) {
    RunHandle x = call("kernel.qu", "sum_random", args, s), y = call("kernel.qu", "sum_random", args, s);
    EXPECT_EQ(x.result, y.result);
    EXPECT_EQ(x.measurements, y.measurements);
  }
}

// Fills the result block with a fixed pattern instead of running anything.
class PatternBackend : public Backend {
 public:
  void upload(const QProgram& p, const PlatformConfig&, const RuntimeConfig&) override { uploaded = p.code.size(); }
  void start() override { started = true; }
  void wait() override {}
  Bytes read(size_t, size_t len) override {
    Bytes b(len, 0);
    if (len > 0) b[0] = 7;
    return b;
  }
  size_t uploaded = 0;
  bool started = false;
};

TEST(Backends, RegistryAndCustomBackend) {
  auto names = backend_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "qvm"), names.end());
  register_backend("pattern", [] { return std::make_unique<PatternBackend>(); });
  names = backend_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "pattern"), names.end());
  RunHandle h = call("kernel.qu", "sum_random", {int_array({2, 6, 8}), Value(false)}, 1, "pattern");
  ASSERT_EQ(h.status, RunStatus::Completed) << (h.error ? h.error->diagnostic() : "");
  EXPECT_EQ(value_to_text(read_result(h)), "(7, 0)");
}

TEST(Backends, UnknownBackend) {
  EXPECT_THROW(make_backend("nonexistent"), Error);
  RunHandle h = call("kernel.qu", "sum_random", {int_array({2}), Value(false)}, 1, "nonexistent");
  ASSERT_EQ(h.status, RunStatus::Failed);
  EXPECT_EQ(h.error->code(), Errc::UnknownBackend);
  EXPECT_EQ(h.failed_phase, 5);
}

TEST(CallKernel, PhaseEstimationIsFast) {
  auto t0 = std::chrono::steady_clock::now();
  RunHandle h = call("ipe.qu", "ipe", {Value(int32_t{3})});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(h.status, RunStatus::Completed);
  EXPECT_LT(secs, 1.0);
}

}  // namespace
}  // namespace quingo
