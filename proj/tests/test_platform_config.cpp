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

#include <functional>
#include <random>

#include "oracle.hpp"
#include "quingo/platform_config.hpp"
#include "support.hpp"

namespace quingo {
namespace {

using testing::platform;

std::string config_with(const std::string& ops) {
  return "package cfg;\n{\"platform\": {\"qubit_count\": 2, \"cycle_time_ns\": 20}, \"operations\": {" + ops + "}}";
}

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

double diff(const Matrix& m, const oracle::Dense& d) {
  double worst = 0;
  for (int r = 0; r < m.dim; ++r)
    for (int c = 0; c < m.dim; ++c) worst = std::max(worst, std::abs(m(r, c) - d.at(r, c)));
  return worst;
}

TEST(ParseConfig, RotationWithParameter) {
  const OpDef& x = platform().at("X");
  ASSERT_EQ(x.params.size(), 1u);
  EXPECT_EQ(x.params[0].name, "theta");
  EXPECT_EQ(x.params[0].type->kind, TypeKind::Double);
  EXPECT_EQ(x.semantics.kind, SemKind::Rotation);
  EXPECT_TRUE(x.semantics.angle_is_param);
  EXPECT_EQ(x.semantics.angle_param, "theta");
  EXPECT_EQ(x.semantics.axis, (std::array<double, 3>{1, 0, 0}));
}

TEST(ParseConfig, HadamardIsUnitary) {
  const OpDef& h = platform().at("H");
  EXPECT_EQ(h.semantics.kind, SemKind::Matrix);
  EXPECT_TRUE(h.semantics.matrix.is_unitary());
  EXPECT_LT(diff(semantics_unitary(h, {}), oracle::hadamard()), 1e-12);
}

TEST(ParseConfig, NonUnitaryMatrix) {
  std::string text = config_with(R"("M": {"duration_ns": 20, "semantics": {"matrix": [[1, 0], [0, 2]]}})");
  EXPECT_EQ(error_of([&] { parse_config(text); }), Errc::ConfigSemantic);
}

TEST(ParseConfig, MalformedJson) {
  EXPECT_EQ(error_of([] { parse_config("package cfg;\n{\"platform\": "); }), Errc::ConfigSyntax);
}

TEST(ParseConfig, MissingPackageLine) {
  EXPECT_EQ(error_of([] { parse_config("{}"); }), Errc::ConfigSyntax);
}

TEST(ParseConfig, ComplexMatrixEntries) {
  // U = diag(1, e^{i 5 pi / 4})
  oracle::Dense want = oracle::phase(5 * 3.141592653589793 / 4);
  EXPECT_LT(diff(semantics_unitary(platform().at("U"), {}), want), 1e-12);
}

TEST(ParseConfig, PlatformFields) {
  EXPECT_EQ(platform().package_name, "config.json");
  EXPECT_EQ(platform().qubit_count, 8);
  EXPECT_EQ(platform().cycle_time_ns, 20);
}

TEST(Semantics, XRotationByPi) {
  Matrix m = semantics_unitary(platform().at("X"), {Value(kPi)});
  EXPECT_LT(std::abs(m(0, 0)), 1e-12);
  EXPECT_LT(std::abs(m(0, 1) - oracle::C(0, -1)), 1e-12);
  EXPECT_LT(std::abs(m(1, 0) - oracle::C(0, -1)), 1e-12);
  EXPECT_LT(std::abs(m(1, 1)), 1e-12);
}

TEST(Semantics, ZeroAngleIsIdentity) {
  for (const char* name : {"X", "Rz"})
    EXPECT_LT(semantics_unitary(platform().at(name), {Value(0.0)}).max_diff(Matrix::identity(2)), 1e-15) << name;
}

TEST(Semantics, FixedAngleRotation) {
  EXPECT_LT(diff(semantics_unitary(platform().at("X90"), {}), oracle::rx(kPi / 2)), 1e-12);
}

TEST(Semantics, MeasureHasNoUnitary) {
  EXPECT_EQ(error_of([] { semantics_unitary(platform().at("measure"), {}); }), Errc::NoUnitary);
  EXPECT_EQ(error_of([] { semantics_unitary(platform().at("init"), {}); }), Errc::NoUnitary);
  EXPECT_EQ(error_of([] { semantics_unitary(platform().at("Y"), {}); }), Errc::NoUnitary);
}

TEST(Semantics, RandomRotationsMatchFormula) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    double t = angle(rng);
    Matrix x = semantics_unitary(platform().at("X"), {Value(t)});
    Matrix z = semantics_unitary(platform().at("Rz"), {Value(t)});
    EXPECT_TRUE(x.is_unitary(1e-9));
    EXPECT_TRUE(z.is_unitary(1e-9));
    EXPECT_LT(diff(x, oracle::rx(t)), 1e-12);
    EXPECT_LT(diff(z, oracle::rz(t)), 1e-12);
    Matrix back = semantics_unitary(platform().at("X"), {Value(-t)});
    EXPECT_LT((x * back).max_diff(Matrix::identity(2)), 1e-9);
  }
}

TEST(Durations, Units) {
  EXPECT_EQ(parse_time_ns("20ns"), 20);
  EXPECT_EQ(parse_time_ns("0.02us"), 20);
  EXPECT_EQ(parse_time_ns("1ms"), 1000000);
  EXPECT_EQ(duration_ns(platform().at("X90")), 20);
  EXPECT_EQ(duration_ns(platform().at("measure")), 300);
}

TEST(Durations, SubNanosecond) {
  EXPECT_EQ(error_of([] { parse_time_ns("1.5ns"); }), Errc::ConfigSemantic);
  std::string text = config_with(R"("A": {"duration_ns": "1.5ns", "semantics": {"matrix": [[1, 0], [0, 1]]}})");
  EXPECT_EQ(error_of([&] { parse_config(text); }), Errc::ConfigSemantic);
}

TEST(Durations, UnknownUnit) { EXPECT_EQ(error_of([] { parse_time_ns("3xs"); }), Errc::ConfigSemantic); }

TEST(PrintConfig, RoundTrip) {
  std::string printed = print_config(platform());
  PlatformConfig again = parse_config(printed);
  EXPECT_TRUE(again == platform());
  EXPECT_EQ(print_config(again), printed);
}

TEST(PrintConfig, PulseTextPreserved) {
  PlatformConfig again = parse_config(print_config(platform()));
  EXPECT_EQ(again.at("Y").semantics.kind, SemKind::Pulse);
  EXPECT_EQ(again.at("Y").semantics.pulse, "wave Y180 awg0 ch1");
}

}  // namespace
}  // namespace quingo
