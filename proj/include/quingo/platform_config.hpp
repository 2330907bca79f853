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

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quingo/types.hpp"
#include "quingo/value.hpp"

namespace quingo {

using Complex = std::complex<double>;

/// Dense row-major matrix of dimension dim x dim.
struct Matrix {
  int dim = 0;
  std::vector<Complex> a;

  Complex& operator()(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
  const Complex& operator()(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

  static Matrix identity(int dim);
  Matrix operator*(const Matrix& o) const;
  Matrix adjoint() const;
  /// max |A - B| over entries
  double max_diff(const Matrix& o) const;
  bool is_unitary(double tol = 1e-9) const;
};

enum class SemKind { Rotation, Matrix, Measure, Reset, Pulse };

struct Semantics {
  SemKind kind = SemKind::Matrix;
  // Rotation
  std::array<double, 3> axis{0, 0, 1};
  bool angle_is_param = false;
  std::string angle_param;
  double angle = 0;
  // Matrix; entry (r, c), first qubit operand is the most significant bit
  Matrix matrix;
  // Pulse
  std::string pulse;

  bool operator==(const Semantics& o) const;
};

struct ConfigParam {
  std::string name;
  TypePtr type;
};

struct OpDef {
  std::string name;
  int64_t duration_ns = 0;
  int num_qubits = 1;
  std::vector<ConfigParam> params;
  Semantics semantics;

  bool operator==(const OpDef& o) const;
};

struct PlatformConfig {
  std::string package_name;
  int qubit_count = 0;
  int64_t cycle_time_ns = 1;
  std::map<std::string, OpDef> operations;

  const OpDef* find(const std::string& name) const;
  const OpDef& at(const std::string& name) const;

  bool operator==(const PlatformConfig& o) const;
};

/// `package NAME;` followed by a JSON object with `platform` and
/// `operations`. Throws ConfigSyntax / ConfigSemantic.
PlatformConfig parse_config(std::string_view text, const std::string& file = {});
PlatformConfig load_config(const std::string& path);

/// Canonical text; parse_config(print_config(c)) == c.
std::string print_config(const PlatformConfig& cfg);

/// Unitary of a rotation or matrix operation with its classical parameters
/// bound. Rotation: cos(t/2) I - i sin(t/2) (n . sigma). NoUnitary otherwise.
Matrix semantics_unitary(const OpDef& op, const std::vector<Value>& params);

int64_t duration_ns(const OpDef& op);

/// Parses "20ns", "0.02us", ... into integer nanoseconds. Throws
/// ConfigSemantic on an unknown unit or a sub-nanosecond remainder.
int64_t parse_time_ns(std::string_view text);

/// Nanoseconds per unit for ns/us/ms/s; 0 for an unknown unit.
double unit_scale_ns(std::string_view unit);

}  // namespace quingo
