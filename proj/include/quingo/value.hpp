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

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quingo/types.hpp"

namespace quingo {

struct Value;

struct UnitVal {
  bool operator==(const UnitVal&) const = default;
};
struct TimeVal {
  int64_t ns = 0;
  bool operator==(const TimeVal&) const = default;
};
struct QubitVal {
  int index = 0;
  bool operator==(const QubitVal&) const = default;
};
struct TimerVal {
  std::string id;
  bool operator==(const TimerVal&) const = default;
};
/// A value only known at run time; `vreg` names the residual variable that
/// will hold it. Used only inside the partial evaluator.
struct DynVal {
  int vreg = -1;
  TypeKind kind = TypeKind::Int;
  bool operator==(const DynVal&) const = default;
};
struct TupleVal {
  std::vector<Value> elems;
  bool operator==(const TupleVal&) const;
};
struct ArrayVal {
  std::vector<Value> elems;
  bool operator==(const ArrayVal&) const;
};

struct Value {
  using Storage = std::variant<UnitVal, bool, int32_t, double, TimeVal, QubitVal, TimerVal,
                               TupleVal, ArrayVal, DynVal>;
  Storage v;

  Value() : v(UnitVal{}) {}
  Value(bool b) : v(b) {}
  Value(int32_t i) : v(i) {}
  Value(double d) : v(d) {}
  Value(TimeVal t) : v(t) {}
  Value(QubitVal q) : v(q) {}
  Value(TimerVal t) : v(std::move(t)) {}
  Value(TupleVal t) : v(std::move(t)) {}
  Value(ArrayVal a) : v(std::move(a)) {}
  Value(DynVal d) : v(d) {}
  Value(UnitVal u) : v(u) {}

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(v);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(v);
  }
  template <typename T>
  T& as() {
    return std::get<T>(v);
  }

  bool operator==(const Value& other) const;
};

Value make_tuple(std::vector<Value> elems);
Value make_array(std::vector<Value> elems);

/// True when no DynVal appears anywhere inside.
bool is_static(const Value& v);

/// Bitwise equality (doubles compared by bit pattern).
bool bit_equal(const Value& a, const Value& b);

/// Host-facing textual form: `(16, 0)`, `[2, 6, 8]`, `true`, `0.625`, `()`.
std::string value_to_text(const Value& v);

/// Parses value_to_text() output back, guided by the expected type.
Value parse_value_text(std::string_view text, const TypePtr& type);

/// Quingo source literal, e.g. `{2, 6, 8}` or `5.0`.
std::string value_to_literal(const Value& v);

/// Shortest round-trip decimal with a guaranteed '.', e.g. `2.0`, `0.625`.
std::string format_double(double d);

/// Infers the classical type of a host value. Arrays must be homogeneous
/// (ArgTypeError otherwise); an empty array infers to int[].
TypePtr infer_type(const Value& v);

/// Structural check that `v` inhabits `t` (an int also inhabits double).
bool value_matches(const Value& v, const TypePtr& t);

/// Widens ints to doubles where `t` asks for doubles.
Value coerce(const Value& v, const TypePtr& t);

Value zero_value(const TypePtr& t);

}  // namespace quingo
