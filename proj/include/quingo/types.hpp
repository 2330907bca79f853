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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace quingo {

enum class TypeKind { Bool, Int, Double, Unit, Qubit, Time, Timer, Array, Tuple, Op };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

/// Immutable Quingo type. `elems` holds the element type of an array, the
/// members of a tuple, or {param, ret} of an operation type.
struct Type {
  TypeKind kind;
  std::vector<TypePtr> elems;

  const TypePtr& elem() const { return elems.at(0); }
};

namespace types {
TypePtr boolean();
TypePtr integer();
TypePtr real();
TypePtr unit();
TypePtr qubit();
TypePtr time();
TypePtr timer();
TypePtr array(TypePtr elem);
TypePtr tuple(std::vector<TypePtr> elems);
TypePtr op(TypePtr param, TypePtr ret);
}  // namespace types

bool type_equal(const TypePtr& a, const TypePtr& b);

/// `value` may be stored where `target` is expected (identity or int->double).
bool assignable(const TypePtr& target, const TypePtr& value);

bool is_numeric(const TypePtr& t);

/// True when the type contains no qubit, timer, time or operation component.
bool is_classical(const TypePtr& t);

bool contains_kind(const TypePtr& t, TypeKind kind);

/// Source-level spelling, e.g. `(int, bool[])`.
std::string type_to_string(const TypePtr& t);

/// Canonical descriptor text used by the data-exchange protocol: classical
/// types only, no whitespace, e.g. `(int,int)`, `int[][]`, `double`.
std::string descriptor(const TypePtr& t);

/// Inverse of descriptor(). Throws Error(EncodeTypeMismatch) on bad text.
TypePtr parse_descriptor(std::string_view text);

}  // namespace quingo
