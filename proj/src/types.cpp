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

#include "quingo/types.hpp"

#include <cctype>

#include "quingo/error.hpp"

namespace quingo {

namespace types {

namespace {
TypePtr make(TypeKind k) { return std::make_shared<const Type>(Type{k, {}}); }
}  // namespace

TypePtr boolean() {
  static const TypePtr t = make(TypeKind::Bool);
  return t;
}
TypePtr integer() {
  static const TypePtr t = make(TypeKind::Int);
  return t;
}
TypePtr real() {
  static const TypePtr t = make(TypeKind::Double);
  return t;
}
TypePtr unit() {
  static const TypePtr t = make(TypeKind::Unit);
  return t;
}
TypePtr qubit() {
  static const TypePtr t = make(TypeKind::Qubit);
  return t;
}
TypePtr time() {
  static const TypePtr t = make(TypeKind::Time);
  return t;
}
TypePtr timer() {
  static const TypePtr t = make(TypeKind::Timer);
  return t;
}
TypePtr array(TypePtr elem) {
  return std::make_shared<const Type>(Type{TypeKind::Array, {std::move(elem)}});
}
TypePtr tuple(std::vector<TypePtr> elems) {
  return std::make_shared<const Type>(Type{TypeKind::Tuple, std::move(elems)});
}
TypePtr op(TypePtr param, TypePtr ret) {
  return std::make_shared<const Type>(Type{TypeKind::Op, {std::move(param), std::move(ret)}});
}

}  // namespace types

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->elems.size() != b->elems.size()) return false;
  for (size_t i = 0; i < a->elems.size(); ++i) {
    if (!type_equal(a->elems[i], b->elems[i])) return false;
  }
  return true;
}

bool assignable(const TypePtr& target, const TypePtr& value) {
  if (type_equal(target, value)) return true;
  if (!target || !value) return false;
  if (target->kind == TypeKind::Double && value->kind == TypeKind::Int) return true;
  if (target->kind == TypeKind::Array && value->kind == TypeKind::Array) {
    return assignable(target->elem(), value->elem());
  }
  if (target->kind == TypeKind::Tuple && value->kind == TypeKind::Tuple &&
      target->elems.size() == value->elems.size()) {
    for (size_t i = 0; i < target->elems.size(); ++i) {
      if (!assignable(target->elems[i], value->elems[i])) return false;
    }
    return true;
  }
  return false;
}

bool is_numeric(const TypePtr& t) {
  return t && (t->kind == TypeKind::Int || t->kind == TypeKind::Double);
}

bool contains_kind(const TypePtr& t, TypeKind kind) {
  if (!t) return false;
  if (t->kind == kind) return true;
  for (const auto& e : t->elems) {
    if (contains_kind(e, kind)) return true;
  }
  return false;
}

bool is_classical(const TypePtr& t) {
  return !contains_kind(t, TypeKind::Qubit) && !contains_kind(t, TypeKind::Timer) &&
         !contains_kind(t, TypeKind::Time) && !contains_kind(t, TypeKind::Op);
}

std::string type_to_string(const TypePtr& t) {
  if (!t) return "<none>";
  switch (t->kind) {
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int";
    case TypeKind::Double: return "double";
    case TypeKind::Unit: return "unit";
    case TypeKind::Qubit: return "qubit";
    case TypeKind::Time: return "time";
    case TypeKind::Timer: return "timer";
    case TypeKind::Array: return type_to_string(t->elem()) + "[]";
    case TypeKind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < t->elems.size(); ++i) {
        if (i) s += ", ";
        s += type_to_string(t->elems[i]);
      }
      return s + ")";
    }
    case TypeKind::Op: return type_to_string(t->elems[0]) + "->" + type_to_string(t->elems[1]);
  }
  return "?";
}

std::string descriptor(const TypePtr& t) {
  if (!t || !is_classical(t)) {
    throw Error(Errc::EncodeTypeMismatch, "type '" + type_to_string(t) + "' has no descriptor");
  }
  switch (t->kind) {
    case TypeKind::Array: return descriptor(t->elem()) + "[]";
    case TypeKind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < t->elems.size(); ++i) {
        if (i) s += ',';
        s += descriptor(t->elems[i]);
      }
      return s + ")";
    }
    default: return type_to_string(t);
  }
}

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  TypePtr parse_all() {
    TypePtr t = parse_type();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::EncodeTypeMismatch,
                "bad type descriptor '" + std::string(text_) + "': " + why);
  }

  TypePtr parse_type() {
    TypePtr base;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<TypePtr> elems;
      elems.push_back(parse_type());
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        elems.push_back(parse_type());
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      if (elems.size() < 2) fail("tuple needs at least two elements");
      base = types::tuple(std::move(elems));
    } else {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "int") base = types::integer();
      else if (word == "bool") base = types::boolean();
      else if (word == "double") base = types::real();
      else if (word == "unit") base = types::unit();
      else fail("unknown type '" + std::string(word) + "'");
    }
    while (pos_ + 1 < text_.size() + 1 && pos_ < text_.size() && text_[pos_] == '[') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != ']') fail("expected ']'");
      pos_ += 2;
      base = types::array(base);
    }
    return base;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

TypePtr parse_descriptor(std::string_view text) { return DescriptorParser(text).parse_all(); }

}  // namespace quingo
