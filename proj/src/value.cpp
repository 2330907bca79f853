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

#include "quingo/value.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>

#include "quingo/error.hpp"

namespace quingo {

bool TupleVal::operator==(const TupleVal& o) const { return elems == o.elems; }
bool ArrayVal::operator==(const ArrayVal& o) const { return elems == o.elems; }
bool Value::operator==(const Value& other) const { return v == other.v; }

Value make_tuple(std::vector<Value> elems) { return Value(TupleVal{std::move(elems)}); }
Value make_array(std::vector<Value> elems) { return Value(ArrayVal{std::move(elems)}); }

bool is_static(const Value& v) {
  if (v.is<DynVal>()) return false;
  if (v.is<TupleVal>()) {
    for (const auto& e : v.as<TupleVal>().elems)
      if (!is_static(e)) return false;
  }
  if (v.is<ArrayVal>()) {
    for (const auto& e : v.as<ArrayVal>().elems)
      if (!is_static(e)) return false;
  }
  return true;
}

bool bit_equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is<double>()) {
    return std::bit_cast<uint64_t>(a.as<double>()) == std::bit_cast<uint64_t>(b.as<double>());
  }
  const std::vector<Value>* ea = nullptr;
  const std::vector<Value>* eb = nullptr;
  if (a.is<TupleVal>()) {
    ea = &a.as<TupleVal>().elems;
    eb = &b.as<TupleVal>().elems;
  } else if (a.is<ArrayVal>()) {
    ea = &a.as<ArrayVal>().elems;
    eb = &b.as<ArrayVal>().elems;
  } else {
    return a == b;
  }
  if (ea->size() != eb->size()) return false;
  for (size_t i = 0; i < ea->size(); ++i)
    if (!bit_equal((*ea)[i], (*eb)[i])) return false;
  return true;
}

std::string format_double(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string literal_double(double d) {
  if (!std::isfinite(d)) {
    throw Error(Errc::ArgTypeError, "non-finite double cannot be written as a Quingo literal");
  }
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

template <typename F>
std::string join(const std::vector<Value>& elems, F&& f) {
  std::string s;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ", ";
    s += f(elems[i]);
  }
  return s;
}

}  // namespace

std::string value_to_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnitVal>) return "()";
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, int32_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_double(x);
        else if constexpr (std::is_same_v<T, TimeVal>) return std::to_string(x.ns) + "ns";
        else if constexpr (std::is_same_v<T, QubitVal>) return "q" + std::to_string(x.index);
        else if constexpr (std::is_same_v<T, TimerVal>) return "@" + x.id;
        else if constexpr (std::is_same_v<T, DynVal>) return "%" + std::to_string(x.vreg);
        else if constexpr (std::is_same_v<T, TupleVal>) return "(" + join(x.elems, value_to_text) + ")";
        else return "[" + join(x.elems, value_to_text) + "]";
      },
      v.v);
}

std::string value_to_literal(const Value& v) {
  if (v.is<bool>()) return v.as<bool>() ? "true" : "false";
  if (v.is<int32_t>()) return std::to_string(v.as<int32_t>());
  if (v.is<double>()) return literal_double(v.as<double>());
  if (v.is<ArrayVal>()) return "{" + join(v.as<ArrayVal>().elems, value_to_literal) + "}";
  if (v.is<TupleVal>()) return "(" + join(v.as<TupleVal>().elems, value_to_literal) + ")";
  throw Error(Errc::ArgTypeError, "value " + value_to_text(v) + " has no Quingo literal form");
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  Value parse_all(const TypePtr& t) {
    Value v = parse(t);
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::EncodeTypeMismatch, "cannot parse value text '" + std::string(s_) + "': " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t')) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::string_view token() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')' && s_[pos_] != ']' &&
           s_[pos_] != ' ')
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Value parse(const TypePtr& t) {
    switch (t->kind) {
      case TypeKind::Unit:
        expect('(');
        expect(')');
        return Value(UnitVal{});
      case TypeKind::Bool: {
        auto tok = token();
        if (tok == "true") return Value(true);
        if (tok == "false") return Value(false);
        fail("expected bool");
      }
      case TypeKind::Int: {
        auto tok = token();
        int32_t x = 0;
        auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) fail("expected int");
        return Value(x);
      }
      case TypeKind::Double: {
        auto tok = token();
        if (tok == "nan") return Value(std::nan(""));
        if (tok == "inf") return Value(INFINITY);
        if (tok == "-inf") return Value(-INFINITY);
        double x = 0;
        auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) fail("expected double");
        return Value(x);
      }
      case TypeKind::Tuple: {
        expect('(');
        std::vector<Value> elems;
        for (size_t i = 0; i < t->elems.size(); ++i) {
          if (i) expect(',');
          elems.push_back(parse(t->elems[i]));
        }
        expect(')');
        return make_tuple(std::move(elems));
      }
      case TypeKind::Array: {
        expect('[');
        std::vector<Value> elems;
        if (!peek(']')) {
          elems.push_back(parse(t->elem()));
          while (peek(',')) {
            expect(',');
            elems.push_back(parse(t->elem()));
          }
        }
        expect(']');
        return make_array(std::move(elems));
      }
      default: fail("type " + type_to_string(t) + " is not a host type");
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Value parse_value_text(std::string_view text, const TypePtr& type) {
  return TextParser(text).parse_all(type);
}

TypePtr infer_type(const Value& v) {
  if (v.is<bool>()) return types::boolean();
  if (v.is<int32_t>()) return types::integer();
  if (v.is<double>()) return types::real();
  if (v.is<UnitVal>()) return types::unit();
  if (v.is<TupleVal>()) {
    std::vector<TypePtr> elems;
    for (const auto& e : v.as<TupleVal>().elems) elems.push_back(infer_type(e));
    return types::tuple(std::move(elems));
  }
  if (v.is<ArrayVal>()) {
    const auto& elems = v.as<ArrayVal>().elems;
    if (elems.empty()) return types::array(types::integer());
    TypePtr first = infer_type(elems[0]);
    for (size_t i = 1; i < elems.size(); ++i) {
      TypePtr ti = infer_type(elems[i]);
      if (type_equal(first, ti)) continue;
      // Jagged arrays of arrays are fine; mixed int/double widens to double.
      if (is_numeric(first) && is_numeric(ti)) {
        first = types::real();
        continue;
      }
      if (first->kind == TypeKind::Array && ti->kind == TypeKind::Array) {
        if (assignable(first, ti)) continue;
        if (assignable(ti, first)) {
          first = ti;
          continue;
        }
      }
      throw Error(Errc::ArgTypeError, "heterogeneous array: element 0 is " + type_to_string(first) +
                                          " but element " + std::to_string(i) + " is " +
                                          type_to_string(ti));
    }
    return types::array(first);
  }
  throw Error(Errc::ArgTypeError, "value " + value_to_text(v) + " is not a classical host value");
}

bool value_matches(const Value& v, const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Bool: return v.is<bool>();
    case TypeKind::Int: return v.is<int32_t>();
    case TypeKind::Double: return v.is<double>() || v.is<int32_t>();
    case TypeKind::Unit: return v.is<UnitVal>();
    case TypeKind::Time: return v.is<TimeVal>();
    case TypeKind::Qubit: return v.is<QubitVal>();
    case TypeKind::Timer: return v.is<TimerVal>();
    case TypeKind::Tuple: {
      if (!v.is<TupleVal>()) return false;
      const auto& e = v.as<TupleVal>().elems;
      if (e.size() != t->elems.size()) return false;
      for (size_t i = 0; i < e.size(); ++i)
        if (!value_matches(e[i], t->elems[i])) return false;
      return true;
    }
    case TypeKind::Array: {
      if (!v.is<ArrayVal>()) return false;
      for (const auto& e : v.as<ArrayVal>().elems)
        if (!value_matches(e, t->elem())) return false;
      return true;
    }
    case TypeKind::Op: return false;
  }
  return false;
}

Value coerce(const Value& v, const TypePtr& t) {
  if (t->kind == TypeKind::Double && v.is<int32_t>()) return Value(static_cast<double>(v.as<int32_t>()));
  if (t->kind == TypeKind::Array && v.is<ArrayVal>()) {
    std::vector<Value> out;
    for (const auto& e : v.as<ArrayVal>().elems) out.push_back(coerce(e, t->elem()));
    return make_array(std::move(out));
  }
  if (t->kind == TypeKind::Tuple && v.is<TupleVal>()) {
    const auto& e = v.as<TupleVal>().elems;
    std::vector<Value> out;
    for (size_t i = 0; i < e.size() && i < t->elems.size(); ++i) out.push_back(coerce(e[i], t->elems[i]));
    return make_tuple(std::move(out));
  }
  return v;
}

Value zero_value(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Bool: return Value(false);
    case TypeKind::Int: return Value(int32_t{0});
    case TypeKind::Double: return Value(0.0);
    case TypeKind::Time: return Value(TimeVal{0});
    case TypeKind::Array: return make_array({});
    case TypeKind::Tuple: {
      std::vector<Value> elems;
      for (const auto& e : t->elems) elems.push_back(zero_value(e));
      return make_tuple(std::move(elems));
    }
    default: return Value(UnitVal{});
  }
}

}  // namespace quingo
