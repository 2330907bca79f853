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

#include "quingo/main_gen.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "quingo/error.hpp"

namespace quingo {

namespace {

std::string kind_suffix(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int";
    case TypeKind::Double: return "double";
    case TypeKind::Array: return "arr";
    case TypeKind::Tuple: return "tuple";
    default: return "val";
  }
}

Value from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer()) {
    int64_t x = j.is_number_unsigned() && j.get<uint64_t>() > static_cast<uint64_t>(INT64_MAX)
                    ? INT64_MAX
                    : j.get<int64_t>();
    if (x < std::numeric_limits<int32_t>::min() || x > std::numeric_limits<int32_t>::max())
      throw Error(Errc::ArgTypeError, "integer argument " + j.dump() + " does not fit in 32 bits");
    return Value(static_cast<int32_t>(x));
  }
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (!std::isfinite(d)) throw Error(Errc::ArgTypeError, "non-finite double argument");
    return Value(d);
  }
  if (j.is_array()) {
    std::vector<Value> xs;
    for (const auto& e : j) xs.push_back(from_json(e));
    Value v = make_array(std::move(xs));
    infer_type(v);  // rejects heterogeneous arrays
    return v;
  }
  throw Error(Errc::ArgTypeError, "unsupported argument " + j.dump() + " (expected bool, number or array)");
}

}  // namespace

std::vector<Value> parse_args_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ArgTypeError, std::string("malformed argument JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(Errc::ArgTypeError, "argument manifest must be a JSON array");
  std::vector<Value> out;
  for (const auto& e : j) out.push_back(from_json(e));
  return out;
}

std::string generate_main(const std::string& op, const std::vector<Value>& args,
                          const std::vector<TypePtr>& params, const TypePtr& ret) {
  if (args.size() != params.size())
    throw Error(Errc::ArgTypeError, "'" + op + "' takes " + std::to_string(params.size()) + " arguments, " +
                                        std::to_string(args.size()) + " given");
  std::string decls, call;
  for (size_t i = 0; i < args.size(); ++i) {
    const TypePtr& want = params[i];
    if (!is_classical(want))
      throw Error(Errc::ArgTypeError, "parameter " + std::to_string(i) + " of '" + op + "' has non-classical type " +
                                          type_to_string(want));
    infer_type(args[i]);
    if (!value_matches(args[i], want))
      throw Error(Errc::ArgTypeError, "argument " + std::to_string(i) + " (" + value_to_text(args[i]) +
                                          ") does not match parameter type " + type_to_string(want));
    std::string lit = value_to_literal(coerce(args[i], want));
    if (i) call += ",";
    if (want->kind == TypeKind::Int || want->kind == TypeKind::Double) {
      call += lit;
      continue;
    }
    std::string name = "var" + std::to_string(i) + "_" + kind_suffix(want);
    decls += "    " + type_to_string(want) + " " + name + " = " + lit + ";\n";
    call += name;
  }
  std::string text = "operation main(): " + type_to_string(ret) + " {\n" + decls;
  if (ret->kind == TypeKind::Unit) {
    text += "    " + op + "(" + call + ");\n";
  } else {
    text += "    return " + op + "(" + call + ");\n";
  }
  return text + "}\n";
}

}  // namespace quingo
