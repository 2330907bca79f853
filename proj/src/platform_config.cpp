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

#include "quingo/platform_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quingo/error.hpp"

namespace quingo {

using nlohmann::json;

// ---- Matrix ----

Matrix Matrix::identity(int dim) {
  Matrix m;
  m.dim = dim;
  m.a.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r;
  r.dim = dim;
  r.a.assign(a.size(), 0.0);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      Complex x = (*this)(i, k);
      if (x == Complex(0)) continue;
      for (int j = 0; j < dim; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Matrix Matrix::adjoint() const {
  Matrix r;
  r.dim = dim;
  r.a.resize(a.size());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

double Matrix::max_diff(const Matrix& o) const {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - o.a[i]));
  return d;
}

bool Matrix::is_unitary(double tol) const {
  return (adjoint() * *this).max_diff(identity(dim)) <= tol;
}

bool Semantics::operator==(const Semantics& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case SemKind::Rotation:
      return axis == o.axis && angle_is_param == o.angle_is_param &&
             (angle_is_param ? angle_param == o.angle_param : angle == o.angle);
    case SemKind::Matrix: return matrix.dim == o.matrix.dim && matrix.a == o.matrix.a;
    case SemKind::Pulse: return pulse == o.pulse;
    default: return true;
  }
}

bool OpDef::operator==(const OpDef& o) const {
  if (name != o.name || duration_ns != o.duration_ns || num_qubits != o.num_qubits ||
      params.size() != o.params.size() || !(semantics == o.semantics))
    return false;
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i].name != o.params[i].name || !type_equal(params[i].type, o.params[i].type))
      return false;
  return true;
}

const OpDef* PlatformConfig::find(const std::string& name) const {
  auto it = operations.find(name);
  return it == operations.end() ? nullptr : &it->second;
}

const OpDef& PlatformConfig::at(const std::string& name) const {
  const OpDef* d = find(name);
  if (!d) throw Error(Errc::ConfigSemantic, "operation '" + name + "' is not defined by the platform");
  return *d;
}

bool PlatformConfig::operator==(const PlatformConfig& o) const {
  return package_name == o.package_name && qubit_count == o.qubit_count &&
         cycle_time_ns == o.cycle_time_ns && operations == o.operations;
}

// ---- time values ----

double unit_scale_ns(std::string_view unit) {
  if (unit == "ns") return 1;
  if (unit == "us") return 1e3;
  if (unit == "ms") return 1e6;
  if (unit == "s") return 1e9;
  return 0;
}

namespace {

[[noreturn]] void semantic(const std::string& msg, const std::string& file) {
  throw Error(Errc::ConfigSemantic, msg, {file, 0, 0});
}
[[noreturn]] void syntax(const std::string& msg, const std::string& file, int line = 0) {
  throw Error(Errc::ConfigSyntax, msg, {file, line, 0});
}

int64_t whole_ns(double ns, std::string_view what) {
  if (!std::isfinite(ns) || ns <= 0)
    throw Error(Errc::ConfigSemantic, "duration " + std::string(what) + " must be positive");
  double r = std::round(ns);
  if (std::abs(ns - r) > 1e-6 * std::max(1.0, std::abs(ns)))
    throw Error(Errc::ConfigSemantic,
                "duration " + std::string(what) + " is not a whole number of nanoseconds");
  return static_cast<int64_t>(r);
}

}  // namespace

int64_t parse_time_ns(std::string_view text) {
  size_t i = 0;
  while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
    ++i;
  std::string num(text.substr(0, i));
  std::string_view unit = text.substr(i);
  double scale = unit_scale_ns(unit);
  if (num.empty() || scale == 0)
    throw Error(Errc::ConfigSemantic, "malformed time value '" + std::string(text) + "'");
  return whole_ns(std::strtod(num.c_str(), nullptr) * scale, text);
}

namespace {

TypePtr param_type(const std::string& s, const std::string& file) {
  if (s == "int") return types::integer();
  if (s == "double") return types::real();
  if (s == "bool") return types::boolean();
  semantic("unsupported parameter type '" + s + "'", file);
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where,
               const std::string& file) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) semantic("unknown key '" + it.key() + "' in " + where, file);
  }
}

Complex entry(const json& j, const std::string& file) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  semantic("matrix entries must be numbers or [re, im] pairs", file);
}

Semantics parse_semantics(const json& j, OpDef& op, const std::string& file) {
  Semantics s;
  std::string where = "semantics of '" + op.name + "'";
  if (j.is_string()) {
    std::string v = j.get<std::string>();
    if (v == "measure") {
      s.kind = SemKind::Measure;
    } else if (v == "reset") {
      s.kind = SemKind::Reset;
    } else {
      semantic("unknown " + where + ": '" + v + "'", file);
    }
    return s;
  }
  if (!j.is_object() || j.size() != 1) semantic(where + " must name exactly one variant", file);
  const std::string& tag = j.begin().key();
  const json& body = j.begin().value();
  if (tag == "rotation") {
    s.kind = SemKind::Rotation;
    if (!body.is_object()) semantic(where + ": rotation must be an object", file);
    only_keys(body, {"axis", "angle"}, where, file);
    if (!body.contains("axis") || !body["axis"].is_array() || body["axis"].size() != 3)
      semantic(where + ": rotation axis must be a 3-vector", file);
    double norm = 0;
    for (int i = 0; i < 3; ++i) {
      if (!body["axis"][i].is_number()) semantic(where + ": axis components must be numbers", file);
      s.axis[i] = body["axis"][i].get<double>();
      norm += s.axis[i] * s.axis[i];
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) semantic(where + ": rotation axis is not a unit vector", file);
    if (!body.contains("angle")) semantic(where + ": rotation needs an angle", file);
    const json& ang = body["angle"];
    if (ang.is_string()) {
      s.angle_is_param = true;
      s.angle_param = ang.get<std::string>();
      bool found = false;
      for (const auto& p : op.params)
        if (p.name == s.angle_param) found = is_numeric(p.type);
      if (!found) semantic(where + ": angle '" + s.angle_param + "' is not a numeric parameter", file);
    } else if (ang.is_number()) {
      s.angle = ang.get<double>();
    } else {
      semantic(where + ": angle must be a parameter name or a number", file);
    }
    if (op.num_qubits != 1) semantic(where + ": rotations act on exactly one qubit", file);
  } else if (tag == "matrix") {
    s.kind = SemKind::Matrix;
    if (!body.is_array() || body.empty()) semantic(where + ": matrix must be a non-empty array", file);
    int dim = static_cast<int>(body.size());
    if (dim != (1 << op.num_qubits))
      semantic(where + ": matrix dimension " + std::to_string(dim) + " does not match " +
                   std::to_string(op.num_qubits) + " qubit(s)",
               file);
    s.matrix.dim = dim;
    for (const auto& row : body) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim) semantic(where + ": matrix is not square", file);
      for (const auto& e : row) s.matrix.a.push_back(entry(e, file));
    }
    if (!s.matrix.is_unitary(1e-9)) semantic(where + ": matrix is not unitary", file);
  } else if (tag == "pulse") {
    s.kind = SemKind::Pulse;
    if (!body.is_string()) semantic(where + ": pulse must be a string", file);
    s.pulse = body.get<std::string>();
  } else {
    semantic("unknown " + where + ": '" + tag + "'", file);
  }
  return s;
}

int64_t parse_duration(const json& j, const std::string& what, const std::string& file) {
  try {
    if (j.is_number()) return whole_ns(j.get<double>(), what);
    if (j.is_string()) return parse_time_ns(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(e.code(), e.message(), {file, 0, 0});
  }
  semantic(what + " must be a number of nanoseconds or a time string", file);
}

}  // namespace

PlatformConfig parse_config(std::string_view text, const std::string& file) {
  PlatformConfig cfg;
  // Header: `package NAME;`
  size_t i = 0;
  int line = 1;
  auto skip_ws = [&] {
    for (;;) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        if (text[i] == '\n') ++line;
        ++i;
      }
      if (text.substr(i, 2) == "//") {
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      break;
    }
  };
  skip_ws();
  if (text.substr(i, 7) != "package") syntax("configuration must start with a package statement", file, line);
  i += 7;
  size_t semi = text.find(';', i);
  if (semi == std::string_view::npos) syntax("missing ';' after package name", file, line);
  std::string name(text.substr(i, semi - i));
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
      syntax("malformed package name '" + name + "'", file, line);
  if (name.empty()) syntax("empty package name", file, line);
  cfg.package_name = name;

  json root;
  try {
    root = json::parse(text.substr(semi + 1));
  } catch (const json::parse_error& e) {
    syntax(std::string("malformed JSON body: ") + e.what(), file);
  }
  if (!root.is_object()) syntax("configuration body must be a JSON object", file);
  only_keys(root, {"platform", "operations"}, "configuration", file);
  if (!root.contains("platform") || !root["platform"].is_object()) semantic("missing 'platform' section", file);
  if (!root.contains("operations") || !root["operations"].is_object())
    semantic("missing 'operations' section", file);

  const json& plat = root["platform"];
  only_keys(plat, {"qubit_count", "cycle_time_ns", "extensions"}, "platform", file);
  if (!plat.contains("qubit_count") || !plat["qubit_count"].is_number_integer() ||
      plat["qubit_count"].get<int64_t>() < 1 || plat["qubit_count"].get<int64_t>() > 64)
    semantic("platform.qubit_count must be a positive integer", file);
  cfg.qubit_count = plat["qubit_count"].get<int>();
  if (!plat.contains("cycle_time_ns")) semantic("missing platform.cycle_time_ns", file);
  cfg.cycle_time_ns = parse_duration(plat["cycle_time_ns"], "platform.cycle_time_ns", file);

  for (auto it = root["operations"].begin(); it != root["operations"].end(); ++it) {
    OpDef op;
    op.name = it.key();
    const json& body = it.value();
    std::string where = "operation '" + op.name + "'";
    if (!body.is_object()) semantic(where + " must be an object", file);
    only_keys(body, {"duration_ns", "num_qubits", "params", "semantics"}, where, file);
    if (!body.contains("duration_ns")) semantic(where + " has no duration_ns", file);
    op.duration_ns = parse_duration(body["duration_ns"], where + " duration", file);
    if (!body.contains("num_qubits") || !body["num_qubits"].is_number_integer() ||
        body["num_qubits"].get<int64_t>() < 1 || body["num_qubits"].get<int64_t>() > 12)
      semantic(where + ": num_qubits must be a positive integer", file);
    op.num_qubits = body["num_qubits"].get<int>();
    if (body.contains("params")) {
      if (!body["params"].is_array()) semantic(where + ": params must be an array", file);
      for (const auto& p : body["params"]) {
        if (!p.is_object() || !p.contains("name") || !p.contains("type") || !p["name"].is_string() ||
            !p["type"].is_string() || p.size() != 2)
          semantic(where + ": each param needs exactly a string name and type", file);
        ConfigParam cp{p["name"].get<std::string>(), param_type(p["type"].get<std::string>(), file)};
        for (const auto& q : op.params)
          if (q.name == cp.name) semantic(where + ": duplicate parameter '" + cp.name + "'", file);
        op.params.push_back(std::move(cp));
      }
    }
    if (!body.contains("semantics")) semantic(where + " has no semantics", file);
    op.semantics = parse_semantics(body["semantics"], op, file);
    if ((op.semantics.kind == SemKind::Measure || op.semantics.kind == SemKind::Reset) && op.num_qubits != 1)
      semantic(where + ": measure/reset act on exactly one qubit", file);
    if (cfg.operations.count(op.name)) semantic("duplicate operation '" + op.name + "'", file);
    cfg.operations.emplace(op.name, std::move(op));
  }
  return cfg;
}

PlatformConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open configuration '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string print_config(const PlatformConfig& cfg) {
  json root;
  root["platform"] = {{"qubit_count", cfg.qubit_count}, {"cycle_time_ns", cfg.cycle_time_ns}};
  json ops = json::object();
  for (const auto& [name, op] : cfg.operations) {
    json o;
    o["duration_ns"] = op.duration_ns;
    o["num_qubits"] = op.num_qubits;
    json ps = json::array();
    for (const auto& p : op.params) ps.push_back({{"name", p.name}, {"type", type_to_string(p.type)}});
    o["params"] = ps;
    const Semantics& s = op.semantics;
    switch (s.kind) {
      case SemKind::Measure: o["semantics"] = "measure"; break;
      case SemKind::Reset: o["semantics"] = "reset"; break;
      case SemKind::Pulse: o["semantics"] = {{"pulse", s.pulse}}; break;
      case SemKind::Rotation: {
        json r;
        r["axis"] = {s.axis[0], s.axis[1], s.axis[2]};
        if (s.angle_is_param) {
          r["angle"] = s.angle_param;
        } else {
          r["angle"] = s.angle;
        }
        o["semantics"] = {{"rotation", r}};
        break;
      }
      case SemKind::Matrix: {
        json m = json::array();
        for (int r = 0; r < s.matrix.dim; ++r) {
          json row = json::array();
          for (int c = 0; c < s.matrix.dim; ++c) row.push_back({s.matrix(r, c).real(), s.matrix(r, c).imag()});
          m.push_back(row);
        }
        o["semantics"] = {{"matrix", m}};
        break;
      }
    }
    ops[name] = o;
  }
  root["operations"] = ops;
  return "package " + cfg.package_name + ";\n" + root.dump(2) + "\n";
}

Matrix semantics_unitary(const OpDef& op, const std::vector<Value>& params) {
  const Semantics& s = op.semantics;
  if (s.kind == SemKind::Matrix) return s.matrix;
  if (s.kind != SemKind::Rotation)
    throw Error(Errc::NoUnitary, "operation '" + op.name + "' has no unitary semantics");
  double theta = s.angle;
  if (s.angle_is_param) {
    bool found = false;
    for (size_t i = 0; i < op.params.size(); ++i) {
      if (op.params[i].name != s.angle_param) continue;
      if (i >= params.size())
        throw Error(Errc::ArityError, "operation '" + op.name + "' is missing parameter '" + s.angle_param + "'");
      const Value& v = params[i];
      if (v.is<double>()) {
        theta = v.as<double>();
      } else if (v.is<int32_t>()) {
        theta = v.as<int32_t>();
      } else {
        throw Error(Errc::TypeError, "rotation angle of '" + op.name + "' is not numeric");
      }
      found = true;
    }
    if (!found) throw Error(Errc::ConfigSemantic, "rotation angle parameter missing");
  }
  const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  const double nx = s.axis[0], ny = s.axis[1], nz = s.axis[2];
  const Complex I(0, 1);
  // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
  Matrix u;
  u.dim = 2;
  u.a = {c - I * sn * nz, -I * sn * Complex(nx, -ny), -I * sn * Complex(nx, ny), c + I * sn * nz};
  return u;
}

int64_t duration_ns(const OpDef& op) { return op.duration_ns; }

}  // namespace quingo
