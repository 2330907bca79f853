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

#include "quingo/isa.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "quingo/error.hpp"
#include "quingo/value.hpp"

namespace quingo {

namespace {

struct OpInfo {
  Opcode op;
  const char* name;
};

constexpr OpInfo kOps[] = {
    {Opcode::Ldi, "ldi"},         {Opcode::Add, "add"},     {Opcode::Sub, "sub"},     {Opcode::Mul, "mul"},
    {Opcode::Mulq, "mulq"},       {Opcode::And, "and"},     {Opcode::Or, "or"},       {Opcode::Xor, "xor"},
    {Opcode::Not, "not"},         {Opcode::Shl, "shl"},     {Opcode::Sra, "sra"},     {Opcode::Cmp, "cmp"},
    {Opcode::Set, "set"},         {Opcode::Br, "br"},       {Opcode::Jmp, "jmp"},     {Opcode::Fmr, "fmr"},
    {Opcode::Nop, "nop"},         {Opcode::Qwait, "qwait"}, {Opcode::Qop, "qop"},     {Opcode::Pulse, "pulse"},
    {Opcode::Measure, "measure"}, {Opcode::Init, "init"},   {Opcode::Stb, "stb"},     {Opcode::Stw, "stw"},
    {Opcode::Std, "std"},         {Opcode::Stfx, "stfx"},   {Opcode::StfxS, "stfx.s"}, {Opcode::Halt, "halt"},
};

constexpr const char* kConds[] = {"eq", "ne", "lt", "le", "gt", "ge"};

std::string reg(int r) { return "r" + std::to_string(r); }
std::string qubit(int q) { return "q" + std::to_string(q); }

std::string qlist(const std::vector<int>& qs) {
  std::string s;
  for (size_t i = 0; i < qs.size(); ++i) s += (i ? "," : "") + qubit(qs[i]);
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

struct Line {
  int no = 0;
  std::vector<std::string> toks;
};

class AsmParser {
 public:
  explicit AsmParser(std::string_view text) : text_(text) {}

  QProgram run() {
    QProgram prog;
    std::vector<std::pair<size_t, int>> fixups;  // (instr, line)
    std::map<std::string, int> labels;
    size_t pos = 0;
    int no = 0;
    while (pos <= text_.size()) {
      size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++no;
      Line ln = split(text_.substr(pos, nl - pos), no);
      pos = nl + 1;
      if (ln.toks.empty()) continue;
      line_ = no;
      auto& t = ln.toks;
      if (t[0] == ".qubits") {
        want(t, 2);
        prog.qubits = static_cast<int>(number(t[1]));
        continue;
      }
      if (t[0] == ".rettype") {
        want(t, 2);
        prog.rettype = t[1];
        continue;
      }
      if (t[0] == ".f32") {
        want(t, 1);
        prog.f32_doubles = true;
        continue;
      }
      if (t[0].back() == ':') {
        if (t.size() != 1) fail("a label must be alone on its line");
        std::string name = t[0].substr(0, t[0].size() - 1);
        if (name.empty() || !ident(name)) fail("bad label '" + name + "'");
        if (labels.count(name)) fail("duplicate label '" + name + "'");
        labels[name] = static_cast<int>(prog.code.size());
        prog.labels.emplace_back(static_cast<int>(prog.code.size()), name);
        continue;
      }
      MInstr in = instruction(t);
      if (in.op == Opcode::Br || in.op == Opcode::Jmp) fixups.emplace_back(prog.code.size(), no);
      prog.code.push_back(std::move(in));
    }
    for (auto [i, ln] : fixups) {
      auto it = labels.find(prog.code[i].label);
      if (it == labels.end())
        throw Error(Errc::UndefinedLabel, "line " + std::to_string(ln) + ": undefined label '" + prog.code[i].label + "'");
      prog.code[i].target = it->second;
    }
    return prog;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::AsmSyntax, "line " + std::to_string(line_) + ": " + why);
  }

  static bool ident(const std::string& s) {
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
    return !std::isdigit(static_cast<unsigned char>(s[0]));
  }

  Line split(std::string_view s, int no) {
    line_ = no;
    Line ln;
    ln.no = no;
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '"') {
        std::string tok = "\"";
        ++i;
        bool closed = false;
        while (i < s.size()) {
          char d = s[i++];
          if (d == '\\' && i < s.size()) {
            char e = s[i++];
            tok += e == 'n' ? '\n' : e;
          } else if (d == '"') {
            closed = true;
            break;
          } else {
            tok += d;
          }
        }
        if (!closed) fail("unterminated string");
        ln.toks.push_back(tok);
        continue;
      }
      size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '#') ++j;
      ln.toks.emplace_back(s.substr(i, j - i));
      i = j;
    }
    return ln;
  }

  void want(const std::vector<std::string>& t, size_t n) const {
    if (t.size() != n)
      fail("'" + t[0] + "' takes " + std::to_string(n - 1) + " operands, found " + std::to_string(t.size() - 1));
  }

  int64_t number(const std::string& s) const {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("expected an integer, found '" + s + "'");
    return v;
  }

  int regnum(const std::string& s) const {
    if (s.size() < 2 || s[0] != 'r') fail("expected a register, found '" + s + "'");
    int64_t v = number(s.substr(1));
    if (v < 0 || v >= kNumRegs) fail("no register '" + s + "'");
    return static_cast<int>(v);
  }

  int qnum(const std::string& s) const {
    if (s.size() < 2 || s[0] != 'q') fail("expected a qubit, found '" + s + "'");
    int64_t v = number(s.substr(1));
    if (v < 0 || v > 1023) fail("no qubit '" + s + "'");
    return static_cast<int>(v);
  }

  std::vector<int> qubits(const std::string& s) const {
    std::vector<int> out;
    size_t i = 0;
    while (i <= s.size()) {
      size_t j = s.find(',', i);
      if (j == std::string::npos) j = s.size();
      out.push_back(qnum(s.substr(i, j - i)));
      i = j + 1;
    }
    return out;
  }

  Cond cond(const std::string& s) const {
    for (int i = 0; i < 6; ++i)
      if (s == kConds[i]) return static_cast<Cond>(i);
    fail("unknown condition '" + s + "'");
  }

  int64_t imm32(const std::string& s) const {
    int64_t v = number(s);
    if (v < INT32_MIN || v > UINT32_MAX) throw Error(Errc::UnencodableImmediate, "line " + std::to_string(line_) + ": immediate " + s + " does not fit in 32 bits");
    return v;
  }

  QParam param(const std::string& s) const {
    QParam p;
    if (s[0] == 'r') {
      p.kind = QParam::Reg;
      p.reg = regnum(s);
      return p;
    }
    if (s.find_first_of(".eEin") == std::string::npos) {
      p.kind = QParam::Int;
      p.i = number(s);
      return p;
    }
    p.kind = QParam::Double;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p.d);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad numeric parameter '" + s + "'");
    return p;
  }

  MInstr instruction(const std::vector<std::string>& t) {
    MInstr in;
    bool found = false;
    for (const auto& o : kOps)
      if (t[0] == o.name) {
        in.op = o.op;
        found = true;
      }
    if (!found) fail("unknown instruction '" + t[0] + "'");
    switch (in.op) {
      case Opcode::Ldi:
        want(t, 3);
        in.rd = regnum(t[1]);
        in.imm = imm32(t[2]);
        break;
      case Opcode::Add: case Opcode::Sub: case Opcode::Mul: case Opcode::Mulq:
      case Opcode::And: case Opcode::Or: case Opcode::Xor:
        want(t, 4);
        in.rd = regnum(t[1]);
        in.ra = regnum(t[2]);
        in.rb = regnum(t[3]);
        break;
      case Opcode::Not:
        want(t, 3);
        in.rd = regnum(t[1]);
        in.ra = regnum(t[2]);
        break;
      case Opcode::Shl: case Opcode::Sra:
        want(t, 4);
        in.rd = regnum(t[1]);
        in.ra = regnum(t[2]);
        in.imm = number(t[3]);
        if (in.imm < 0 || in.imm > 31) fail("shift amount out of range");
        break;
      case Opcode::Cmp:
        want(t, 3);
        in.ra = regnum(t[1]);
        in.rb = regnum(t[2]);
        break;
      case Opcode::Set:
        want(t, 3);
        in.cond = cond(t[1]);
        in.rd = regnum(t[2]);
        break;
      case Opcode::Br:
        want(t, 3);
        in.cond = cond(t[1]);
        in.label = t[2];
        break;
      case Opcode::Jmp:
        want(t, 2);
        in.label = t[1];
        break;
      case Opcode::Fmr:
        want(t, 3);
        in.rd = regnum(t[1]);
        in.qubits = {qnum(t[2])};
        break;
      case Opcode::Nop: case Opcode::Halt:
        want(t, 1);
        break;
      case Opcode::Qwait:
        want(t, 2);
        in.imm = number(t[1]);
        if (in.imm < 0) fail("negative wait");
        break;
      case Opcode::Measure: case Opcode::Init:
        if (t.size() != 2 && t.size() != 3) want(t, 2);
        in.qubits = {qnum(t[1])};
        if (t.size() == 3) in.name = t[2];
        break;
      case Opcode::Pulse:
        want(t, 4);
        in.name = t[1];
        in.qubits = qubits(t[2]);
        if (t[3].empty() || t[3][0] != '"') fail("pulse payload must be a quoted string");
        in.text = t[3].substr(1);
        break;
      case Opcode::Qop: {
        if (t.size() < 3) fail("qop needs an operation and qubits");
        in.name = t[1];
        in.qubits = qubits(t[2]);
        size_t i = 3;
        for (; i < t.size() && t[i] != "ctrl" && t[i] != "inv"; ++i) in.params.push_back(param(t[i]));
        if (i < t.size() && t[i] == "ctrl") {
          if (i + 1 >= t.size()) fail("ctrl needs qubits");
          in.controls = qubits(t[i + 1]);
          i += 2;
        }
        if (i < t.size() && t[i] == "inv") {
          in.inverted = true;
          ++i;
        }
        if (i != t.size()) fail("unexpected '" + t[i] + "'");
        break;
      }
      case Opcode::Stb: case Opcode::Stw: case Opcode::Stfx: case Opcode::StfxS:
        want(t, 3);
        in.ra = regnum(t[1]);
        in.imm = number(t[2]);
        break;
      case Opcode::Std:
        want(t, 4);
        in.ra = regnum(t[1]);
        in.rb = regnum(t[2]);
        in.imm = number(t[3]);
        break;
    }
    return in;
  }

  std::string_view text_;
  int line_ = 0;
};

}  // namespace

bool is_classical_op(Opcode op) {
  switch (op) {
    case Opcode::Qwait: case Opcode::Qop: case Opcode::Pulse: case Opcode::Measure: case Opcode::Init:
    case Opcode::Halt:
      return false;
    default:
      return true;
  }
}

std::string_view opcode_name(Opcode op) {
  for (const auto& o : kOps)
    if (o.op == op) return o.name;
  return "?";
}

std::string_view cond_name(Cond c) { return kConds[static_cast<int>(c)]; }

std::string instr_text(const MInstr& in) {
  std::string s(opcode_name(in.op));
  switch (in.op) {
    case Opcode::Ldi: return s + " " + reg(in.rd) + " " + std::to_string(in.imm);
    case Opcode::Add: case Opcode::Sub: case Opcode::Mul: case Opcode::Mulq:
    case Opcode::And: case Opcode::Or: case Opcode::Xor:
      return s + " " + reg(in.rd) + " " + reg(in.ra) + " " + reg(in.rb);
    case Opcode::Not: return s + " " + reg(in.rd) + " " + reg(in.ra);
    case Opcode::Shl: case Opcode::Sra: return s + " " + reg(in.rd) + " " + reg(in.ra) + " " + std::to_string(in.imm);
    case Opcode::Cmp: return s + " " + reg(in.ra) + " " + reg(in.rb);
    case Opcode::Set: return s + " " + std::string(cond_name(in.cond)) + " " + reg(in.rd);
    case Opcode::Br: return s + " " + std::string(cond_name(in.cond)) + " " + in.label;
    case Opcode::Jmp: return s + " " + in.label;
    case Opcode::Fmr: return s + " " + reg(in.rd) + " " + qubit(in.qubits.at(0));
    case Opcode::Nop: case Opcode::Halt: return s;
    case Opcode::Qwait: return s + " " + std::to_string(in.imm);
    case Opcode::Measure: case Opcode::Init:
      return s + " " + qubit(in.qubits.at(0)) + (in.name.empty() ? "" : " " + in.name);
    case Opcode::Pulse: return s + " " + in.name + " " + qlist(in.qubits) + " " + quote(in.text);
    case Opcode::Qop: {
      s += " " + in.name + " " + qlist(in.qubits);
      for (const auto& p : in.params) {
        if (p.kind == QParam::Reg) {
          s += " " + reg(p.reg);
        } else if (p.kind == QParam::Int) {
          s += " " + std::to_string(p.i);
        } else {
          s += " " + format_double(p.d);
        }
      }
      if (!in.controls.empty()) s += " ctrl " + qlist(in.controls);
      if (in.inverted) s += " inv";
      return s;
    }
    case Opcode::Stb: case Opcode::Stw: case Opcode::Stfx: case Opcode::StfxS:
      return s + " " + reg(in.ra) + " " + std::to_string(in.imm);
    case Opcode::Std: return s + " " + reg(in.ra) + " " + reg(in.rb) + " " + std::to_string(in.imm);
  }
  return s;
}

QProgram assemble(std::string_view text) { return AsmParser(text).run(); }

std::string disassemble(const QProgram& prog) {
  std::string out = ".qubits " + std::to_string(prog.qubits) + "\n.rettype " + prog.rettype + "\n";
  if (prog.f32_doubles) out += ".f32\n";
  size_t l = 0;
  for (size_t i = 0; i <= prog.code.size(); ++i) {
    for (; l < prog.labels.size() && prog.labels[l].first == static_cast<int>(i); ++l) out += prog.labels[l].second + ":\n";
    if (i < prog.code.size()) out += "    " + instr_text(prog.code[i]) + "\n";
  }
  return out;
}

}  // namespace quingo
