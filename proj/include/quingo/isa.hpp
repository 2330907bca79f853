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
#include <utility>
#include <vector>

namespace quingo {

enum class Opcode {
  Ldi, Add, Sub, Mul, Mulq, And, Or, Xor, Not, Shl, Sra, Cmp, Set, Br, Jmp, Fmr, Nop,
  Qwait, Qop, Pulse, Measure, Init,
  Stb, Stw, Std, Stfx, StfxS,
  Halt,
};

enum class Cond { Eq, Ne, Lt, Le, Gt, Ge };

/// Classical argument of a `qop`: register (Q16 for double parameters),
/// integer or double literal.
struct QParam {
  enum Kind { Reg, Int, Double } kind = Int;
  int reg = 0;
  int64_t i = 0;
  double d = 0;
  bool operator==(const QParam&) const = default;
};

struct MInstr {
  Opcode op = Opcode::Nop;
  int rd = 0, ra = 0, rb = 0;
  int64_t imm = 0;  // ldi value, shift amount, store address, qwait cycles
  Cond cond = Cond::Eq;
  int target = -1;    // br/jmp: instruction index
  std::string label;  // br/jmp: label text
  std::string name;   // qop/pulse/measure/init: platform operation
  std::vector<int> qubits;
  std::vector<int> controls;
  std::vector<QParam> params;
  bool inverted = false;
  std::string text;  // pulse payload
  bool operator==(const MInstr&) const = default;
};

/// Assembled program. `labels` lists (instruction index, name) pairs in
/// source order; an index equal to code.size() labels the end.
struct QProgram {
  int qubits = 0;
  std::string rettype = "unit";
  bool f32_doubles = false;
  std::vector<MInstr> code;
  std::vector<std::pair<int, std::string>> labels;
};

inline constexpr int kNumRegs = 32;
inline constexpr int kScratchA = 30;
inline constexpr int kScratchB = 31;

bool is_classical_op(Opcode op);
std::string_view opcode_name(Opcode op);
std::string_view cond_name(Cond c);

/// Text form of one instruction, e.g. `qop X q0 3.141592653589793`.
std::string instr_text(const MInstr& in);

/// AsmSyntax on malformed text, UndefinedLabel on an unknown target.
QProgram assemble(std::string_view text);

/// Inverse of assemble(): header, labels and one instruction per line.
std::string disassemble(const QProgram& prog);

}  // namespace quingo
