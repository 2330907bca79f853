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

#include <stdexcept>
#include <string>
#include <string_view>

namespace quingo {

/// Error classes raised across the toolchain. The printed name of each code
/// is what appears in `error[CODE]` diagnostics.
enum class Errc {
  // frontend
  LexError,
  ParseError,
  UnresolvedImport,
  AmbiguousName,
  TypeError,
  TimingOnClassical,
  ArityError,
  // platform configuration
  ConfigSyntax,
  ConfigSemantic,
  NoUnitary,
  // middle end
  ArgTypeError,
  StepBudgetExceeded,
  DivisionByZero,
  IndexOutOfRange,
  DynamicUnsupported,
  ModifierError,
  // scheduler
  Infeasible,
  SyncError,
  // codegen / assembler
  UnencodableImmediate,
  UnsupportedReturn,
  RegisterPressure,
  AsmSyntax,
  UndefinedLabel,
  // vm
  TooManyQubits,
  FmrBeforeMeasure,
  IllegalInstruction,
  MemoryOutOfRange,
  CycleBudgetExceeded,
  NormViolation,
  // runtime / data exchange
  EncodeTypeMismatch,
  DecodeTruncated,
  DecodeBadOffset,
  UnknownKernelOp,
  NotCompleted,
  UnknownBackend,
  IoError,
};

std::string_view errc_name(Errc code);

struct SourceLoc {
  std::string file;
  int line = 0;
  int col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, SourceLoc loc = {});

  Errc code() const noexcept { return code_; }
  const SourceLoc& loc() const noexcept { return loc_; }
  const std::string& message() const noexcept { return message_; }

  /// `file:line:col: error[CODE]: message`; location parts are dropped when
  /// unknown.
  std::string diagnostic() const;

 private:
  Errc code_;
  std::string message_;
  SourceLoc loc_;
};

}  // namespace quingo
