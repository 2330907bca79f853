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

#include "quingo/error.hpp"

namespace quingo {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::LexError: return "LexError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnresolvedImport: return "UnresolvedImport";
    case Errc::AmbiguousName: return "AmbiguousName";
    case Errc::TypeError: return "TypeError";
    case Errc::TimingOnClassical: return "TimingOnClassical";
    case Errc::ArityError: return "ArityError";
    case Errc::ConfigSyntax: return "ConfigSyntax";
    case Errc::ConfigSemantic: return "ConfigSemantic";
    case Errc::NoUnitary: return "NoUnitary";
    case Errc::ArgTypeError: return "ArgTypeError";
    case Errc::StepBudgetExceeded: return "StepBudgetExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DynamicUnsupported: return "DynamicUnsupported";
    case Errc::ModifierError: return "ModifierError";
    case Errc::Infeasible: return "Infeasible";
    case Errc::SyncError: return "SyncError";
    case Errc::UnencodableImmediate: return "UnencodableImmediate";
    case Errc::UnsupportedReturn: return "UnsupportedReturn";
    case Errc::RegisterPressure: return "RegisterPressure";
    case Errc::AsmSyntax: return "AsmSyntax";
    case Errc::UndefinedLabel: return "UndefinedLabel";
    case Errc::TooManyQubits: return "TooManyQubits";
    case Errc::FmrBeforeMeasure: return "FmrBeforeMeasure";
    case Errc::IllegalInstruction: return "IllegalInstruction";
    case Errc::MemoryOutOfRange: return "MemoryOutOfRange";
    case Errc::CycleBudgetExceeded: return "CycleBudgetExceeded";
    case Errc::NormViolation: return "NormViolation";
    case Errc::EncodeTypeMismatch: return "EncodeTypeMismatch";
    case Errc::DecodeTruncated: return "DecodeTruncated";
    case Errc::DecodeBadOffset: return "DecodeBadOffset";
    case Errc::UnknownKernelOp: return "UnknownKernelOp";
    case Errc::NotCompleted: return "NotCompleted";
    case Errc::UnknownBackend: return "UnknownBackend";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string render(Errc code, const std::string& message, const SourceLoc& loc) {
  std::string out;
  if (!loc.file.empty()) {
    out += loc.file;
    out += ':';
  }
  if (loc.line > 0) {
    out += std::to_string(loc.line) + ':' + std::to_string(loc.col) + ':';
  }
  if (!out.empty()) out += ' ';
  out += "error[";
  out += errc_name(code);
  out += "]: ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, SourceLoc loc)
    : std::runtime_error(render(code, message, loc)),
      code_(code),
      message_(message),
      loc_(std::move(loc)) {}

std::string Error::diagnostic() const { return what(); }

}  // namespace quingo
