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

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>

#include "quingo/ast.hpp"
#include "quingo/frontend.hpp"
#include "quingo/lexer.hpp"
#include "quingo/parser.hpp"
#include "support.hpp"

namespace quingo {
namespace {

using testing::platform;
using testing::program_path;

std::vector<Tok> kinds(std::string_view src) {
  std::vector<Tok> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

TypedProgram check_source(const std::string& body) {
  std::string src = "import config.json.*\nimport operations.*\n" + body;
  return compile_frontend({{"t.qu", src}}, {QUINGO_PROGRAMS_DIR}, platform());
}

TEST(Lexer, DeclarationTokens) {
  EXPECT_EQ(kinds("int x = 5;"),
            (std::vector<Tok>{Tok::KwInt, Tok::Ident, Tok::Assign, Tok::IntLit, Tok::Semi, Tok::End}));
}

TEST(Lexer, TimingConstraintExpression) {
  auto toks = tokenize("tmr == intervals[i]/2");
  std::vector<Tok> want{Tok::Ident, Tok::EqEq,     Tok::Ident, Tok::LBracket, Tok::Ident,
                        Tok::RBracket, Tok::Slash, Tok::IntLit, Tok::End};
  ASSERT_EQ(toks.size(), want.size());
  for (size_t i = 0; i < want.size(); ++i) EXPECT_EQ(toks[i].kind, want[i]) << i;
  EXPECT_EQ(toks[0].text, "tmr");
  EXPECT_EQ(toks[2].text, "intervals");
  EXPECT_EQ(toks[7].text, "2");
}

TEST(Lexer, TimeLiteralIsOneToken) {
  auto toks = tokenize("200ns 0.02us");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].kind, Tok::TimeLit);
  EXPECT_EQ(toks[1].kind, Tok::TimeLit);
}

TEST(Lexer, UnknownTimeUnit) { EXPECT_EQ(error_of([] { tokenize("5.0xs"); }), Errc::LexError); }

TEST(Lexer, TracksLines) {
  auto toks = tokenize("int\n  x");
  EXPECT_EQ(toks[1].line, 2);
  EXPECT_EQ(toks[1].col, 3);
}

TEST(Parser, IpeKernelShape) {
  auto unit = parse_source(read_file(program_path("ipe.qu")), "ipe.qu");
  const ast::OpDecl* ipe = nullptr;
  for (const auto& d : unit.decls)
    if (d.name == "ipe") ipe = &d;
  ASSERT_NE(ipe, nullptr);
  int usings = 0;
  for (const auto& s : ipe->body)
    if (s->kind == ast::StmtKind::Using) {
      ++usings;
      EXPECT_EQ(s->qubits.size(), 2u);
    }
  EXPECT_EQ(usings, 1);
}

TEST(Parser, EmptyUnitOperation) {
  auto unit = parse_source("operation f(): unit {}");
  ASSERT_EQ(unit.decls.size(), 1u);
  EXPECT_TRUE(unit.decls[0].body.empty());
  EXPECT_EQ(unit.decls[0].ret->kind, TypeKind::Unit);
  EXPECT_TRUE(unit.decls[0].params.empty());
}

TEST(Parser, MissingReturnType) {
  EXPECT_EQ(error_of([] { parse_source("operation f() {}"); }), Errc::ParseError);
}

TEST(Parser, LessThanInTimingIsRejected) {
  EXPECT_EQ(error_of([] { parse_source("operation f(q: qubit): unit { timer t; H(q) @{t < 5ns}; }"); }),
            Errc::ParseError);
}

TEST(Parser, DefaultPackageFromCaller) {
  auto unit = parse_source("operation f(): unit {}", "kernel.qu", "kernel");
  EXPECT_EQ(unit.package, "kernel");
  EXPECT_FALSE(unit.explicit_package);
}

TEST(Parser, CStylePrecedence) {
  auto unit = parse_source("operation f(): int { return 1 + 2 * 3 - 4 / 2; }");
  const auto& ret = *unit.decls[0].body[0]->expr;
  EXPECT_EQ(ast::print_expr(ret), "1 + 2 * 3 - 4 / 2");
  ASSERT_EQ(ret.kind, ast::ExprKind::Binary);
  EXPECT_EQ(ret.name, "-");
}

class RoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(RoundTrip, PrintThenReparseIsStructurallyEqual) {
  std::string file = program_path(GetParam());
  auto a = parse_source(read_file(file), file);
  std::string printed = ast::print_unit(a);
  auto b = parse_source(printed, file);
  EXPECT_TRUE(ast::equal(a, b)) << printed;
  EXPECT_EQ(ast::print_unit(b), printed);
}

INSTANTIATE_TEST_SUITE_P(Programs, RoundTrip,
                         ::testing::Values("kernel.qu", "ipe.qu", "t2.qu", "rus.qu", "operations.qu"),
                         [](const auto& info) { return std::filesystem::path(info.param).stem().string(); });

TEST(Resolve, OpaqueCallsResolveThroughImports) {
  auto prog = compile_frontend({{"kernel.qu", read_file(program_path("kernel.qu"))}}, {QUINGO_PROGRAMS_DIR},
                               platform());
  const OpInfo* sr = prog.find_root("sum_random");
  ASSERT_NE(sr, nullptr);
  const OpInfo* h = prog.find("operations.H");
  ASSERT_NE(h, nullptr);
  EXPECT_TRUE(h->opaque);
  EXPECT_TRUE(sr->quantum);
}

TEST(Resolve, NoImportsIsIdentity) {
  auto unit = parse_source("operation f(): int { return 3; }", "f.qu", "f");
  auto copy = parse_source("operation f(): int { return 3; }", "f.qu", "f");
  std::vector<ast::SourceUnit> roots;
  roots.push_back(std::move(unit));
  LinkedProgram linked = resolve_imports(std::move(roots), {});
  ASSERT_EQ(linked.units.size(), 1u);
  EXPECT_TRUE(ast::equal(*linked.units[0], copy));
}

TEST(Resolve, MissingPackage) {
  EXPECT_EQ(error_of([] { check_source("import nope.*\noperation f(): unit {}"); }), Errc::UnresolvedImport);
}

TEST(Typecheck, MeasureAsCondition) {
  auto prog = check_source("operation f(): int { int n = 0; using(q: qubit) { while (!measure(q)) { n += 1; } } "
                           "return n; }");
  EXPECT_NE(prog.find_root("f"), nullptr);
}

TEST(Typecheck, BoolToInt) {
  EXPECT_EQ(error_of([] { check_source("operation f(): unit { int x = true; }"); }), Errc::TypeError);
}

TEST(Typecheck, TimingComparandMustBeTimer) {
  Errc e = error_of([] {
    check_source("operation f(): unit { int i = 3; using(q: qubit) { X(q, PI) @{i == 3ns}; } }");
  });
  EXPECT_TRUE(e == Errc::TypeError || e == Errc::TimingOnClassical) << errc_name(e);
}

TEST(Typecheck, QubitOutsideUsing) {
  EXPECT_EQ(error_of([] { check_source("operation f(): unit { using(q: qubit) { H(q); } H(q); }"); }),
            Errc::TypeError);
}

TEST(Typecheck, DurationOfOpaque) {
  auto prog = check_source("operation f(): time { return duration(X90); }");
  EXPECT_EQ(prog.find_root("f")->ret->kind, TypeKind::Time);
  EXPECT_EQ(error_of([] { check_source("operation g(): unit {}\noperation f(): time { return duration(g); }"); }),
            Errc::TypeError);
}

TEST(Typecheck, PiIsDouble) {
  auto prog = check_source("operation f(): double { return PI / 2.0; }");
  EXPECT_EQ(prog.find_root("f")->ret->kind, TypeKind::Double);
}

// Every expression of an accepted program carries a type.
void expect_typed(const ast::Expr& e) {
  EXPECT_TRUE(e.type != nullptr) << ast::print_expr(e);
  for (const auto& a : e.args) expect_typed(*a);
  for (const auto& c : e.controls) expect_typed(*c);
  if (e.timing)
    for (const auto& c : e.timing->constraints) expect_typed(*c.time);
}

void expect_typed(const ast::Stmt& s) {
  for (const auto* e : {&s.target, &s.value, &s.cond, &s.expr})
    if (*e) expect_typed(**e);
  for (const auto& d : s.decls)
    if (d.init) expect_typed(*d.init);
  for (const auto& b : s.body) expect_typed(*b);
  for (const auto& b : s.else_body) expect_typed(*b);
}

TEST(Typecheck, EveryExpressionTyped) {
  for (const char* f : {"kernel.qu", "ipe.qu", "t2.qu", "rus.qu"}) {
    auto prog =
        compile_frontend({{f, read_file(program_path(f))}}, {QUINGO_PROGRAMS_DIR}, platform());
    for (size_t u = 0; u < prog.linked.units.size(); ++u)
      for (const auto& d : prog.linked.units[u]->decls)
        for (const auto& s : d.body) expect_typed(*s);
  }
}

// One file per frontend error class, named after the expected code.
class FrontendNegative : public ::testing::TestWithParam<std::string> {};

TEST_P(FrontendNegative, RejectedWithCode) {
  std::string path = testing::fixture_path("negative/" + GetParam() + ".qu");
  Errc got = error_of([&] { compile_frontend({{path, read_file(path)}}, {QUINGO_PROGRAMS_DIR}, platform()); });
  EXPECT_EQ(errc_name(got), GetParam());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, FrontendNegative,
                         ::testing::Values("LexError", "ParseError", "UnresolvedImport", "AmbiguousName", "TypeError",
                                           "TimingOnClassical", "ArityError"));

TEST(Diagnostics, CarryLocation) {
  try {
    check_source("operation f(): unit {\n  int x = true;\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.loc().line, 4);
    EXPECT_NE(e.diagnostic().find("error[TypeError]"), std::string::npos) << e.diagnostic();
  }
}

}  // namespace
}  // namespace quingo
