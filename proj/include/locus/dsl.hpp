#pragma once

// The .locus document language: named declarations followed by queries,
// one statement per line, `#` starts a comment.
//
//   set S = (0,1) u [2,3] u tail right period 1 pattern (0,1/2) from 4
//   space X = finite {universe 3; smops {}, {1}, {1,2}, {1,2,3}}
//   space Y = subspace of lom on S
//   family F = translates base (0,1) step 1 over Z
//   map f = piecewise { on (-inf,0): x -> -x; on [0,inf): x -> 2x } from l+om to lom
//   gts G = {universe 2; carrier {1,2}; op {}, {1}, {1,2}; cov all}
//   atlas A = periodic base C step 1
//   classify family F in om
//   derive wcl in lom of (0,1)
//   verify example-2.16

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locus/maps.hpp"
#include "locus/spaces.hpp"

namespace locus::dsl {

/// A literal (normalized) or the name of a declared set.
struct SetExpr {
  std::variant<SetValue, std::string> v;
  friend bool operator==(const SetExpr&, const SetExpr&) = default;
};

struct BuiltinSpace {
  BuiltinLine id;
  friend bool operator==(const BuiltinSpace&, const BuiltinSpace&) = default;
};
struct FiniteSpaceLit {
  int universe = 1;
  /// Kept only when it differs from the union of the smops.
  std::optional<Mask> carrier;
  FFamily smops{FiniteUniverse(1)};
  friend bool operator==(const FiniteSpaceLit&, const FiniteSpaceLit&) = default;
};
struct LineSpaceLit {
  SetExpr carrier;
  Shape shape;
  friend bool operator==(const LineSpaceLit&, const LineSpaceLit&) = default;
};
struct SubspaceOf {
  std::string space;
  SetExpr on;
  friend bool operator==(const SubspaceOf&, const SubspaceOf&) = default;
};
/// sm X, pt X
struct FunctorOf {
  std::string functor;
  std::string space;
  friend bool operator==(const FunctorOf&, const FunctorOf&) = default;
};
struct AtlasCharts {
  std::vector<std::string> charts;
  friend bool operator==(const AtlasCharts&, const AtlasCharts&) = default;
};
struct AtlasPeriodic {
  std::string chart;
  Rational step;
  friend bool operator==(const AtlasPeriodic&, const AtlasPeriodic&) = default;
};
/// An atlas given inline or by the name of an atlas declaration.
struct AtlasExpr {
  std::variant<AtlasCharts, AtlasPeriodic, std::string> v;
  friend bool operator==(const AtlasExpr&, const AtlasExpr&) = default;
};
struct GlueOf {
  AtlasExpr atlas;
  friend bool operator==(const GlueOf&, const GlueOf&) = default;
};
struct FromGts {
  std::string gts;
  friend bool operator==(const FromGts&, const FromGts&) = default;
};
struct SpaceExpr {
  std::variant<BuiltinSpace, FiniteSpaceLit, LineSpaceLit, SubspaceOf, FunctorOf, GlueOf, FromGts> v;
  friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;
};

struct ListPart {
  std::vector<SetExpr> members;
  friend bool operator==(const ListPart&, const ListPart&) = default;
};
struct TranslatesPart {
  SetExpr base;
  Rational step;
  std::optional<Integer> first, last;
  std::optional<SetExpr> clip;
  friend bool operator==(const TranslatesPart&, const TranslatesPart&) = default;
};
struct ChainPart {
  SetExpr base;
  Rational step;
  Integer start, stride;
  friend bool operator==(const ChainPart&, const ChainPart&) = default;
};
/// Parts joined by `and`; a bare name refers to a declared family.
struct FamilyExpr {
  std::vector<std::variant<ListPart, TranslatesPart, ChainPart, std::string>> parts;
  friend bool operator==(const FamilyExpr&, const FamilyExpr&) = default;
};

struct PiecewiseRule {
  std::vector<AffinePiece> pieces;  // sorted by lower endpoint
  friend bool operator==(const PiecewiseRule& a, const PiecewiseRule& b);
};
struct TableRule {
  std::map<int, int> entries;  // 1-based
  friend bool operator==(const TableRule&, const TableRule&) = default;
};
struct IdentityRule {
  friend bool operator==(const IdentityRule&, const IdentityRule&) = default;
};
struct ConstantRule {
  SetExpr point;
  friend bool operator==(const ConstantRule&, const ConstantRule&) = default;
};
struct MapExpr {
  std::variant<PiecewiseRule, TableRule, IdentityRule, ConstantRule> rule;
  std::string from, to;
  friend bool operator==(const MapExpr&, const MapExpr&) = default;
};

struct GtsLit {
  int universe = 1;
  Mask carrier = 0;
  FFamily op{FiniteUniverse(1)};
  /// nullopt: every subfamily of op is admissible.
  std::optional<std::vector<FFamily>> cov;
  friend bool operator==(const GtsLit&, const GtsLit&) = default;
};

enum class DeclKind { Set, Space, Family, Map, Gts, Atlas };

struct Declaration {
  DeclKind kind;
  std::string name;
  std::variant<SetExpr, SpaceExpr, FamilyExpr, MapExpr, GtsLit, AtlasExpr> value;
  friend bool operator==(const Declaration&, const Declaration&) = default;
};

struct ClassifySet {
  SetExpr set;
  std::string space;
  friend bool operator==(const ClassifySet&, const ClassifySet&) = default;
};
struct ClassifyFamily {
  FamilyExpr family;
  std::string space;
  friend bool operator==(const ClassifyFamily&, const ClassifyFamily&) = default;
};
struct ClassifyMap {
  std::string map;
  friend bool operator==(const ClassifyMap&, const ClassifyMap&) = default;
};
struct ClassifySpace {
  std::string space;
  friend bool operator==(const ClassifySpace&, const ClassifySpace&) = default;
};
/// Lo, Ls, Lwo, Lswo, wcl, closedsets
struct Derive {
  std::string kind;
  std::string space;
  std::optional<SetExpr> set;
  friend bool operator==(const Derive&, const Derive&) = default;
};
struct GlueQuery {
  AtlasExpr atlas;
  friend bool operator==(const GlueQuery&, const GlueQuery&) = default;
};
struct GtsCheck {
  std::string gts;
  friend bool operator==(const GtsCheck&, const GtsCheck&) = default;
};
struct GenerateGt {
  int universe = 1;
  std::optional<Mask> carrier;
  std::vector<std::string> families;
  friend bool operator==(const GenerateGt&, const GenerateGt&) = default;
};
struct VerifyQuery {
  std::string id;  // a theorem id or "all"
  friend bool operator==(const VerifyQuery&, const VerifyQuery&) = default;
};
struct RandomSuiteQuery {
  Backend backend = Backend::Finite;
  int iters = 100;
  std::uint64_t seed = 1;
  friend bool operator==(const RandomSuiteQuery&, const RandomSuiteQuery&) = default;
};

struct Query {
  std::variant<ClassifySet, ClassifyFamily, ClassifyMap, ClassifySpace, Derive, GlueQuery, GtsCheck, GenerateGt,
               VerifyQuery, RandomSuiteQuery>
      v;
  int line = 0;
  friend bool operator==(const Query& a, const Query& b) { return a.v == b.v; }
};

struct Document {
  /// Comment lines before the first statement, kept verbatim.
  std::vector<std::string> header;
  std::vector<Declaration> declarations;
  std::vector<Query> queries;
  friend bool operator==(const Document&, const Document&) = default;
};

/// Parse failures carry a position and the tokens that would have been accepted.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, std::string found, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_, column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Throws ParseError (syntax, malformed rational, unresolved or duplicate name).
Document parse(const std::string& text);
/// Canonical text; parse(print(d)) == d.
std::string print(const Document& d);
std::string print(const Query& q);

SetExpr parse_set_expr(const std::string& text);
std::string print(const SetExpr& s);

}  // namespace locus::dsl
