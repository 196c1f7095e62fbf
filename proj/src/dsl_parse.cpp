#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "locus/dsl.hpp"
#include "locus/theorems.hpp"

namespace locus::dsl {

ParseError::ParseError(int line, int column, std::vector<std::string> expected, std::string found,
                       const std::string& message)
    : Error(Error::Kind::Parse, message),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

bool operator==(const PiecewiseRule& a, const PiecewiseRule& b) {
  if (a.pieces.size() != b.pieces.size()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const auto &p = a.pieces[i], &q = b.pieces[i];
    if (!(p.domain == q.domain) || p.slope != q.slope || p.offset != q.offset) return false;
  }
  return true;
}

namespace {

const std::set<std::string> kReserved{"u",     "empty",  "all",   "tail",      "left",    "right",  "period",
                                      "pattern", "from", "in",    "of",        "on",      "to",     "step",
                                      "clip",  "and",    "over",  "list",      "translates", "chain", "base",
                                      "start", "stride", "finite", "line",     "subspace", "sm",    "pt",
                                      "glue",  "charts", "periodic", "piecewise", "table", "identity", "constant",
                                      "x",     "Z",      "universe", "carrier", "smops",   "op",     "cov",
                                      "none",  "shape",  "any",   "bounded",   "gts",     "set",    "space",
                                      "family", "map",   "atlas"};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '+'; }

class Cursor {
 public:
  Cursor(const std::string& text, int line) : s_(text), line_(line) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    ws();
    return i_ >= s_.size();
  }
  char peek() {
    ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  std::size_t pos() const { return i_; }
  void reset(std::size_t p) { i_ = p; }

  /// Punctuation or operator.
  bool accept(const std::string& tok) {
    ws();
    if (s_.compare(i_, tok.size(), tok) != 0) return false;
    i_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) error({"'" + tok + "'"});
  }
  bool accept_word(const std::string& w) {
    ws();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    std::size_t end = i_ + w.size();
    if (end < s_.size() && (word_char(s_[end]) || s_[end] == '-' || s_[end] == '.')) return false;
    i_ = end;
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) error({"'" + w + "'"});
  }
  bool peek_word(const std::string& w) {
    std::size_t save = i_;
    bool ok = accept_word(w);
    i_ = save;
    return ok;
  }

  /// Identifier: letter or '_' first, then letters, digits, '_' and '+'.
  std::optional<std::string> name() {
    ws();
    if (i_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) return std::nullopt;
    std::size_t j = i_;
    while (j < s_.size() && word_char(s_[j])) ++j;
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }
  /// Dashed word such as a theorem id or a flag.
  std::string dashed_word() {
    ws();
    std::size_t j = i_;
    while (j < s_.size() && (word_char(s_[j]) || s_[j] == '-' || s_[j] == '.')) ++j;
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }

  Rational rational() {
    ws();
    std::size_t start = i_, j = i_;
    if (j < s_.size() && s_[j] == '-') ++j;
    std::size_t digits = j;
    while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '/')) ++j;
    if (j == digits) error({"rational"});
    std::string text = s_.substr(start, j - start);
    try {
      Rational q = parse_rational(text);
      i_ = j;
      return q;
    } catch (const Error&) {
      fail_at(start, {"rational"}, "malformed rational '" + text + "'");
    }
  }
  Integer integer() {
    Rational q = rational();
    if (q.get_den() != 1) error({"integer"});
    return q.get_num();
  }
  int small_int(int lo, int hi) {
    std::size_t start = i_;
    Integer z = integer();
    if (z < lo || z > hi) fail_at(start, {"integer in [" + std::to_string(lo) + "," + std::to_string(hi) + "]"},
                                  "integer out of range");
    return static_cast<int>(z.get_si());
  }

  [[noreturn]] void error(std::vector<std::string> expected) { fail_at(i_, std::move(expected), ""); }

  [[noreturn]] void fail_at(std::size_t at, std::vector<std::string> expected, std::string message) {
    std::size_t k = at;
    while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
    std::string found;
    if (k >= s_.size()) {
      found = "end of line";
    } else {
      std::size_t j = k;
      while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && j - k < 16) ++j;
      found = "'" + s_.substr(k, j - k) + "'";
    }
    std::ostringstream os;
    os << "line " << line_ << ", column " << (k + 1) << ": ";
    if (!message.empty()) os << message << "; ";
    if (!expected.empty()) {
      os << "expected ";
      if (expected.size() > 1) os << "one of ";
      for (std::size_t e = 0; e < expected.size(); ++e) os << (e ? ", " : "") << expected[e];
      os << "; ";
    }
    os << "found " << found;
    throw ParseError(line_, static_cast<int>(k + 1), std::move(expected), found, os.str());
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_;
};

class Parser {
 public:
  Document doc;

  void statement(Cursor& c, int line) {
    if (c.accept_word("set")) return declare(c, DeclKind::Set, [&] { return set_expr(c); });
    if (c.accept_word("space")) return declare(c, DeclKind::Space, [&] { return space_expr(c); });
    if (c.accept_word("family")) return declare(c, DeclKind::Family, [&] { return family_expr(c); });
    if (c.accept_word("map")) return declare(c, DeclKind::Map, [&] { return map_expr(c); });
    if (c.accept_word("gts")) return declare(c, DeclKind::Gts, [&] { return gts_lit(c); });
    if (c.accept_word("atlas")) return declare(c, DeclKind::Atlas, [&] { return atlas_inline(c); });
    Query q;
    q.line = line;
    q.v = query(c);
    doc.queries.push_back(std::move(q));
  }

 private:
  std::map<std::string, DeclKind> names_;

  template <class F>
  void declare(Cursor& c, DeclKind kind, F body) {
    std::size_t at = c.pos();
    auto n = c.name();
    if (!n) c.error({"name"});
    if (kReserved.count(*n) || parse_builtin(*n)) c.fail_at(at, {"name"}, "'" + *n + "' is reserved");
    if (names_.count(*n)) c.fail_at(at, {}, "duplicate name '" + *n + "'");
    c.expect("=");
    Declaration d{kind, *n, body()};
    names_[*n] = kind;
    doc.declarations.push_back(std::move(d));
  }

  std::string reference(Cursor& c, DeclKind kind, const std::string& what, bool allow_builtin = false) {
    std::size_t at = c.pos();
    auto n = c.name();
    if (!n) c.error({what + " name"});
    if (allow_builtin && parse_builtin(*n)) return *n;
    auto it = names_.find(*n);
    if (it == names_.end()) c.fail_at(at, {what + " name"}, "unresolved name '" + *n + "'");
    if (it->second != kind) c.fail_at(at, {what + " name"}, "'" + *n + "' is not a " + what);
    return *n;
  }
  std::string space_ref(Cursor& c) { return reference(c, DeclKind::Space, "space", true); }

  // ------------------------------------------------------------- sets

  QInterval interval(Cursor& c) {
    std::size_t at = c.pos();
    auto i = maybe_interval(c);
    if (!i) c.fail_at(at, {"nonempty interval"}, "");
    return *i;
  }

  std::optional<QInterval> maybe_interval(Cursor& c) {
    bool lo_closed;
    if (c.accept("(")) lo_closed = false;
    else if (c.accept("[")) lo_closed = true;
    else c.error({"'('", "'['"});
    QInterval::End lo{0, false, lo_closed}, hi{0, false, false};
    if (c.accept_word("-inf")) {
      lo = QInterval::neg_inf();
    } else {
      lo.value = c.rational();
    }
    c.expect(",");
    if (c.accept_word("inf")) {
      hi = QInterval::pos_inf();
    } else {
      hi.value = c.rational();
    }
    if (c.accept(")")) hi.closed = false;
    else if (c.accept("]")) hi.closed = !hi.infinite;
    else c.error({"')'", "']'"});
    if (lo.infinite) lo.closed = false;
    if (!lo.infinite && !hi.infinite && lo.value > hi.value) c.error({"interval with lower end <= upper end"});
    return QInterval::make(lo, hi);
  }

  Mask mask(Cursor& c, int universe = 32) {
    c.expect("{");
    Mask m = 0;
    if (c.accept("}")) return m;
    do {
      int label = c.small_int(1, universe);
      m |= Mask{1} << (label - 1);
    } while (c.accept(","));
    c.expect("}");
    return m;
  }

  PeriodicSet tail(Cursor& c) {
    bool right;
    if (c.accept_word("right")) right = true;
    else if (c.accept_word("left")) right = false;
    else c.error({"'left'", "'right'"});
    c.expect_word("period");
    std::size_t at = c.pos();
    Rational p = c.rational();
    if (p <= 0) c.fail_at(at, {"positive period"}, "");
    c.expect_word("pattern");
    std::vector<QInterval> parts;
    do {
      parts.push_back(interval(c));
    } while (c.peek() == '(' || c.peek() == '[');
    c.expect_word("from");
    Rational origin = c.rational();
    IntervalList pattern(parts);
    pattern = pattern.translated(origin);
    if (right) return PeriodicSet::translates_union(pattern, p, Integer(0), std::nullopt);
    return PeriodicSet::translates_union(pattern, p, std::nullopt, Integer(0));
  }

  SetExpr set_expr(Cursor& c) {
    std::size_t at = c.pos();
    if (std::isalpha(static_cast<unsigned char>(c.peek())) && !c.peek_word("empty") && !c.peek_word("all") &&
        !c.peek_word("tail")) {
      std::string n = reference(c, DeclKind::Set, "set");
      if (c.peek_word("u")) c.fail_at(c.pos(), {}, "named sets cannot be combined in a union");
      return {n};
    }
    if (c.peek() == '{') return {SetValue::finite(mask(c))};
    PeriodicSet out;
    do {
      if (c.accept_word("empty")) continue;
      if (c.accept_word("all")) out = PeriodicSet::line();
      else if (c.accept_word("tail")) out = unite(out, tail(c));
      else if (c.peek() == '(' || c.peek() == '[') {
        if (auto i = maybe_interval(c)) out = unite(out, PeriodicSet::from_interval(*i));
      }
      else c.error({"interval", "'empty'", "'all'", "'tail'", "set name", "'{'"});
    } while (c.accept_word("u"));
    (void)at;
    return {SetValue::line(out)};
  }

  // ------------------------------------------------------------- spaces

  SideCond side(Cursor& c) {
    if (c.accept_word("any")) return SideCond::Any;
    if (c.accept_word("finite")) return SideCond::Finite;
    if (c.accept_word("bounded")) return SideCond::Bounded;
    c.error({"'any'", "'finite'", "'bounded'"});
  }

  AtlasExpr atlas_inline(Cursor& c) {
    if (c.accept_word("charts")) {
      AtlasCharts a;
      do {
        a.charts.push_back(space_ref(c));
      } while (c.accept(","));
      return {a};
    }
    if (c.accept_word("periodic")) {
      c.expect_word("base");
      std::string chart = space_ref(c);
      c.expect_word("step");
      std::size_t at = c.pos();
      Rational step = c.rational();
      if (step <= 0) c.fail_at(at, {"positive step"}, "");
      return {AtlasPeriodic{chart, step}};
    }
    c.error({"'charts'", "'periodic'"});
  }

  AtlasExpr atlas(Cursor& c) {
    if (c.peek_word("charts") || c.peek_word("periodic")) return atlas_inline(c);
    return {reference(c, DeclKind::Atlas, "atlas")};
  }

  SpaceExpr space_expr(Cursor& c) {
    if (c.accept_word("finite")) {
      FiniteSpaceLit f;
      c.expect("{");
      c.expect_word("universe");
      f.universe = c.small_int(1, 20);
      c.expect(";");
      std::optional<Mask> carrier;
      if (c.accept_word("carrier")) {
        carrier = mask(c, f.universe);
        c.expect(";");
      }
      c.expect_word("smops");
      std::vector<Mask> sets;
      do {
        sets.push_back(mask(c, f.universe));
      } while (c.accept(","));
      c.expect("}");
      f.smops = FFamily(FiniteUniverse(f.universe), sets);
      if (carrier && *carrier != f.smops.union_of()) f.carrier = carrier;
      return {f};
    }
    if (c.accept_word("line")) {
      c.expect_word("carrier");
      LineSpaceLit l;
      l.carrier = line_set(c);
      c.expect_word("shape");
      l.shape.left = side(c);
      l.shape.right = side(c);
      return {l};
    }
    if (c.accept_word("subspace")) {
      c.expect_word("of");
      SubspaceOf s;
      s.space = space_ref(c);
      c.expect_word("on");
      s.on = set_expr(c);
      return {s};
    }
    if (c.accept_word("sm")) return {FunctorOf{"sm", space_ref(c)}};
    if (c.accept_word("pt")) return {FunctorOf{"pt", space_ref(c)}};
    if (c.accept_word("glue")) return {GlueOf{atlas(c)}};
    if (c.accept_word("from")) {
      c.expect_word("gts");
      return {FromGts{reference(c, DeclKind::Gts, "gts")}};
    }
    std::size_t at = c.pos();
    auto n = c.name();
    if (n)
      if (auto b = parse_builtin(*n)) return {BuiltinSpace{*b}};
    c.fail_at(at, {"builtin space", "'finite'", "'line'", "'subspace'", "'sm'", "'pt'", "'glue'", "'from'"}, "");
  }

  SetExpr line_set(Cursor& c) {
    std::size_t at = c.pos();
    SetExpr s = set_expr(c);
    if (auto* v = std::get_if<SetValue>(&s.v); v && v->backend == Backend::Finite)
      c.fail_at(at, {"line set"}, "finite set where a line set is required");
    return s;
  }

  // ------------------------------------------------------------- families

  FamilyExpr family_expr(Cursor& c) {
    FamilyExpr f;
    do {
      if (c.accept_word("list")) {
        ListPart l;
        c.expect("{");
        if (!c.accept("}")) {
          do {
            l.members.push_back(set_expr(c));
          } while (c.accept(","));
          c.expect("}");
        }
        f.parts.push_back(l);
      } else if (c.accept_word("translates")) {
        TranslatesPart t;
        c.expect_word("base");
        t.base = line_set(c);
        c.expect_word("step");
        t.step = positive(c);
        c.expect_word("over");
        if (c.accept_word("Z")) {
        } else if (c.accept("k>=")) {
          t.first = c.integer();
        } else if (c.accept("k<=")) {
          t.last = c.integer();
        } else if (c.accept("[")) {
          t.first = c.integer();
          c.expect(",");
          t.last = c.integer();
          c.expect("]");
        } else {
          c.error({"'Z'", "'k>='", "'k<='", "'['"});
        }
        if (c.accept_word("clip")) t.clip = line_set(c);
        f.parts.push_back(t);
      } else if (c.accept_word("chain")) {
        ChainPart ch;
        c.expect_word("base");
        ch.base = line_set(c);
        c.expect_word("step");
        ch.step = positive(c);
        c.expect_word("start");
        ch.start = c.integer();
        c.expect_word("stride");
        ch.stride = c.integer();
        f.parts.push_back(ch);
      } else if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        f.parts.push_back(reference(c, DeclKind::Family, "family"));
      } else {
        c.error({"'list'", "'translates'", "'chain'", "family name"});
      }
    } while (c.accept_word("and"));
    return f;
  }

  Rational positive(Cursor& c) {
    std::size_t at = c.pos();
    Rational q = c.rational();
    if (q <= 0) c.fail_at(at, {"positive rational"}, "");
    return q;
  }

  // ------------------------------------------------------------- maps

  /// c·x + d with c, d rational; either part may be absent.
  std::pair<Rational, Rational> affine(Cursor& c) {
    Rational slope = 0, offset = 0;
    bool neg = false;
    if (c.accept("-")) neg = true;
    else c.accept("+");
    if (c.peek() == 'x') {
      c.expect("x");
      slope = neg ? -1 : 1;
    } else {
      Rational q = c.rational();
      if (neg) q = -q;
      if (c.peek() == 'x') {
        c.expect("x");
        slope = q;
      } else {
        return {0, q};
      }
    }
    if (c.peek() == '+' || c.peek() == '-') {
      bool minus = c.accept("-");
      if (!minus) c.expect("+");
      Rational q = c.rational();
      offset = minus ? -q : q;
    }
    return {slope, offset};
  }

  MapExpr map_expr(Cursor& c) {
    MapExpr m;
    if (c.accept_word("piecewise")) {
      PiecewiseRule r;
      c.expect("{");
      do {
        c.expect_word("on");
        QInterval dom = interval(c);
        c.expect(":");
        c.expect_word("x");
        c.expect("->");
        auto [slope, offset] = affine(c);
        r.pieces.push_back({dom, slope, offset});
      } while (c.accept(";"));
      c.expect("}");
      std::stable_sort(r.pieces.begin(), r.pieces.end(), [](const AffinePiece& a, const AffinePiece& b) {
        const auto &x = a.domain.lo(), &y = b.domain.lo();
        if (x.infinite || y.infinite) return x.infinite && !y.infinite;
        if (x.value != y.value) return x.value < y.value;
        return x.closed && !y.closed;
      });
      m.rule = r;
    } else if (c.accept_word("table")) {
      TableRule t;
      c.expect("{");
      if (!c.accept("}")) {
        do {
          std::size_t at = c.pos();
          int from = c.small_int(1, 20);
          c.expect("->");
          int to = c.small_int(1, 20);
          if (t.entries.count(from)) c.fail_at(at, {}, "point " + std::to_string(from) + " mapped twice");
          t.entries[from] = to;
        } while (c.accept(","));
        c.expect("}");
      }
      m.rule = t;
    } else if (c.accept_word("identity")) {
      m.rule = IdentityRule{};
    } else if (c.accept_word("constant")) {
      m.rule = ConstantRule{set_expr(c)};
    } else {
      c.error({"'piecewise'", "'table'", "'identity'", "'constant'"});
    }
    c.expect_word("from");
    m.from = space_ref(c);
    c.expect_word("to");
    m.to = space_ref(c);
    return m;
  }

  // ------------------------------------------------------------- gts

  FFamily mask_family(Cursor& c, int universe) {
    c.expect("{");
    std::vector<Mask> sets;
    if (!c.accept("}")) {
      do {
        sets.push_back(mask(c, universe));
      } while (c.accept(","));
      c.expect("}");
    }
    return FFamily(FiniteUniverse(universe), sets);
  }

  GtsLit gts_lit(Cursor& c) {
    GtsLit g;
    c.expect("{");
    c.expect_word("universe");
    g.universe = c.small_int(1, 5);
    FiniteUniverse u(g.universe);
    g.carrier = u.full();
    c.expect(";");
    if (c.accept_word("carrier")) {
      g.carrier = mask(c, g.universe);
      c.expect(";");
    }
    c.expect_word("op");
    std::vector<Mask> op;
    do {
      op.push_back(mask(c, g.universe));
    } while (c.accept(","));
    g.op = FFamily(u, op);
    c.expect(";");
    c.expect_word("cov");
    if (c.accept_word("all")) {
    } else if (c.accept_word("none")) {
      g.cov = std::vector<FFamily>{};
    } else {
      std::vector<FFamily> cov;
      do {
        cov.push_back(mask_family(c, g.universe));
      } while (c.accept(","));
      auto less = [](const FFamily& a, const FFamily& b) { return a.sets() < b.sets(); };
      std::sort(cov.begin(), cov.end(), less);
      cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
      g.cov = cov;
    }
    c.expect("}");
    return g;
  }

  // ------------------------------------------------------------- queries

  decltype(Query::v) query(Cursor& c) {
    if (c.accept_word("classify")) {
      if (c.accept_word("set")) {
        ClassifySet q;
        q.set = set_expr(c);
        c.expect_word("in");
        q.space = space_ref(c);
        return q;
      }
      if (c.accept_word("family")) {
        ClassifyFamily q;
        q.family = family_expr(c);
        c.expect_word("in");
        q.space = space_ref(c);
        return q;
      }
      if (c.accept_word("map")) return ClassifyMap{reference(c, DeclKind::Map, "map")};
      if (c.accept_word("space")) return ClassifySpace{space_ref(c)};
      c.error({"'set'", "'family'", "'map'", "'space'"});
    }
    if (c.accept_word("derive")) {
      Derive d;
      for (const char* k : {"Lswo", "Lwo", "Lo", "Ls", "wcl", "closedsets"})
        if (c.accept_word(k)) {
          d.kind = k;
          break;
        }
      if (d.kind.empty()) c.error({"'Lo'", "'Ls'", "'Lwo'", "'Lswo'", "'wcl'", "'closedsets'"});
      c.expect_word("in");
      d.space = space_ref(c);
      if (c.accept_word("of")) d.set = set_expr(c);
      else if (d.kind == "wcl") c.error({"'of'"});
      return d;
    }
    if (c.accept_word("glue")) return GlueQuery{atlas(c)};
    if (c.accept_word("gts-check")) return GtsCheck{reference(c, DeclKind::Gts, "gts")};
    if (c.accept_word("generate-gt")) {
      GenerateGt g;
      c.expect_word("universe");
      g.universe = c.small_int(1, 5);
      if (c.accept_word("carrier")) {
        Mask m = mask(c, g.universe);
        if (m != FiniteUniverse(g.universe).full()) g.carrier = m;
      }
      c.expect_word("from");
      do {
        g.families.push_back(reference(c, DeclKind::Family, "family"));
      } while (c.accept(","));
      return g;
    }
    if (c.accept_word("verify")) {
      std::size_t at = c.pos();
      std::string id = c.dashed_word();
      const auto& ids = theorem_ids();
      if (id != "all" && std::find(ids.begin(), ids.end(), id) == ids.end()) {
        std::vector<std::string> expected{"'all'"};
        for (const auto& i : ids) expected.push_back("'" + i + "'");
        c.fail_at(at, expected, "unknown theorem id");
      }
      return VerifyQuery{id};
    }
    if (c.accept_word("random-suite")) {
      RandomSuiteQuery r;
      while (!c.at_end()) {
        if (c.accept_word("--backend")) {
          if (c.accept_word("finite")) r.backend = Backend::Finite;
          else if (c.accept_word("interval")) r.backend = Backend::Interval;
          else c.error({"'finite'", "'interval'"});
        } else if (c.accept_word("--iters")) {
          r.iters = c.small_int(0, 1000000);
        } else if (c.accept_word("--seed")) {
          Integer s = c.integer();
          if (s < 0) c.error({"non-negative seed"});
          r.seed = std::stoull(s.get_str());
        } else {
          c.error({"'--backend'", "'--iters'", "'--seed'"});
        }
      }
      return r;
    }
    c.error({"'set'", "'space'", "'family'", "'map'", "'gts'", "'atlas'", "'classify'", "'derive'", "'glue'",
             "'gts-check'", "'generate-gt'", "'verify'", "'random-suite'"});
  }
};

std::string strip_comment(const std::string& line) {
  std::size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

}  // namespace

Document parse(const std::string& text) {
  Parser p;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool header = true;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (header && !raw.empty() && raw[0] == '#') {
      p.doc.header.push_back(raw);
      continue;
    }
    std::string body = strip_comment(raw);
    Cursor c(body, line);
    if (c.at_end()) continue;
    header = false;
    p.statement(c, line);
    if (!c.at_end()) c.error({"end of line"});
  }
  return p.doc;
}

SetExpr parse_set_expr(const std::string& text) {
  Document d = parse("set S = " + text);
  return std::get<SetExpr>(d.declarations.front().value);
}

}  // namespace locus::dsl
