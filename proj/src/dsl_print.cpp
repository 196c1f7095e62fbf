#include "locus/dsl.hpp"

namespace locus::dsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string side_name(SideCond s) {
  switch (s) {
    case SideCond::Any: return "any";
    case SideCond::Finite: return "finite";
    case SideCond::Bounded: return "bounded";
  }
  return "any";
}

std::string masks(const FFamily& f) {
  std::string s;
  for (std::size_t i = 0; i < f.sets().size(); ++i) s += (i ? ", " : "") + format_mask(f.sets()[i]);
  return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string print_atlas(const AtlasExpr& a) {
  return std::visit(overloaded{[](const AtlasCharts& c) { return "charts " + join(c.charts, ", "); },
                               [](const AtlasPeriodic& p) { return "periodic base " + p.chart + " step " + to_string(p.step); },
                               [](const std::string& n) { return n; }},
                    a.v);
}

std::string print_space(const SpaceExpr& e) {
  return std::visit(
      overloaded{[](const BuiltinSpace& b) { return builtin_name(b.id); },
                 [](const FiniteSpaceLit& f) {
                   std::string s = "finite {universe " + std::to_string(f.universe) + "; ";
                   if (f.carrier) s += "carrier " + format_mask(*f.carrier) + "; ";
                   return s + "smops " + masks(f.smops) + "}";
                 },
                 [](const LineSpaceLit& l) {
                   return "line carrier " + print(l.carrier) + " shape " + side_name(l.shape.left) + " " +
                          side_name(l.shape.right);
                 },
                 [](const SubspaceOf& s) { return "subspace of " + s.space + " on " + print(s.on); },
                 [](const FunctorOf& f) { return f.functor + " " + f.space; },
                 [](const GlueOf& g) { return "glue " + print_atlas(g.atlas); },
                 [](const FromGts& g) { return "from gts " + g.gts; }},
      e.v);
}

std::string print_family(const FamilyExpr& f) {
  std::vector<std::string> parts;
  for (const auto& p : f.parts) {
    parts.push_back(std::visit(
        overloaded{[](const ListPart& l) {
                     std::vector<std::string> m;
                     for (const auto& s : l.members) m.push_back(print(s));
                     return "list {" + join(m, ", ") + "}";
                   },
                   [](const TranslatesPart& t) {
                     std::string s = "translates base " + print(t.base) + " step " + to_string(t.step) + " over ";
                     if (t.first && t.last) s += "[" + t.first->get_str() + "," + t.last->get_str() + "]";
                     else if (t.first) s += "k>=" + t.first->get_str();
                     else if (t.last) s += "k<=" + t.last->get_str();
                     else s += "Z";
                     if (t.clip) s += " clip " + print(*t.clip);
                     return s;
                   },
                   [](const ChainPart& c) {
                     return "chain base " + print(c.base) + " step " + to_string(c.step) + " start " +
                            c.start.get_str() + " stride " + c.stride.get_str();
                   },
                   [](const std::string& n) { return n; }},
        p));
  }
  return join(parts, " and ");
}

std::string affine_text(const Rational& c, const Rational& d) {
  if (c == 0) return to_string(d);
  std::string s = c == 1 ? "x" : c == -1 ? "-x" : to_string(c) + "x";
  if (d > 0) s += "+" + to_string(d);
  else if (d < 0) s += to_string(d);
  return s;
}

std::string print_map(const MapExpr& m) {
  std::string body = std::visit(overloaded{[](const PiecewiseRule& r) {
                                             std::vector<std::string> p;
                                             for (const auto& a : r.pieces)
                                               p.push_back("on " + to_string(a.domain) + ": x -> " +
                                                           affine_text(a.slope, a.offset));
                                             return "piecewise { " + join(p, "; ") + " }";
                                           },
                                           [](const TableRule& t) {
                                             std::vector<std::string> p;
                                             for (const auto& [a, b] : t.entries)
                                               p.push_back(std::to_string(a) + " -> " + std::to_string(b));
                                             return "table {" + join(p, ", ") + "}";
                                           },
                                           [](const IdentityRule&) { return std::string("identity"); },
                                           [](const ConstantRule& c) { return "constant " + print(c.point); }},
                                m.rule);
  return body + " from " + m.from + " to " + m.to;
}

std::string print_gts(const GtsLit& g) {
  std::string s = "{universe " + std::to_string(g.universe) + "; carrier " + format_mask(g.carrier) + "; op " +
                  masks(g.op) + "; cov ";
  if (!g.cov) return s + "all}";
  if (g.cov->empty()) return s + "none}";
  std::vector<std::string> fams;
  for (const auto& f : *g.cov) fams.push_back("{" + masks(f) + "}");
  return s + join(fams, ", ") + "}";
}

const char* decl_keyword(DeclKind k) {
  switch (k) {
    case DeclKind::Set: return "set";
    case DeclKind::Space: return "space";
    case DeclKind::Family: return "family";
    case DeclKind::Map: return "map";
    case DeclKind::Gts: return "gts";
    case DeclKind::Atlas: return "atlas";
  }
  return "set";
}

std::string print_decl(const Declaration& d) {
  std::string rhs = std::visit(overloaded{[](const SetExpr& s) { return print(s); },
                                          [](const SpaceExpr& s) { return print_space(s); },
                                          [](const FamilyExpr& f) { return print_family(f); },
                                          [](const MapExpr& m) { return print_map(m); },
                                          [](const GtsLit& g) { return print_gts(g); },
                                          [](const AtlasExpr& a) { return print_atlas(a); }},
                               d.value);
  return std::string(decl_keyword(d.kind)) + " " + d.name + " = " + rhs;
}

}  // namespace

std::string print(const SetExpr& s) {
  if (const auto* n = std::get_if<std::string>(&s.v)) return *n;
  const SetValue& v = std::get<SetValue>(s.v);
  return v.backend == Backend::Finite ? format_mask(v.mask) : to_string(v.set);
}

std::string print(const Query& q) {
  return std::visit(
      overloaded{[](const ClassifySet& c) { return "classify set " + print(c.set) + " in " + c.space; },
                 [](const ClassifyFamily& c) { return "classify family " + print_family(c.family) + " in " + c.space; },
                 [](const ClassifyMap& c) { return "classify map " + c.map; },
                 [](const ClassifySpace& c) { return "classify space " + c.space; },
                 [](const Derive& d) {
                   std::string s = "derive " + d.kind + " in " + d.space;
                   if (d.set) s += " of " + print(*d.set);
                   return s;
                 },
                 [](const GlueQuery& g) { return "glue " + print_atlas(g.atlas); },
                 [](const GtsCheck& g) { return "gts-check " + g.gts; },
                 [](const GenerateGt& g) {
                   std::string s = "generate-gt universe " + std::to_string(g.universe);
                   if (g.carrier) s += " carrier " + format_mask(*g.carrier);
                   return s + " from " + join(g.families, ", ");
                 },
                 [](const VerifyQuery& v) { return "verify " + v.id; },
                 [](const RandomSuiteQuery& r) {
                   return std::string("random-suite --backend ") +
                          (r.backend == Backend::Finite ? "finite" : "interval") + " --iters " +
                          std::to_string(r.iters) + " --seed " + std::to_string(r.seed);
                 }},
      q.v);
}

std::string print(const Document& d) {
  std::string out;
  for (const auto& h : d.header) out += h + "\n";
  if (!d.header.empty() && (!d.declarations.empty() || !d.queries.empty())) out += "\n";
  for (const auto& decl : d.declarations) out += print_decl(decl) + "\n";
  if (!d.declarations.empty() && !d.queries.empty()) out += "\n";
  for (const auto& q : d.queries) out += print(q) + "\n";
  return out;
}

}  // namespace locus::dsl
