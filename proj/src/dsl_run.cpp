#include "locus/dsl_run.hpp"

#include <chrono>
#include <future>
#include <map>
#include <sstream>

#include "locus/families.hpp"
#include "locus/functors.hpp"
#include "locus/glue.hpp"
#include "locus/gts.hpp"
#include "locus/maps.hpp"
#include "locus/properties.hpp"
#include "locus/suite.hpp"

namespace locus::dsl {

using json = nlohmann::ordered_json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Violation: return "violation";
    case Status::Error: return "error";
  }
  return "error";
}

int Report::exit_code() const {
  bool usage = false;
  for (const auto& r : results) {
    if (r.status == Status::Violation || (r.status == Status::Error && r.error_kind == "internal")) return 1;
    if (r.status == Status::Error) usage = true;
  }
  return usage ? 2 : 0;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string kind_name(Error::Kind k) {
  switch (k) {
    case Error::Kind::Usage: return "usage";
    case Error::Kind::Parse: return "parse";
    case Error::Kind::Precondition: return "precondition";
    case Error::Kind::SizeGuard: return "size-guard";
    case Error::Kind::Internal: return "internal";
  }
  return "internal";
}

SetValue L(PeriodicSet s) { return SetValue::line(std::move(s)); }

/// A verdict with a counterwitness (or the search-bounded marker) when false.
json verdict(bool holds, const std::optional<std::string>& witness = std::nullopt) {
  json j;
  j["holds"] = holds;
  if (!holds) j["witness"] = witness.value_or("search-bounded");
  return j;
}

/// Decided verdicts become holds/witness objects; undecided ones stay a plain marker.
json tri_state(Verdict v, const std::string& witness) {
  if (v == Verdict::Inconclusive) return "inconclusive";
  if (v == Verdict::True) return verdict(true);
  return verdict(false, witness.empty() ? std::nullopt : std::optional(witness));
}

using Atlas = std::variant<std::vector<Space>, PeriodicAtlas>;

class Env {
 public:
  explicit Env(const Document& d) {
    for (const auto& decl : d.declarations) {
      try {
        define(decl);
      } catch (const Error& e) {
        std::string what = e.what();
        if (what.rfind("declaration '", 0) != 0) what = "declaration '" + decl.name + "' failed: " + what;
        failed_[decl.name] = {e.kind(), what};
      }
    }
  }

  SetValue set(const SetExpr& e) const {
    if (const auto* v = std::get_if<SetValue>(&e.v)) return *v;
    const std::string& n = std::get<std::string>(e.v);
    check(n);
    return sets_.at(n);
  }
  Space space(const std::string& n) const {
    if (auto b = parse_builtin(n)) return Space::builtin(*b);
    check(n);
    return spaces_.at(n);
  }
  Family family(const FamilyExpr& f) const {
    std::vector<Family> parts;
    for (const auto& p : f.parts) {
      parts.push_back(std::visit(
          overloaded{[&](const ListPart& l) {
                       std::vector<SetValue> m;
                       for (const auto& s : l.members) m.push_back(set(s));
                       return Family::list(m);
                     },
                     [&](const TranslatesPart& t) {
                       std::optional<PeriodicSet> clip;
                       if (t.clip) clip = line(*t.clip);
                       return Family::translates({line(t.base), t.step, t.first, t.last, clip});
                     },
                     [&](const ChainPart& c) { return Family::chain({line(c.base), c.step, c.start, c.stride}); },
                     [&](const std::string& n) {
                       check(n);
                       return families_.at(n);
                     }},
          p));
    }
    return parts.size() == 1 ? parts.front() : Family::union_of(parts);
  }
  const SpaceMap& map(const std::string& n) const {
    check(n);
    return maps_.at(n);
  }
  const Gts& gts(const std::string& n) const {
    check(n);
    return gts_.at(n);
  }
  Atlas atlas(const AtlasExpr& a) const {
    return std::visit(overloaded{[&](const AtlasCharts& c) -> Atlas {
                                   std::vector<Space> charts;
                                   for (const auto& n : c.charts) charts.push_back(space(n));
                                   return charts;
                                 },
                                 [&](const AtlasPeriodic& p) -> Atlas { return PeriodicAtlas{space(p.chart), p.step}; },
                                 [&](const std::string& n) -> Atlas {
                                   check(n);
                                   return atlases_.at(n);
                                 }},
                      a.v);
  }
  PeriodicSet line(const SetExpr& e) const {
    SetValue v = set(e);
    if (v.backend != Backend::Interval) fail(Error::Kind::Usage, "a line set is required here");
    return v.set;
  }

 private:
  std::map<std::string, SetValue> sets_;
  std::map<std::string, Space> spaces_;
  std::map<std::string, Family> families_;
  std::map<std::string, SpaceMap> maps_;
  std::map<std::string, Gts> gts_;
  std::map<std::string, Atlas> atlases_;
  std::map<std::string, std::pair<Error::Kind, std::string>> failed_;

  void check(const std::string& n) const {
    auto it = failed_.find(n);
    if (it != failed_.end()) fail(it->second.first, it->second.second);
  }

  static Space renamed(const Space& x, const std::string& name) {
    if (x.backend() == Backend::Finite) return x.with_smops(x.smops(), name);
    if (x.glue()) return x;
    return x.with_shape(x.shape(), name);
  }

  void define(const Declaration& d) {
    std::visit(overloaded{[&](const SetExpr& s) { sets_.emplace(d.name, set(s)); },
                          [&](const SpaceExpr& s) { spaces_.emplace(d.name, make_space(s, d.name)); },
                          [&](const FamilyExpr& f) { families_.emplace(d.name, family(f)); },
                          [&](const MapExpr& m) { maps_.emplace(d.name, make_map(m, d.name)); },
                          [&](const GtsLit& g) { gts_.emplace(d.name, make_gts(g)); },
                          [&](const AtlasExpr& a) { atlases_.emplace(d.name, atlas(a)); }},
               d.value);
  }

  Space make_space(const SpaceExpr& e, const std::string& name) const {
    return std::visit(
        overloaded{[&](const BuiltinSpace& b) { return renamed(Space::builtin(b.id), name); },
                   [&](const FiniteSpaceLit& f) {
                     FiniteUniverse u(f.universe);
                     return Space::finite(u, f.carrier.value_or(f.smops.union_of()), FFamily(u, f.smops.sets()), name);
                   },
                   [&](const LineSpaceLit& l) { return Space::line(line(l.carrier), l.shape, name); },
                   [&](const SubspaceOf& s) { return space(s.space).subspace(set(s.on), name); },
                   [&](const FunctorOf& f) {
                     Space x = space(f.space);
                     return renamed(f.functor == "sm" ? sm(x) : pt(x), name);
                   },
                   [&](const GlueOf& g) {
                     Atlas a = atlas(g.atlas);
                     if (auto* charts = std::get_if<std::vector<Space>>(&a)) return glue(*charts, name).space;
                     return glue(std::get<PeriodicAtlas>(a), name).space;
                   },
                   [&](const FromGts& g) { return to_space(gts(g.gts), name).space; }},
        e.v);
  }

  SpaceMap make_map(const MapExpr& m, const std::string& name) const {
    Space src = space(m.from), tgt = space(m.to);
    return std::visit(overloaded{[&](const PiecewiseRule& r) {
                                   return SpaceMap::piecewise(src, tgt, PiecewiseAffine(r.pieces), name);
                                 },
                                 [&](const TableRule& t) {
                                   if (src.backend() != Backend::Finite)
                                     fail(Error::Kind::Usage, "table maps need a finite source");
                                   FiniteTable table{std::vector<int>(src.universe().size(), -1)};
                                   for (const auto& [a, b] : t.entries) {
                                     if (a > src.universe().size())
                                       fail(Error::Kind::Usage, "table point " + std::to_string(a) + " outside the source");
                                     table.image[a - 1] = b - 1;
                                   }
                                   return SpaceMap::finite(src, tgt, table, name);
                                 },
                                 [&](const IdentityRule&) { return SpaceMap::identity(src, tgt, name); },
                                 [&](const ConstantRule& c) { return SpaceMap::constant(src, tgt, set(c.point), name); }},
                      m.rule);
  }

  static Gts make_gts(const GtsLit& g) {
    FiniteUniverse u(g.universe);
    FFamily op(u, g.op.sets());
    if (!g.cov) return Gts::with_full_cov(u, g.carrier, op);
    std::vector<FFamily> cov;
    for (const auto& f : *g.cov) cov.emplace_back(u, f.sets());
    return Gts::make(u, g.carrier, op, cov);
  }
};

// ------------------------------------------------------------------ witnesses

/// Smops to probe openness on the line.
std::vector<PeriodicSet> line_probes(const Space& x) {
  const PeriodicSet& y = x.carrier();
  std::vector<PeriodicSet> raw{y};
  for (long n = -16; n <= 16; n += 2) {
    Rational c = make_rational(n, 2);
    raw.push_back(intersect(y, PeriodicSet::open_interval(c - make_rational(1, 4), c + make_rational(1, 4))));
    raw.push_back(intersect(y, PeriodicSet::open_interval(c - 2, c + 2)));
    raw.push_back(intersect(y, PeriodicSet::ray_above(c)));
    raw.push_back(intersect(y, PeriodicSet::ray_below(c)));
  }
  std::vector<PeriodicSet> out;
  for (auto& s : raw)
    if (x.is_smop(L(s))) out.push_back(s);
  return out;
}

/// A smop L with A ∩ L not a smop.
std::optional<std::string> open_witness(const Space& x, const SetValue& a) {
  if (x.backend() == Backend::Finite) {
    if (a.mask & ~x.carrier_mask()) return "not inside the carrier";
    for (Mask l : x.smops().sets())
      if (!x.smops().contains(a.mask & l))
        return "smop " + format_mask(l) + " meets it in " + format_mask(a.mask & l) + ", not a smop";
    return std::nullopt;
  }
  if (!is_subset(a.set, x.carrier())) return "not inside the carrier";
  for (const auto& l : line_probes(x)) {
    PeriodicSet m = intersect(a.set, l);
    if (!x.is_smop(L(m))) return "smop " + to_string(l) + " meets it in " + to_string(m) + ", not a smop";
  }
  return std::nullopt;
}

/// A point of A without a smop neighbourhood inside A.
std::optional<std::string> weakly_open_witness(const Space& x, const SetValue& a) {
  if (x.backend() == Backend::Finite) {
    Mask covered = 0;
    for (Mask l : x.smops().sets())
      if ((l & ~a.mask) == 0) covered |= l;
    Mask bad = a.mask & ~covered;
    if (!bad) return std::nullopt;
    return "point " + format_mask(bad & (~bad + 1)) + " has no smop neighbourhood inside the set";
  }
  if (!is_subset(a.set, x.carrier())) return "not inside the carrier";
  IntervalList parts = a.set.materialize(a.set.hull_with_periods(2));
  for (const auto& part : parts.parts()) {
    for (const auto* end : {&part.lo(), &part.hi()}) {
      if (end->infinite || !end->closed) continue;
      const Rational& p = end->value;
      bool found = false;
      for (Rational eps = make_rational(1, 4); !found && eps > make_rational(1, 4096); eps /= 4) {
        PeriodicSet nb = unite(intersect(x.carrier(), PeriodicSet::open_interval(p - eps, p + eps)),
                               intersect(x.carrier(), PeriodicSet::point(p)));
        found = is_subset(nb, a.set);
      }
      if (!found) return "point " + to_string(p) + " has no neighbourhood inside the set";
    }
  }
  return std::nullopt;
}

std::optional<std::string> small_witness(const Space& x, const SetValue& a) {
  if (x.backend() == Backend::Finite) return "no smop contains it";
  Shape e = x.effective_shape();
  if (e.right == SideCond::Bounded && !a.set.is_bounded_above()) return "unbounded above, small sets are bounded above";
  if (e.left == SideCond::Bounded && !a.set.is_bounded_below()) return "unbounded below, small sets are bounded below";
  if (!is_subset(a.set, x.carrier())) return "not inside the carrier";
  return std::nullopt;
}

SetValue complement_in(const Space& x, const SetValue& a) {
  if (x.backend() == Backend::Finite) return SetValue::finite(x.carrier_mask() & ~a.mask);
  return L(subtract(x.carrier(), a.set));
}

std::string side_text(SideCond s) {
  switch (s) {
    case SideCond::Any: return "any";
    case SideCond::Finite: return "empty or cofinal";
    case SideCond::Bounded: return "bounded";
  }
  return "any";
}

std::string shape_text(const Shape& s) { return "left " + side_text(s.left) + ", right " + side_text(s.right); }

// ------------------------------------------------------------------ queries

json classify_set(const Env& env, const ClassifySet& q) {
  Space x = env.space(q.space);
  SetValue s = env.set(q.set);
  x.require_backend(s);
  json j;
  j["space"] = x.name();
  j["set"] = format_set(x, s);
  bool smop = x.is_smop(s), open = x.is_open_set(s), small = x.is_small_set(s), wo = x.is_weakly_open(s);
  j["smop"] = verdict(smop, smop ? std::nullopt : x.smop_violation(s));
  j["open"] = verdict(open, open ? std::nullopt : open_witness(x, s));
  j["small"] = verdict(small, small ? std::nullopt : small_witness(x, s));
  j["weakly_open"] = verdict(wo, wo ? std::nullopt : weakly_open_witness(x, s));
  bool swo = x.is_swo(s);
  j["small_weakly_open"] = verdict(swo, swo ? std::nullopt : (!small ? small_witness(x, s) : weakly_open_witness(x, s)));
  bool closed = x.is_closed_set(s);
  std::optional<std::string> cw;
  if (!closed) {
    auto w = open_witness(x, complement_in(x, s));
    if (w) cw = "complement: " + *w;
  }
  j["closed"] = verdict(closed, cw);
  j["wcl"] = format_set(x, x.wcl(s));
  return j;
}

json classify_family_query(const Env& env, const ClassifyFamily& q) {
  Space x = env.space(q.space);
  Family f = env.family(q.family);
  FamilyReport r = classify_family(x, f);
  json j;
  j["space"] = x.name();
  j["family"] = to_string(f);
  std::optional<std::string> ef;
  if (r.remainder) ef = "members outside any finite part cover " + format_set(x, *r.remainder);
  j["essentially_finite"] = verdict(r.essentially_finite, ef);
  std::optional<std::string> lf, adm;
  if (r.lf_witness) lf = "smop " + format_set(x, *r.lf_witness) + " meets infinitely many members";
  if (r.admissible_witness)
    adm = "smop " + format_set(x, *r.admissible_witness) + " meets the union beyond every finite subfamily";
  j["locally_finite"] = verdict(r.locally_finite, lf);
  j["admissible"] = verdict(r.admissible, adm);
  j["union"] = format_set(x, r.union_set);
  j["union_open"] = verdict(r.union_open, r.union_open ? std::nullopt : open_witness(x, r.union_set));
  j["union_weakly_open"] =
      verdict(r.union_weakly_open, r.union_weakly_open ? std::nullopt : weakly_open_witness(x, r.union_set));
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json map_verdict(const SpaceMap& f, const MapVerdict& v, bool witness_in_source) {
  std::optional<std::string> w;
  if (v.witness) w = format_set(witness_in_source ? f.source() : f.target(), *v.witness);
  if (!v.detail.empty()) w = w ? *w + " (" + v.detail + ")" : v.detail;
  return verdict(v.holds, w);
}

json classify_map_query(const Env& env, const ClassifyMap& q, const RunOptions& o) {
  const SpaceMap& f = env.map(q.map);
  ClassificationReport r = classify_map(f, {o.verify.samples, o.verify.seed});
  json j;
  j["map"] = to_string(f);
  j["weakly_continuous"] = map_verdict(f, r.weakly_continuous, false);
  j["bounded"] = map_verdict(f, r.bounded, true);
  j["continuous"] = map_verdict(f, r.continuous, false);
  j["bounded_continuous"] = map_verdict(f, r.bounded_continuous, false);
  j["strictly_continuous"] = map_verdict(f, r.strictly_continuous, false);
  j["samples_checked"] = r.samples_checked;
  j["families_checked"] = r.families_checked;
  return j;
}

json classify_space_query(const Env& env, const ClassifySpace& q) {
  Space x = env.space(q.space);
  SpaceFlags f = classify_space(x);
  json j;
  j["space"] = x.name();
  if (x.backend() == Backend::Finite) j["smops"] = format_family(x.smops());
  else j["carrier"] = to_string(x.carrier()), j["shape"] = shape_text(x.effective_shape());
  j["small"] = verdict(f.is_small, f.is_small ? std::nullopt : std::optional<std::string>("carrier is not a smop"));
  j["compact"] = tri_state(f.compact, f.compact_witness);
  std::optional<std::string> ptw, tlw;
  if (f.pt_witness) ptw = "small weakly open non-smop " + format_set(x, *f.pt_witness);
  if (f.tl_witness) tlw = "weakly open non-smop " + format_set(x, *f.tl_witness);
  j["partially_topological"] = verdict(f.is_partially_topological, ptw);
  j["topological_like"] = verdict(f.is_topological_like, tlw);
  SmallnessConditions c = smallness_conditions(x);
  json conds = json::array();
  for (int i = 0; i < 5; ++i) {
    std::optional<std::string> w;
    if (!c.holds[i] && !c.witness[i].empty()) w = c.witness[i];
    conds.push_back(verdict(c.holds[i], w));
  }
  j["smallness_conditions"] = conds;
  j["smallness_conditions_agree"] = c.agree();
  TautReport t = check_taut(x, 60);
  std::optional<std::string> tw;
  if (t.witness) tw = "smop " + format_set(x, *t.witness);
  j["taut"] = verdict(t.taut, t.taut ? std::nullopt : tw);
  j["strongly_taut"] = verdict(t.strongly_taut, t.strongly_taut ? std::nullopt : tw);
  RegularityReport reg = check_regular(x, 60);
  j["regular"] = tri_state(reg.verdict, "");
  ConnectednessReport con = find_disconnection(x);
  if (con.decided || con.witness) {
    std::optional<std::string> cw;
    if (con.witness) cw = format_set(x, con.witness->first) + " | " + format_set(x, con.witness->second);
    j["connected"] = verdict(con.connected, cw);
  } else {
    j["connected"] = "undecided";
  }
  return j;
}

json derive_query(const Env& env, const Derive& q) {
  Space x = env.space(q.space);
  json j;
  j["space"] = x.name();
  j["kind"] = q.kind;
  static const std::map<std::string, Derived> kinds{{"Lo", Derived::Open},
                                                    {"Ls", Derived::Small},
                                                    {"Lwo", Derived::WeaklyOpen},
                                                    {"Lswo", Derived::SmallWeaklyOpen},
                                                    {"closedsets", Derived::Closed}};
  if (q.set) {
    SetValue s = env.set(*q.set);
    x.require_backend(s);
    j["set"] = format_set(x, s);
    if (q.kind == "wcl") j["value"] = format_set(x, x.wcl(s));
    else j["member"] = x.in_family(kinds.at(q.kind), s);
    return j;
  }
  Derived d = kinds.at(q.kind);
  if (x.backend() == Backend::Finite) {
    j["value"] = format_family(x.family(d));
    return j;
  }
  j["carrier"] = to_string(x.carrier());
  switch (d) {
    case Derived::Small: {
      Shape e = x.effective_shape();
      Shape s{e.left == SideCond::Bounded ? SideCond::Bounded : SideCond::Any,
              e.right == SideCond::Bounded ? SideCond::Bounded : SideCond::Any};
      j["value"] = "subsets of the carrier, " + shape_text(s);
      break;
    }
    case Derived::Closed: j["value"] = "complements in the carrier of open sets"; break;
    default: j["value"] = "relatively open subsets of the carrier, " + shape_text(x.derived_shape(d)); break;
  }
  return j;
}

json glue_query(const Env& env, const GlueQuery& q, Status& status) {
  Atlas a = env.atlas(q.atlas);
  GlueResult r = std::holds_alternative<PeriodicAtlas>(a) ? glue(std::get<PeriodicAtlas>(a), "glued")
                                                          : glue(std::get<std::vector<Space>>(a), "glued");
  json j;
  if (auto* charts = std::get_if<std::vector<Space>>(&a)) {
    j["charts"] = charts->size();
    j["smops"] = format_family(r.space.smops());
    j["carrier"] = format_mask(r.space.carrier_mask());
  } else {
    const auto& p = std::get<PeriodicAtlas>(a);
    j["chart"] = to_string(p.chart.carrier());
    j["step"] = to_string(p.step);
    j["carrier"] = to_string(r.space.carrier());
  }
  j["smops_are_finite_unions_of_chart_smops"] = r.ring_is_finite_unions;
  j["charts_are_open_subspaces"] = r.charts_open_subspaces;
  j["charts_admissible"] = r.charts_admissible;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!(r.ring_is_finite_unions && r.charts_open_subspaces && r.charts_admissible)) status = Status::Violation;
  return j;
}

json axioms_json(const AxiomReport& r) {
  json j;
  for (const auto& a : r.axioms) j[a.axiom] = verdict(a.holds, a.holds ? std::nullopt : std::optional(a.counterexample));
  return j;
}

json gts_check_query(const Env& env, const GtsCheck& q) {
  const Gts& g = env.gts(q.gts);
  json j;
  j["gts"] = to_string(g);
  AxiomReport r = check_axioms(g);
  j["axioms"] = axioms_json(r);
  j["conforming"] = r.all();
  if (r.all()) {
    try {
      ToSpaceResult t = to_space(g);
      j["smop"] = format_family(t.space.smops());
      j["cov_is_ef"] = t.cov_is_ef;
    } catch (const Error& e) {
      j["smop"] = std::string("none: ") + e.what();
    }
  }
  return j;
}

json generate_gt_query(const Env& env, const GenerateGt& q) {
  FiniteUniverse u(q.universe);
  std::vector<FFamily> psi;
  for (const auto& n : q.families) {
    Family f = env.family(FamilyExpr{{n}});
    if (!f.translate_atoms().empty() || !f.chain_atoms().empty())
      fail(Error::Kind::Usage, "family '" + n + "' is not a finite list");
    std::vector<Mask> sets;
    for (const auto& m : f.list_members()) {
      if (m.backend != Backend::Finite) fail(Error::Kind::Usage, "family '" + n + "' has line members");
      if (m.mask & ~u.full()) fail(Error::Kind::Usage, "family '" + n + "' leaves the universe");
      sets.push_back(m.mask);
    }
    psi.emplace_back(u, sets);
  }
  Mask carrier = q.carrier.value_or(u.full());
  Gts g = generate_gt(u, carrier, psi);
  json j;
  j["gts"] = to_string(g);
  j["axioms"] = axioms_json(check_axioms(g));
  if (std::popcount(carrier) <= 3) j["minimal"] = generated_is_minimal(g, psi);
  return j;
}

json theorem_json(const TheoremReport& r) {
  json j;
  j["id"] = r.id;
  j["anchor"] = r.anchor;
  j["holds"] = r.holds;
  j["instances"] = r.instances;
  if (r.counterwitness) j["counterwitness"] = *r.counterwitness;
  j["lines"] = r.lines;
  return j;
}

json verify_query(const VerifyQuery& q, const RunOptions& o, Status& status) {
  if (q.id != "all") {
    TheoremReport r = verify_theorem(q.id, o.verify);
    if (!r.holds) status = Status::Violation;
    return theorem_json(r);
  }
  json j;
  json list = json::array();
  bool all = true;
  for (const auto& r : verify_all(o.verify)) {
    all = all && r.holds;
    list.push_back(theorem_json(r));
  }
  j["holds"] = all;
  j["theorems"] = list;
  if (!all) status = Status::Violation;
  return j;
}

json random_suite_query(const RandomSuiteQuery& q, Status& status) {
  SuiteReport r = random_suite(q.backend, q.iters, q.seed);
  json j;
  j["backend"] = q.backend == Backend::Finite ? "finite" : "interval";
  j["iters"] = q.iters;
  j["seed"] = q.seed;
  j["passed"] = r.passed();
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["check"] = c.name;
    e["cases"] = c.cases;
    e["failures"] = c.failures;
    if (c.first_failure) e["first_failure"] = *c.first_failure;
    checks.push_back(e);
  }
  j["checks"] = checks;
  if (!r.passed()) status = Status::Violation;
  return j;
}

QueryResult execute(const Env& env, const Query& q, const RunOptions& o) {
  QueryResult out;
  out.query = print(q);
  out.line = q.line;
  auto start = std::chrono::steady_clock::now();
  try {
    Status status = Status::Ok;
    out.result = std::visit(
        overloaded{[&](const ClassifySet& c) { return classify_set(env, c); },
                   [&](const ClassifyFamily& c) { return classify_family_query(env, c); },
                   [&](const ClassifyMap& c) { return classify_map_query(env, c, o); },
                   [&](const ClassifySpace& c) { return classify_space_query(env, c); },
                   [&](const Derive& d) { return derive_query(env, d); },
                   [&](const GlueQuery& g) { return glue_query(env, g, status); },
                   [&](const GtsCheck& g) { return gts_check_query(env, g); },
                   [&](const GenerateGt& g) { return generate_gt_query(env, g); },
                   [&](const VerifyQuery& v) { return verify_query(v, o, status); },
                   [&](const RandomSuiteQuery& r) { return random_suite_query(r, status); }},
        q.v);
    out.status = status;
  } catch (const Error& e) {
    out.status = Status::Error;
    out.error_kind = kind_name(e.kind());
    out.result = json::object();
    out.result["error"] = e.what();
  } catch (const std::exception& e) {
    out.status = Status::Error;
    out.error_kind = "internal";
    out.result = json::object();
    out.result["error"] = e.what();
  }
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ------------------------------------------------------------------ text

std::string scalar_text(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render(const json& v, const std::string& indent, std::vector<std::string>& out);

void render_entry(const std::string& key, const json& v, const std::string& indent, std::vector<std::string>& out) {
  if (v.is_object() && v.contains("holds") && v.size() <= 2) {
    std::string s = indent + key + ": " + scalar_text(v["holds"]);
    if (v.contains("witness")) s += " (witness: " + scalar_text(v["witness"]) + ")";
    out.push_back(s);
  } else if (v.is_object() || v.is_array()) {
    out.push_back(indent + key + ":");
    render(v, indent + "  ", out);
  } else {
    out.push_back(indent + key + ": " + scalar_text(v));
  }
}

void render(const json& v, const std::string& indent, std::vector<std::string>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) render_entry(it.key(), it.value(), indent, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const json& e = v[i];
      if (e.is_object() && e.contains("holds") && e.size() <= 2) {
        render_entry("[" + std::to_string(i + 1) + "]", e, indent, out);
      } else if (e.is_object()) {
        out.push_back(indent + "-");
        render(e, indent + "  ", out);
      } else {
        out.push_back(indent + "- " + scalar_text(e));
      }
    }
  }
}

}  // namespace

Report run(const Document& d, const RunOptions& options) {
  Env env(d);
  Report report;
  if (options.parallel && d.queries.size() > 1) {
    std::vector<std::future<QueryResult>> pending;
    for (const auto& q : d.queries)
      pending.push_back(std::async(std::launch::async, [&env, &q, &options] { return execute(env, q, options); }));
    for (auto& p : pending) report.results.push_back(p.get());
  } else {
    for (const auto& q : d.queries) report.results.push_back(execute(env, q, options));
  }
  for (auto& r : report.results) render(r.result, "  ", r.text);
  return report;
}

json to_json(const Report& r, bool timing) {
  json j;
  j["schema"] = kReportSchema;
  json qs = json::array();
  for (const auto& q : r.results) {
    json e;
    e["query"] = q.query;
    e["line"] = q.line;
    e["status"] = status_name(q.status);
    if (!q.error_kind.empty()) e["error_kind"] = q.error_kind;
    e["result"] = q.result;
    if (timing) e["elapsed_ms"] = q.elapsed_ms;
    qs.push_back(e);
  }
  j["queries"] = qs;
  j["exit_code"] = r.exit_code();
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  for (const auto& q : r.results) {
    os << "[" << status_name(q.status) << "] " << q.query << "\n";
    for (const auto& l : q.text) os << l << "\n";
  }
  return os.str();
}

}  // namespace locus::dsl
