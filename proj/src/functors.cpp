#include "locus/functors.hpp"

namespace locus {

namespace {

std::string derived_label(const std::string& op, const Space& x) { return op + "(" + x.name() + ")"; }

SideCond bounded_or_any(SideCond c) { return c == SideCond::Bounded ? SideCond::Bounded : SideCond::Any; }

bool is_topology(const FFamily& t, Mask carrier) {
  if (!t.contains(0) || !t.contains(carrier)) return false;
  for (Mask a : t.sets()) {
    if ((a & ~carrier) != 0) return false;
    for (Mask b : t.sets())
      if (!t.contains(a | b) || !t.contains(a & b)) return false;
  }
  return true;
}

bool is_bornology(const FFamily& b, Mask carrier) {
  if (!b.contains(0)) return false;
  for (Mask a : b.sets()) {
    if ((a & ~carrier) != 0) return false;
    for (Mask sub = a;; sub = (sub - 1) & a) {
      if (!b.contains(sub)) return false;
      if (sub == 0) break;
    }
    for (Mask c : b.sets())
      if (!b.contains(a | c)) return false;
  }
  return true;
}

FFamily intersect_families(const FFamily& a, const FFamily& b) {
  std::vector<Mask> out;
  for (Mask m : a.sets())
    if (b.contains(m)) out.push_back(m);
  return FFamily(a.universe(), out);
}

bool is_morphism(const SpaceMap& f, const MapCheckOptions& options) {
  return bounded(f, options).holds && continuous(f, options).holds;
}

}  // namespace

Space sm(const Space& x) {
  if (x.backend() == Backend::Finite)
    return Space::finite(x.universe(), x.carrier_mask(), x.family(Derived::Open), derived_label("sm", x));
  return Space::line(x.carrier(), x.derived_shape(Derived::Open), derived_label("sm", x));
}

Space pt(const Space& x) {
  if (x.backend() == Backend::Finite)
    return Space::finite(x.universe(), x.carrier_mask(), x.family(Derived::SmallWeaklyOpen), derived_label("pt", x));
  return Space::line(x.carrier(), x.derived_shape(Derived::SmallWeaklyOpen), derived_label("pt", x));
}

bool same_smops(const Space& a, const Space& b) {
  if (a.backend() != b.backend()) return false;
  if (a.backend() == Backend::Finite)
    return a.universe() == b.universe() && a.carrier_mask() == b.carrier_mask() && a.smops() == b.smops();
  if (!(a.carrier() == b.carrier())) return false;
  if (!a.glue() && !b.glue()) return a.effective_shape() == b.effective_shape();
  // A glued space carries its own smop predicate; compare it on the shape
  // description through open sets and small sets, which determine the smops.
  return a.derived_shape(Derived::Open) == b.derived_shape(Derived::Open) &&
         a.derived_shape(Derived::Smop) == b.derived_shape(Derived::Smop);
}

bool operator==(const BornUniverse& a, const BornUniverse& b) {
  if (a.backend != b.backend) return false;
  if (a.backend == Backend::Finite)
    return a.universe == b.universe && a.carrier == b.carrier && a.topology == b.topology && a.bornology == b.bornology;
  Shape ea = a.bounded_sides, eb = b.bounded_sides;
  if (a.line_carrier.right_tail() == TailState::Empty) ea.right = eb.right = SideCond::Any;
  if (a.line_carrier.left_tail() == TailState::Empty) ea.left = eb.left = SideCond::Any;
  return a.line_carrier == b.line_carrier && ea == eb;
}

BornUniverse born_universe(FiniteUniverse universe, Mask carrier, FFamily topology, FFamily bornology,
                           std::string name) {
  if (!universe.contains(carrier)) fail(Error::Kind::Precondition, "carrier leaves the universe");
  if (!is_topology(topology, carrier))
    fail(Error::Kind::Precondition, format_family(topology) + " is not a topology on " + format_mask(carrier));
  if (!is_bornology(bornology, carrier))
    fail(Error::Kind::Precondition,
         format_family(bornology) + " is not closed under subsets and finite unions on " + format_mask(carrier));
  Mask covered = intersect_families(topology, bornology).union_of();
  if (covered != carrier)
    fail(Error::Kind::Precondition, "no open basis: open bounded sets miss " + format_mask(carrier & ~covered));
  BornUniverse u;
  u.backend = Backend::Finite;
  u.universe = universe;
  u.carrier = carrier;
  u.topology = std::move(topology);
  u.bornology = std::move(bornology);
  u.name = std::move(name);
  return u;
}

BornUniverse born_universe(PeriodicSet carrier, Shape bounded_sides, std::string name) {
  BornUniverse u;
  u.backend = Backend::Interval;
  u.line_carrier = std::move(carrier);
  u.bounded_sides = {bounded_or_any(bounded_sides.left), bounded_or_any(bounded_sides.right)};
  u.name = std::move(name);
  return u;
}

BornUniverse ubor(const Space& x) {
  SpaceFlags flags = classify_space(x);
  if (!flags.is_partially_topological)
    fail(Error::Kind::Precondition,
         x.name() + " is not partially topological" +
             (flags.pt_witness ? ": " + format_set(x, *flags.pt_witness) + " is small weakly open but not a smop"
                               : std::string()));
  if (x.backend() == Backend::Finite)
    return born_universe(x.universe(), x.carrier_mask(), x.family(Derived::WeaklyOpen), x.family(Derived::Small),
                         derived_label("ubor", x));
  Shape e = x.effective_shape();
  return born_universe(x.carrier(), {bounded_or_any(e.left), bounded_or_any(e.right)}, derived_label("ubor", x));
}

Space lss(const BornUniverse& u) {
  std::string name = "lss(" + u.name + ")";
  if (u.backend == Backend::Finite)
    return Space::finite(*u.universe, u.carrier, intersect_families(u.topology, u.bornology), name);
  return Space::line(u.line_carrier, u.bounded_sides, name);
}

Space top_embed(FiniteUniverse universe, const FFamily& topology, std::string name) {
  Mask carrier = topology.union_of();
  if (!is_topology(topology, carrier))
    fail(Error::Kind::Precondition, format_family(topology) + " is not a topology");
  if (name.empty()) name = "top";
  return Space::finite(universe, carrier, topology, name);
}

std::string to_string(const BornUniverse& u) {
  if (u.backend == Backend::Finite)
    return "born universe {carrier " + format_mask(u.carrier) + "; topology " + format_family(u.topology) +
           "; bornology " + format_family(u.bornology) + "}";
  auto side = [](SideCond c) { return c == SideCond::Bounded ? std::string("bounded") : std::string("any"); };
  return "born universe {carrier " + to_string(u.line_carrier) + "; topology relatively open; bornology left " +
         side(u.bounded_sides.left) + ", right " + side(u.bounded_sides.right) + "}";
}

TriangleReport sm_reflection(const SpaceMap& f, const MapCheckOptions& options) {
  TriangleReport r;
  const Space& x = f.source();
  const Space& y = f.target();
  r.applicable = classify_space(y).is_small;
  Space smx = sm(x);
  r.unit_is_morphism = is_morphism(SpaceMap::identity(x, smx, "r"), options);
  r.given_is_morphism = is_morphism(f, options);
  r.factor_is_morphism = is_morphism(f.between(smx, y), options);
  if (!r.applicable) {
    r.holds = r.unit_is_morphism;
    r.detail = "target is not small; only the unit was checked";
    return r;
  }
  r.holds = r.unit_is_morphism && r.given_is_morphism == r.factor_is_morphism;
  r.detail = r.holds ? "f factors through sm(X) exactly when it is a morphism"
                     : "factorization through sm(X) fails";
  return r;
}

TriangleReport pt_coreflection(const SpaceMap& f, const MapCheckOptions& options) {
  TriangleReport r;
  const Space& z = f.source();
  const Space& x = f.target();
  r.applicable = classify_space(z).is_partially_topological;
  Space ptx = pt(x);
  r.unit_is_morphism = is_morphism(SpaceMap::identity(ptx, x, "c"), options);
  r.given_is_morphism = is_morphism(f, options);
  r.factor_is_morphism = is_morphism(f.between(z, ptx), options);
  if (!r.applicable) {
    r.holds = r.unit_is_morphism;
    r.detail = "source is not partially topological; only the counit was checked";
    return r;
  }
  r.holds = r.unit_is_morphism && r.given_is_morphism == r.factor_is_morphism;
  r.detail = r.holds ? "f lifts to pt(X) exactly when it is a morphism" : "lift through pt(X) fails";
  return r;
}

}  // namespace locus
