#include "locus/spaces.hpp"

#include <algorithm>
#include <array>

namespace locus {

namespace {

struct BuiltinRow {
  BuiltinLine id;
  const char* name;
  Shape shape;
};

constexpr std::array<BuiltinRow, 9> kBuiltins{{
    {BuiltinLine::om, "om", {SideCond::Finite, SideCond::Finite}},
    {BuiltinLine::rom, "rom", {SideCond::Finite, SideCond::Finite}},
    {BuiltinLine::lom, "lom", {SideCond::Bounded, SideCond::Bounded}},
    {BuiltinLine::lpom, "l+om", {SideCond::Finite, SideCond::Bounded}},
    {BuiltinLine::slom, "slom", {SideCond::Any, SideCond::Any}},
    {BuiltinLine::slpom, "sl+om", {SideCond::Bounded, SideCond::Any}},
    {BuiltinLine::st, "st", {SideCond::Any, SideCond::Any}},
    {BuiltinLine::lst, "lst", {SideCond::Bounded, SideCond::Bounded}},
    {BuiltinLine::lpst, "l+st", {SideCond::Any, SideCond::Bounded}},
}};

enum class Side { Left, Right };

bool has_tail(const PeriodicSet& s, Side side) {
  return (side == Side::Left ? s.left_tail() : s.right_tail()) != TailState::Empty;
}

const char* side_word(Side side) { return side == Side::Left ? "left" : "right"; }

SideCond cond_on(const Shape& shape, Side side) { return side == Side::Left ? shape.left : shape.right; }

/// Far out on `side`, S is empty or agrees with Y.
bool far_side_trivial(const PeriodicSet& s, const PeriodicSet& y, Side side) {
  return !has_tail(s, side) || !has_tail(subtract(y, s), side);
}

std::optional<std::string> shape_violation(const PeriodicSet& s, const PeriodicSet& y, const Shape& shape,
                                           bool need_open) {
  if (!is_subset(s, y)) return "not contained in the carrier";
  if (need_open && !relatively_open(s, y)) return "not relatively open in the carrier";
  for (Side side : {Side::Left, Side::Right}) {
    switch (cond_on(shape, side)) {
      case SideCond::Any:
        break;
      case SideCond::Bounded:
        if (has_tail(s, side)) return std::string("unbounded to the ") + side_word(side);
        break;
      case SideCond::Finite:
        if (!far_side_trivial(s, y, side))
          return std::string("infinitely many pieces to the ") + side_word(side) +
                 " (neither empty nor the whole carrier far out)";
        break;
    }
  }
  return std::nullopt;
}

SideCond relax_bounded(SideCond c) { return c == SideCond::Bounded ? SideCond::Any : c; }
SideCond relax_finite(SideCond c) { return c == SideCond::Finite ? SideCond::Any : c; }

Rational sample_point(const QInterval& part) {
  if (part.is_point()) return part.lo().value;
  if (part.lo().infinite) return part.hi().value - 1;
  if (part.hi().infinite) return part.lo().value + 1;
  return (part.lo().value + part.hi().value) / 2;
}

/// A relatively open subset of Y living far out on `side` that is neither
/// empty nor all of Y there: every other period of Y's tail.
PeriodicSet alternating_tail(const PeriodicSet& y, Side side) {
  const Rational& p = *y.period();
  const IntervalList& pattern = side == Side::Left ? y.left_pattern() : y.right_pattern();
  Rational r = sample_point(pattern.parts().front());
  IntervalList base(std::vector<QInterval>{QInterval::open(r - p / 2, r + p / 2)});
  PeriodicSet comb = side == Side::Right ? PeriodicSet::translates_union(base, 2 * p, Integer(0), std::nullopt)
                                         : PeriodicSet::translates_union(base, 2 * p, std::nullopt, Integer(0));
  return intersect(y, comb);
}

}  // namespace

std::string builtin_name(BuiltinLine id) {
  for (const auto& row : kBuiltins)
    if (row.id == id) return row.name;
  fail(Error::Kind::Internal, "unknown builtin");
}

std::optional<BuiltinLine> parse_builtin(const std::string& name) {
  for (const auto& row : kBuiltins)
    if (name == row.name) return row.id;
  return std::nullopt;
}

Shape builtin_shape(BuiltinLine id) {
  for (const auto& row : kBuiltins)
    if (row.id == id) return row.shape;
  fail(Error::Kind::Internal, "unknown builtin");
}

std::string derived_name(Derived d) {
  switch (d) {
    case Derived::Smop: return "L";
    case Derived::Open: return "Lo";
    case Derived::Small: return "Ls";
    case Derived::WeaklyOpen: return "Lwo";
    case Derived::SmallWeaklyOpen: return "Lswo";
    case Derived::Closed: return "closedsets";
  }
  return "?";
}

bool relatively_open(const PeriodicSet& t, const PeriodicSet& y) {
  if (!is_subset(t, y)) return false;
  if (y.is_open()) return t.is_open();
  return !intersects(t, closure(subtract(y, t)));
}

Space Space::finite(FiniteUniverse universe, Mask carrier, FFamily smops, std::string name) {
  if (!universe.contains(carrier)) fail(Error::Kind::Precondition, "carrier outside the universe");
  if (!(smops.universe() == universe)) fail(Error::Kind::Precondition, "smop family over another universe");
  if (!smops.contains(0)) fail(Error::Kind::Precondition, "(LS1) the empty set is not a smop");
  Mask cover = 0;
  for (Mask a : smops.sets()) {
    if (a & ~carrier) fail(Error::Kind::Precondition, "smop " + format_mask(a) + " leaves the carrier");
    cover |= a;
    for (Mask b : smops.sets()) {
      if (!smops.contains(a | b))
        fail(Error::Kind::Precondition, "(LS2) union " + format_mask(a | b) + " of smops is missing");
      if (!smops.contains(a & b))
        fail(Error::Kind::Precondition, "(LS2) intersection " + format_mask(a & b) + " of smops is missing");
    }
  }
  if (cover != carrier) fail(Error::Kind::Precondition, "(LS3) smops do not cover the carrier");
  Space x;
  x.backend_ = Backend::Finite;
  x.name_ = name.empty() ? "finite" : std::move(name);
  x.universe_ = universe;
  x.carrier_mask_ = carrier;
  x.smops_ = std::move(smops);
  return x;
}

Space Space::finite(FiniteUniverse universe, FFamily smops, std::string name) {
  return finite(universe, universe.full(), std::move(smops), std::move(name));
}

Space Space::builtin(BuiltinLine id) { return line(PeriodicSet::line(), builtin_shape(id), builtin_name(id)); }

Space Space::line(PeriodicSet carrier, Shape shape, std::string name) {
  Space x;
  x.backend_ = Backend::Interval;
  x.name_ = std::move(name);
  x.carrier_ = std::move(carrier);
  x.shape_ = shape;
  return x;
}

Space Space::glued(GlueInfo info, std::string name) {
  if (!info.chart_carrier.is_bounded()) fail(Error::Kind::Precondition, "chart carrier must be bounded");
  if (info.step <= 0) fail(Error::Kind::Precondition, "glue step must be positive");
  PeriodicSet total;
  if (!info.chart_carrier.is_empty()) {
    total = PeriodicSet::translates_union(info.chart_carrier.core(), info.step, std::nullopt, std::nullopt);
  }
  Space x = line(std::move(total), {SideCond::Bounded, SideCond::Bounded}, std::move(name));
  x.glue_ = std::make_shared<const GlueInfo>(std::move(info));
  return x;
}

const FiniteUniverse& Space::universe() const {
  if (!universe_) fail(Error::Kind::Usage, "space '" + name_ + "' is not finite");
  return *universe_;
}

Mask Space::carrier_mask() const {
  universe();
  return carrier_mask_;
}

const FFamily& Space::smops() const {
  universe();
  return *smops_;
}

const PeriodicSet& Space::carrier() const {
  if (backend_ != Backend::Interval) fail(Error::Kind::Usage, "space '" + name_ + "' is not a line space");
  return carrier_;
}

const Shape& Space::shape() const {
  carrier();
  return shape_;
}

Shape Space::effective_shape() const {
  const PeriodicSet& y = carrier();
  Shape s = shape_;
  if (!has_tail(y, Side::Left)) s.left = SideCond::Any;
  if (!has_tail(y, Side::Right)) s.right = SideCond::Any;
  return s;
}

SetValue Space::carrier_value() const {
  return backend_ == Backend::Finite ? SetValue::finite(carrier_mask_) : SetValue::line(carrier_);
}

void Space::require_backend(const SetValue& s) const {
  if (s.backend != backend_)
    fail(Error::Kind::Usage, "carrier mismatch: set and space '" + name_ + "' live on different backends");
  if (backend_ == Backend::Finite && !universe_->contains(s.mask))
    fail(Error::Kind::Usage, "carrier mismatch: set leaves the universe of '" + name_ + "'");
}

std::optional<std::string> Space::smop_violation(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    if (smops_->contains(s.mask)) return std::nullopt;
    return format_mask(s.mask) + " is not in the smop family";
  }
  if (!glue_) return shape_violation(s.set, carrier_, effective_shape(), true);

  // Glued: a smop is a finite union of chart smops. Charts have bounded
  // carriers, so a chart smop is a relatively open subset of its chart; T is
  // such a union iff it is the union of its chart-wise relative interiors.
  const PeriodicSet& t = s.set;
  if (!is_subset(t, carrier_)) return "not contained in the carrier";
  if (t.is_empty()) return std::nullopt;
  if (!t.is_bounded()) return "not a finite union of chart smops (meets infinitely many charts)";
  const Rational& step = glue_->step;
  Rational c_lo = *glue_->chart_carrier.infimum(), c_hi = *glue_->chart_carrier.supremum();
  Integer k_lo = floor_int((*t.infimum() - c_hi) / step) - 1;
  Integer k_hi = ceil_int((*t.supremum() - c_lo) / step) + 1;
  PeriodicSet reached;
  for (Integer k = k_lo; k <= k_hi; ++k) {
    PeriodicSet chart = translate(glue_->chart_carrier, Rational(k) * step);
    PeriodicSet piece = intersect(t, chart);
    if (piece.is_empty()) continue;
    Space local = line(chart, glue_->chart_shape, "chart");
    PeriodicSet inner = subtract(piece, closure(subtract(chart, piece)));
    if (!shape_violation(inner, chart, local.effective_shape(), true)) reached = unite(reached, inner);
  }
  if (!(reached == t)) return "not a finite union of chart smops";
  return std::nullopt;
}

bool Space::is_smop(const SetValue& s) const { return !smop_violation(s).has_value(); }

bool Space::is_open_set(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    if (s.mask & ~carrier_mask_) return false;
    for (Mask l : smops_->sets())
      if (!smops_->contains(s.mask & l)) return false;
    return true;
  }
  return !shape_violation(s.set, carrier_, derived_shape(Derived::Open), true);
}

bool Space::is_small_set(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    if (s.mask & ~carrier_mask_) return false;
    for (Mask l : smops_->sets())
      if ((s.mask & ~l) == 0) return true;
    return false;
  }
  Shape e = effective_shape();
  Shape bounded_only{e.left == SideCond::Bounded ? SideCond::Bounded : SideCond::Any,
                     e.right == SideCond::Bounded ? SideCond::Bounded : SideCond::Any};
  return !shape_violation(s.set, carrier_, bounded_only, false);
}

bool Space::is_weakly_open(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    if (s.mask & ~carrier_mask_) return false;
    Mask covered = 0;
    for (Mask l : smops_->sets())
      if ((l & ~s.mask) == 0) covered |= l;
    return covered == s.mask;
  }
  return relatively_open(s.set, carrier_);
}

bool Space::is_swo(const SetValue& s) const { return is_weakly_open(s) && is_small_set(s); }

bool Space::is_closed_set(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    if (s.mask & ~carrier_mask_) return false;
    return is_open_set(SetValue::finite(carrier_mask_ & ~s.mask));
  }
  return is_subset(s.set, carrier_) && is_open_set(SetValue::line(subtract(carrier_, s.set)));
}

bool Space::in_family(Derived d, const SetValue& s) const {
  switch (d) {
    case Derived::Smop: return is_smop(s);
    case Derived::Open: return is_open_set(s);
    case Derived::Small: return is_small_set(s);
    case Derived::WeaklyOpen: return is_weakly_open(s);
    case Derived::SmallWeaklyOpen: return is_swo(s);
    case Derived::Closed: return is_closed_set(s);
  }
  return false;
}

SetValue Space::wcl(const SetValue& s) const {
  require_backend(s);
  if (backend_ == Backend::Finite) {
    Mask outside = 0;
    for (Mask l : smops_->sets())
      if ((l & s.mask) == 0) outside |= l;
    return SetValue::finite(carrier_mask_ & ~outside);
  }
  return SetValue::line(intersect(closure(s.set), carrier_));
}

FFamily Space::family(Derived d) const {
  const FiniteUniverse& u = universe();
  FFamily out(u);
  std::vector<Mask> members;
  // Enumerate subsets of the carrier in increasing order.
  Mask sub = 0;
  do {
    if (in_family(d, SetValue::finite(sub))) members.push_back(sub);
    sub = (sub - carrier_mask_) & carrier_mask_;
  } while (sub != 0);
  return FFamily(u, std::move(members));
}

Shape Space::derived_shape(Derived d) const {
  Shape e = effective_shape();
  switch (d) {
    case Derived::Smop: return e;
    case Derived::Open: return {relax_bounded(e.left), relax_bounded(e.right)};
    case Derived::WeaklyOpen: return {};
    case Derived::SmallWeaklyOpen: return {relax_finite(e.left), relax_finite(e.right)};
    case Derived::Small:
    case Derived::Closed: break;
  }
  fail(Error::Kind::Usage, derived_name(d) + " is not a family of relatively open sets");
}

Space Space::subspace(const SetValue& y, std::string name) const {
  require_backend(y);
  if (name.empty()) name = "subspace of " + name_;
  if (backend_ == Backend::Finite) {
    if (y.mask & ~carrier_mask_) fail(Error::Kind::Precondition, "subspace carrier leaves the space");
    return finite(*universe_, y.mask, family_trace(*smops_, y.mask), std::move(name));
  }
  if (!is_subset(y.set, carrier_)) fail(Error::Kind::Precondition, "subspace carrier leaves the space");
  return line(y.set, shape_, std::move(name));
}

Space Space::with_shape(Shape shape, std::string name) const { return line(carrier(), shape, std::move(name)); }

Space Space::with_smops(FFamily smops, std::string name) const {
  return finite(universe(), carrier_mask_, std::move(smops), std::move(name));
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SpaceFlags classify_space(const Space& x) {
  SpaceFlags f;
  f.is_small = x.is_smop(x.carrier_value());
  if (x.backend() == Backend::Finite) {
    f.compact = Verdict::True;
    FFamily swo = x.family(Derived::SmallWeaklyOpen);
    FFamily wo = x.family(Derived::WeaklyOpen);
    f.is_partially_topological = swo == x.smops();
    f.is_topological_like = wo == x.smops();
    for (Mask m : swo.sets())
      if (!x.smops().contains(m)) {
        f.pt_witness = SetValue::finite(m);
        break;
      }
    for (Mask m : wo.sets())
      if (!x.smops().contains(m)) {
        f.tl_witness = SetValue::finite(m);
        break;
      }
    return f;
  }

  const PeriodicSet& y = x.carrier();
  Shape e = x.effective_shape();
  if (f.is_small != (e.left != SideCond::Bounded && e.right != SideCond::Bounded))
    fail(Error::Kind::Internal, "smallness rule disagrees with carrier membership for " + x.name());

  bool all_points = y.is_bounded() &&
                    std::all_of(y.core().parts().begin(), y.core().parts().end(),
                                [](const QInterval& p) { return p.is_point(); });
  if (all_points) {
    f.compact = Verdict::True;
  } else if (has_tail(y, Side::Right)) {
    f.compact = Verdict::Refuted;
    f.compact_witness = "cover by Y ∩ (-inf,n), n = 1,2,...: increasing, no finite subcover";
  } else if (has_tail(y, Side::Left)) {
    f.compact = Verdict::Refuted;
    f.compact_witness = "cover by Y ∩ (-n,inf), n = 1,2,...: increasing, no finite subcover";
  } else {
    PeriodicSet gaps = subtract(closure(y), y);
    if (!gaps.is_empty()) {
      Rational e0 = *gaps.infimum();
      f.compact = Verdict::Refuted;
      f.compact_witness = "cover by Y \\ [" + to_string(e0) + "-1/n," + to_string(e0) +
                          "+1/n], n = 1,2,...: increasing, no finite subcover";
    }
  }

  for (Side side : {Side::Left, Side::Right}) {
    if (cond_on(e, side) == SideCond::Finite && !f.pt_witness) f.pt_witness = SetValue::line(alternating_tail(y, side));
  }
  f.is_partially_topological = !f.pt_witness;
  if (f.pt_witness) {
    f.tl_witness = f.pt_witness;
  } else if (e.left == SideCond::Bounded || e.right == SideCond::Bounded) {
    f.tl_witness = SetValue::line(y);
  }
  f.is_topological_like = !f.tl_witness;
  if (f.pt_witness && (!x.is_swo(*f.pt_witness) || x.is_smop(*f.pt_witness)))
    fail(Error::Kind::Internal, "partial-topology witness does not separate L from Lswo");
  if (f.tl_witness && (!x.is_weakly_open(*f.tl_witness) || x.is_smop(*f.tl_witness)))
    fail(Error::Kind::Internal, "topology witness does not separate L from Lwo");
  return f;
}

std::string format_set(const Space& x, const SetValue& s) {
  x.require_backend(s);
  return s.backend == Backend::Finite ? format_mask(s.mask) : to_string(s.set);
}

}  // namespace locus
