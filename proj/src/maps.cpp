#include "locus/maps.hpp"

#include <algorithm>

#include "locus/gts.hpp"
#include "locus/random.hpp"

namespace locus {

namespace {

bool lo_before(const QInterval& a, const QInterval& b) {
  const auto &x = a.lo(), &y = b.lo();
  if (x.infinite != y.infinite) return x.infinite;
  if (x.infinite) return false;
  if (x.value != y.value) return x.value < y.value;
  return x.closed && !y.closed;
}

Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

bool has_tail(const PeriodicSet& s, bool right) {
  return (right ? s.right_tail() : s.left_tail()) != TailState::Empty;
}

SideCond side(const Shape& s, bool right) { return right ? s.right : s.left; }

Shape small_shape(const Space& x) {
  Shape e = x.effective_shape();
  auto only_bounded = [](SideCond c) { return c == SideCond::Bounded ? SideCond::Bounded : SideCond::Any; };
  return {only_bounded(e.left), only_bounded(e.right)};
}

std::string affine_text(const Rational& c, const Rational& d) {
  std::string s;
  if (c == 0) return to_string(d);
  if (c == 1) s = "x";
  else if (c == -1) s = "-x";
  else s = to_string(c) + "x";
  if (d > 0) s += "+" + to_string(d);
  else if (d < 0) s += to_string(d);
  return s;
}

// ---------------------------------------------------------------------------
// Exact rules for line maps.

struct Failure {
  SetValue witness;
  std::string detail;
};

/// A jump of f at a carrier point approached by the carrier from a piece
/// that does not contain it. The witness is a small interval around f(e)
/// avoiding the one-sided limit.
std::optional<Failure> discontinuity(const SpaceMap& f) {
  const PeriodicSet& x = f.source().carrier();
  const PeriodicSet& y = f.target().carrier();
  const PiecewiseAffine& r = *f.rule();
  for (const auto& p : r.pieces()) {
    PeriodicSet near = closure(intersect(x, PeriodicSet::from_interval(p.domain)));
    for (const auto* end : {&p.domain.lo(), &p.domain.hi()}) {
      if (end->infinite) continue;
      const Rational& e = end->value;
      if (p.domain.contains(e) || !x.contains(e) || !near.contains(e)) continue;
      const AffinePiece* q = r.piece_at(e);
      if (!q) fail(Error::Kind::Internal, "carrier point " + to_string(e) + " outside every piece");
      Rational v = q->at(e), limit = p.at(e);
      if (v == limit) continue;
      Rational eps = abs_value(limit - v) / 2;
      PeriodicSet m = intersect(y, PeriodicSet::open_interval(v - eps, v + eps));
      return Failure{SetValue::line(m), "jump at " + to_string(e) + ": f = " + to_string(v) + ", limit " +
                                            to_string(limit) + " from " + to_string(p.domain)};
    }
  }
  return std::nullopt;
}

/// Y ∩ alternating open windows toward one side, each window and each gap
/// long enough to meet the eventually periodic set `image`.
PeriodicSet alternating(const PeriodicSet& y, const PeriodicSet& image, bool right) {
  Rational p = image.period() ? *image.period() : Rational(1);
  if (right) {
    Rational r = std::max(image.window_hi(), y.window_hi()) + 1;
    IntervalList base({QInterval::open(r, r + 2 * p)});
    return intersect(y, PeriodicSet::translates_union(base, 4 * p, Integer(0), std::nullopt));
  }
  Rational r = std::min(image.window_lo(), y.window_lo()) - 1;
  IntervalList base({QInterval::open(r - 2 * p, r)});
  return intersect(y, PeriodicSet::translates_union(base, 4 * p, std::nullopt, Integer(0)));
}

/// Preimages of the target sets of shape `y_fam` must meet `x_req` far out.
/// Only the unbounded pieces matter there.
std::optional<Failure> tail_failure(const SpaceMap& f, Shape x_req, Shape y_fam) {
  const PeriodicSet& x = f.source().carrier();
  const PeriodicSet& y = f.target().carrier();
  const PiecewiseAffine& r = *f.rule();
  for (bool right : {false, true}) {
    if (!has_tail(x, right)) continue;
    SideCond need = side(x_req, right);
    if (need == SideCond::Any) continue;
    const AffinePiece* p = r.tail_piece(right);
    if (!p) fail(Error::Kind::Internal, "carrier tail outside every piece");
    std::string where = right ? "right" : "left";
    if (p->slope == 0) {
      if (need != SideCond::Bounded) continue;
      const Rational& v = p->offset;
      return Failure{SetValue::line(intersect(y, PeriodicSet::open_interval(v - 1, v + 1))),
                     "the " + where + " tail is mapped to the point " + to_string(v)};
    }
    bool to_right = (p->slope > 0) == right;
    SideCond have = side(y_fam, to_right);
    if (have == SideCond::Bounded) continue;
    std::string there = to_right ? "right" : "left";
    if (need == SideCond::Bounded) {
      PeriodicSet ray = to_right ? PeriodicSet::ray_above(0) : PeriodicSet::ray_below(0);
      return Failure{SetValue::line(intersect(y, ray)),
                     "the " + where + " tail is mapped onto the unbounded " + there + " part of the target"};
    }
    if (need == SideCond::Finite && have == SideCond::Any) {
      PeriodicSet image = r.image(intersect(x, PeriodicSet::from_interval(p->domain)));
      return Failure{SetValue::line(alternating(y, image, to_right)),
                     "alternating target set toward the " + there + " pulls back to a pattern on the " + where +
                         " tail"};
    }
  }
  return std::nullopt;
}

/// A smop of the source with an image that is not small in the target.
std::optional<Failure> unbounded_image(const SpaceMap& f) {
  const Space& xs = f.source();
  const PeriodicSet& x = xs.carrier();
  Shape xsm = small_shape(xs), ysm = small_shape(f.target());
  const PiecewiseAffine& r = *f.rule();
  for (bool right : {false, true}) {
    if (!has_tail(x, right) || side(xsm, right) == SideCond::Bounded) continue;
    const AffinePiece* p = r.tail_piece(right);
    if (!p) fail(Error::Kind::Internal, "carrier tail outside every piece");
    if (p->slope == 0) continue;
    bool to_right = (p->slope > 0) == right;
    if (side(ysm, to_right) != SideCond::Bounded) continue;
    const auto& inner = right ? p->domain.lo() : p->domain.hi();
    Rational r0 = inner.infinite ? Rational(0) : inner.value;
    PeriodicSet ray = right ? PeriodicSet::ray_above(r0) : PeriodicSet::ray_below(r0);
    SetValue l = SetValue::line(intersect(x, ray));
    if (!xs.is_smop(l)) fail(Error::Kind::Internal, "tail witness is not a smop of " + xs.name());
    return Failure{l, std::string("the ") + (right ? "right" : "left") + " tail of a smop is mapped onto an unbounded " +
                          (to_right ? "right" : "left") + " part of the target"};
  }
  return std::nullopt;
}

using PreimageCheck = bool (Space::*)(const SetValue&) const;

/// Exact rule for f⁻¹(family of shape y_fam) ⊆ (family of shape x_req),
/// with witness verification and a seeded refutation search.
MapVerdict preimage_rule(const SpaceMap& f, Shape x_req, Shape y_fam, PreimageCheck in_source,
                         const std::string& what, const MapCheckOptions& options) {
  const Space& xs = f.source();
  Space fam = Space::line(f.target().carrier(), y_fam, "target family");
  MapVerdict v;
  std::optional<Failure> bad = discontinuity(f);
  if (!bad) bad = tail_failure(f, x_req, y_fam);
  if (bad) {
    SetValue pre = f.preimage(bad->witness);
    if (!fam.is_smop(bad->witness) || (xs.*in_source)(pre))
      fail(Error::Kind::Internal, what + ": counterwitness " + to_string(bad->witness.set) + " does not verify");
    v.holds = false;
    v.witness = bad->witness;
    v.detail = bad->detail + "; preimage " + to_string(pre.set);
    return v;
  }
  gen::Rng rng(options.seed);
  for (int i = 0; i < options.samples; ++i) {
    SetValue m = gen::smop(rng, fam);
    if (!(xs.*in_source)(f.preimage(m)))
      fail(Error::Kind::Internal, what + ": exact rule holds but sampled target set " + to_string(m.set) +
                                      " has a bad preimage");
  }
  v.detail = "exact rule; " + std::to_string(options.samples) + " sampled target sets agree";
  return v;
}

// ---------------------------------------------------------------------------
// Finite enumeration.

MapVerdict finite_preimages(const SpaceMap& f, const FFamily& targets, PreimageCheck in_source, const std::string& what) {
  MapVerdict v;
  for (Mask m : targets.sets()) {
    SetValue pre = f.preimage(SetValue::finite(m));
    if (!(f.source().*in_source)(pre)) {
      v.holds = false;
      v.witness = SetValue::finite(m);
      v.detail = what + ": preimage of " + format_mask(m) + " is " + format_mask(pre.mask);
      return v;
    }
  }
  v.detail = "enumerated " + std::to_string(targets.size()) + " target sets";
  return v;
}

MapVerdict finite_images_small(const SpaceMap& f, const FFamily& sources) {
  MapVerdict v;
  for (Mask l : sources.sets()) {
    SetValue img = f.image(SetValue::finite(l));
    if (!f.target().is_small_set(img)) {
      v.holds = false;
      v.witness = SetValue::finite(l);
      v.detail = "image " + format_mask(img.mask) + " of " + format_mask(l) + " lies in no smop";
      return v;
    }
  }
  v.detail = "enumerated " + std::to_string(sources.size()) + " source sets";
  return v;
}

MapVerdict finite_strict(const SpaceMap& f) {
  MapVerdict v;
  try {
    Gts gx = from_space(f.source());
    Gts gy = from_space(f.target());
    for (std::uint32_t code = 0; code < gy.subfamily_count(); ++code) {
      if (!gy.admissible(code)) continue;
      std::vector<Mask> pre;
      FFamily members = gy.family_at(code);
      for (Mask u : members.sets()) pre.push_back(f.preimage(SetValue::finite(u)).mask);
      FFamily pf(f.source().universe(), pre);
      if (!gx.admissible(pf)) {
        v.holds = false;
        v.detail = "preimage " + format_family(pf) + " of the admissible family " +
                   format_family(gy.family_at(code)) + " is not admissible";
        return v;
      }
    }
    v.detail = "enumerated " + std::to_string(gy.cov_size()) + " admissible families";
  } catch (const Error& e) {
    if (e.kind() != Error::Kind::SizeGuard) throw;
    // Past the gts size guard: every family on a finite carrier is essentially
    // finite, so admissible families are exactly the families of open sets.
    FFamily opens = f.target().family(Derived::Open);
    for (Mask u : opens.sets()) {
      SetValue pre = f.preimage(SetValue::finite(u));
      if (!f.source().is_open_set(pre)) {
        v.holds = false;
        v.detail = "preimage of the admissible family {" + format_mask(u) + "} is not open";
        return v;
      }
    }
    v.detail = "families of open sets (gts size guard exceeded)";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Strict continuity on the line.

/// Members whose preimage openness must be checked directly; beyond them the
/// preimages repeat up to translations that fix the carrier and the clip.
std::vector<Integer> translate_indices_to_check(const SpaceMap& f, const TranslatesAtom& a) {
  std::vector<Integer> out;
  if (a.first && a.last && *a.last - *a.first <= 4096) {
    for (Integer k = *a.first; k <= *a.last; ++k) out.push_back(k);
    return out;
  }
  const PeriodicSet& x = f.source().carrier();
  const PiecewiseAffine& r = *f.rule();
  Rational l = a.step;
  if (a.clip && a.clip->period()) l = rational_lcm(l, *a.clip->period());
  for (bool right : {false, true}) {
    const AffinePiece* p = r.tail_piece(right);
    if (p && p->slope != 0 && x.period()) l = rational_lcm(l, abs_value(p->slope) * *x.period());
  }
  Integer m = Rational(l / a.step).get_num();

  std::vector<Rational> marks;
  Rational px = x.period() ? *x.period() : Rational(1);
  for (const auto& p : r.pieces()) {
    for (const auto* end : {&p.domain.lo(), &p.domain.hi()})
      if (!end->infinite) marks.push_back(p.at(end->value));
    for (const Rational& t : std::vector<Rational>{x.window_lo() - px, x.window_hi() + px})
      if (p.domain.contains(t)) marks.push_back(p.at(t));
  }
  if (a.clip) {
    marks.push_back(a.clip->window_lo());
    marks.push_back(a.clip->window_hi());
  }
  if (marks.empty()) marks.push_back(0);
  Rational h_lo = *std::min_element(marks.begin(), marks.end()) - 2 * l;
  Rational h_hi = *std::max_element(marks.begin(), marks.end()) + 2 * l;
  Integer lo = floor_int((h_lo - *a.base.supremum()) / a.step) - m;
  Integer hi = ceil_int((h_hi - *a.base.infimum()) / a.step) + m;
  if (a.first) lo = std::max(lo, *a.first);
  if (a.last) hi = std::min(hi, *a.last);
  if (lo > hi) {
    if (a.first) hi = lo + m;
    else lo = hi - m;
  }
  if (hi - lo > 20000) fail(Error::Kind::SizeGuard, "too many translate members to check for openness");
  for (Integer k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

/// Preimage of a translate atom, split along the pieces of f.
void split_translates(const SpaceMap& f, const TranslatesAtom& a, std::vector<Family>& parts,
                      std::vector<SetValue>& listed) {
  const PeriodicSet& x = f.source().carrier();
  for (const auto& p : f.rule()->pieces()) {
    PeriodicSet dom = intersect(x, PeriodicSet::from_interval(p.domain));
    if (dom.is_empty()) continue;
    if (p.slope == 0) {
      if (a.clip && !a.clip->contains(p.offset)) continue;
      Integer k_lo = ceil_int((p.offset - *a.base.supremum()) / a.step);
      Integer k_hi = floor_int((p.offset - *a.base.infimum()) / a.step);
      if (a.first) k_lo = std::max(k_lo, *a.first);
      if (a.last) k_hi = std::min(k_hi, *a.last);
      for (Integer k = k_lo; k <= k_hi; ++k)
        if (a.member(k).contains(p.offset)) {
          listed.push_back(SetValue::line(dom));
          break;
        }
      continue;
    }
    PeriodicSet base = affine_preimage(a.base, p.slope, p.offset);
    if (base.is_empty()) continue;
    PeriodicSet clip = a.clip ? intersect(dom, affine_preimage(*a.clip, p.slope, p.offset)) : dom;
    TranslatesAtom t{base, a.step / abs_value(p.slope), a.first, a.last, clip};
    if (p.slope < 0) {
      t.first = a.last ? std::optional<Integer>(-*a.last) : std::nullopt;
      t.last = a.first ? std::optional<Integer>(-*a.first) : std::nullopt;
    }
    parts.push_back(Family::translates(t));
  }
}

std::string family_text(const Family& fam) { return to_string(fam); }

}  // namespace

// ---------------------------------------------------------------------------

PiecewiseAffine::PiecewiseAffine(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const AffinePiece& a, const AffinePiece& b) { return lo_before(a.domain, b.domain); });
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (intersect(pieces_[i].domain, pieces_[j].domain))
        fail(Error::Kind::Precondition, "pieces " + to_string(pieces_[i].domain) + " and " +
                                            to_string(pieces_[j].domain) + " overlap");
}

PiecewiseAffine PiecewiseAffine::affine(const Rational& slope, const Rational& offset) {
  return PiecewiseAffine({AffinePiece{QInterval::line(), slope, offset}});
}

const AffinePiece* PiecewiseAffine::piece_at(const Rational& x) const {
  for (const auto& p : pieces_)
    if (p.domain.contains(x)) return &p;
  return nullptr;
}

const AffinePiece* PiecewiseAffine::tail_piece(bool right) const {
  for (const auto& p : pieces_)
    if ((right ? p.domain.hi() : p.domain.lo()).infinite) return &p;
  return nullptr;
}

PeriodicSet PiecewiseAffine::image(const PeriodicSet& s) const {
  PeriodicSet out;
  for (const auto& p : pieces_) {
    PeriodicSet part = intersect(s, PeriodicSet::from_interval(p.domain));
    if (part.is_empty()) continue;
    out = unite(out, p.slope == 0 ? PeriodicSet::point(p.offset) : affine_image(part, p.slope, p.offset));
  }
  return out;
}

PeriodicSet PiecewiseAffine::preimage(const PeriodicSet& t, const PeriodicSet& within) const {
  PeriodicSet out;
  for (const auto& p : pieces_) {
    PeriodicSet dom = intersect(within, PeriodicSet::from_interval(p.domain));
    if (dom.is_empty()) continue;
    if (p.slope == 0) {
      if (t.contains(p.offset)) out = unite(out, dom);
      continue;
    }
    out = unite(out, intersect(dom, affine_preimage(t, p.slope, p.offset)));
  }
  return out;
}

SpaceMap::SpaceMap(Space source, Space target, std::variant<FiniteTable, PiecewiseAffine> rule, std::string name)
    : source_(std::move(source)), target_(std::move(target)), rule_(std::move(rule)), name_(std::move(name)) {}

SpaceMap SpaceMap::finite(Space source, Space target, FiniteTable table, std::string name) {
  if (source.backend() != Backend::Finite || target.backend() != Backend::Finite)
    fail(Error::Kind::Usage, "table maps need finite spaces");
  int n = source.universe().size(), m = target.universe().size();
  if (static_cast<int>(table.image.size()) != n)
    fail(Error::Kind::Precondition, "table has " + std::to_string(table.image.size()) + " entries for a universe of " +
                                        std::to_string(n));
  for (int i = 0; i < n; ++i) {
    bool in = (source.carrier_mask() >> i) & 1U;
    if (!in) {
      table.image[i] = -1;
      continue;
    }
    int j = table.image[i];
    if (j < 0 || j >= m || !((target.carrier_mask() >> j) & 1U))
      fail(Error::Kind::Precondition, "point " + std::to_string(i + 1) + " is not mapped into the target carrier");
  }
  return SpaceMap(std::move(source), std::move(target), std::move(table), std::move(name));
}

SpaceMap SpaceMap::piecewise(Space source, Space target, PiecewiseAffine rule, std::string name) {
  if (source.backend() != Backend::Interval || target.backend() != Backend::Interval)
    fail(Error::Kind::Usage, "piecewise maps need line spaces");
  PeriodicSet covered;
  for (const auto& p : rule.pieces()) covered = unite(covered, PeriodicSet::from_interval(p.domain));
  PeriodicSet missing = subtract(source.carrier(), covered);
  if (!missing.is_empty()) fail(Error::Kind::Precondition, "pieces do not cover the carrier: " + to_string(missing));
  PeriodicSet img = rule.image(source.carrier());
  if (!is_subset(img, target.carrier()))
    fail(Error::Kind::Precondition, "image leaves the target carrier: " + to_string(subtract(img, target.carrier())));
  return SpaceMap(std::move(source), std::move(target), std::move(rule), std::move(name));
}

SpaceMap SpaceMap::identity(Space source, Space target, std::string name) {
  if (source.backend() == Backend::Finite) {
    FiniteTable t;
    for (int i = 0; i < source.universe().size(); ++i) t.image.push_back(i);
    return finite(std::move(source), std::move(target), std::move(t), std::move(name));
  }
  return piecewise(std::move(source), std::move(target), PiecewiseAffine::affine(1, 0), std::move(name));
}

SpaceMap SpaceMap::constant(Space source, Space target, const SetValue& point, std::string name) {
  if (source.backend() == Backend::Finite) {
    if (std::popcount(point.mask) != 1) fail(Error::Kind::Precondition, "constant map needs a single point");
    FiniteTable t;
    t.image.assign(source.universe().size(), std::countr_zero(point.mask));
    return finite(std::move(source), std::move(target), std::move(t), std::move(name));
  }
  auto v = point.set.as_interval_list();
  if (!v || v->size() != 1 || !v->parts()[0].is_point())
    fail(Error::Kind::Precondition, "constant map needs a single point");
  return piecewise(std::move(source), std::move(target), PiecewiseAffine::affine(0, v->parts()[0].lo().value),
                   std::move(name));
}

SetValue SpaceMap::image(const SetValue& s) const {
  source_.require_backend(s);
  if (const FiniteTable* t = table()) {
    Mask out = 0;
    for (std::size_t i = 0; i < t->image.size(); ++i)
      if (((s.mask & source_.carrier_mask()) >> i) & 1U) out |= Mask{1} << t->image[i];
    return SetValue::finite(out);
  }
  return SetValue::line(rule()->image(intersect(s.set, source_.carrier())));
}

SetValue SpaceMap::preimage(const SetValue& t) const {
  target_.require_backend(t);
  if (const FiniteTable* tab = table()) {
    Mask out = 0;
    for (std::size_t i = 0; i < tab->image.size(); ++i)
      if (tab->image[i] >= 0 && ((t.mask >> tab->image[i]) & 1U)) out |= Mask{1} << i;
    return SetValue::finite(out);
  }
  return SetValue::line(rule()->preimage(t.set, source_.carrier()));
}

SpaceMap SpaceMap::between(Space source, Space target) const {
  if (const FiniteTable* t = table()) return finite(std::move(source), std::move(target), *t, name_);
  return piecewise(std::move(source), std::move(target), *rule(), name_);
}

SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
  std::string name = g.name() + "∘" + f.name();
  if (f.backend() != g.backend()) fail(Error::Kind::Usage, "composing maps on different backends");
  if (const FiniteTable* tf = f.table()) {
    if (f.target().carrier_mask() != g.source().carrier_mask() || !(f.target().universe() == g.source().universe()))
      fail(Error::Kind::Precondition, "target of " + f.name() + " is not the source of " + g.name());
    FiniteTable t;
    for (int j : tf->image) t.image.push_back(j < 0 ? -1 : g.table()->image[j]);
    return SpaceMap::finite(f.source(), g.target(), t, name);
  }
  if (!(f.target().carrier() == g.source().carrier()))
    fail(Error::Kind::Precondition, "target of " + f.name() + " is not the source of " + g.name());
  std::vector<AffinePiece> pieces;
  for (const auto& p : f.rule()->pieces()) {
    for (const auto& q : g.rule()->pieces()) {
      if (p.slope == 0) {
        if (q.domain.contains(p.offset)) pieces.push_back({p.domain, 0, q.at(p.offset)});
        continue;
      }
      PeriodicSet sub = intersect(PeriodicSet::from_interval(p.domain),
                                  affine_preimage(PeriodicSet::from_interval(q.domain), p.slope, p.offset));
      auto list = sub.as_interval_list();
      if (!list) fail(Error::Kind::Internal, "preimage of an interval is not an interval");
      for (const auto& part : list->parts())
        pieces.push_back({part, q.slope * p.slope, q.slope * p.offset + q.offset});
    }
  }
  return SpaceMap::piecewise(f.source(), g.target(), PiecewiseAffine(std::move(pieces)), name);
}

// ---------------------------------------------------------------------------

MapVerdict weakly_continuous(const SpaceMap& f, const MapCheckOptions& options) {
  if (f.backend() == Backend::Finite)
    return finite_preimages(f, f.target().family(Derived::WeaklyOpen), &Space::is_weakly_open, "weak continuity");
  return preimage_rule(f, Shape{}, Shape{}, &Space::is_weakly_open, "weak continuity", options);
}

MapVerdict continuous(const SpaceMap& f, const MapCheckOptions& options) {
  if (f.backend() == Backend::Finite)
    return finite_preimages(f, f.target().smops(), &Space::is_open_set, "continuity");
  return preimage_rule(f, f.source().derived_shape(Derived::Open), f.target().effective_shape(), &Space::is_open_set,
                       "continuity", options);
}

MapVerdict preimages_are_smops(const SpaceMap& f, const MapCheckOptions& options) {
  if (f.backend() == Backend::Finite) return finite_preimages(f, f.target().smops(), &Space::is_smop, "smop preimages");
  return preimage_rule(f, f.source().effective_shape(), f.target().effective_shape(), &Space::is_smop, "smop preimages",
                       options);
}

MapVerdict bounded(const SpaceMap& f, const MapCheckOptions& options) {
  if (f.backend() == Backend::Finite) return finite_images_small(f, f.source().smops());
  MapVerdict v;
  if (auto bad = unbounded_image(f)) {
    SetValue img = f.image(bad->witness);
    if (f.target().is_small_set(img))
      fail(Error::Kind::Internal, "boundedness counterwitness " + to_string(bad->witness.set) + " does not verify");
    v.holds = false;
    v.witness = bad->witness;
    v.detail = bad->detail + "; image " + to_string(img.set);
    return v;
  }
  gen::Rng rng(options.seed + 1);
  for (int i = 0; i < options.samples; ++i) {
    SetValue l = gen::smop(rng, f.source());
    if (!f.target().is_small_set(f.image(l)))
      fail(Error::Kind::Internal, "boundedness: exact rule holds but the image of sampled smop " + to_string(l.set) +
                                      " is not small");
  }
  v.detail = "exact rule; " + std::to_string(options.samples) + " sampled smops agree";
  return v;
}

BcReport check_bc_characterization(const SpaceMap& f, const MapCheckOptions& options) {
  BcReport r;
  if (f.backend() == Backend::Finite) {
    r.images_of_small = finite_images_small(f, f.source().family(Derived::Small));
    r.preimages_of_open = finite_preimages(f, f.target().family(Derived::Open), &Space::is_open_set, "open preimages");
  } else {
    // Small sets are the subsets of smops, so images of small sets are small
    // exactly when images of smops are.
    r.images_of_small = bounded(f, options);
    r.preimages_of_open = preimage_rule(f, f.source().derived_shape(Derived::Open),
                                        f.target().derived_shape(Derived::Open), &Space::is_open_set, "open preimages",
                                        options);
  }
  r.bc = r.images_of_small.holds && r.preimages_of_open.holds;
  r.bounded_continuous = bounded(f, options).holds && continuous(f, options).holds;
  if (r.bc != r.bounded_continuous)
    fail(Error::Kind::Internal, "(bc) and bounded continuity disagree for " + f.name());
  return r;
}

MapVerdict check_strict_continuity(const SpaceMap& f, const std::vector<Family>& families) {
  if (f.backend() == Backend::Finite) return finite_strict(f);
  const Space& x = f.source();
  const Space& y = f.target();
  MapVerdict v;
  for (const auto& fam : families) {
    FamilyReport in_target = classify_family(y, fam);
    if (!in_target.admissible)
      fail(Error::Kind::Precondition, "family " + family_text(fam) + " is not admissible in " + y.name() +
                                          (in_target.admissible_witness
                                               ? " (witness " + to_string(in_target.admissible_witness->set) + ")"
                                               : std::string()));
    if (!fam.chain_atoms().empty()) fail(Error::Kind::Usage, "preimages of chain families are not supported");

    auto refute = [&](const std::string& why, std::optional<SetValue> w) {
      v.holds = false;
      v.witness = std::move(w);
      v.detail = "preimage of the admissible family " + family_text(fam) + " " + why;
    };
    std::vector<SetValue> listed;
    std::vector<Family> parts;
    for (const auto& m : fam.list_members()) {
      SetValue pre = f.preimage(m);
      if (!x.is_open_set(pre)) {
        refute("has the non-open member " + to_string(pre.set), m);
        return v;
      }
      listed.push_back(pre);
    }
    for (const auto& a : fam.translate_atoms()) {
      if (a.base.is_empty()) continue;
      for (const Integer& k : translate_indices_to_check(f, a)) {
        SetValue m = SetValue::line(a.member(k));
        SetValue pre = f.preimage(m);
        if (!x.is_open_set(pre)) {
          refute("has the non-open member " + to_string(pre.set), m);
          return v;
        }
      }
      split_translates(f, a, parts, listed);
    }
    parts.push_back(Family::list(listed));
    FamilyReport in_source = classify_family(x, Family::union_of(parts), false);
    if (!in_source.admissible) {
      refute("is not essentially finite on the smop " +
                 (in_source.admissible_witness ? to_string(in_source.admissible_witness->set) : std::string("?")),
             in_source.admissible_witness);
      return v;
    }
  }
  v.detail = "preimages of " + std::to_string(families.size()) + " admissible families are admissible";
  return v;
}

std::vector<Family> strict_sample_catalog(const SpaceMap& f, const MapCheckOptions& options) {
  if (f.backend() != Backend::Interval) fail(Error::Kind::Usage, "the sample catalog is for line maps");
  const Space& ys = f.target();
  const PeriodicSet& x = f.source().carrier();
  const PeriodicSet& y = ys.carrier();
  const PiecewiseAffine& r = *f.rule();
  std::vector<Family> candidates;
  auto single = [&](PeriodicSet s) { candidates.push_back(Family::list({SetValue::line(std::move(s))})); };

  single(y);
  for (const auto& p : r.pieces()) {
    for (const auto* end : {&p.domain.lo(), &p.domain.hi()}) {
      if (end->infinite || !x.contains(end->value)) continue;
      const AffinePiece* q = r.piece_at(end->value);
      Rational v = q->at(end->value), limit = p.at(end->value);
      Rational eps = v == limit ? make_rational(1, 2) : Rational(abs_value(limit - v) / 2);
      single(intersect(y, PeriodicSet::open_interval(v - eps, v + eps)));
    }
  }
  for (bool right : {false, true}) {
    if (has_tail(y, right)) single(intersect(y, right ? PeriodicSet::ray_above(0) : PeriodicSet::ray_below(0)));
    const AffinePiece* p = r.tail_piece(right);
    if (p && p->slope != 0 && has_tail(x, right)) {
      PeriodicSet image = r.image(intersect(x, PeriodicSet::from_interval(p->domain)));
      single(alternating(y, image, (p->slope > 0) == right));
    }
  }
  PeriodicSet unit = PeriodicSet::open_interval(-1, 1);
  candidates.push_back(Family::translates({unit, 1, std::nullopt, std::nullopt, y}));
  candidates.push_back(Family::translates({unit, 1, Integer(0), std::nullopt, y}));
  candidates.push_back(Family::translates({unit, 1, std::nullopt, Integer(0), y}));

  gen::Rng rng(options.seed + 2);
  int extra = std::max(4, options.samples / 50);
  for (int i = 0; i < extra; ++i) {
    candidates.push_back(Family::list({gen::smop(rng, ys)}));
    Rational a = gen::grid_rational(rng, 1, 2);
    Rational w = make_rational(1 + static_cast<long>(rng() % 4), 2);
    Rational step = make_rational(1 + static_cast<long>(rng() % 4), 2);
    std::optional<Integer> first, last;
    switch (rng() % 3) {
      case 0: first = Integer(0); break;
      case 1: last = Integer(0); break;
      default: break;
    }
    candidates.push_back(Family::translates({PeriodicSet::open_interval(a, a + w), step, first, last, y}));
  }

  std::vector<Family> out;
  for (auto& c : candidates) {
    if (non_open_member(ys, c)) continue;
    if (classify_family(ys, c).admissible) out.push_back(std::move(c));
  }
  return out;
}

ClassificationReport classify_map(const SpaceMap& f, const MapCheckOptions& options) {
  ClassificationReport r;
  r.weakly_continuous = weakly_continuous(f, options);
  r.bounded = bounded(f, options);
  r.continuous = continuous(f, options);
  if (r.continuous.holds && !r.weakly_continuous.holds)
    fail(Error::Kind::Internal, f.name() + " is continuous but not weakly continuous");
  r.bounded_continuous.holds = r.bounded.holds && r.continuous.holds;
  if (!r.bounded.holds) r.bounded_continuous = r.bounded;
  else if (!r.continuous.holds) r.bounded_continuous = r.continuous;
  else r.bounded_continuous.detail = "bounded and continuous";

  if (f.backend() == Backend::Finite) {
    r.strictly_continuous = finite_strict(f);
  } else {
    std::vector<Family> catalog = strict_sample_catalog(f, options);
    r.families_checked = static_cast<int>(catalog.size());
    r.strictly_continuous = check_strict_continuity(f, catalog);
    r.samples_checked = options.samples;
  }
  if (r.strictly_continuous.holds != r.bounded_continuous.holds)
    fail(Error::Kind::Internal, "strict continuity (" + std::string(r.strictly_continuous.holds ? "holds" : "fails") +
                                    ") disagrees with bounded continuity for " + f.name() + ": " +
                                    r.strictly_continuous.detail);
  return r;
}

std::string to_string(const PiecewiseAffine& f) {
  std::string s = "piecewise {";
  bool first = true;
  for (const auto& p : f.pieces()) {
    s += (first ? " " : "; ") + std::string("on ") + to_string(p.domain) + ": x -> " + affine_text(p.slope, p.offset);
    first = false;
  }
  return s + " }";
}

std::string to_string(const SpaceMap& f) {
  std::string body;
  if (const FiniteTable* t = f.table()) {
    body = "table {";
    bool first = true;
    for (std::size_t i = 0; i < t->image.size(); ++i) {
      if (t->image[i] < 0) continue;
      body += (first ? "" : ", ") + std::to_string(i + 1) + " -> " + std::to_string(t->image[i] + 1);
      first = false;
    }
    body += "}";
  } else {
    body = to_string(*f.rule());
  }
  return "map " + body + " from " + f.source().name() + " to " + f.target().name();
}

}  // namespace locus

namespace locus {

std::vector<SpaceMap> map_catalog() {
  auto b = [](BuiltinLine id) { return Space::builtin(id); };
  using B = BuiltinLine;
  auto piece = [](QInterval d, Rational c, Rational o) { return AffinePiece{std::move(d), std::move(c), std::move(o)}; };
  std::vector<SpaceMap> out;
  for (B id : {B::om, B::rom, B::lom, B::lpom, B::slom, B::slpom, B::st, B::lst, B::lpst})
    out.push_back(SpaceMap::identity(b(id), b(id)));
  out.push_back(SpaceMap::identity(b(B::om), b(B::lom)));
  out.push_back(SpaceMap::identity(b(B::lom), b(B::om)));
  out.push_back(SpaceMap::identity(b(B::lpom), b(B::om)));
  out.push_back(SpaceMap::identity(b(B::om), b(B::st)));
  out.push_back(SpaceMap::identity(b(B::st), b(B::om)));
  out.push_back(SpaceMap::identity(b(B::lst), b(B::lom)));
  out.push_back(SpaceMap::identity(b(B::lom), b(B::lst)));
  out.push_back(SpaceMap::piecewise(b(B::lpom), b(B::lpom), PiecewiseAffine::affine(-1, 0), "neg"));
  out.push_back(SpaceMap::piecewise(b(B::lom), b(B::lom), PiecewiseAffine::affine(2, 1), "dilate"));
  out.push_back(SpaceMap::piecewise(b(B::om), b(B::om), PiecewiseAffine::affine(make_rational(1, 2), 0), "halve"));
  out.push_back(SpaceMap::piecewise(b(B::lst), b(B::om), PiecewiseAffine::affine(-3, 2), "flip"));
  out.push_back(SpaceMap::constant(b(B::om), b(B::lom), SetValue::line(PeriodicSet::point(1)), "const"));
  out.push_back(SpaceMap::constant(b(B::st), b(B::lst), SetValue::line(PeriodicSet::point(0)), "const"));
  QInterval below0({Rational(0), true, false}, {Rational(0), false, false});
  QInterval from0({Rational(0), false, true}, {Rational(0), true, false});
  out.push_back(SpaceMap::piecewise(
      b(B::lpom), b(B::lom), PiecewiseAffine({piece(below0, -1, 0), piece(from0, 2, 0)}), "fold"));
  out.push_back(SpaceMap::piecewise(
      b(B::lom), b(B::lom), PiecewiseAffine({piece(below0, 1, 0), piece(from0, 1, 1)}), "jump"));
  out.push_back(SpaceMap::piecewise(
      b(B::om), b(B::om), PiecewiseAffine({piece(below0, 0, 0), piece(from0, 1, 0)}), "ramp"));
  out.push_back(SpaceMap::piecewise(
      b(B::lom), b(B::lom), PiecewiseAffine({piece(below0, 0, 0), piece(from0, 1, 0)}), "ramp"));

  FiniteUniverse u3(3);
  auto fam3 = [&](std::vector<Mask> sets) { return FFamily(u3, std::move(sets)); };
  Space f1 = Space::finite(u3, fam3({0, 1, 3, 7}), "F1");
  Space discrete = Space::finite(u3, fam3({0, 1, 2, 4, 3, 5, 6, 7}), "discrete");
  Space indiscrete = Space::finite(u3, fam3({0, 7}), "indiscrete");
  out.push_back(SpaceMap::identity(f1, f1));
  out.push_back(SpaceMap::identity(discrete, f1));
  out.push_back(SpaceMap::identity(f1, indiscrete));
  out.push_back(SpaceMap::identity(indiscrete, f1));
  out.push_back(SpaceMap::finite(f1, f1, FiniteTable{{1, 0, 2}}, "swap"));
  return out;
}

}  // namespace locus
