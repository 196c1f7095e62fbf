#include "locus/periodic_set.hpp"

#include <algorithm>

namespace locus {

namespace {

using End = QInterval::End;

QInterval closed_range(const Rational& a, const Rational& b) { return QInterval::closed(a, b); }
QInterval right_cell(const Rational& b, const Rational& p) { return QInterval({b, false, false}, {b + p, false, true}); }
QInterval left_cell(const Rational& a, const Rational& p) { return QInterval({a - p, false, true}, {a, false, false}); }
IntervalList single(const QInterval& i) { return IntervalList(std::vector<QInterval>{i}); }

bool raw_contains(const PeriodicParts& p, const Rational& q) {
  if (p.core.contains(q)) return true;
  if (!p.period) return false;
  const Rational& period = *p.period;
  if (q > p.window_hi) {
    Integer k = ceil_int((q - p.window_hi) / period) - 1;
    return p.right_pattern.contains(q - Rational(k) * period);
  }
  if (q < p.window_lo) {
    Integer k = ceil_int((p.window_lo - q) / period) - 1;
    return p.left_pattern.contains(q + Rational(k) * period);
  }
  return false;
}

IntervalList raw_materialize(const PeriodicParts& p, const QInterval& range) {
  if (!range.bounded()) fail(Error::Kind::Internal, "materialize needs a bounded range");
  const Rational& lo = range.lo().value;
  const Rational& hi = range.hi().value;
  std::vector<QInterval> pieces;
  auto keep = [&](const QInterval& part) {
    if (auto i = intersect(part, range)) pieces.push_back(*i);
  };
  for (const auto& part : p.core.parts()) keep(part);
  if (p.period) {
    const Rational& period = *p.period;
    const Rational& a = p.window_lo;
    const Rational& b = p.window_hi;
    if (!p.right_pattern.empty() && hi > b) {
      Integer kmin = std::max<Integer>(0, floor_int((lo - b) / period) - 1);
      Integer kmax = ceil_int((hi - b) / period);
      for (Integer k = kmin; k <= kmax; ++k) {
        IntervalList copy = p.right_pattern.translated(Rational(k) * period);
        for (const auto& part : copy.parts()) keep(part);
      }
    }
    if (!p.left_pattern.empty() && lo < a) {
      Integer kmin = std::max<Integer>(0, floor_int((a - hi) / period) - 1);
      Integer kmax = ceil_int((a - lo) / period);
      for (Integer k = kmin; k <= kmax; ++k) {
        IntervalList copy = p.left_pattern.translated(-Rational(k) * period);
        for (const auto& part : copy.parts()) keep(part);
      }
    }
  }
  return IntervalList(pieces);
}

/// Re-presents a set with period `period` and window [a, b]. Valid whenever
/// the set is period-periodic on (b, inf) and on (-inf, a).
PeriodicParts reslice(const PeriodicParts& src, const Rational& period, const Rational& a, const Rational& b) {
  PeriodicParts out;
  out.period = period;
  out.window_lo = a;
  out.window_hi = b;
  out.core = raw_materialize(src, closed_range(a, b));
  out.right_pattern = raw_materialize(src, right_cell(b, period));
  out.left_pattern = raw_materialize(src, left_cell(a, period));
  return out;
}

TailState classify_tail(const IntervalList& pattern, const QInterval& cell) {
  if (pattern.empty()) return TailState::Empty;
  if (pattern == single(cell)) return TailState::Full;
  return TailState::Periodic;
}

PeriodicParts bounded_parts(const IntervalList& core) {
  PeriodicParts out;
  out.core = core;
  if (!core.empty()) {
    out.window_lo = core.parts().front().lo().value;
    out.window_hi = core.parts().back().hi().value;
  }
  return out;
}

Rational minimal_period_right(const PeriodicParts& s) {
  const Rational& p = *s.period;
  const Rational& b = s.window_hi;
  long candidates = static_cast<long>(s.right_pattern.size()) + 2;
  for (long m = candidates; m >= 2; --m) {
    Rational q = p / m;
    IntervalList shifted = raw_materialize(s, right_cell(b + q, p)).translated(-q);
    if (shifted == s.right_pattern) return q;
  }
  return p;
}

Rational minimal_period_left(const PeriodicParts& s) {
  const Rational& p = *s.period;
  const Rational& a = s.window_lo;
  long candidates = static_cast<long>(s.left_pattern.size()) + 2;
  for (long m = candidates; m >= 2; --m) {
    Rational q = p / m;
    IntervalList shifted = raw_materialize(s, left_cell(a - q, p)).translated(q);
    if (shifted == s.left_pattern) return q;
  }
  return p;
}

void validate(const PeriodicParts& raw) {
  if (raw.period && *raw.period <= 0) fail(Error::Kind::Precondition, "period must be positive");
  if (raw.window_lo > raw.window_hi) fail(Error::Kind::Precondition, "window_lo exceeds window_hi");
  if (!raw.period) {
    if (!raw.left_pattern.empty() || !raw.right_pattern.empty())
      fail(Error::Kind::Precondition, "tail pattern given without a period");
    return;
  }
  if (!subtract(raw.right_pattern, single(right_cell(raw.window_hi, *raw.period))).empty())
    fail(Error::Kind::Precondition, "right pattern escapes (window_hi, window_hi + period]");
  if (!subtract(raw.left_pattern, single(left_cell(raw.window_lo, *raw.period))).empty())
    fail(Error::Kind::Precondition, "left pattern escapes [window_lo - period, window_lo)");
}

}  // namespace

PeriodicSet::PeriodicSet() : parts_(bounded_parts(IntervalList())) {}

PeriodicSet PeriodicSet::normalize(const PeriodicParts& raw) {
  validate(raw);
  if (!raw.period && raw.core.bounded()) return PeriodicSet(bounded_parts(raw.core));

  PeriodicParts src = raw;
  Rational p = raw.period.value_or(Rational(1));
  src.period = p;
  Rational a = raw.window_lo, b = raw.window_hi;
  for (const auto& e : raw.core.endpoints()) {
    a = std::min(a, e);
    b = std::max(b, e);
  }
  PeriodicParts s1 = reslice(src, p, a, b);
  TailState right = classify_tail(s1.right_pattern, right_cell(b, p));
  TailState left = classify_tail(s1.left_pattern, left_cell(a, p));
  if (right == TailState::Empty && left == TailState::Empty) return PeriodicSet(bounded_parts(s1.core));

  std::optional<Rational> qr, ql;
  if (right == TailState::Periodic) qr = minimal_period_right(s1);
  if (left == TailState::Periodic) ql = minimal_period_left(s1);
  Rational period = qr && ql ? rational_lcm(*qr, *ql) : qr ? *qr : ql ? *ql : Rational(1);
  PeriodicParts s2 = period == p ? s1 : reslice(s1, period, a, b);

  // Points x with [x ∈ S] != [x + period ∈ S]; all of them lie in [a - period, b].
  IntervalList here = raw_materialize(s2, closed_range(a - period, b));
  IntervalList ahead = raw_materialize(s2, closed_range(a, b + period)).translated(-period);
  IntervalList defects = symmetric_difference(here, ahead);
  if (defects.empty()) return PeriodicSet(reslice(s2, period, 0, 0));

  Rational hi = defects.parts().back().hi().value;
  Rational lo = defects.parts().front().lo().value + period;
  if (lo <= hi) return PeriodicSet(reslice(s2, period, lo, hi));
  return PeriodicSet(reslice(s2, period, hi, hi));
}

PeriodicSet PeriodicSet::line() {
  static const PeriodicSet everything = from_interval(QInterval::line());
  return everything;
}

PeriodicSet PeriodicSet::from_interval(const QInterval& interval) {
  return from_list(single(interval));
}

PeriodicSet PeriodicSet::from_list(const IntervalList& list) {
  PeriodicParts raw = bounded_parts(list);
  if (!list.bounded()) {
    raw.window_lo = 0;
    raw.window_hi = 0;
  }
  return normalize(raw);
}

PeriodicSet PeriodicSet::open_interval(const Rational& a, const Rational& b) {
  return from_interval(QInterval::open(a, b));
}

PeriodicSet PeriodicSet::point(const Rational& a) { return from_interval(QInterval::point(a)); }

PeriodicSet PeriodicSet::ray_above(const Rational& a, bool closed) {
  return from_interval(QInterval({a, false, closed}, QInterval::pos_inf()));
}

PeriodicSet PeriodicSet::ray_below(const Rational& a, bool closed) {
  return from_interval(QInterval(QInterval::neg_inf(), {a, false, closed}));
}

PeriodicSet PeriodicSet::translates_union(const IntervalList& base, const Rational& step,
                                          const std::optional<Integer>& first, const std::optional<Integer>& last) {
  if (step <= 0) fail(Error::Kind::Precondition, "translate step must be positive");
  if (base.empty()) return {};
  if (!base.bounded()) fail(Error::Kind::Precondition, "translate base must be bounded");

  if (first && last) {
    if (*first > *last) return {};
    if (*last - *first > 100000) fail(Error::Kind::SizeGuard, "finite translate range too long");
    IntervalList acc;
    for (Integer k = *first; k <= *last; ++k) acc = unite(acc, base.translated(Rational(k) * step));
    return from_list(acc);
  }
  if (!first && last) {
    PeriodicSet mirrored = translates_union(base.affine(-1, 0), step, Integer(-*last), std::nullopt);
    return affine_image(mirrored, -1, 0);
  }
  if (!first && !last) {
    return unite(translates_union(base, step, Integer(0), std::nullopt),
                 translates_union(base, step, std::nullopt, Integer(-1)));
  }

  const Rational bl = base.parts().front().lo().value;
  const Rational bh = base.parts().back().hi().value;
  Integer extra = ceil_int((bh - bl) / step) + 2;
  IntervalList members;
  for (Integer k = *first; k <= *first + extra; ++k) members = unite(members, base.translated(Rational(k) * step));
  PeriodicParts raw;
  raw.period = step;
  raw.window_lo = bl + Rational(*first) * step;
  raw.window_hi = bh + Rational(*first) * step;
  raw.core = members;
  raw.right_pattern = restrict_to(members, right_cell(raw.window_hi, step));
  return normalize(raw);
}

bool PeriodicSet::contains(const Rational& q) const { return raw_contains(parts_, q); }

IntervalList PeriodicSet::materialize(const QInterval& range) const { return raw_materialize(parts_, range); }

TailState PeriodicSet::left_tail() const {
  if (!parts_.period) return TailState::Empty;
  return classify_tail(parts_.left_pattern, left_cell(parts_.window_lo, *parts_.period));
}

TailState PeriodicSet::right_tail() const {
  if (!parts_.period) return TailState::Empty;
  return classify_tail(parts_.right_pattern, right_cell(parts_.window_hi, *parts_.period));
}

bool PeriodicSet::is_empty() const { return !parts_.period && parts_.core.empty(); }

QInterval PeriodicSet::hull_with_periods(int periods) const {
  Rational p = parts_.period.value_or(Rational(1));
  return closed_range(parts_.window_lo - periods * p, parts_.window_hi + periods * p);
}

bool PeriodicSet::is_open() const {
  if (is_empty()) return true;
  QInterval range = hull_with_periods(2);
  const Rational& lo = range.lo().value;
  const Rational& hi = range.hi().value;
  IntervalList sample = materialize(range);
  for (const auto& part : sample.parts()) {
    if (part.lo().closed && part.lo().value != lo) return false;
    if (part.hi().closed && part.hi().value != hi) return false;
  }
  return true;
}

bool PeriodicSet::is_closed() const { return complement(*this).is_open(); }

bool PeriodicSet::is_line() const { return *this == line(); }

bool PeriodicSet::finitely_many_components() const {
  return left_tail() != TailState::Periodic && right_tail() != TailState::Periodic;
}

std::optional<IntervalList> PeriodicSet::as_interval_list() const {
  if (!finitely_many_components()) return std::nullopt;
  std::vector<QInterval> pieces = parts_.core.parts();
  if (left_tail() == TailState::Full) pieces.emplace_back(QInterval::neg_inf(), End{parts_.window_lo, false, false});
  if (right_tail() == TailState::Full) pieces.emplace_back(End{parts_.window_hi, false, false}, QInterval::pos_inf());
  return IntervalList(pieces);
}

std::optional<Rational> PeriodicSet::infimum() const {
  if (is_empty() || left_tail() != TailState::Empty) return std::nullopt;
  if (!parts_.core.empty()) return parts_.core.parts().front().lo().value;
  return parts_.right_pattern.parts().front().lo().value;
}

std::optional<Rational> PeriodicSet::supremum() const {
  if (is_empty() || right_tail() != TailState::Empty) return std::nullopt;
  if (!parts_.core.empty()) return parts_.core.parts().back().hi().value;
  return parts_.left_pattern.parts().back().hi().value;
}

std::size_t PeriodicSet::component_count_in(const Rational& lo, const Rational& hi) const {
  return materialize(closed_range(lo, hi)).size();
}

bool operator==(const PeriodicSet& a, const PeriodicSet& b) {
  const auto& x = a.parts_;
  const auto& y = b.parts_;
  return x.period == y.period && x.window_lo == y.window_lo && x.window_hi == y.window_hi && x.core == y.core &&
         x.left_pattern == y.left_pattern && x.right_pattern == y.right_pattern;
}

namespace {

using ListOp = IntervalList (*)(const IntervalList&, const IntervalList&);

// Only for operations with op(false, false) = false, so absent tails stay absent.
PeriodicSet combine(const PeriodicSet& s, const PeriodicSet& t, ListOp op) {
  if (!s.period() && !t.period()) return PeriodicSet::from_list(op(s.core(), t.core()));
  Rational p = s.period() && t.period() ? rational_lcm(*s.period(), *t.period()) : s.period() ? *s.period() : *t.period();
  Rational a = std::min(s.window_lo(), t.window_lo());
  Rational b = std::max(s.window_hi(), t.window_hi());
  PeriodicParts x = reslice(s.parts(), p, a, b);
  PeriodicParts y = reslice(t.parts(), p, a, b);
  PeriodicParts out;
  out.period = p;
  out.window_lo = a;
  out.window_hi = b;
  out.core = op(x.core, y.core);
  out.left_pattern = op(x.left_pattern, y.left_pattern);
  out.right_pattern = op(x.right_pattern, y.right_pattern);
  return PeriodicSet::normalize(out);
}

IntervalList point_list(const Rational& q) { return single(QInterval::point(q)); }

}  // namespace

PeriodicSet unite(const PeriodicSet& a, const PeriodicSet& b) {
  if (b.is_empty() || a.is_line()) return a;
  if (a.is_empty() || b.is_line()) return b;
  return combine(a, b, &locus::unite);
}

PeriodicSet intersect(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.is_empty() || b.is_line()) return a;
  if (b.is_empty() || a.is_line()) return b;
  return combine(a, b, &locus::intersect);
}

PeriodicSet subtract(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.is_empty() || b.is_empty()) return a;
  if (b.is_line()) return {};
  if (a.is_line()) return complement(b);
  return combine(a, b, &locus::subtract);
}
PeriodicSet symmetric_difference(const PeriodicSet& a, const PeriodicSet& b) {
  return combine(a, b, &locus::symmetric_difference);
}

PeriodicSet complement(const PeriodicSet& s) {
  Rational p = s.period().value_or(Rational(1));
  const Rational& a = s.window_lo();
  const Rational& b = s.window_hi();
  PeriodicParts r = reslice(s.parts(), p, a, b);
  PeriodicParts out;
  out.period = p;
  out.window_lo = a;
  out.window_hi = b;
  out.core = restrict_to(complement(r.core), closed_range(a, b));
  out.right_pattern = restrict_to(complement(r.right_pattern), right_cell(b, p));
  out.left_pattern = restrict_to(complement(r.left_pattern), left_cell(a, p));
  return PeriodicSet::normalize(out);
}

PeriodicSet closure(const PeriodicSet& s) {
  if (!s.period()) return PeriodicSet::from_list(closure(s.core()));
  const Rational& p = *s.period();
  const Rational& a = s.window_lo();
  const Rational& b = s.window_hi();
  IntervalList right = closure(s.right_pattern());  // inside [b, b + p]
  IntervalList left = closure(s.left_pattern());    // inside [a - p, a]
  PeriodicParts out;
  out.period = p;
  out.window_lo = a;
  out.window_hi = b;
  out.core = closure(s.core());
  out.right_pattern = restrict_to(right, right_cell(b, p));
  out.left_pattern = restrict_to(left, left_cell(a, p));
  if (right.contains(b)) {
    out.core = unite(out.core, point_list(b));
    out.right_pattern = unite(out.right_pattern, point_list(b + p));
  }
  if (left.contains(a)) {
    out.core = unite(out.core, point_list(a));
    out.left_pattern = unite(out.left_pattern, point_list(a - p));
  }
  return PeriodicSet::normalize(out);
}

PeriodicSet interior(const PeriodicSet& s) { return complement(closure(complement(s))); }

PeriodicSet affine_image(const PeriodicSet& s, const Rational& c, const Rational& d) {
  if (c == 0) return s.is_empty() ? PeriodicSet() : PeriodicSet::point(d);
  PeriodicParts out;
  out.core = s.core().affine(c, d);
  if (s.period()) out.period = abs(c) * *s.period();
  if (c > 0) {
    out.window_lo = c * s.window_lo() + d;
    out.window_hi = c * s.window_hi() + d;
    out.left_pattern = s.left_pattern().affine(c, d);
    out.right_pattern = s.right_pattern().affine(c, d);
  } else {
    out.window_lo = c * s.window_hi() + d;
    out.window_hi = c * s.window_lo() + d;
    out.left_pattern = s.right_pattern().affine(c, d);
    out.right_pattern = s.left_pattern().affine(c, d);
  }
  return PeriodicSet::normalize(out);
}

PeriodicSet affine_preimage(const PeriodicSet& s, const Rational& c, const Rational& d) {
  if (c == 0) return s.contains(d) ? PeriodicSet::line() : PeriodicSet();
  return affine_image(s, 1 / c, -d / c);
}

PeriodicSet translate(const PeriodicSet& s, const Rational& t) { return affine_image(s, 1, t); }

bool is_subset(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.is_empty() || b.is_line()) return true;
  return subtract(a, b).is_empty();
}
bool intersects(const PeriodicSet& a, const PeriodicSet& b) { return !intersect(a, b).is_empty(); }

namespace {

std::string join_parts(const IntervalList& list, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < list.parts().size(); ++i) {
    if (i) out += sep;
    out += to_string(list.parts()[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const PeriodicSet& s) {
  if (s.is_empty()) return "empty";
  if (s.is_line()) return "all";
  std::vector<std::string> terms;
  std::vector<QInterval> finite = s.core().parts();
  const Rational& a = s.window_lo();
  const Rational& b = s.window_hi();
  if (s.left_tail() == TailState::Full) finite.emplace_back(QInterval::neg_inf(), End{a, false, false});
  if (s.right_tail() == TailState::Full) finite.emplace_back(End{b, false, false}, QInterval::pos_inf());
  IntervalList merged(finite);
  for (const auto& part : merged.parts()) terms.push_back(to_string(part));
  // Tails print anchored at their first component so patterns start at 0.
  if (s.right_tail() == TailState::Periodic) {
    Rational origin = s.right_pattern().parts().front().lo().value;
    terms.push_back("tail right period " + to_string(*s.period()) + " pattern " +
                    join_parts(s.right_pattern().translated(-origin), " ") + " from " + to_string(origin));
  }
  if (s.left_tail() == TailState::Periodic) {
    Rational origin = s.left_pattern().parts().back().hi().value;
    terms.push_back("tail left period " + to_string(*s.period()) + " pattern " +
                    join_parts(s.left_pattern().translated(-origin), " ") + " from " + to_string(origin));
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " u ";
    out += terms[i];
  }
  return out;
}

}  // namespace locus
