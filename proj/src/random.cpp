#include "locus/random.hpp"

namespace locus::gen {

namespace {

bool has_tail_right(const PeriodicSet& s) { return s.right_tail() != TailState::Empty; }
bool has_tail_left(const PeriodicSet& s) { return s.left_tail() != TailState::Empty; }

/// Forces one side of a relatively open T ⊆ Y to meet `cond`.
PeriodicSet fix_side(Rng& rng, PeriodicSet t, const PeriodicSet& y, SideCond cond, bool right) {
  if (!(right ? has_tail_right(y) : has_tail_left(y))) return t;
  std::uniform_int_distribution<long> cut(-4, 4);
  Rational r = cut(rng);
  PeriodicSet far = right ? PeriodicSet::ray_above(r) : PeriodicSet::ray_below(r);
  PeriodicSet near = right ? PeriodicSet::ray_below(r + 4) : PeriodicSet::ray_above(r - 4);
  switch (cond) {
    case SideCond::Any: return t;
    case SideCond::Bounded: return intersect(t, near);
    case SideCond::Finite:
      if (std::bernoulli_distribution(0.5)(rng)) return intersect(t, near);
      return unite(t, intersect(y, far));
  }
  return t;
}

}  // namespace

Rational grid_rational(Rng& rng, long span, long den) {
  std::uniform_int_distribution<long> pick(-span * den, span * den);
  return make_rational(pick(rng), den);
}

QInterval interval(Rng& rng, long span, long den) {
  std::uniform_int_distribution<long> pick(-span * den, span * den);
  std::bernoulli_distribution coin(0.5);
  long a = pick(rng), b = pick(rng);
  if (a > b) std::swap(a, b);
  if (a == b) return QInterval::point(make_rational(a, den));
  return QInterval({make_rational(a, den), false, coin(rng)}, {make_rational(b, den), false, coin(rng)});
}

IntervalList interval_list(Rng& rng, int max_parts, long span, long den) {
  std::uniform_int_distribution<int> count(0, max_parts);
  std::vector<QInterval> parts;
  for (int i = count(rng); i > 0; --i) parts.push_back(interval(rng, span, den));
  return IntervalList(parts);
}

PeriodicSet periodic(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<long> step_num(1, 3);
  PeriodicSet s = PeriodicSet::from_list(interval_list(rng, 2, 3, 2));
  int k = kind(rng);
  if (k & 1) {
    IntervalList base = interval_list(rng, 2, 1, 2);
    s = unite(s, PeriodicSet::translates_union(base, make_rational(step_num(rng), 2), Integer(0), std::nullopt));
  }
  if (k & 2) {
    IntervalList base = interval_list(rng, 2, 1, 2);
    s = unite(s, PeriodicSet::translates_union(base, make_rational(step_num(rng), 3), std::nullopt, Integer(0)));
  }
  return s;
}

PeriodicSet open_periodic(Rng& rng) { return interior(periodic(rng)); }

FFamily finite_family(Rng& rng, int n, int max_sets) {
  FiniteUniverse u(n);
  std::uniform_int_distribution<Mask> pick(0, u.full());
  std::uniform_int_distribution<int> count(0, max_sets);
  std::vector<Mask> sets;
  for (int i = count(rng); i > 0; --i) sets.push_back(pick(rng));
  return FFamily(u, sets);
}

Space finite_space(Rng& rng, int n) {
  FFamily ring = generate_ring(finite_family(rng, n, 3));
  return Space::finite(FiniteUniverse(n), ring.union_of(), ring, "random");
}

SpaceMap finite_map(Rng& rng, int n) {
  Space x = finite_space(rng, n);
  Space y = finite_space(rng, n);
  std::vector<int> points;
  for (int j = 0; j < n; ++j)
    if ((y.carrier_mask() >> j) & 1U) points.push_back(j);
  if (points.empty()) {
    y = Space::finite(FiniteUniverse(n), 1, FFamily(FiniteUniverse(n), {0, 1}), "random");
    points.push_back(0);
  }
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  FiniteTable t;
  for (int i = 0; i < n; ++i) t.image.push_back(points[pick(rng)]);
  return SpaceMap::finite(std::move(x), std::move(y), std::move(t), "g");
}

SetValue smop(Rng& rng, const Space& x) {
  if (x.backend() == Backend::Finite) {
    const auto& sets = x.smops().sets();
    std::uniform_int_distribution<std::size_t> pick(0, sets.size() - 1);
    return SetValue::finite(sets[pick(rng)]);
  }
  const PeriodicSet& y = x.carrier();
  Shape e = x.effective_shape();
  for (int attempt = 0; attempt < 8; ++attempt) {
    PeriodicSet t = intersect(open_periodic(rng), y);
    t = fix_side(rng, std::move(t), y, e.left, false);
    t = fix_side(rng, std::move(t), y, e.right, true);
    SetValue out = SetValue::line(std::move(t));
    if (x.is_smop(out)) return out;
  }
  return SetValue::line(PeriodicSet::empty());
}

SetValue weakly_open(Rng& rng, const Space& x) {
  if (x.backend() == Backend::Finite) {
    Mask pick = std::uniform_int_distribution<Mask>(0, x.universe().full())(rng);
    Mask out = 0;
    for (Mask l : x.smops().sets())
      if ((l & ~pick) == 0) out |= l;
    return SetValue::finite(out);
  }
  return SetValue::line(intersect(open_periodic(rng), x.carrier()));
}

SetValue subset(Rng& rng, const Space& x) {
  if (x.backend() == Backend::Finite) {
    Mask pick = std::uniform_int_distribution<Mask>(0, x.universe().full())(rng);
    return SetValue::finite(pick & x.carrier_mask());
  }
  return SetValue::line(intersect(periodic(rng), x.carrier()));
}

}  // namespace locus::gen
