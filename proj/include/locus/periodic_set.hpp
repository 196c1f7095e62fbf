#pragma once

// Eventually periodic unions of rational intervals.
//
// A set is presented by a window [lo, hi], a finite core inside it, and two
// one-sided tails sharing one period p: the left pattern lives in
// [lo - p, lo) and repeats to -inf, the right pattern lives in (hi, hi + p]
// and repeats to +inf. The normal form is unique (minimal common period,
// tightest window), so operator== is equality of the denoted sets.

#include <optional>
#include <string>

#include "locus/interval.hpp"

namespace locus {

/// Unchecked presentation; `PeriodicSet::normalize` is the only way in.
struct PeriodicParts {
  std::optional<Rational> period;
  Rational window_lo;
  Rational window_hi;
  IntervalList core;
  IntervalList left_pattern;
  IntervalList right_pattern;
};

enum class TailState { Empty, Full, Periodic };

class PeriodicSet {
 public:
  PeriodicSet();  // the empty set

  static PeriodicSet normalize(const PeriodicParts& raw);
  static PeriodicSet empty() { return {}; }
  static PeriodicSet line();
  static PeriodicSet from_interval(const QInterval& interval);
  static PeriodicSet from_list(const IntervalList& list);
  static PeriodicSet open_interval(const Rational& a, const Rational& b);
  static PeriodicSet point(const Rational& a);
  static PeriodicSet ray_above(const Rational& a, bool closed = false);  // (a, inf)
  static PeriodicSet ray_below(const Rational& a, bool closed = false);  // (-inf, a)

  /// ⋃ { base + k·step : k in [first, last] }, bounds optional (unbounded).
  static PeriodicSet translates_union(const IntervalList& base, const Rational& step,
                                      const std::optional<Integer>& first, const std::optional<Integer>& last);

  const std::optional<Rational>& period() const { return parts_.period; }
  const Rational& window_lo() const { return parts_.window_lo; }
  const Rational& window_hi() const { return parts_.window_hi; }
  const IntervalList& core() const { return parts_.core; }
  const IntervalList& left_pattern() const { return parts_.left_pattern; }
  const IntervalList& right_pattern() const { return parts_.right_pattern; }
  const PeriodicParts& parts() const { return parts_; }

  bool contains(const Rational& q) const;
  /// S ∩ range for a bounded range.
  IntervalList materialize(const QInterval& range) const;

  TailState left_tail() const;
  TailState right_tail() const;
  bool is_empty() const;
  bool is_bounded() const { return !parts_.period.has_value(); }
  bool is_bounded_above() const { return right_tail() == TailState::Empty; }
  bool is_bounded_below() const { return left_tail() == TailState::Empty; }
  bool is_open() const;
  bool is_closed() const;
  bool is_line() const;
  /// Finitely many components, i.e. both tails constant.
  bool finitely_many_components() const;
  std::optional<IntervalList> as_interval_list() const;

  /// Smallest closed range [lo, hi] outside which the set is purely periodic;
  /// always contains the window. Useful for sampling.
  QInterval hull_with_periods(int periods) const;
  std::optional<Rational> infimum() const;  // bounded below and nonempty
  std::optional<Rational> supremum() const;

  std::size_t component_count_in(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const PeriodicSet& a, const PeriodicSet& b);

 private:
  explicit PeriodicSet(PeriodicParts parts) : parts_(std::move(parts)) {}
  PeriodicParts parts_;
};

PeriodicSet unite(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet intersect(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet subtract(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet symmetric_difference(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet complement(const PeriodicSet& a);
PeriodicSet closure(const PeriodicSet& a);
PeriodicSet interior(const PeriodicSet& a);
/// { c·x + d : x ∈ S }.
PeriodicSet affine_image(const PeriodicSet& s, const Rational& c, const Rational& d);
/// { x : c·x + d ∈ S }.
PeriodicSet affine_preimage(const PeriodicSet& s, const Rational& c, const Rational& d);
PeriodicSet translate(const PeriodicSet& s, const Rational& t);
bool is_subset(const PeriodicSet& a, const PeriodicSet& b);
bool intersects(const PeriodicSet& a, const PeriodicSet& b);

/// Document syntax, e.g. "(0,1) u tail right period 1 pattern (0,1/2) from 3".
std::string to_string(const PeriodicSet& s);

}  // namespace locus
