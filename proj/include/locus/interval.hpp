#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locus/rational.hpp"

namespace locus {

/// An interval of the rational line. Infinite endpoints are always open; a
/// degenerate interval is a closed point.
class QInterval {
 public:
  struct End {
    Rational value;
    bool infinite = false;
    bool closed = false;
  };

  /// Throws on an empty or malformed interval; see `make` for a total variant.
  QInterval(End lo, End hi);

  static std::optional<QInterval> make(End lo, End hi);
  static QInterval open(const Rational& a, const Rational& b) { return QInterval({a, false, false}, {b, false, false}); }
  static QInterval closed(const Rational& a, const Rational& b) { return QInterval({a, false, true}, {b, false, true}); }
  static QInterval point(const Rational& a) { return closed(a, a); }
  static QInterval line() { return QInterval({0, true, false}, {0, true, false}); }
  static End neg_inf() { return End{0, true, false}; }
  static End pos_inf() { return End{0, true, false}; }

  const End& lo() const { return lo_; }
  const End& hi() const { return hi_; }
  bool bounded() const { return !lo_.infinite && !hi_.infinite; }
  bool is_point() const { return !lo_.infinite && !hi_.infinite && lo_.value == hi_.value; }
  bool contains(const Rational& q) const;

  friend bool operator==(const QInterval& a, const QInterval& b);

 private:
  End lo_, hi_;
};

std::string to_string(const QInterval& interval);

std::optional<QInterval> intersect(const QInterval& a, const QInterval& b);

/// A finite union of rational intervals in normal form: sorted, pairwise
/// disjoint, and no two components mergeable.
class IntervalList {
 public:
  IntervalList() = default;
  /// Accepts any intervals (overlapping, unsorted) and normalizes.
  explicit IntervalList(const std::vector<QInterval>& parts);

  using Membership = std::function<bool(const Rational&)>;
  /// Builds the set whose boundary lies inside `breakpoints`, sampling the
  /// membership oracle at each breakpoint and at one point of each gap.
  static IntervalList from_membership(std::vector<Rational> breakpoints, const Membership& contains);

  const std::vector<QInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  bool contains(const Rational& q) const;
  bool bounded() const;
  std::vector<Rational> endpoints() const;

  IntervalList translated(const Rational& t) const;
  /// { c·x + d : x ∈ this } for c != 0.
  IntervalList affine(const Rational& c, const Rational& d) const;

  friend bool operator==(const IntervalList&, const IntervalList&) = default;

 private:
  friend IntervalList restrict_to(const IntervalList& a, const QInterval& range);
  std::vector<QInterval> parts_;
};

IntervalList unite(const IntervalList& a, const IntervalList& b);
IntervalList intersect(const IntervalList& a, const IntervalList& b);
IntervalList subtract(const IntervalList& a, const IntervalList& b);
IntervalList symmetric_difference(const IntervalList& a, const IntervalList& b);
IntervalList complement(const IntervalList& a);
IntervalList closure(const IntervalList& a);
IntervalList interior(const IntervalList& a);
IntervalList restrict_to(const IntervalList& a, const QInterval& range);

std::string to_string(const IntervalList& list);

}  // namespace locus
