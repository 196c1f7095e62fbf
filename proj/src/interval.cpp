#include "locus/interval.hpp"

#include <algorithm>

namespace locus {

namespace {

bool valid(const QInterval::End& lo, const QInterval::End& hi) {
  if (lo.infinite || hi.infinite) return true;
  if (lo.value < hi.value) return true;
  return lo.value == hi.value && lo.closed && hi.closed;
}

QInterval::End tidy(QInterval::End e) {
  if (e.infinite) {
    e.value = 0;
    e.closed = false;
  }
  e.value.canonicalize();
  return e;
}

}  // namespace

QInterval::QInterval(End lo, End hi) : lo_(tidy(std::move(lo))), hi_(tidy(std::move(hi))) {
  if (!valid(lo_, hi_)) fail(Error::Kind::Precondition, "empty or malformed interval");
}

std::optional<QInterval> QInterval::make(End lo, End hi) {
  lo = tidy(std::move(lo));
  hi = tidy(std::move(hi));
  if (!valid(lo, hi)) return std::nullopt;
  return QInterval(std::move(lo), std::move(hi));
}

bool QInterval::contains(const Rational& q) const {
  if (!lo_.infinite && (q < lo_.value || (q == lo_.value && !lo_.closed))) return false;
  if (!hi_.infinite && (q > hi_.value || (q == hi_.value && !hi_.closed))) return false;
  return true;
}

bool operator==(const QInterval& a, const QInterval& b) {
  auto same = [](const QInterval::End& x, const QInterval::End& y) {
    if (x.infinite || y.infinite) return x.infinite == y.infinite;
    return x.value == y.value && x.closed == y.closed;
  };
  return same(a.lo_, b.lo_) && same(a.hi_, b.hi_);
}

std::string to_string(const QInterval& interval) {
  const auto& lo = interval.lo();
  const auto& hi = interval.hi();
  std::string s = lo.closed ? "[" : "(";
  s += lo.infinite ? "-inf" : to_string(lo.value);
  s += ",";
  s += hi.infinite ? "inf" : to_string(hi.value);
  s += hi.closed ? "]" : ")";
  return s;
}

namespace {

// Lower ends ordered by position; at equal values a closed end starts first.
bool lo_before(const QInterval::End& a, const QInterval::End& b) {
  if (a.infinite || b.infinite) return a.infinite && !b.infinite;
  if (a.value != b.value) return a.value < b.value;
  return a.closed && !b.closed;
}

// Upper ends ordered by position; at equal values an open end comes first.
bool hi_before(const QInterval::End& a, const QInterval::End& b) {
  if (a.infinite || b.infinite) return b.infinite && !a.infinite;
  if (a.value != b.value) return a.value < b.value;
  return !a.closed && b.closed;
}

// Whether an interval ending at `hi` and one starting at `lo` (not earlier)
// overlap or touch without a gap.
bool joins(const QInterval::End& hi, const QInterval::End& lo) {
  if (hi.infinite) return true;
  if (lo.value != hi.value) return lo.value < hi.value;
  return hi.closed || lo.closed;
}

}  // namespace

std::optional<QInterval> intersect(const QInterval& a, const QInterval& b) {
  QInterval::End lo = lo_before(a.lo(), b.lo()) ? b.lo() : a.lo();
  QInterval::End hi = hi_before(a.hi(), b.hi()) ? a.hi() : b.hi();
  return QInterval::make(lo, hi);
}

IntervalList::IntervalList(const std::vector<QInterval>& parts) {
  std::vector<QInterval> sorted = parts;
  std::sort(sorted.begin(), sorted.end(),
            [](const QInterval& a, const QInterval& b) { return lo_before(a.lo(), b.lo()); });
  for (auto& p : sorted) {
    if (!parts_.empty() && joins(parts_.back().hi(), p.lo())) {
      if (hi_before(parts_.back().hi(), p.hi())) parts_.back() = QInterval(parts_.back().lo(), p.hi());
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

IntervalList IntervalList::from_membership(std::vector<Rational> bps, const Membership& contains) {
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  IntervalList out;
  std::optional<QInterval::End> run;
  auto close_run = [&](QInterval::End hi) {
    out.parts_.emplace_back(*run, std::move(hi));
    run.reset();
  };

  if (bps.empty()) {
    if (contains(Rational(0))) out.parts_.push_back(QInterval::line());
    return out;
  }

  // Pieces in order: (-inf,b0), {b0}, (b0,b1), {b1}, ..., {bn}, (bn,inf).
  if (contains(bps.front() - 1)) run = QInterval::neg_inf();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const Rational& b = bps[i];
    bool point_in = contains(b);
    if (point_in && !run) run = QInterval::End{b, false, true};
    if (!point_in && run) close_run({b, false, false});

    bool last = i + 1 == bps.size();
    Rational probe = last ? Rational(b + 1) : Rational((b + bps[i + 1]) / 2);
    bool gap_in = contains(probe);
    if (gap_in && !run) run = QInterval::End{b, false, false};
    if (!gap_in && run) close_run({b, false, true});
  }
  if (run) close_run(QInterval::pos_inf());
  return out;
}

bool IntervalList::contains(const Rational& q) const {
  auto it = std::partition_point(parts_.begin(), parts_.end(), [&](const QInterval& p) {
    return !p.hi().infinite && (p.hi().value < q || (p.hi().value == q && !p.hi().closed));
  });
  return it != parts_.end() && it->contains(q);
}

bool IntervalList::bounded() const {
  return parts_.empty() || (!parts_.front().lo().infinite && !parts_.back().hi().infinite);
}

std::vector<Rational> IntervalList::endpoints() const {
  std::vector<Rational> out;
  for (const auto& p : parts_) {
    if (!p.lo().infinite) out.push_back(p.lo().value);
    if (!p.hi().infinite) out.push_back(p.hi().value);
  }
  return out;
}

IntervalList IntervalList::translated(const Rational& t) const { return affine(1, t); }

IntervalList IntervalList::affine(const Rational& c, const Rational& d) const {
  if (c == 0) fail(Error::Kind::Precondition, "affine: zero slope");
  std::vector<QInterval> mapped;
  for (const auto& p : parts_) {
    QInterval::End lo = p.lo(), hi = p.hi();
    if (!lo.infinite) lo.value = c * lo.value + d;
    if (!hi.infinite) hi.value = c * hi.value + d;
    if (c > 0)
      mapped.emplace_back(lo, hi);
    else
      mapped.emplace_back(hi, lo);
  }
  IntervalList out;
  out.parts_ = std::move(mapped);
  if (c < 0) std::reverse(out.parts_.begin(), out.parts_.end());
  return out;
}

namespace {

template <typename Op>
IntervalList combine(const IntervalList& a, const IntervalList& b, Op op) {
  std::vector<Rational> bps = a.endpoints();
  auto more = b.endpoints();
  bps.insert(bps.end(), more.begin(), more.end());
  return IntervalList::from_membership(std::move(bps),
                                       [&](const Rational& q) { return op(a.contains(q), b.contains(q)); });
}

}  // namespace

IntervalList unite(const IntervalList& a, const IntervalList& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<QInterval> all = a.parts();
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalList(all);
}
IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}
IntervalList subtract(const IntervalList& a, const IntervalList& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}
IntervalList symmetric_difference(const IntervalList& a, const IntervalList& b) {
  return combine(a, b, [](bool x, bool y) { return x != y; });
}

IntervalList complement(const IntervalList& a) {
  return IntervalList::from_membership(a.endpoints(), [&](const Rational& q) { return !a.contains(q); });
}

IntervalList closure(const IntervalList& a) {
  std::vector<QInterval> closed;
  for (const auto& p : a.parts()) {
    QInterval::End lo = p.lo(), hi = p.hi();
    if (!lo.infinite) lo.closed = true;
    if (!hi.infinite) hi.closed = true;
    closed.emplace_back(lo, hi);
  }
  return IntervalList(closed);
}

IntervalList interior(const IntervalList& a) { return complement(closure(complement(a))); }

IntervalList restrict_to(const IntervalList& a, const QInterval& range) {
  std::vector<QInterval> kept;
  for (const auto& p : a.parts())
    if (auto i = intersect(p, range)) kept.push_back(*i);
  IntervalList out;
  out.parts_ = std::move(kept);  // already sorted, disjoint, non-adjacent
  return out;
}

std::string to_string(const IntervalList& list) {
  if (list.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < list.parts().size(); ++i) {
    if (i) s += " u ";
    s += to_string(list.parts()[i]);
  }
  return s;
}

}  // namespace locus
