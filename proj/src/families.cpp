#include "locus/families.hpp"

#include <algorithm>

namespace locus {

namespace {

enum class Side { Left, Right };

bool has_tail(const PeriodicSet& s, Side side) {
  return (side == Side::Left ? s.left_tail() : s.right_tail()) != TailState::Empty;
}

/// Whether some smop of X is unbounded toward `side`.
bool admits_unbounded(const Space& x, Side side) {
  const Shape e = x.effective_shape();
  SideCond c = side == Side::Left ? e.left : e.right;
  return has_tail(x.carrier(), side) && c != SideCond::Bounded;
}

/// A smop of X unbounded toward `side`: X itself when small, else a ray of X.
SetValue unbounded_smop(const Space& x, Side side) {
  SetValue whole = x.carrier_value();
  if (x.is_smop(whole)) return whole;
  PeriodicSet ray = side == Side::Right ? PeriodicSet::ray_above(0) : PeriodicSet::ray_below(0);
  SetValue out = SetValue::line(intersect(x.carrier(), ray));
  if (!x.is_smop(out)) fail(Error::Kind::Internal, "ray of " + x.name() + " is not a smop");
  return out;
}

void require_bounded_base(const PeriodicSet& base, const Rational& step) {
  if (!base.is_bounded()) fail(Error::Kind::Precondition, "translate base must be bounded");
  if (step <= 0) fail(Error::Kind::Precondition, "translate step must be positive");
}

/// Index period and window bounds beyond which member k and member k + m
/// differ by a translation that fixes the carrier and the clip.
struct IndexRegime {
  Integer period;  // m
  Integer k_left;  // members with k <= k_left lie left of every window
  Integer k_right; // members with k >= k_right lie right of every window
};

IndexRegime index_regime(const PeriodicSet& base, const Rational& step, const PeriodicSet& y,
                         const std::optional<PeriodicSet>& clip) {
  Rational l = step;
  Rational w_lo = y.window_lo(), w_hi = y.window_hi();
  auto absorb = [&](const PeriodicSet& s) {
    if (s.period()) l = rational_lcm(l, *s.period());
    w_lo = std::min(w_lo, s.window_lo());
    w_hi = std::max(w_hi, s.window_hi());
  };
  absorb(y);
  if (clip) absorb(*clip);
  Rational bl = *base.infimum(), bh = *base.supremum();
  Rational m = l / step;
  if (m.get_den() != 1) fail(Error::Kind::Internal, "index period is not an integer");
  return {m.get_num(), ceil_int((w_lo - bh) / step) - 1, floor_int((w_hi - bl) / step) + 1};
}

std::optional<PeriodicSet> first_non_open(const Space& x, const std::vector<PeriodicSet>& sets) {
  for (const auto& s : sets)
    if (!x.is_open_set(SetValue::line(s))) return s;
  return std::nullopt;
}

std::optional<PeriodicSet> non_open_translate(const Space& x, const TranslatesAtom& a) {
  if (a.base.is_empty()) return std::nullopt;
  std::vector<PeriodicSet> check;
  if (a.first && a.last && *a.last - *a.first <= 4096) {
    for (Integer k = *a.first; k <= *a.last; ++k) check.push_back(a.member(k));
    return first_non_open(x, check);
  }
  IndexRegime r = index_regime(a.base, a.step, x.carrier(), a.clip);
  Integer lo = r.k_left - r.period, hi = r.k_right + r.period;
  if (a.first) lo = std::max(lo, *a.first);
  if (a.last) hi = std::min(hi, *a.last);
  if (lo > hi) {
    // The whole range sits in one periodic regime.
    if (a.first) hi = lo + r.period;
    else lo = hi - r.period;
  }
  for (Integer k = lo; k <= hi; ++k) check.push_back(a.member(k));
  return first_non_open(x, check);
}

std::optional<PeriodicSet> non_open_chain_member(const Space& x, const ChainAtom& c) {
  if (c.base.is_empty()) return std::nullopt;
  if (!c.growing()) return first_non_open(x, {c.member(0)});
  // Sufficient: every translate of the base is open.
  TranslatesAtom all{c.base, c.step, std::nullopt, std::nullopt, std::nullopt};
  if (!non_open_translate(x, all)) return std::nullopt;
  // Otherwise examine the members directly until their ends repeat.
  IndexRegime r = index_regime(c.base, c.step, x.carrier(), std::nullopt);
  Integer reach = std::max<Integer>(r.k_right, -r.k_left) + 1;
  Integer j0 = reach > c.start ? Integer((reach - c.start + c.stride - 1) / c.stride) : Integer(0);
  std::vector<PeriodicSet> check;
  for (Integer j = 0; j <= j0 + r.period; ++j) check.push_back(c.member(j));
  return first_non_open(x, check);
}

std::string format_value(const SetValue& s) {
  return s.backend == Backend::Finite ? format_mask(s.mask) : to_string(s.set);
}

}  // namespace

PeriodicSet TranslatesAtom::member(const Integer& k) const {
  PeriodicSet m = translate(base, Rational(k) * step);
  return clip ? intersect(m, *clip) : m;
}

PeriodicSet TranslatesAtom::union_set() const {
  if (base.is_empty()) return {};
  PeriodicSet u = PeriodicSet::translates_union(base.core(), step, first, last);
  return clip ? intersect(u, *clip) : u;
}

PeriodicSet ChainAtom::member(const Integer& j) const {
  if (base.is_empty()) return {};
  Integer r = radius(j);
  return PeriodicSet::translates_union(base.core(), step, Integer(-r), r);
}

PeriodicSet ChainAtom::union_set() const {
  if (!growing()) return member(0);
  return PeriodicSet::translates_union(base.core(), step, std::nullopt, std::nullopt);
}

Family Family::list(std::vector<SetValue> members) {
  for (const auto& m : members)
    if (m.backend != members.front().backend) fail(Error::Kind::Usage, "family members on different backends");
  Family f;
  f.list_ = std::move(members);
  return f;
}

Family Family::translates(TranslatesAtom atom) {
  require_bounded_base(atom.base, atom.step);
  if (atom.first && atom.last && *atom.first > *atom.last)
    fail(Error::Kind::Precondition, "translate range is empty");
  Family f;
  f.translates_.push_back(std::move(atom));
  return f;
}

Family Family::chain(ChainAtom atom) {
  require_bounded_base(atom.base, atom.step);
  if (atom.start < 0 || atom.stride < 0) fail(Error::Kind::Precondition, "chain start and stride must be >= 0");
  Family f;
  f.chains_.push_back(std::move(atom));
  return f;
}

Family Family::union_of(const std::vector<Family>& parts) {
  Family f;
  for (const auto& p : parts) {
    f.list_.insert(f.list_.end(), p.list_.begin(), p.list_.end());
    f.translates_.insert(f.translates_.end(), p.translates_.begin(), p.translates_.end());
    f.chains_.insert(f.chains_.end(), p.chains_.begin(), p.chains_.end());
  }
  if ((!f.translates_.empty() || !f.chains_.empty()) &&
      std::any_of(f.list_.begin(), f.list_.end(), [](const SetValue& s) { return s.backend == Backend::Finite; }))
    fail(Error::Kind::Usage, "family mixes finite sets with line atoms");
  return f;
}

bool Family::is_finite() const {
  return std::none_of(translates_.begin(), translates_.end(), [](const TranslatesAtom& a) { return a.infinite(); }) &&
         std::none_of(chains_.begin(), chains_.end(), [](const ChainAtom& c) { return c.growing(); });
}

Backend Family::backend() const {
  if (!list_.empty()) return list_.front().backend;
  return Backend::Interval;
}

std::vector<SetValue> Family::sample_members(std::size_t per_atom) const {
  std::vector<SetValue> out = list_;
  for (const auto& a : translates_) {
    std::vector<Integer> ks;
    if (a.first) {
      for (std::size_t i = 0; i < per_atom; ++i) ks.push_back(*a.first + i);
    } else if (a.last) {
      for (std::size_t i = 0; i < per_atom; ++i) ks.push_back(*a.last - i);
    } else {
      for (std::size_t i = 0; i < per_atom; ++i) ks.push_back(i % 2 ? Integer(-long(i + 1) / 2) : Integer(long(i / 2)));
    }
    for (const auto& k : ks)
      if (!a.last || k <= *a.last)
        if (!a.first || k >= *a.first) out.push_back(SetValue::line(a.member(k)));
  }
  for (const auto& c : chains_) {
    std::size_t n = c.growing() ? per_atom : 1;
    for (std::size_t j = 0; j < n; ++j) out.push_back(SetValue::line(c.member(Integer(long(j)))));
  }
  return out;
}

SetValue family_union(const Space& x, const Family& f) {
  if (x.backend() == Backend::Finite) {
    Mask u = 0;
    for (const auto& m : f.list_members()) {
      x.require_backend(m);
      u |= m.mask;
    }
    if (!f.translate_atoms().empty() || !f.chain_atoms().empty())
      fail(Error::Kind::Usage, "line family over a finite space");
    return SetValue::finite(u);
  }
  PeriodicSet u;
  for (const auto& m : f.list_members()) {
    x.require_backend(m);
    u = unite(u, m.set);
  }
  for (const auto& a : f.translate_atoms()) u = unite(u, a.union_set());
  for (const auto& c : f.chain_atoms()) u = unite(u, c.union_set());
  return SetValue::line(u);
}

std::optional<SetValue> non_open_member(const Space& x, const Family& f) {
  for (const auto& m : f.list_members())
    if (!x.is_open_set(m)) return m;
  if (f.translate_atoms().empty() && f.chain_atoms().empty()) return std::nullopt;
  x.carrier();
  for (const auto& a : f.translate_atoms())
    if (auto bad = non_open_translate(x, a)) return SetValue::line(*bad);
  for (const auto& c : f.chain_atoms())
    if (auto bad = non_open_chain_member(x, c)) return SetValue::line(*bad);
  return std::nullopt;
}

FamilyReport classify_family(const Space& x, const Family& f, bool require_open_members) {
  if (auto bad = require_open_members ? non_open_member(x, f) : std::nullopt)
    fail(Error::Kind::Precondition, "family member " + format_value(*bad) + " is not open in " + x.name());
  FamilyReport r;
  r.union_set = family_union(x, f);
  r.union_open = x.is_open_set(r.union_set);
  r.union_weakly_open = x.is_weakly_open(r.union_set);

  if (x.backend() == Backend::Finite) {
    std::vector<Mask> masks;
    for (const auto& m : f.list_members()) masks.push_back(m.mask);
    FamilyFlags flags = classify_family_finite(x.smops(), FFamily(x.universe(), masks), x.carrier_mask());
    r.essentially_finite = flags.essentially_finite;
    r.locally_finite = flags.locally_finite;
    r.admissible = flags.admissible;
    r.note = "finite family";
    return r;
  }

  PeriodicSet finite_part, infinite_part;
  for (const auto& m : f.list_members()) finite_part = unite(finite_part, m.set);
  for (const auto& a : f.translate_atoms()) {
    if (a.infinite())
      infinite_part = unite(infinite_part, a.union_set());
    else
      finite_part = unite(finite_part, a.union_set());
  }
  for (const auto& c : f.chain_atoms()) {
    if (c.growing())
      infinite_part = unite(infinite_part, c.union_set());
    else
      finite_part = unite(finite_part, c.member(0));
  }
  PeriodicSet rest = subtract(infinite_part, finite_part);
  r.remainder = SetValue::line(rest);
  r.essentially_finite = rest.is_bounded();
  r.note = r.essentially_finite ? "members beyond the finite part are needed only on a bounded region"
                                 : "the part not covered by listed members is unbounded";

  for (Side side : {Side::Left, Side::Right}) {
    if (!admits_unbounded(x, side)) continue;
    if (has_tail(rest, side) && r.admissible) {
      r.admissible = false;
      r.admissible_witness = unbounded_smop(x, side);
    }
    for (const auto& a : f.translate_atoms()) {
      if (r.locally_finite && a.infinite() && has_tail(a.union_set(), side)) {
        r.locally_finite = false;
        r.lf_witness = unbounded_smop(x, side);
      }
    }
  }
  for (const auto& c : f.chain_atoms()) {
    if (r.locally_finite && c.growing()) {
      // Every member contains M_0, so any smop meeting M_0 meets all of them.
      PeriodicSet m0 = c.member(0);
      r.locally_finite = false;
      r.lf_witness = SetValue::line(m0);
      if (!x.is_smop(*r.lf_witness)) fail(Error::Kind::Internal, "first chain member is not a smop");
    }
  }
  return r;
}

bool smop_family_is_admissible(const Space&) { return true; }

std::string to_string(const Family& f) {
  std::vector<std::string> atoms;
  if (!f.list_members().empty() || (f.translate_atoms().empty() && f.chain_atoms().empty())) {
    std::string s = "list {";
    for (std::size_t i = 0; i < f.list_members().size(); ++i) {
      if (i) s += ", ";
      s += format_value(f.list_members()[i]);
    }
    atoms.push_back(s + "}");
  }
  for (const auto& a : f.translate_atoms()) {
    std::string s = "translates base " + to_string(a.base) + " step " + to_string(a.step) + " over ";
    if (a.first && a.last)
      s += "[" + a.first->get_str() + "," + a.last->get_str() + "]";
    else if (a.first)
      s += "k>=" + a.first->get_str();
    else if (a.last)
      s += "k<=" + a.last->get_str();
    else
      s += "Z";
    if (a.clip) s += " clip " + to_string(*a.clip);
    atoms.push_back(s);
  }
  for (const auto& c : f.chain_atoms()) {
    atoms.push_back("chain base " + to_string(c.base) + " step " + to_string(c.step) + " start " + c.start.get_str() +
                    " stride " + c.stride.get_str());
  }
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " and ";
    out += atoms[i];
  }
  return out;
}

}  // namespace locus
