#include "locus/properties.hpp"

#include <algorithm>

#include "locus/random.hpp"

namespace locus {

namespace {

bool is_empty(const SetValue& a) { return a.backend == Backend::Finite ? a.mask == 0 : a.set.is_empty(); }

SetValue meet(const SetValue& a, const SetValue& b) {
  return a.backend == Backend::Finite ? SetValue::finite(a.mask & b.mask) : SetValue::line(intersect(a.set, b.set));
}

SetValue join(const SetValue& a, const SetValue& b) {
  return a.backend == Backend::Finite ? SetValue::finite(a.mask | b.mask) : SetValue::line(unite(a.set, b.set));
}

SetValue minus(const SetValue& a, const SetValue& b) {
  return a.backend == Backend::Finite ? SetValue::finite(a.mask & ~b.mask) : SetValue::line(subtract(a.set, b.set));
}

bool subset(const SetValue& a, const SetValue& b) {
  return a.backend == Backend::Finite ? (a.mask & ~b.mask) == 0 : is_subset(a.set, b.set);
}

bool meets(const SetValue& a, const SetValue& b) { return !is_empty(meet(a, b)); }

SetValue empty_like(const Space& x) {
  return x.backend() == Backend::Finite ? SetValue::finite(0) : SetValue::line(PeriodicSet::empty());
}

std::string show(const Space& x, const SetValue& s) { return format_set(x, s); }

/// Index range of translate members that can meet the bounded set i.
std::pair<Integer, Integer> index_range(const TranslatesAtom& a, const PeriodicSet& i) {
  Integer lo = floor_int((*i.infimum() - *a.base.supremum()) / a.step) - 1;
  Integer hi = ceil_int((*i.supremum() - *a.base.infimum()) / a.step) + 1;
  if (a.first) lo = std::max(lo, *a.first);
  if (a.last) hi = std::min(hi, *a.last);
  return {lo, hi};
}

/// Members of f meeting m, when there are finitely many of them.
std::optional<std::vector<SetValue>> members_meeting(const Family& f, const SetValue& m) {
  std::vector<SetValue> out;
  for (const auto& l : f.list_members())
    if (meets(l, m)) out.push_back(l);
  for (const auto& a : f.translate_atoms()) {
    if (a.base.is_empty()) continue;
    PeriodicSet i = intersect(m.set, a.union_set());
    if (i.is_empty()) continue;
    if (!i.is_bounded()) return std::nullopt;
    auto [lo, hi] = index_range(a, i);
    for (Integer k = lo; k <= hi; ++k) {
      PeriodicSet member = a.member(k);
      if (intersects(member, m.set)) out.push_back(SetValue::line(member));
    }
  }
  for (const auto& c : f.chain_atoms())
    if (intersects(c.union_set(), m.set)) return std::nullopt;
  return out;
}

/// Finite part of f covering m ∩ ⋃f.
std::optional<std::vector<SetValue>> finite_part(const Space& x, const Family& f, const SetValue& m) {
  SetValue need = meet(m, family_union(x, f));
  for (const auto& l : f.list_members())
    if (subset(need, l)) return std::vector<SetValue>{l};
  for (const auto& c : f.chain_atoms())
    for (Integer j = 0; j <= 4096; ++j) {
      PeriodicSet member = c.member(j);
      if (is_subset(need.set, member)) return std::vector<SetValue>{SetValue::line(member)};
      if (!c.growing()) break;
    }
  return members_meeting(f, m);
}

SetValue join_all(const Space& x, const std::vector<SetValue>& sets) {
  SetValue out = empty_like(x);
  for (const auto& s : sets) out = join(out, s);
  return out;
}

bool atoms_have_smop_members(const Space& x, const Family& f, std::optional<SetValue>& witness) {
  for (const auto& m : f.list_members())
    if (!x.is_smop(m)) {
      witness = m;
      return false;
    }
  if (auto bad = non_open_member(x, f)) {
    witness = *bad;
    return false;
  }
  // Open members of translate and chain atoms are bounded, hence small,
  // hence smops; the samples double-check this.
  for (const auto& m : f.sample_members(6))
    if (!x.is_smop(m)) {
      witness = m;
      return false;
    }
  return true;
}

CoverCheck verify_cover(const Space& x, const Family& f, bool locally_finite) {
  CoverCheck c;
  c.members_are_smops = atoms_have_smop_members(x, f, c.witness);
  if (!c.members_are_smops) {
    c.detail = "member " + show(x, *c.witness) + " is not a smop";
    return c;
  }
  SetValue u = family_union(x, f);
  c.covers = u == x.carrier_value();
  FamilyReport r = classify_family(x, f);
  c.structure = locally_finite ? r.locally_finite : r.admissible;
  c.holds = c.covers && c.structure;
  if (!c.covers) {
    c.witness = minus(x.carrier_value(), u);
    c.detail = "uncovered part " + show(x, *c.witness);
  } else if (!c.structure) {
    c.witness = locally_finite ? r.lf_witness : r.admissible_witness;
    c.detail = std::string(locally_finite ? "not locally finite" : "not admissible") +
               (c.witness ? " at the smop " + show(x, *c.witness) : std::string());
  } else {
    c.detail = locally_finite ? "locally finite smop cover" : "countable admissible smop cover";
  }
  return c;
}

bool is_open_pair(const Space& x, const SetValue& a, const SetValue& b) {
  return !is_empty(a) && !is_empty(b) && !meets(a, b) && join(a, b) == x.carrier_value() && x.is_open_set(a) &&
         x.is_open_set(b);
}

/// Recognizes M_n (n ≥ n1) as the members of a growing chain of translate
/// unions of one atom of k.
std::optional<std::pair<std::size_t, ChainAtom>> fit_chain(const Family& k, const std::vector<SetValue>& ms) {
  if (ms.size() < 4) return std::nullopt;
  auto radius_of = [](const TranslatesAtom& a, const PeriodicSet& m) -> std::optional<Integer> {
    if (!m.is_bounded() || m.is_empty()) return std::nullopt;
    Integer guess = ceil_int((*m.supremum() - *a.base.supremum()) / a.step);
    for (Integer r = std::max<Integer>(guess - 2, 0); r <= guess + 2; ++r)
      if (ChainAtom{a.base, a.step, r, 0}.member(0) == m) return r;
    return std::nullopt;
  };
  for (const auto& a : k.translate_atoms()) {
    if (a.first || a.last || a.clip) continue;
    std::size_t last = ms.size() - 1;
    auto r_last = radius_of(a, ms[last].set);
    auto r_prev = radius_of(a, ms[last - 1].set);
    if (!r_last || !r_prev || *r_last <= *r_prev) continue;
    Integer stride = *r_last - *r_prev;
    std::size_t n1 = last;
    while (n1 > 0) {
      auto r = radius_of(a, ms[n1 - 1].set);
      if (!r || *r != *r_last - Integer(last - n1 + 1) * stride) break;
      --n1;
    }
    if (last - n1 < 2) continue;
    return std::make_pair(n1, ChainAtom{a.base, a.step, *r_last - Integer(last - n1) * stride, stride});
  }
  return std::nullopt;
}

}  // namespace

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Done: return "done";
    case Outcome::Disconnected: return "disconnected";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

CoverCheck verify_paracompact_witness(const Space& x, const Family& f) { return verify_cover(x, f, true); }
CoverCheck verify_lindelof_witness(const Space& x, const Family& f) { return verify_cover(x, f, false); }

ChainResult lindelof_from_paracompact(const Space& x, const Family& k, const SetValue& seed, int budget) {
  CoverCheck pre = verify_paracompact_witness(x, k);
  if (!pre.holds) fail(Error::Kind::Precondition, "cover is not a locally finite smop cover: " + pre.detail);
  x.require_backend(seed);
  if (is_empty(seed) || !x.is_smop(seed)) fail(Error::Kind::Precondition, "seed must be a nonempty smop");

  ChainResult r;
  const SetValue carrier = x.carrier_value();
  r.prefix.push_back(seed);
  auto split_at = [&](const SetValue& inside, const std::string& why) {
    SetValue rest = minus(carrier, inside);
    if (!is_open_pair(x, inside, rest))
      fail(Error::Kind::Internal, "chain limit " + show(x, inside) + " does not split " + x.name() + " " +
                                      show(x, carrier) + " into open sets; rest " + show(x, rest));
    r.outcome = Outcome::Disconnected;
    r.disconnection = std::make_pair(inside, rest);
    r.detail = why + "; splitting " + show(x, inside) + " | " + show(x, rest);
  };
  if (seed == carrier) {
    r.outcome = Outcome::Done;
    r.cover = Family::list(r.prefix);
    r.detail = "the seed is the carrier";
  }
  for (int n = 0; n < budget && r.outcome == Outcome::Inconclusive; ++n) {
    const SetValue& m = r.prefix.back();
    auto touching = members_meeting(k, m);
    if (!touching) fail(Error::Kind::Usage, "chain step needs finitely many members meeting " + show(x, m));
    SetValue next = join(m, join_all(x, *touching));
    if (next == m) {
      split_at(m, "chain stabilized after " + std::to_string(n) + " steps below the carrier");
      return r;
    }
    r.prefix.push_back(next);
    if (next == carrier) {
      r.outcome = Outcome::Done;
      r.cover = Family::list(r.prefix);
      r.detail = "chain reached the carrier after " + std::to_string(n + 1) + " steps";
      break;
    }
    if (auto fit = fit_chain(k, r.prefix)) {
      auto [n1, atom] = *fit;
      SetValue limit = SetValue::line(atom.union_set());
      if (!(limit == carrier)) {
        split_at(limit, "chain is the translate chain " + to_string(Family::chain(atom)) + " with union below the carrier");
        return r;
      }
      std::vector<SetValue> head(r.prefix.begin(), r.prefix.begin() + static_cast<std::ptrdiff_t>(n1));
      r.outcome = Outcome::Done;
      r.cover = Family::union_of({Family::list(head), Family::chain(atom)});
      r.detail = "M_n for n >= " + std::to_string(n1) + " is the chain " + to_string(Family::chain(atom));
      break;
    }
  }
  if (r.outcome == Outcome::Inconclusive) {
    r.detail = "chain neither saturated nor stabilized within " + std::to_string(budget) + " steps";
    return r;
  }
  CoverCheck post = verify_lindelof_witness(x, *r.cover);
  if (!post.holds) fail(Error::Kind::Internal, "constructed chain is not a Lindelöf witness: " + post.detail);
  return r;
}

RefinementResult paracompact_from_lindelof(const Space& x, const Family& chain, int budget) {
  if (!is_strongly_taut(x)) fail(Error::Kind::Precondition, x.name() + " is not strongly taut");
  CoverCheck pre = verify_lindelof_witness(x, chain);
  if (!pre.holds) fail(Error::Kind::Precondition, "chain is not a countable admissible smop cover: " + pre.detail);
  RefinementResult r;

  auto w_family = [&](const std::vector<SetValue>& n) {
    std::vector<SetValue> w;
    for (std::size_t i = 0; i < n.size(); ++i) {
      SetValue wi = i < 2 ? n[i] : minus(n[i], x.wcl(n[i - 2]));
      if (!is_empty(wi)) w.push_back(wi);
    }
    return w;
  };

  if (chain.translate_atoms().empty() && chain.chain_atoms().empty()) {
    const auto& ms = chain.list_members();
    for (std::size_t i = 0; i + 1 < ms.size(); ++i)
      if (!subset(ms[i], ms[i + 1])) fail(Error::Kind::Precondition, "chain members do not increase");
    std::size_t i = 0;
    r.reindexed.push_back(ms[0]);
    while (i + 1 < ms.size()) {
      SetValue closed = x.wcl(ms[i]);
      std::size_t j = i + 1;
      while (j < ms.size() && !subset(closed, ms[j])) ++j;
      if (j == ms.size()) break;
      r.reindexed.push_back(ms[j]);
      i = j;
    }
    r.pieces = w_family(r.reindexed);
    r.cover = Family::list(r.pieces);
    r.detail = "finite chain re-indexed to " + std::to_string(r.reindexed.size()) + " members";
  } else {
    if (chain.chain_atoms().size() != 1 || !chain.list_members().empty() || !chain.translate_atoms().empty())
      fail(Error::Kind::Usage, "an infinite chain must be a single chain atom");
    const ChainAtom& c = chain.chain_atoms().front();
    if (!c.growing()) fail(Error::Kind::Usage, "chain atom does not grow");
    // Find q with wcl(M_j) ⊆ M_{j+q} on the first 16 members; the members
    // are unions of translates, so the inclusion is the same from then on.
    int q = 1;
    for (; q <= budget; ++q) {
      bool ok = true;
      for (int j = 0; j < 16 && ok; ++j)
        ok = is_subset(x.wcl(SetValue::line(c.member(j))).set, c.member(j + q));
      if (ok) break;
    }
    if (q > budget) {
      r.detail = "no re-indexing with wcl(M_n) inside M_{n+1} found within " + std::to_string(budget) + " steps";
      return r;
    }
    constexpr int kHead = 12, kTailStart = 5;
    for (int i = 0; i < kHead; ++i) r.reindexed.push_back(SetValue::line(c.member(Integer(i) * q)));
    std::vector<SetValue> w;
    for (int i = 0; i < kHead; ++i)
      w.push_back(i < 2 ? r.reindexed[i] : minus(r.reindexed[i], x.wcl(r.reindexed[i - 2])));
    r.pieces = w;
    Rational delta = c.step * Rational(c.stride * q);
    Rational centre = (*c.base.infimum() + *c.base.supremum()) / 2;
    auto right = [&](int i) { return intersect(w[i].set, PeriodicSet::ray_above(centre)); };
    auto left = [&](int i) { return intersect(w[i].set, PeriodicSet::ray_below(centre)); };
    for (int i = kTailStart; i + 1 < kHead; ++i)
      if (!(right(i + 1) == translate(right(i), delta)) || !(left(i + 1) == translate(left(i), -delta))) {
        r.detail = "W_n does not settle into translates of two parts";
        return r;
      }
    std::vector<SetValue> head(w.begin(), w.begin() + kTailStart);
    std::vector<SetValue> nonempty;
    for (auto& s : head)
      if (!is_empty(s)) nonempty.push_back(s);
    r.cover = Family::union_of({Family::list(nonempty),
                                Family::translates({right(kTailStart), delta, Integer(0), std::nullopt, std::nullopt}),
                                Family::translates({left(kTailStart), delta, std::nullopt, Integer(0), std::nullopt})});
    r.detail = "chain re-indexed with stride " + std::to_string(q) + "; W_n for n >= " +
               std::to_string(kTailStart + 1) + " presented by its parts right and left of " + to_string(centre);
  }
  CoverCheck post = verify_paracompact_witness(x, *r.cover);
  if (!post.holds) fail(Error::Kind::Internal, "constructed W family is not locally finite: " + post.detail);
  r.outcome = Outcome::Done;
  return r;
}

RefinementResult locally_finite_refinement(const Space& x, const Family& k, const Family& l) {
  CoverCheck pk = verify_paracompact_witness(x, k);
  if (!pk.holds) fail(Error::Kind::Precondition, "first family is not a locally finite smop cover: " + pk.detail);
  CoverCheck pl = verify_lindelof_witness(x, l);
  if (!pl.holds) fail(Error::Kind::Precondition, "second family is not an admissible smop cover: " + pl.detail);
  if (!l.chain_atoms().empty()) fail(Error::Kind::Usage, "refinement against chain atoms is not supported");

  RefinementResult r;
  std::vector<SetValue> listed;
  std::vector<Family> parts;
  for (const auto& km : k.list_members()) {
    auto part = finite_part(x, l, km);
    if (!part) {
      r.detail = "member " + show(x, km) + " meets infinitely many members of the second family";
      return r;
    }
    for (const auto& lm : *part)
      if (SetValue s = meet(lm, km); !is_empty(s)) listed.push_back(s);
  }
  for (const auto& a : k.translate_atoms()) {
    if (a.base.is_empty()) continue;
    PeriodicSet au = a.union_set();
    for (const auto& lm : l.list_members()) {
      PeriodicSet i = intersect(au, lm.set);
      if (i.is_empty()) continue;
      if (i.is_bounded()) {
        auto [lo, hi] = index_range(a, i);
        for (Integer n = lo; n <= hi; ++n)
          if (PeriodicSet s = intersect(a.member(n), lm.set); !s.is_empty()) listed.push_back(SetValue::line(s));
      } else {
        PeriodicSet clip = a.clip ? intersect(*a.clip, lm.set) : lm.set;
        parts.push_back(Family::translates({a.base, a.step, a.first, a.last, clip}));
      }
    }
    // Pairs of translates (A + ks) ∩ (B + jt): classes of equal offset jt - ks
    // repeat with index steps g/s and g/t, g = lcm(s, t).
    for (const auto& b : l.translate_atoms()) {
      if (b.base.is_empty()) continue;
      Rational g = rational_lcm(a.step, b.step);
      Integer ms = Rational(g / a.step).get_num(), mt = Rational(g / b.step).get_num();
      std::optional<PeriodicSet> clip;
      if (a.clip && b.clip) clip = intersect(*a.clip, *b.clip);
      else if (a.clip) clip = a.clip;
      else if (b.clip) clip = b.clip;
      for (Integer k0 = 0; k0 < ms; ++k0) {
        PeriodicSet ak = translate(a.base, a.step * Rational(k0));
        Integer jlo = floor_int((*ak.infimum() - *b.base.supremum()) / b.step) - 1;
        Integer jhi = ceil_int((*ak.supremum() - *b.base.infimum()) / b.step) + 1;
        for (Integer j0 = jlo; j0 <= jhi; ++j0) {
          PeriodicSet base = intersect(ak, translate(b.base, b.step * Rational(j0)));
          if (base.is_empty()) continue;
          // k = k0 + i·ms, j = j0 + i·mt.
          std::optional<Integer> first, last;
          auto lower = [&](const std::optional<Integer>& bound, const Integer& at, const Integer& m) {
            if (bound) {
              Integer v = ceil_int(Rational(*bound - at) / Rational(m));
              first = first ? std::max(*first, v) : v;
            }
          };
          auto upper = [&](const std::optional<Integer>& bound, const Integer& at, const Integer& m) {
            if (bound) {
              Integer v = floor_int(Rational(*bound - at) / Rational(m));
              last = last ? std::min(*last, v) : v;
            }
          };
          lower(a.first, k0, ms);
          upper(a.last, k0, ms);
          lower(b.first, j0, mt);
          upper(b.last, j0, mt);
          if (first && last && *first > *last) continue;
          parts.push_back(Family::translates({base, g, first, last, clip}));
        }
      }
    }
  }
  if (!k.chain_atoms().empty()) fail(Error::Kind::Usage, "a locally finite cover has no growing chain atoms");
  parts.push_back(Family::list(listed));
  r.cover = Family::union_of(parts);
  CoverCheck post = verify_paracompact_witness(x, *r.cover);
  if (!post.holds) fail(Error::Kind::Internal, "refinement is not a locally finite smop cover: " + post.detail);
  r.outcome = Outcome::Done;
  r.detail = "refinement of both covers, locally finite";
  return r;
}

RefinementResult countable_subcover(const Space& x, const Family& c, const Family& l) {
  CoverCheck pc = verify_lindelof_witness(x, c);
  if (!pc.holds) fail(Error::Kind::Precondition, "first family is not a countable admissible smop cover: " + pc.detail);
  if (auto bad = non_open_member(x, l))
    fail(Error::Kind::Precondition, "second family has the non-open member " + show(x, *bad));
  FamilyReport rl = classify_family(x, l);
  if (!rl.admissible || !(family_union(x, l) == x.carrier_value()))
    fail(Error::Kind::Precondition, "second family is not an admissible cover" +
                                        (rl.admissible_witness ? ": fails at " + show(x, *rl.admissible_witness)
                                                               : std::string(": union ") +
                                                                     show(x, family_union(x, l))));

  RefinementResult r;
  std::vector<SetValue> chosen;
  auto add = [&](const SetValue& s) {
    if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) chosen.push_back(s);
  };
  for (const auto& cm : c.list_members()) {
    auto part = finite_part(x, l, cm);
    if (!part) {
      r.detail = "no finite part of the second family found for " + show(x, cm);
      return r;
    }
    for (const auto& s : *part) add(s);
  }
  // Members of infinite atoms of c are bounded; their finite parts together
  // are the members of l meeting the atom's union.
  std::vector<Family> parts;
  auto take_meeting = [&](const PeriodicSet& u) {
    for (const auto& lm : l.list_members())
      if (intersects(lm.set, u)) add(lm);
    for (const auto& b : l.translate_atoms())
      if (intersects(b.union_set(), u)) parts.push_back(Family::translates(b));
    for (const auto& ch : l.chain_atoms())
      if (intersects(ch.union_set(), u)) parts.push_back(Family::chain(ch));
  };
  for (const auto& a : c.translate_atoms()) take_meeting(a.union_set());
  for (const auto& ch : c.chain_atoms()) take_meeting(ch.union_set());
  parts.push_back(Family::list(chosen));
  r.cover = Family::union_of(parts);
  FamilyReport post = classify_family(x, *r.cover);
  if (!post.admissible || !(family_union(x, *r.cover) == x.carrier_value()))
    fail(Error::Kind::Internal, "selected subfamily is not an admissible cover");
  r.outcome = Outcome::Done;
  r.detail = "countable admissible subcover of the second family";
  return r;
}

TautReport check_taut(const Space& x, int samples, std::uint64_t seed) {
  TautReport t;
  auto check_one = [&](const SetValue& l) {
    SetValue w = x.wcl(l);
    bool small = x.is_small_set(w);
    bool closed = x.is_closed_set(w);
    if ((!small || !closed) && !t.witness) t.witness = l;
    t.taut = t.taut && small;
    t.strongly_taut = t.strongly_taut && small && closed;
    ++t.samples_checked;
  };
  t.taut = t.strongly_taut = true;
  if (x.backend() == Backend::Finite) {
    for (Mask l : x.smops().sets()) check_one(SetValue::finite(l));
    t.detail = "all " + std::to_string(t.samples_checked) + " smops enumerated";
    return t;
  }
  // On line spaces the weak closure of a smop is its closure in the carrier;
  // it meets the same side conditions as the smop, so it is small and its
  // complement is open.
  gen::Rng rng(seed);
  for (int i = 0; i < samples; ++i) check_one(gen::smop(rng, x));
  if (!t.strongly_taut)
    fail(Error::Kind::Internal, "sampled smop " + show(x, *t.witness) + " refutes the tautness rule for " + x.name());
  t.detail = "class rule; " + std::to_string(t.samples_checked) + " sampled smops agree";
  return t;
}

bool is_taut(const Space& x) { return check_taut(x).taut; }
bool is_strongly_taut(const Space& x) { return check_taut(x).strongly_taut; }

std::optional<Separation> separate(const Space& x, const SetValue& point, const SetValue& f) {
  x.require_backend(point);
  x.require_backend(f);
  if (!x.is_closed_set(f)) fail(Error::Kind::Precondition, show(x, f) + " is not closed");
  if (x.backend() == Backend::Finite) {
    if (std::popcount(point.mask) != 1 || (point.mask & ~x.carrier_mask()))
      fail(Error::Kind::Precondition, "point must be a single carrier point");
    if (point.mask & f.mask) fail(Error::Kind::Precondition, "the point lies in the closed set");
    FFamily opens = x.family(Derived::Open);
    for (Mask u : opens.sets()) {
      if (!(u & point.mask)) continue;
      for (Mask v : opens.sets())
        if ((f.mask & ~v) == 0 && (u & v) == 0) return Separation{SetValue::finite(u), SetValue::finite(v)};
    }
    return std::nullopt;
  }
  auto pts = point.set.as_interval_list();
  if (!pts || pts->size() != 1 || !pts->parts()[0].is_point() || !x.carrier().contains(pts->parts()[0].lo().value))
    fail(Error::Kind::Precondition, "point must be a single carrier point");
  const Rational p = pts->parts()[0].lo().value;
  if (f.set.contains(p)) fail(Error::Kind::Precondition, "the point lies in the closed set");
  PeriodicSet cl = closure(f.set);
  Rational gap = 2;
  PeriodicSet above = intersect(cl, PeriodicSet::ray_above(p, true));
  PeriodicSet below = intersect(cl, PeriodicSet::ray_below(p, true));
  if (!above.is_empty()) gap = std::min<Rational>(gap, *above.infimum() - p);
  if (!below.is_empty()) gap = std::min<Rational>(gap, p - *below.supremum());
  if (gap <= 0) fail(Error::Kind::Internal, "closed set accumulates at the point");
  Rational h = gap / 2;
  const PeriodicSet& y = x.carrier();
  Separation s{SetValue::line(intersect(y, PeriodicSet::open_interval(p - h, p + h))),
               SetValue::line(subtract(y, PeriodicSet::from_interval(QInterval::closed(p - h, p + h))))};
  if (!x.is_open_set(s.u) || !x.is_open_set(s.v) || meets(s.u, s.v) || !subset(f, s.v) || !s.u.set.contains(p))
    fail(Error::Kind::Internal, "gap separation fails to verify at " + to_string(p));
  return s;
}

RegularityReport check_regular(const Space& x, int samples, std::uint64_t seed) {
  RegularityReport r;
  if (x.backend() == Backend::Finite) {
    r.singletons_closed = true;
    for (int i = 0; i < x.universe().size(); ++i) {
      Mask p = Mask{1} << i;
      if (!(p & x.carrier_mask())) continue;
      if (!x.is_closed_set(SetValue::finite(p))) {
        r.singletons_closed = false;
        r.verdict = Verdict::False;
        r.detail = "{" + std::to_string(i + 1) + "} is not closed";
        return r;
      }
    }
    FFamily opens = x.family(Derived::Open);
    for (Mask u : opens.sets()) {
      Mask f = x.carrier_mask() & ~u;
      for (int i = 0; i < x.universe().size(); ++i) {
        Mask p = Mask{1} << i;
        if (!(p & u)) continue;
        if (!separate(x, SetValue::finite(p), SetValue::finite(f))) {
          r.verdict = Verdict::False;
          r.detail = "point " + std::to_string(i + 1) + " and closed set " + format_mask(f) + " cannot be separated";
          return r;
        }
      }
    }
    r.verdict = Verdict::True;
    r.detail = "all points and closed sets enumerated";
    return r;
  }
  // Points are closed: the carrier minus a point is relatively open and
  // meets every side condition wherever the carrier does.
  r.singletons_closed = true;
  gen::Rng rng(seed);
  int checked = 0;
  for (int i = 0; i < samples * 4 && checked < samples; ++i) {
    SetValue f = SetValue::line(intersect(x.carrier(), closure(gen::periodic(rng))));
    if (!x.is_closed_set(f)) continue;
    Rational p = gen::grid_rational(rng, 6, 4);
    if (!x.carrier().contains(p) || f.set.contains(p)) continue;
    SetValue pt = SetValue::line(PeriodicSet::point(p));
    if (!x.is_closed_set(pt)) fail(Error::Kind::Internal, "point " + to_string(p) + " is not closed");
    separate(x, pt, f);
    ++checked;
  }
  r.verdict = Verdict::True;
  r.detail = "class rule over representable closed sets; " + std::to_string(checked) + " sampled separations verified";
  return r;
}

ConnectednessReport find_disconnection(const Space& x) {
  ConnectednessReport r;
  if (x.backend() == Backend::Finite) {
    r.decided = true;
    FFamily opens = x.family(Derived::Open);
    for (Mask u : opens.sets()) {
      Mask rest = x.carrier_mask() & ~u;
      if (u == 0 || rest == 0 || !opens.contains(rest)) continue;
      r.witness = std::make_pair(SetValue::finite(u), SetValue::finite(rest));
      r.detail = "splitting " + format_mask(u) + " | " + format_mask(rest);
      return r;
    }
    r.connected = true;
    r.detail = "no open splitting among " + std::to_string(opens.size()) + " open sets";
    return r;
  }
  const PeriodicSet& y = x.carrier();
  QInterval range = y.hull_with_periods(2);
  IntervalList parts = y.materialize(range);
  std::vector<Rational> cuts;
  const auto& ps = parts.parts();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const auto& hi = ps[i].hi();
    const auto& lo = ps[i + 1].lo();
    if (hi.infinite || lo.infinite) continue;
    cuts.push_back((hi.value + lo.value) / 2);
  }
  for (const Rational& c : cuts) {
    if (y.contains(c)) continue;
    SetValue a = SetValue::line(intersect(y, PeriodicSet::ray_below(c)));
    SetValue b = SetValue::line(intersect(y, PeriodicSet::ray_above(c)));
    if (is_open_pair(x, a, b)) {
      r.decided = true;
      r.witness = std::make_pair(a, b);
      r.detail = "splitting at " + to_string(c) + ": " + to_string(a.set) + " | " + to_string(b.set);
      return r;
    }
  }
  r.detail = "no representable open splitting found (" + std::to_string(cuts.size()) +
             " cut points tried); this is not a connectedness proof";
  return r;
}

}  // namespace locus
