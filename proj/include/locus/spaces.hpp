#pragma once

// Locally small spaces: a carrier plus a decidable family of small open sets.
//
// Finite spaces store their smop family explicitly. Spaces on the rational
// line store a carrier Y (an eventually periodic set) and a shape: each side
// of the line carries a tail condition that a smop must meet there, on top of
// being relatively open in Y. All nine builtin line spaces, their subspaces,
// and their open/small/weak modifications are shapes.

#include <memory>
#include <optional>
#include <string>

#include "locus/finite_core.hpp"
#include "locus/periodic_set.hpp"

namespace locus {

enum class Backend { Finite, Interval };

/// What a smop may look like far out on one side of the line.
///   Any:     no condition (beyond relative openness).
///   Finite:  far out, S is either empty or all of Y.
///   Bounded: S is bounded on that side.
enum class SideCond { Any, Finite, Bounded };

struct Shape {
  SideCond left = SideCond::Any;
  SideCond right = SideCond::Any;
  friend bool operator==(const Shape&, const Shape&) = default;
};

enum class BuiltinLine { om, rom, lom, lpom, slom, slpom, st, lst, lpst };

std::string builtin_name(BuiltinLine id);           // "om", "l+om", ...
std::optional<BuiltinLine> parse_builtin(const std::string& name);
Shape builtin_shape(BuiltinLine id);

/// Chart data of a periodic glued space: charts C + k·step for k in Z, each
/// carrying the subspace structure of `chart_shape` on its carrier.
struct GlueInfo {
  PeriodicSet chart_carrier;
  Rational step;
  Shape chart_shape;
};

/// The derived families of a space.
enum class Derived { Smop, Open, Small, WeaklyOpen, SmallWeaklyOpen, Closed };

std::string derived_name(Derived d);

/// A set in either backend.
struct SetValue {
  Backend backend = Backend::Interval;
  Mask mask = 0;
  PeriodicSet set;

  static SetValue finite(Mask m) { return {Backend::Finite, m, {}}; }
  static SetValue line(PeriodicSet s) { return {Backend::Interval, 0, std::move(s)}; }
  friend bool operator==(const SetValue&, const SetValue&) = default;
};

class Space {
 public:
  /// Validates (LS1)-(LS3) relative to `carrier`.
  static Space finite(FiniteUniverse universe, Mask carrier, FFamily smops, std::string name = {});
  static Space finite(FiniteUniverse universe, FFamily smops, std::string name = {});
  static Space builtin(BuiltinLine id);
  static Space line(PeriodicSet carrier, Shape shape, std::string name);
  static Space glued(GlueInfo info, std::string name);

  Backend backend() const { return backend_; }
  const std::string& name() const { return name_; }

  // finite backend
  const FiniteUniverse& universe() const;
  Mask carrier_mask() const;
  const FFamily& smops() const;

  // interval backend
  const PeriodicSet& carrier() const;
  const Shape& shape() const;
  /// Shape with conditions on sides where the carrier is bounded relaxed to Any.
  Shape effective_shape() const;
  const GlueInfo* glue() const { return glue_.get(); }

  SetValue carrier_value() const;

  bool is_smop(const SetValue& s) const;
  bool is_open_set(const SetValue& s) const;
  bool is_small_set(const SetValue& s) const;
  bool is_weakly_open(const SetValue& s) const;
  bool is_swo(const SetValue& s) const;
  bool is_closed_set(const SetValue& s) const;
  bool in_family(Derived d, const SetValue& s) const;
  SetValue wcl(const SetValue& s) const;

  /// Reason `s` is not a smop, or nullopt if it is one.
  std::optional<std::string> smop_violation(const SetValue& s) const;

  /// Finite backend only: the derived family, enumerated.
  FFamily family(Derived d) const;

  /// Interval backend only: the shape realizing a derived family whose
  /// members are relatively open (Smop, Open, WeaklyOpen, SmallWeaklyOpen).
  Shape derived_shape(Derived d) const;

  Space subspace(const SetValue& y, std::string name = {}) const;

  /// Rewrite as a line space with the same smops but another family's shape.
  Space with_shape(Shape shape, std::string name) const;
  Space with_smops(FFamily smops, std::string name) const;

  // The checks below throw Usage on a backend mismatch.
  void require_backend(const SetValue& s) const;

 private:
  Space() = default;

  Backend backend_ = Backend::Interval;
  std::string name_;
  std::optional<FiniteUniverse> universe_;
  Mask carrier_mask_ = 0;
  std::optional<FFamily> smops_;
  PeriodicSet carrier_;
  Shape shape_;
  std::shared_ptr<const GlueInfo> glue_;
};

/// Relative openness of T ⊆ Y in the order topology of Y.
bool relatively_open(const PeriodicSet& t, const PeriodicSet& y);

enum class Verdict { True, False, Refuted, Inconclusive };
std::string verdict_name(Verdict v);

struct SpaceFlags {
  bool is_small = false;
  Verdict compact = Verdict::Inconclusive;
  std::string compact_witness;
  bool is_partially_topological = false;
  bool is_topological_like = false;
  /// A member of L^swo that is not a smop, when not partially topological.
  std::optional<SetValue> pt_witness;
  /// A weakly open set that is not a smop, when not topological-like.
  std::optional<SetValue> tl_witness;
};

SpaceFlags classify_space(const Space& x);

std::string format_set(const Space& x, const SetValue& s);

}  // namespace locus
