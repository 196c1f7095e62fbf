#pragma once

// Seeded generators for sets, families and spaces. Shared by the CLI
// random suite and by the sampling cross-checks of the map classifier.

#include <random>

#include "locus/maps.hpp"
#include "locus/spaces.hpp"

namespace locus::gen {

using Rng = std::mt19937_64;

/// Multiple of 1/den in [-span, span].
Rational grid_rational(Rng& rng, long span, long den);
QInterval interval(Rng& rng, long span, long den);
IntervalList interval_list(Rng& rng, int max_parts, long span, long den);

/// Bounded part plus optional one-sided translate unions on either side.
PeriodicSet periodic(Rng& rng);
PeriodicSet open_periodic(Rng& rng);

FFamily finite_family(Rng& rng, int n, int max_sets);
/// Ring generated by a few random sets, on the carrier they cover.
Space finite_space(Rng& rng, int n);

/// Random table map between two random finite spaces on n points.
SpaceMap finite_map(Rng& rng, int n);

/// A random smop of x (always a member of the smop family).
SetValue smop(Rng& rng, const Space& x);
/// A random relatively open subset of the carrier (weakly open on the line).
SetValue weakly_open(Rng& rng, const Space& x);
/// A random subset of the carrier.
SetValue subset(Rng& rng, const Space& x);

}  // namespace locus::gen
