#pragma once

// Exact volume computation for convex polytopes given as intersections of
// halfspaces with rational coefficients.  Vertices are enumerated by basis
// enumeration with exact arithmetic; volume is a sum of simplex determinants
// from a facet triangulation coned at an interior point.  Intended for small
// dimension (the library uses d = 5).

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "slopeci/rational.hpp"

namespace slopeci::geometry {

// The closed halfspace { e : coefficients . e <= bound }.  Strict inequality
// inputs are handled by the same representation: they differ on a measure-
// zero set, so volumes are unaffected.
struct Halfspace {
  std::vector<Rational> coefficients;
  Rational bound;
};

struct Polytope {
  int dimension = 0;
  std::vector<Halfspace> halfspaces;
};

struct VertexEnumeration {
  bool feasible = false;  // true when at least one vertex was found
  std::vector<std::vector<Rational>> vertices;  // deduplicated, sorted
};

// All vertices of p.  Preconditions: dimension >= 1, each halfspace has a
// nonzero coefficient vector of matching length, and p is bounded (callers
// include explicit box constraints).  An infeasible or vertex-free system
// yields feasible == false and an empty list.
VertexEnumeration vertices(const Polytope& p);

// Exact d-dimensional volume of p; 0 when p is empty or not full-dimensional.
Rational volume(const Polytope& p);

struct McVolume {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

// Monte Carlo check: uniform samples in an axis-aligned box known to contain
// p.  `box` must consist solely of bounds on single coordinates.
McVolume mc_volume(const Polytope& p, const Polytope& box, std::uint64_t samples,
                   std::uint64_t seed);

// Axis-aligned cube { lo <= e_i <= hi } as 2d halfspaces.
Polytope make_box(int dimension, const Rational& lo, const Rational& hi);

// Text H-representation: first line "d m", then m lines of d+1 exact
// fractions "c_1 ... c_d c_0" encoding c . e <= c_0.
void write_hrep(const Polytope& p, std::ostream& out);
Polytope read_hrep(std::istream& in);

namespace detail {
// Pure-rational enumeration path, bypassing the machine-integer fast path.
// Exposed so tests can pin both routes to identical output.
VertexEnumeration vertices_rational_fallback(const Polytope& p);
}  // namespace detail

}  // namespace slopeci::geometry
