#ifndef MPGCORE_GEOMETRY_HPP
#define MPGCORE_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mpgcore/rational.hpp"

namespace mpgcore {

// Closed half-space {x | normal . x <= bound}.
struct HalfSpace {
  RatVec normal;
  Rat bound;

  HalfSpace() = default;
  HalfSpace(RatVec a, Rat b) : normal(std::move(a)), bound(std::move(b)) {}

  // Scales so coefficients are coprime integers.
  void normalize();
  bool contains(const RatVec& x) const { return dot(normal, x) <= bound; }
  bool operator==(const HalfSpace& o) const = default;
};

struct LinEq {
  RatVec coeffs;
  Rat rhs;
  bool operator==(const LinEq& o) const = default;
};

// H-representation of a convex polyhedron: inequalities plus optional
// equalities. The empty polyhedron is representable (e.g. 0 <= -1).
struct Polyhedron {
  int dim = 0;
  std::vector<HalfSpace> ineqs;
  std::vector<LinEq> eqs;

  Polyhedron() = default;
  explicit Polyhedron(int d) : dim(d) {}

  bool contains(const RatVec& x) const;
  // Sorts and dedups normalized constraints; detects trivially false rows.
  void normalize();
  std::string canonical_str() const;
};

// Finite union of polyhedra of equal dimension.
struct PolyUnion {
  int dim = 0;
  std::vector<Polyhedron> parts;

  PolyUnion() = default;
  explicit PolyUnion(int d) : dim(d) {}

  bool contains(const RatVec& x) const;
  // Drops empty parts, dedups, and removes parts included in other parts.
  void normalize();
  std::string canonical_str() const;
};

enum class LpStatus { Infeasible, Unbounded, Optimum };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;     // optimum objective value (Optimum only)
  RatVec point;  // a feasible point attaining it
};

// Exact rational simplex, maximization. With no objective, returns any
// feasible point (value 0). Bland's lowest-index rule throughout.
LpResult lp_solve(const std::optional<RatVec>& objective,
                  const Polyhedron& constraints);

// Running count of lp_solve invocations (reported in CLI stats).
extern long lp_call_count;

bool is_empty(const Polyhedron& p);

// inner subseteq outer; both convex, same dimension.
bool poly_contains_poly(const Polyhedron& outer, const Polyhedron& inner);

// Drops inequalities implied by the remaining constraints.
void remove_redundant(Polyhedron& p);

// x in downward closure of conv(points)?
bool down_conv_membership(const std::vector<RatVec>& points, const RatVec& x);

// Facet system of the downward closure of conv(points). All facet normals
// are componentwise nonnegative.
Polyhedron hrep_down_conv(const std::vector<RatVec>& points);

HalfSpace complement_halfspace(const HalfSpace& h);

// Lifts constraints over coordinates `coords` (0-based, strictly increasing
// indices into an ambient space of dimension n); other coordinates are free.
Polyhedron inclusion_map(const Polyhedron& p, const std::vector<int>& coords,
                         int ambient_dim);
HalfSpace inclusion_map(const HalfSpace& h, const std::vector<int>& coords,
                        int ambient_dim);

// Projection onto `coords` (0-based, strictly increasing), reindexed to
// dimension |coords|. Fourier-Motzkin elimination of the other variables.
Polyhedron project(const Polyhedron& p, const std::vector<int>& coords);

// Intersection of the given unions as a single union, distributing
// intersection over union and pruning empty parts eagerly.
PolyUnion distribute(const std::vector<PolyUnion>& unions);

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);

// Vertex enumeration by basis enumeration; test-support, small dims only.
std::vector<RatVec> enumerate_vertices(const Polyhedron& p);

}  // namespace mpgcore

#endif
