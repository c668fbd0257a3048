// Exact convex hulls, faces, volumes, Minkowski sums, lattice normalization
// and regular subdivisions over Q^n and Q^n x LogLinear.
//
// A Point is a coordinate vector in which only the last coordinate may
// carry logarithms. Every determinant then expands linearly along that
// column, so all predicates stay inside the LogLinear field.

#ifndef TORICHEIGHT_GEOMKERNEL_H_
#define TORICHEIGHT_GEOMKERNEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "toricheight/exactnum.h"

namespace toricheight {

using Point = std::vector<LogLinear>;
using LatticeVector = std::vector<Integer>;

// Supported ambient dimension of a hull computation.
inline constexpr std::size_t kMaxHullDimension = 7;

struct LiftedPoint {
  std::vector<Rational> base;
  LogLinear lift;
};

Point make_point(std::span<const Rational> coords);
Point make_point(const LatticeVector& coords);
Point make_point(const LiftedPoint& p);

// Lexicographic order with certified comparisons.
int lex_compare(const Point& a, const Point& b);

// normal . x <= offset.
struct Halfspace {
  std::vector<LogLinear> normal;
  LogLinear offset;
};

struct Face {
  int dim = 0;
  // Indices into Polytope::vertices(), ascending.
  std::vector<std::size_t> vertices;
};

class FaceLattice {
 public:
  FaceLattice() = default;
  explicit FaceLattice(std::vector<Face> faces);

  // All faces ordered by dimension, then by vertex set. The last entry is the
  // polytope itself.
  const std::vector<Face>& faces() const { return faces_; }
  std::vector<Face> faces_of_dimension(int dim) const;
  std::size_t count(int dim) const;
  int top_dimension() const { return faces_.empty() ? -1 : faces_.back().dim; }

  // Index of the face with exactly this vertex set, or -1.
  long find(std::span<const std::size_t> vertices) const;
  // Containment of faces is containment of vertex sets.
  static bool is_subface(const Face& small, const Face& big);
  // Faces of dimension dim - 1 contained in the given face.
  std::vector<std::size_t> facets_of(std::size_t face_index) const;

 private:
  std::vector<Face> faces_;
};

class Polytope {
 public:
  struct Facet {
    std::vector<std::size_t> vertices;
    // Halfspace in ambient coordinates (zero outside the affine chart).
    // Together with the affine hull it cuts out the polytope.
    Halfspace halfspace;
  };

  Polytope() = default;

  // Exact hull of a nonempty point set. Throws HypothesisError on a
  // dimension mismatch, an empty input, logarithms outside the last
  // coordinate or an ambient dimension above kMaxHullDimension.
  static Polytope convex_hull(std::vector<Point> points);

  std::size_t ambient_dim() const { return ambient_dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const {
    return static_cast<std::size_t>(affine_dim_) == ambient_dim_;
  }
  // Extreme points in lexicographic order.
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const FaceLattice& face_lattice() const { return faces_; }
  // Ambient coordinates on which the projection of the affine hull is
  // injective.
  const std::vector<std::size_t>& chart() const { return chart_; }
  // Triangulation of the boundary into (affine_dim - 1)-simplices, given as
  // vertex indices.
  const std::vector<std::vector<std::size_t>>& boundary_simplices() const {
    return boundary_;
  }

  bool contains(const Point& x) const;
  // Whether x lies in the affine hull of the given vertices.
  bool in_affine_hull(std::span<const std::size_t> vertex_indices,
                      const Point& x) const;

 private:
  std::size_t ambient_dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<std::size_t>> boundary_;
  std::vector<std::size_t> chart_;
  FaceLattice faces_;
};

inline Polytope convex_hull(std::vector<Point> points) {
  return Polytope::convex_hull(std::move(points));
}

// Ambient-dimensional Euclidean volume (zero unless full-dimensional).
// Rational for rational polytopes, log-linear when the last coordinate is
// lifted.
LogLinear volume(const Polytope& p);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

inline const FaceLattice& face_lattice(const Polytope& p) {
  return p.face_lattice();
}

struct LatticeNormalization {
  std::size_t rank = 0;
  // Hermite basis of the lattice spanned by a_i - a_0 (rank vectors of Z^n).
  std::vector<LatticeVector> basis;
  // b_i with a_i = a_0 + sum_k b_ik basis_k; these generate Z^rank.
  std::vector<LatticeVector> coordinates;
  LatticeVector origin;
};

LatticeNormalization lattice_normalize(std::span<const LatticeVector> points);

// Whether the differences a_i - a_0 generate all of Z^n.
bool has_full_lattice(std::span<const LatticeVector> points);

// One cell of a regular subdivision, with the affine function of the upper
// envelope above it. Indices refer to the input points.
struct EnvelopeCell {
  std::vector<std::size_t> vertices;
  std::vector<LogLinear> gradient;
  LogLinear offset;
  // Triangulation of the cell; each simplex lists affine_dim + 1 points on
  // the envelope.
  std::vector<std::vector<std::size_t>> simplices;
};

struct Subdivision {
  Polytope domain;
  std::vector<EnvelopeCell> cells;
  // Base coordinates used to parametrize the affine hull of the domain.
  std::vector<std::size_t> chart;
};

// Upper envelope of lifted points over the hull of their bases. Upper cells
// are the lifted-hull facets whose outward normal has positive last
// coordinate; a flat point set yields a single cell.
Subdivision upper_envelope(std::span<const LiftedPoint> points);

}  // namespace toricheight

#endif  // TORICHEIGHT_GEOMKERNEL_H_
