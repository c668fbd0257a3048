#include "toricheight/geomkernel.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hull_engine.h"
#include "linalg.h"

namespace toricheight {

namespace {

Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// Sorts lexicographically and removes duplicates; returns for every input
// point its index in the deduplicated list.
std::vector<std::size_t> sort_unique(std::vector<Point>& pts) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_compare(pts[a], pts[b]) < 0;
  });
  std::vector<Point> unique;
  std::vector<std::size_t> where(pts.size());
  for (std::size_t i : order) {
    if (unique.empty() || !(unique.back() == pts[i])) unique.push_back(pts[i]);
    where[i] = unique.size() - 1;
  }
  pts = std::move(unique);
  return where;
}

std::vector<LogLinear> pad(const std::vector<LogLinear>& chart_vector,
                           const std::vector<std::size_t>& chart,
                           std::size_t ambient) {
  std::vector<LogLinear> out(ambient);
  for (std::size_t j = 0; j < chart.size(); ++j) out[chart[j]] = chart_vector[j];
  return out;
}

}  // namespace

Point make_point(std::span<const Rational> coords) {
  return Point(coords.begin(), coords.end());
}

Point make_point(const LatticeVector& coords) {
  Point p;
  p.reserve(coords.size());
  for (const Integer& z : coords) p.emplace_back(Rational(z));
  return p;
}

Point make_point(const LiftedPoint& lp) {
  Point p(lp.base.begin(), lp.base.end());
  p.push_back(lp.lift);
  return p;
}

int lex_compare(const Point& a, const Point& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return compare(a[i], b[i]);
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

FaceLattice::FaceLattice(std::vector<Face> faces) : faces_(std::move(faces)) {
  for (Face& f : faces_) std::sort(f.vertices.begin(), f.vertices.end());
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
  });
}

std::vector<Face> FaceLattice::faces_of_dimension(int dim) const {
  std::vector<Face> out;
  for (const Face& f : faces_) {
    if (f.dim == dim) out.push_back(f);
  }
  return out;
}

std::size_t FaceLattice::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(
      faces_.begin(), faces_.end(), [dim](const Face& f) { return f.dim == dim; }));
}

long FaceLattice::find(std::span<const std::size_t> vertices) const {
  std::vector<std::size_t> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].vertices == key) return static_cast<long>(i);
  }
  return -1;
}

bool FaceLattice::is_subface(const Face& small, const Face& big) {
  return std::includes(big.vertices.begin(), big.vertices.end(),
                       small.vertices.begin(), small.vertices.end());
}

std::vector<std::size_t> FaceLattice::facets_of(std::size_t face_index) const {
  const Face& big = faces_.at(face_index);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].dim == big.dim - 1 && is_subface(faces_[i], big)) out.push_back(i);
  }
  return out;
}

Polytope Polytope::convex_hull(std::vector<Point> points) {
  if (points.empty()) throw HypothesisError("convex hull of an empty set");
  const std::size_t d = points.front().size();
  if (d > kMaxHullDimension) {
    throw HypothesisError("hull dimension " + std::to_string(d) +
                          " exceeds the supported maximum");
  }
  for (const Point& p : points) {
    if (p.size() != d) throw HypothesisError("points of different dimensions");
    linalg::check_log_column(p);
  }
  sort_unique(points);

  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  // Extreme points first, then a clean structure on the extreme points only.
  const hull::Result first = hull::compute(points, all);
  std::vector<Point> extreme;
  extreme.reserve(first.vertices.size());
  for (std::size_t i : first.vertices) extreme.push_back(points[i]);
  std::vector<std::size_t> idx(extreme.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const hull::Result r = first.vertices.size() == points.size()
                             ? first
                             : hull::compute(extreme, idx);

  Polytope poly;
  poly.ambient_dim_ = d;
  poly.affine_dim_ = r.dim;
  poly.vertices_ = std::move(extreme);
  poly.chart_ = r.chart;
  if (r.vertices.size() != poly.vertices_.size()) {
    throw std::logic_error("hull of extreme points lost a vertex");
  }
  for (const hull::Facet& f : r.facets) {
    Facet facet;
    facet.vertices = f.vertices;
    facet.halfspace.normal = pad(f.normal, r.chart, d);
    facet.halfspace.offset = f.offset;
    poly.facets_.push_back(std::move(facet));
    for (const auto& s : f.simplices) poly.boundary_.push_back(s);
  }
  std::vector<Face> faces;
  for (const auto& [dim, verts] : r.faces) faces.push_back(Face{dim, verts});
  poly.faces_ = FaceLattice(std::move(faces));
  return poly;
}

bool Polytope::in_affine_hull(std::span<const std::size_t> vertex_indices,
                              const Point& x) const {
  if (x.size() != ambient_dim_) return false;
  if (vertex_indices.empty()) return false;
  const Point& origin = vertices_.at(vertex_indices.front());
  std::vector<Point> rows;
  for (std::size_t i = 1; i < vertex_indices.size(); ++i) {
    rows.push_back(linalg::subtract(vertices_.at(vertex_indices[i]), origin));
  }
  const std::size_t base_rank = linalg::rank(rows);
  rows.push_back(linalg::subtract(x, origin));
  return linalg::rank(rows) == base_rank;
}

bool Polytope::contains(const Point& x) const {
  if (affine_dim_ < 0 || x.size() != ambient_dim_) return false;
  std::vector<std::size_t> all(vertices_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!in_affine_hull(all, x)) return false;
  for (const Facet& f : facets_) {
    if (compare(linalg::dot(f.halfspace.normal, x), f.halfspace.offset) > 0) {
      return false;
    }
  }
  return true;
}

LogLinear volume(const Polytope& p) {
  if (!p.full_dimensional()) return LogLinear(0);
  const std::size_t d = p.ambient_dim();
  if (d == 0) return LogLinear(1);
  const Point& apex = p.vertices().front();
  LogLinear total;
  for (const auto& simplex : p.boundary_simplices()) {
    if (std::find(simplex.begin(), simplex.end(), 0) != simplex.end()) continue;
    std::vector<Point> rows;
    rows.reserve(d);
    for (std::size_t v : simplex) {
      rows.push_back(linalg::subtract(p.vertices()[v], apex));
    }
    total += linalg::determinant(rows).abs();
  }
  return total / factorial(d);
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw HypothesisError("Minkowski sum of polytopes of different dimensions");
  }
  std::vector<Point> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const Point& a : p.vertices()) {
    for (const Point& b : q.vertices()) {
      Point s(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
      sums.push_back(std::move(s));
    }
  }
  return Polytope::convex_hull(std::move(sums));
}

LatticeNormalization lattice_normalize(std::span<const LatticeVector> points) {
  if (points.empty()) throw HypothesisError("lattice of an empty point list");
  const std::size_t n = points.front().size();
  for (const LatticeVector& a : points) {
    if (a.size() != n) throw HypothesisError("lattice vectors of different lengths");
  }
  LatticeNormalization out;
  out.origin = points.front();
  std::vector<LatticeVector> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    LatticeVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = points[i][j] - out.origin[j];
    rows.push_back(std::move(d));
  }

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (rows[r][col] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 rows[r][col].get_mpz_t(), rows[i][col].get_mpz_t());
      const Integer a = rows[r][col] / g;
      const Integer b = rows[i][col] / g;
      for (std::size_t j = 0; j < n; ++j) {
        const Integer top = s * rows[r][j] + t * rows[i][j];
        const Integer bottom = a * rows[i][j] - b * rows[r][j];
        rows[r][j] = top;
        rows[i][j] = bottom;
      }
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0) {
      for (Integer& z : rows[r]) z = -z;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  out.rank = r;
  out.basis.assign(rows.begin(), rows.begin() + static_cast<long>(r));

  for (const LatticeVector& a : points) {
    LatticeVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = a[j] - out.origin[j];
    LatticeVector c(r);
    for (std::size_t k = 0; k < r; ++k) {
      const Integer& pivot = out.basis[k][pivots[k]];
      if (!mpz_divisible_p(d[pivots[k]].get_mpz_t(), pivot.get_mpz_t())) {
        throw std::logic_error("lattice coordinates are not integral");
      }
      c[k] = d[pivots[k]] / pivot;
      for (std::size_t j = 0; j < n; ++j) d[j] -= c[k] * out.basis[k][j];
    }
    for (const Integer& z : d) {
      if (z != 0) throw std::logic_error("vector outside its own lattice");
    }
    out.coordinates.push_back(std::move(c));
  }
  return out;
}

bool has_full_lattice(std::span<const LatticeVector> points) {
  const LatticeNormalization norm = lattice_normalize(points);
  const std::size_t n = points.front().size();
  if (norm.rank != n) return false;
  // The Hermite basis is upper triangular; its determinant is the index.
  Integer index = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (norm.basis[k][j] != 0) {
        index *= norm.basis[k][j];
        break;
      }
    }
  }
  return abs(index) == 1;
}

Subdivision upper_envelope(std::span<const LiftedPoint> points) {
  if (points.empty()) throw HypothesisError("upper envelope of no points");
  const std::size_t n = points.front().base.size();
  std::vector<Point> base_points;
  for (const LiftedPoint& p : points) {
    if (p.base.size() != n) throw HypothesisError("points of different dimensions");
    base_points.push_back(make_point(p.base));
  }
  Subdivision out;
  out.domain = Polytope::convex_hull(base_points);

  std::vector<Point> base_diffs;
  for (std::size_t i = 1; i < base_points.size(); ++i) {
    base_diffs.push_back(linalg::subtract(base_points[i], base_points[0]));
  }
  out.chart = linalg::pivot_columns(base_diffs);
  const std::size_t r = out.chart.size();

  // Chart coordinates followed by the lift; distinct lifted points only.
  std::vector<Point> lifted;
  std::map<std::size_t, std::size_t> first_input;
  {
    std::vector<Point> raw;
    for (const LiftedPoint& p : points) {
      Point q = linalg::project(make_point(p.base), out.chart);
      q.push_back(p.lift);
      raw.push_back(std::move(q));
    }
    lifted = raw;
    const std::vector<std::size_t> where = sort_unique(lifted);
    for (std::size_t i = 0; i < where.size(); ++i) first_input.emplace(where[i], i);
  }
  auto input_index = [&](std::size_t local) { return first_input.at(local); };

  if (r == 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < lifted.size(); ++i) {
      if (compare(lifted[i].back(), lifted[best].back()) > 0) best = i;
    }
    EnvelopeCell cell;
    cell.vertices = {input_index(best)};
    cell.gradient.assign(n, LogLinear(0));
    cell.offset = lifted[best].back();
    cell.simplices = {{input_index(best)}};
    out.cells.push_back(std::move(cell));
    return out;
  }

  std::vector<std::size_t> all(lifted.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const hull::Result hull = hull::compute(lifted, all);

  auto to_input = [&](const std::vector<std::size_t>& local) {
    std::vector<std::size_t> v;
    for (std::size_t i : local) v.push_back(input_index(i));
    return v;
  };

  if (static_cast<std::size_t>(hull.dim) == r) {
    // Flat: the lift is one affine function of the chart coordinates.
    std::vector<std::size_t> frame;
    {
      std::vector<Point> rows;
      frame.push_back(0);
      for (std::size_t i = 1; i < lifted.size() && frame.size() < r + 1; ++i) {
        Point d = linalg::subtract(lifted[i], lifted[0]);
        d.pop_back();
        rows.push_back(std::move(d));
        if (linalg::rank(rows) == rows.size()) {
          frame.push_back(i);
        } else {
          rows.pop_back();
        }
      }
    }
    linalg::RationalMatrix m;
    for (std::size_t i : frame) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < r; ++j) row.push_back(lifted[i][j].constant());
      row.push_back(1);
      m.push_back(std::move(row));
    }
    // Solve per coefficient of the lift: constant part and each log(p).
    std::vector<Integer> primes;
    for (std::size_t i : frame) {
      for (const auto& t : lifted[i].back().log_terms()) primes.push_back(t.first);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<LogLinear> coeffs(r + 1);
    auto accumulate = [&](const Integer* p) {
      std::vector<Rational> rhs;
      for (std::size_t i : frame) {
        rhs.push_back(p ? lifted[i].back().log_coefficient(*p)
                        : lifted[i].back().constant());
      }
      const auto sol = linalg::solve(m, rhs);
      if (!sol) throw std::logic_error("degenerate affine frame");
      for (std::size_t j = 0; j <= r; ++j) {
        coeffs[j] += p ? LogLinear::log_prime(*p, (*sol)[j]) : LogLinear((*sol)[j]);
      }
    };
    accumulate(nullptr);
    for (const Integer& p : primes) accumulate(&p);

    EnvelopeCell cell;
    cell.vertices = to_input(hull.vertices);
    std::sort(cell.vertices.begin(), cell.vertices.end());
    std::vector<LogLinear> grad(coeffs.begin(), coeffs.begin() + static_cast<long>(r));
    cell.gradient = pad(grad, out.chart, n);
    cell.offset = coeffs[r];
    // Fan from the first vertex over the boundary simplices avoiding it.
    const std::size_t apex = hull.vertices.front();
    for (const hull::Facet& f : hull.facets) {
      for (const auto& s : f.simplices) {
        if (std::find(s.begin(), s.end(), apex) != s.end()) continue;
        std::vector<std::size_t> simplex{apex};
        simplex.insert(simplex.end(), s.begin(), s.end());
        std::vector<Point> rows;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          Point d = linalg::subtract(lifted[simplex[i]], lifted[apex]);
          d.pop_back();
          rows.push_back(std::move(d));
        }
        if (linalg::determinant(rows).is_zero()) continue;
        cell.simplices.push_back(to_input(simplex));
      }
    }
    out.cells.push_back(std::move(cell));
    return out;
  }

  for (const hull::Facet& f : hull.facets) {
    const Rational lift_normal = f.normal[r].constant();
    if (!f.normal[r].is_rational()) {
      throw std::logic_error("lift component of a facet normal is not rational");
    }
    if (lift_normal <= 0) continue;
    EnvelopeCell cell;
    cell.vertices = to_input(f.vertices);
    std::sort(cell.vertices.begin(), cell.vertices.end());
    std::vector<LogLinear> grad(r);
    for (std::size_t j = 0; j < r; ++j) grad[j] = -f.normal[j] / lift_normal;
    cell.gradient = pad(grad, out.chart, n);
    cell.offset = f.offset / lift_normal;
    for (const auto& s : f.simplices) cell.simplices.push_back(to_input(s));
    out.cells.push_back(std::move(cell));
  }
  std::sort(out.cells.begin(), out.cells.end(),
            [](const EnvelopeCell& a, const EnvelopeCell& b) {
              return a.vertices < b.vertices;
            });
  return out;
}

}  // namespace toricheight
