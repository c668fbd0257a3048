// Independent floating-point reference computations used by the tests.
// They share no code with the library.

#ifndef TORICHEIGHT_TESTS_ORACLES_H_
#define TORICHEIGHT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

struct Estimate {
  double value = 0;
  double bound = 0;
};

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

// Supporting hyperplanes n.x <= c of the hull of points in R^2 or R^3, found
// by testing every hyperplane through dim points.
struct Plane {
  Vec n;
  double c;
};

inline std::vector<Plane> supporting_planes(const std::vector<Vec>& pts) {
  const std::size_t dim = pts.front().size();
  std::vector<Plane> out;
  const double eps = 1e-9;
  auto consider = [&](Vec n) {
    double len = 0;
    for (double x : n) len += x * x;
    len = std::sqrt(len);
    if (len < eps) return;
    for (double& x : n) x /= len;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Vec& p : pts) {
      double s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += n[j] * p[j];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    // Every direction through dim points gives a valid slab; keep both sides.
    out.push_back({n, hi});
    Vec m = n;
    for (double& x : m) x = -x;
    out.push_back({m, -lo});
  };
  const std::size_t m = pts.size();
  if (dim == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        consider({-(pts[j][1] - pts[i][1]), pts[j][0] - pts[i][0]});
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Vec u(3), v(3);
          for (int t = 0; t < 3; ++t) {
            u[t] = pts[j][t] - pts[i][t];
            v[t] = pts[k][t] - pts[i][t];
          }
          consider({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0]});
        }
  }
  return out;
}

// Cell counting over a grid with res cells per unit-box side; cells whose
// centre lies within half a diagonal of a supporting plane are uncertain.
inline Estimate grid_volume(const std::vector<Vec>& pts, int res) {
  const std::size_t dim = pts.front().size();
  const auto planes = supporting_planes(pts);
  Vec lo(dim, std::numeric_limits<double>::infinity()), hi(dim, -lo[0]);
  for (const Vec& p : pts)
    for (std::size_t j = 0; j < dim; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  double span = 0;
  for (std::size_t j = 0; j < dim; ++j) span = std::max(span, hi[j] - lo[j]);
  if (span == 0) return {0, 0};
  const double h = span / res;
  const double half_diag = 0.5 * h * std::sqrt(static_cast<double>(dim));
  std::vector<int> count(dim);
  for (std::size_t j = 0; j < dim; ++j)
    count[j] = static_cast<int>(std::ceil((hi[j] - lo[j]) / h)) + 1;
  double inside = 0, uncertain = 0;
  std::vector<int> idx(dim, 0);
  Vec x(dim);
  while (true) {
    for (std::size_t j = 0; j < dim; ++j) x[j] = lo[j] + (idx[j] + 0.5) * h;
    bool out = false, edge = false;
    for (const Plane& pl : planes) {
      double s = -pl.c;
      for (std::size_t j = 0; j < dim; ++j) s += pl.n[j] * x[j];
      if (s > half_diag) {
        out = true;
        break;
      }
      if (s > -half_diag) edge = true;
    }
    if (!out) (edge ? uncertain : inside) += 1;
    std::size_t j = 0;
    while (j < dim && ++idx[j] == count[j]) idx[j++] = 0;
    if (j == dim) break;
  }
  const double cell = std::pow(h, static_cast<double>(dim));
  return {(inside + uncertain / 2) * cell, (uncertain / 2 + 1) * cell};
}

// Upper envelope value at x of lifted points (base, lift) by brute force over
// all simplices of generators containing x. Returns -inf outside the hull.
inline double roof_value(const std::vector<Vec>& base, const Vec& lift,
                         const Vec& x) {
  const double eps = 1e-12;
  double best = -std::numeric_limits<double>::infinity();
  const std::size_t m = base.size();
  const std::size_t dim = x.size();
  if (dim == 1) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double a = base[i][0], b = base[j][0];
        if (a > x[0] + eps || b < x[0] - eps) continue;
        if (b - a < eps) {
          if (std::abs(a - x[0]) < eps) best = std::max(best, std::max(lift[i], lift[j]));
          continue;
        }
        const double t = (x[0] - a) / (b - a);
        best = std::max(best, (1 - t) * lift[i] + t * lift[j]);
      }
    return best;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const double d = det2(base[j][0] - base[i][0], base[k][0] - base[i][0],
                              base[j][1] - base[i][1], base[k][1] - base[i][1]);
        if (std::abs(d) < eps) continue;
        const double u = det2(x[0] - base[i][0], base[k][0] - base[i][0],
                              x[1] - base[i][1], base[k][1] - base[i][1]) / d;
        const double v = det2(base[j][0] - base[i][0], x[0] - base[i][0],
                              base[j][1] - base[i][1], x[1] - base[i][1]) / d;
        if (u < -eps || v < -eps || u + v > 1 + eps) continue;
        best = std::max(best, (1 - u - v) * lift[i] + u * lift[j] + v * lift[k]);
      }
  return best;
}

// Midpoint Riemann sum of the upper envelope over the hull of the bases,
// step 1/res, for 1-D and full-dimensional 2-D data.
inline Estimate riemann_roof_integral(const std::vector<Vec>& base,
                                      const Vec& lift, int res) {
  const std::size_t dim = base.front().size();
  const double h = 1.0 / res;
  double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
  double fmax = 0, slope = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    lo0 = std::min(lo0, base[i][0]);
    hi0 = std::max(hi0, base[i][0]);
    if (dim == 2) {
      lo1 = std::min(lo1, base[i][1]);
      hi1 = std::max(hi1, base[i][1]);
    }
    fmax = std::max(fmax, std::abs(lift[i]));
    for (std::size_t j = 0; j < base.size(); ++j) {
      double dist = 0;
      for (std::size_t t = 0; t < dim; ++t) dist += std::pow(base[i][t] - base[j][t], 2);
      if (dist > 0) slope = std::max(slope, std::abs(lift[i] - lift[j]) / std::sqrt(dist));
    }
  }
  Estimate e;
  if (dim == 1) {
    const int n = static_cast<int>(std::lround((hi0 - lo0) * res));
    for (int i = 0; i < n; ++i) e.value += roof_value(base, lift, {lo0 + (i + 0.5) * h}) * h;
    // The envelope is concave and piecewise affine; one slope change per cell
    // at most costs slope * h * h per cell.
    e.bound = slope * h * h * n + 1e-9;
    return e;
  }
  const int nx = static_cast<int>(std::ceil((hi0 - lo0) * res));
  const int ny = static_cast<int>(std::ceil((hi1 - lo1) * res));
  const double cell = h * h;
  double edge_cells = 0, area = 0;
  const double half_diag = h * std::sqrt(2.0) / 2;
  std::vector<std::vector<double>> pts;
  for (const auto& b : base) pts.push_back(b);
  const auto planes = supporting_planes(pts);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const Vec x{lo0 + (i + 0.5) * h, lo1 + (j + 0.5) * h};
      bool out = false, edge = false;
      for (const Plane& pl : planes) {
        const double s = pl.n[0] * x[0] + pl.n[1] * x[1] - pl.c;
        if (s > half_diag) {
          out = true;
          break;
        }
        if (s > -half_diag) edge = true;
      }
      if (out) continue;
      if (edge) {
        edge_cells += 1;
        const double v = roof_value(base, lift, x);
        if (std::isfinite(v)) e.value += v * cell / 2;
        continue;
      }
      area += cell;
      e.value += roof_value(base, lift, x) * cell;
    }
  e.bound = slope * half_diag * area + edge_cells * cell * (fmax + slope) + 1e-9;
  return e;
}

// Hilbert weight by exhaustive enumeration of the degree-D monomials with an
// odometer; lattice points are keyed by their exponent sums.
inline double hilbert_weight(const std::vector<std::vector<long>>& a,
                             const Vec& tau, int degree) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  std::map<std::vector<long>, double> best;
  std::vector<int> lambda(m, 0);
  while (true) {
    int total = 0;
    for (int l : lambda) total += l;
    if (total == degree) {
      std::vector<long> key(n, 0);
      double w = 0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) key[j] += lambda[i] * a[i][j];
        w += lambda[i] * tau[i];
      }
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(key, w);
      } else {
        it->second = std::max(it->second, w);
      }
    }
    std::size_t i = 0;
    while (i < m && ++lambda[i] > degree) lambda[i++] = 0;
    if (i == m) break;
  }
  double sum = 0;
  for (const auto& kv : best) sum += kv.second;
  return sum;
}

}  // namespace oracle

#endif  // TORICHEIGHT_TESTS_ORACLES_H_
