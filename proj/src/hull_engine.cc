#include "hull_engine.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "linalg.h"

namespace toricheight::hull {

namespace {

struct Simplex {
  std::vector<std::size_t> v;  // local indices
  std::vector<LogLinear> normal;
  LogLinear offset;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::size_t> without(const std::vector<std::size_t>& v,
                                 std::size_t skip) {
  std::vector<std::size_t> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != skip) out.push_back(v[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Boundary triangulation of a full-dimensional point set in R^k, k >= 2.
class BeneathBeyond {
 public:
  explicit BeneathBeyond(const std::vector<Point>& pts)
      : pts_(pts), k_(pts.front().size()) {}

  std::vector<Simplex> run() {
    const std::vector<std::size_t> start = initial_simplex();
    interior_ = Point(k_);
    for (std::size_t i : start) {
      for (std::size_t j = 0; j < k_; ++j) interior_[j] += pts_[i][j];
    }
    for (auto& c : interior_) c /= Rational(static_cast<long>(k_ + 1));
    for (std::size_t skip = 0; skip < start.size(); ++skip) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < start.size(); ++i) {
        if (i != skip) face.push_back(start[i]);
      }
      alive_.push_back(make(std::move(face)));
    }
    std::vector<bool> used(pts_.size(), false);
    for (std::size_t i : start) used[i] = true;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (!used[i]) insert(i);
    }
    return std::move(alive_);
  }

  LogLinear side(const Simplex& s, std::size_t point) const {
    return linalg::dot(s.normal, pts_[point]) - s.offset;
  }

 private:
  std::vector<std::size_t> initial_simplex() const {
    std::vector<std::size_t> chosen{0};
    std::vector<Point> rows;
    for (std::size_t i = 1; i < pts_.size() && chosen.size() < k_ + 1; ++i) {
      rows.push_back(linalg::subtract(pts_[i], pts_[0]));
      if (linalg::rank(rows) == rows.size()) {
        chosen.push_back(i);
      } else {
        rows.pop_back();
      }
    }
    if (chosen.size() != k_ + 1) {
      throw std::logic_error("hull input is not full-dimensional");
    }
    return chosen;
  }

  Simplex make(std::vector<std::size_t> v) const {
    Simplex s;
    std::vector<Point> rows;
    for (std::size_t i = 1; i < v.size(); ++i) {
      rows.push_back(linalg::subtract(pts_[v[i]], pts_[v[0]]));
    }
    s.normal.resize(k_);
    for (std::size_t j = 0; j < k_; ++j) {
      std::vector<Point> minor;
      minor.reserve(rows.size());
      for (const Point& r : rows) {
        Point m;
        m.reserve(k_ - 1);
        for (std::size_t c = 0; c < k_; ++c) {
          if (c != j) m.push_back(r[c]);
        }
        minor.push_back(std::move(m));
      }
      LogLinear d = linalg::determinant(minor);
      s.normal[j] = (j % 2 == 0) ? d : -d;
    }
    s.offset = linalg::dot(s.normal, pts_[v[0]]);
    const int orient = (linalg::dot(s.normal, interior_) - s.offset).sign();
    if (orient == 0) throw std::logic_error("degenerate boundary simplex");
    if (orient > 0) {
      for (auto& c : s.normal) c = -c;
      s.offset = -s.offset;
    }
    s.v = std::move(v);
    return s;
  }

  void insert(std::size_t p) {
    std::vector<bool> visible(alive_.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < alive_.size(); ++f) {
      if (side(alive_[f], p).sign() > 0) {
        visible[f] = true;
        any = true;
      }
    }
    if (!any) return;
    std::map<std::vector<std::size_t>, int> ridges;
    for (std::size_t f = 0; f < alive_.size(); ++f) {
      if (!visible[f]) continue;
      for (std::size_t skip = 0; skip < alive_[f].v.size(); ++skip) {
        ++ridges[without(alive_[f].v, skip)];
      }
    }
    std::vector<Simplex> next;
    next.reserve(alive_.size());
    for (std::size_t f = 0; f < alive_.size(); ++f) {
      if (!visible[f]) next.push_back(std::move(alive_[f]));
    }
    for (const auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      std::vector<std::size_t> v = ridge;
      v.push_back(p);
      next.push_back(make(std::move(v)));
    }
    alive_ = std::move(next);
  }

  const std::vector<Point>& pts_;
  const std::size_t k_;
  Point interior_;
  std::vector<Simplex> alive_;
};

void add_faces(std::map<std::vector<std::size_t>, int>& faces,
               const std::vector<std::pair<int, std::vector<std::size_t>>>& src) {
  for (const auto& [dim, verts] : src) faces.emplace(verts, dim);
}

}  // namespace

Result compute(const std::vector<Point>& points,
               const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw std::logic_error("hull of an empty subset");
  Result out;
  const std::size_t origin = subset.front();
  std::vector<Point> diffs;
  diffs.reserve(subset.size());
  for (std::size_t i = 1; i < subset.size(); ++i) {
    diffs.push_back(linalg::subtract(points[subset[i]], points[origin]));
  }
  out.chart = linalg::pivot_columns(diffs);
  const std::size_t k = out.chart.size();
  out.dim = static_cast<int>(k);

  if (k == 0) {
    out.vertices = {origin};
    out.faces.emplace_back(0, out.vertices);
    return out;
  }

  std::vector<Point> proj;
  proj.reserve(subset.size());
  for (std::size_t i : subset) proj.push_back(linalg::project(points[i], out.chart));

  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < proj.size(); ++i) {
      if (compare(proj[i][0], proj[lo][0]) < 0) lo = i;
      if (compare(proj[i][0], proj[hi][0]) > 0) hi = i;
    }
    const std::size_t glo = subset[lo], ghi = subset[hi];
    Facet low{{glo}, {glo}, {{glo}}, {LogLinear(-1)}, -proj[lo][0]};
    Facet high{{ghi}, {ghi}, {{ghi}}, {LogLinear(1)}, proj[hi][0]};
    out.facets = {std::move(low), std::move(high)};
    out.vertices = {std::min(glo, ghi), std::max(glo, ghi)};
    out.faces = {{0, {glo}}, {0, {ghi}}, {1, out.vertices}};
    return out;
  }

  BeneathBeyond engine(proj);
  std::vector<Simplex> boundary = engine.run();

  // Merge adjacent coplanar simplices into facets.
  UnionFind groups(boundary.size());
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridge_owners;
  for (std::size_t s = 0; s < boundary.size(); ++s) {
    for (std::size_t skip = 0; skip < boundary[s].v.size(); ++skip) {
      ridge_owners[without(boundary[s].v, skip)].push_back(s);
    }
  }
  for (const auto& [ridge, owners] : ridge_owners) {
    if (owners.size() != 2) throw std::logic_error("boundary is not a manifold");
    const Simplex& a = boundary[owners[0]];
    const Simplex& b = boundary[owners[1]];
    std::size_t apex = 0;
    for (std::size_t v : b.v) {
      if (!std::binary_search(ridge.begin(), ridge.end(), v)) apex = v;
    }
    if (engine.side(a, apex).sign() == 0) groups.unite(owners[0], owners[1]);
  }

  std::map<std::size_t, std::size_t> group_index;
  for (std::size_t s = 0; s < boundary.size(); ++s) {
    const std::size_t root = groups.find(s);
    auto [it, inserted] = group_index.emplace(root, out.facets.size());
    if (inserted) {
      Facet f;
      f.normal = boundary[s].normal;
      f.offset = boundary[s].offset;
      out.facets.push_back(std::move(f));
    }
    Facet& f = out.facets[it->second];
    std::vector<std::size_t> simplex;
    for (std::size_t v : boundary[s].v) {
      simplex.push_back(subset[v]);
      f.points.push_back(subset[v]);
    }
    f.simplices.push_back(std::move(simplex));
  }

  std::map<std::vector<std::size_t>, int> faces;
  std::set<std::size_t> vertices;
  for (Facet& f : out.facets) {
    std::sort(f.points.begin(), f.points.end());
    f.points.erase(std::unique(f.points.begin(), f.points.end()), f.points.end());
    Result sub = compute(points, f.points);
    if (sub.dim != out.dim - 1) throw std::logic_error("facet has wrong dimension");
    f.vertices = sub.vertices;
    vertices.insert(sub.vertices.begin(), sub.vertices.end());
    add_faces(faces, sub.faces);
  }
  out.vertices.assign(vertices.begin(), vertices.end());
  faces.emplace(out.vertices, out.dim);
  for (auto& [verts, dim] : faces) out.faces.emplace_back(dim, verts);
  return out;
}

}  // namespace toricheight::hull
