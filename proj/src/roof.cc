#include "toricheight/roof.h"

#include <algorithm>
#include <optional>
#include <set>

#include "linalg.h"

namespace toricheight {

namespace {

Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

LogLinear affine_value(const EnvelopeCell& c, std::span<const Rational> x) {
  LogLinear v = c.offset;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!c.gradient[j].is_zero()) v += c.gradient[j] * LogLinear(x[j]);
  }
  return v;
}

// Value of f at x, assuming x in the domain: concavity makes it the minimum
// of the cell functions.
LogLinear value_in_domain(const Roof& f, std::span<const Rational> x) {
  LogLinear best;
  bool first = true;
  for (const EnvelopeCell& c : f.cells()) {
    LogLinear v = affine_value(c, x);
    if (first || v < best) best = std::move(v);
    first = false;
  }
  return best;
}

// Hyperplane n.x = c with rational data, scaled so the first nonzero entry of
// n is 1.
struct Hyperplane {
  std::vector<Rational> normal;
  Rational offset;
  bool operator<(const Hyperplane& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

std::optional<Hyperplane> normalized(const Halfspace& h) {
  Hyperplane out;
  for (const LogLinear& c : h.normal) out.normal.push_back(c.constant());
  out.offset = h.offset.constant();
  auto lead = std::find_if(out.normal.begin(), out.normal.end(),
                           [](const Rational& q) { return q != 0; });
  if (lead == out.normal.end()) return std::nullopt;
  const Rational s = *lead;
  for (Rational& q : out.normal) q /= s;
  out.offset /= s;
  return out;
}

}  // namespace

Roof::Roof(std::vector<LiftedPoint> generators)
    : generators_(std::move(generators)) {
  Subdivision s = upper_envelope(generators_);
  domain_ = std::move(s.domain);
  cells_ = std::move(s.cells);
  chart_ = std::move(s.chart);
}

std::vector<std::size_t> Roof::roof_generators() const {
  std::set<std::size_t> on;
  for (const EnvelopeCell& c : cells_) on.insert(c.vertices.begin(), c.vertices.end());
  return {on.begin(), on.end()};
}

LogLinear Roof::min_value() const {
  LogLinear best;
  bool first = true;
  for (std::size_t i : roof_generators()) {
    if (first || generators_[i].lift < best) best = generators_[i].lift;
    first = false;
  }
  return best;
}

Roof roof_from_weight(std::span<const LatticeVector> exponents,
                      std::span<const LogLinear> tau) {
  if (exponents.size() != tau.size()) {
    throw HypothesisError("exponent and weight lists differ in length");
  }
  if (exponents.empty()) throw HypothesisError("empty exponent list");
  std::vector<LiftedPoint> gens;
  gens.reserve(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    LiftedPoint p;
    for (const Integer& z : exponents[i]) p.base.emplace_back(z);
    p.lift = tau[i];
    gens.push_back(std::move(p));
  }
  return Roof(std::move(gens));
}

LogLinear roof_eval(const Roof& f, std::span<const Rational> x) {
  if (x.size() != f.base_dim()) {
    throw HypothesisError("evaluation point has the wrong dimension");
  }
  if (!f.domain().contains(make_point(x))) {
    throw HypothesisError("evaluation point outside the roof domain");
  }
  return value_in_domain(f, x);
}

LogLinear roof_integral(const Roof& f) {
  const std::size_t n = f.base_dim();
  if (!f.domain().full_dimensional()) return LogLinear(0);
  if (n == 0) return f.generators()[f.cells().front().vertices.front()].lift;
  LogLinear total;
  for (const EnvelopeCell& c : f.cells()) {
    for (const auto& s : c.simplices) {
      linalg::RationalMatrix m;
      const auto& origin = f.generators()[s[0]].base;
      for (std::size_t i = 1; i < s.size(); ++i) {
        std::vector<Rational> row;
        for (std::size_t j = 0; j < n; ++j) {
          row.push_back(f.generators()[s[i]].base[j] - origin[j]);
        }
        m.push_back(std::move(row));
      }
      const Rational vol = ::abs(linalg::determinant(std::move(m)));
      LogLinear sum;
      for (std::size_t i : s) sum += f.generators()[i].lift;
      total += sum * vol / static_cast<unsigned long>(n + 1);
    }
  }
  return total / factorial(n);
}

Roof sup_convolution(const Roof& f, const Roof& g) {
  if (f.base_dim() != g.base_dim()) {
    throw HypothesisError("sup-convolution of roofs of different dimensions");
  }
  std::vector<LiftedPoint> gens;
  for (std::size_t i : f.roof_generators()) {
    const LiftedPoint& a = f.generators()[i];
    for (std::size_t j : g.roof_generators()) {
      const LiftedPoint& b = g.generators()[j];
      LiftedPoint s;
      for (std::size_t k = 0; k < a.base.size(); ++k) s.base.push_back(a.base[k] + b.base[k]);
      s.lift = a.lift + b.lift;
      gens.push_back(std::move(s));
    }
  }
  return Roof(std::move(gens));
}

Roof restrict_to_face(const Roof& f, const Face& face) {
  if (f.domain().face_lattice().find(face.vertices) < 0) {
    throw HypothesisError("not a face of the roof domain");
  }
  std::vector<LiftedPoint> gens;
  for (const LiftedPoint& p : f.generators()) {
    if (f.domain().in_affine_hull(face.vertices, make_point(p.base))) gens.push_back(p);
  }
  return Roof(std::move(gens));
}

Polytope lifted_polytope(const Roof& f, const LogLinear& mu) {
  if (mu > f.min_value()) {
    throw HypothesisError("floor " + mu.to_string() + " lies above the roof minimum " +
                          f.min_value().to_string());
  }
  std::vector<Point> pts;
  for (std::size_t i : f.roof_generators()) pts.push_back(make_point(f.generators()[i]));
  for (const Point& v : f.domain().vertices()) {
    Point p = v;
    p.push_back(mu);
    pts.push_back(std::move(p));
  }
  return Polytope::convex_hull(std::move(pts));
}

Roof roof_pointwise_sum(const Roof& f, const Roof& g) {
  const std::size_t n = f.base_dim();
  if (g.base_dim() != n || f.domain().vertices() != g.domain().vertices()) {
    throw HypothesisError("pointwise sum of roofs on different domains");
  }
  if (n > 3) throw HypothesisError("pointwise sums are limited to dimension 3");
  if (!f.domain().full_dimensional()) {
    throw HypothesisError("pointwise sums need a full-dimensional domain");
  }
  if (n == 0) {
    return Roof({LiftedPoint{{}, f.min_value() + g.min_value()}});
  }

  // Breakpoints of f + g are vertices of the arrangement of all cell walls.
  std::set<Hyperplane> walls;
  for (const Roof* r : {&f, &g}) {
    for (const EnvelopeCell& c : r->cells()) {
      std::vector<Point> pts;
      for (std::size_t i : c.vertices) pts.push_back(make_point(r->generators()[i].base));
      const Polytope cell = Polytope::convex_hull(std::move(pts));
      for (const auto& facet : cell.facets()) {
        if (auto h = normalized(facet.halfspace)) walls.insert(*h);
      }
    }
  }
  const std::vector<Hyperplane> list(walls.begin(), walls.end());
  std::set<std::vector<Rational>> seen;
  std::vector<LiftedPoint> gens;
  std::vector<std::size_t> pick(n);
  auto visit = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == n) {
      linalg::RationalMatrix m;
      std::vector<Rational> rhs;
      for (std::size_t i : pick) {
        m.push_back(list[i].normal);
        rhs.push_back(list[i].offset);
      }
      auto x = linalg::solve(std::move(m), std::move(rhs));
      if (!x || !seen.insert(*x).second) return;
      if (!f.domain().contains(make_point(*x))) return;
      gens.push_back(LiftedPoint{*x, value_in_domain(f, *x) + value_in_domain(g, *x)});
      return;
    }
    for (std::size_t i = start; i < list.size(); ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  visit(visit, 0, 0);
  return Roof(std::move(gens));
}

}  // namespace toricheight
