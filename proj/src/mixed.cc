#include "toricheight/mixed.h"

#include <bit>
#include <map>
#include <optional>
#include <set>

namespace toricheight {

namespace {

// Sum over nonempty subsets S of {0..m-1} of sign(m, |S|) * value(S), where
// value is evaluated on a Minkowski-type combination built incrementally.
template <typename T, typename Combine, typename Measure>
LogLinear inclusion_exclusion(std::span<const T> items, long top, Combine combine,
                              Measure measure) {
  const std::size_t m = items.size();
  std::vector<std::optional<T>> sum(std::size_t{1} << m);
  LogLinear total;
  for (std::size_t mask = 1; mask < sum.size(); ++mask) {
    std::size_t low = 0;
    while (!(mask >> low & 1)) ++low;
    const std::size_t rest = mask & (mask - 1);
    sum[mask] = rest == 0 ? items[low] : combine(*sum[rest], items[low]);
    const long size = std::popcount(mask);
    const LogLinear v = measure(*sum[mask]);
    if ((top - size) % 2 == 0) {
      total += v;
    } else {
      total -= v;
    }
  }
  return total;
}

}  // namespace

LogLinear mixed_volume(std::span<const Polytope> polytopes) {
  const std::size_t n = polytopes.size();
  if (n == 0) return LogLinear(1);
  for (const Polytope& p : polytopes) {
    if (p.ambient_dim() != n) {
      throw HypothesisError("mixed volume needs n polytopes in dimension n");
    }
  }
  return inclusion_exclusion<Polytope>(
      polytopes, static_cast<long>(n),
      [](const Polytope& a, const Polytope& b) { return minkowski_sum(a, b); },
      [](const Polytope& p) { return volume(p); });
}

LogLinear mixed_integral(std::span<const Roof> roofs) {
  if (roofs.empty()) throw HypothesisError("mixed integral of no roofs");
  const std::size_t n = roofs.size() - 1;
  for (const Roof& f : roofs) {
    if (f.base_dim() != n) {
      throw HypothesisError("mixed integral needs n+1 roofs on an n-dimensional space");
    }
  }
  return inclusion_exclusion<Roof>(
      roofs, static_cast<long>(n + 1),
      [](const Roof& a, const Roof& b) { return sup_convolution(a, b); },
      [](const Roof& f) { return roof_integral(f); });
}

LogLinear mixed_integral_via_mv(std::span<const Roof> roofs,
                                std::span<const LogLinear> floors) {
  if (roofs.empty() || roofs.size() != floors.size()) {
    throw HypothesisError("one floor per roof is required");
  }
  const std::size_t n = roofs.size() - 1;
  std::vector<Polytope> lifted;
  for (std::size_t i = 0; i <= n; ++i) {
    if (roofs[i].base_dim() != n) {
      throw HypothesisError("mixed integral needs n+1 roofs on an n-dimensional space");
    }
    if (floors[i] > LogLinear(0)) throw HypothesisError("floor above zero");
    lifted.push_back(lifted_polytope(roofs[i], floors[i]));
  }
  LogLinear total = mixed_volume(lifted);
  for (std::size_t i = 0; i <= n; ++i) {
    if (floors[i].is_zero()) continue;
    std::vector<Polytope> others;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j != i) others.push_back(roofs[j].domain());
    }
    total += floors[i] * mixed_volume(others);
  }
  return total;
}

LogLinear multi_chow_weight(std::span<const WeightedSupport> data) {
  std::vector<Roof> roofs;
  for (const WeightedSupport& w : data) {
    if (w.exponents.empty() || !has_full_lattice(w.exponents)) {
      throw HypothesisError(
          "the differences of the exponents do not generate the full lattice");
    }
    roofs.push_back(roof_from_weight(w.exponents, w.tau));
  }
  return mixed_integral(roofs);
}

HeightReport multiheight(std::span<const MonomialPair> family) {
  if (family.empty()) throw HypothesisError("empty embedding family");
  const std::size_t n = family.front().ambient_dim();
  for (const MonomialPair& p : family) {
    if (p.ambient_dim() != n) {
      throw HypothesisError("family members use different exponent dimensions");
    }
  }
  if (family.size() != n + 1) {
    throw HypothesisError("a family on T^" + std::to_string(n) + " needs " +
                          std::to_string(n + 1) + " members");
  }

  // Either every lattice is Z^n, or all coincide and we pass to their basis.
  std::vector<LatticeNormalization> norms;
  bool all_full = true;
  for (const MonomialPair& p : family) {
    norms.push_back(lattice_normalize(p.exponents()));
    all_full = all_full && has_full_lattice(p.exponents());
  }
  std::vector<std::vector<LatticeVector>> supports;
  if (all_full) {
    for (const MonomialPair& p : family) supports.push_back(p.exponents());
  } else {
    for (const LatticeNormalization& l : norms) {
      if (l.basis != norms.front().basis || l.rank != n) {
        throw HypothesisError(
            "exponent lattices are not all Z^n and do not coincide");
      }
      supports.push_back(l.coordinates);
    }
  }

  std::set<Place> places;
  for (const MonomialPair& p : family) {
    for (const Place& v : relevant_places(p.coefficients())) places.insert(v);
  }

  HeightReport report;
  report.dim = static_cast<int>(n);
  report.local_factor = 1;
  for (const Place& v : places) {
    std::vector<Roof> roofs;
    for (std::size_t i = 0; i <= n; ++i) {
      roofs.push_back(roof_from_weight(supports[i], weight_vector(family[i], v)));
    }
    LogLinear mi = mixed_integral(roofs);
    report.value += mi;
    report.per_place.emplace(v, std::move(mi));
  }
  std::vector<Polytope> domains;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Point> pts;
    for (const LatticeVector& a : supports[i]) pts.push_back(make_point(a));
    domains.push_back(Polytope::convex_hull(std::move(pts)));
  }
  report.degree = mixed_volume(domains).constant().get_num();
  return report;
}

}  // namespace toricheight
