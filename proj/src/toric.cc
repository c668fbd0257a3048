#include "toricheight/toric.h"

#include <algorithm>
#include <functional>

#include "toricheight/roof.h"

namespace toricheight {

namespace {

Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Rational pow(const Rational& q, long k) {
  Rational out = 1;
  const Rational base = k < 0 ? Rational(1 / q) : q;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

void require_full_lattice(std::span<const LatticeVector> exponents) {
  if (exponents.empty()) throw HypothesisError("empty exponent list");
  if (!has_full_lattice(exponents)) {
    throw HypothesisError(
        "the differences of the exponents do not generate the full lattice");
  }
}

Polytope hull_of(std::span<const LatticeVector> a) {
  std::vector<Point> pts;
  for (const LatticeVector& v : a) pts.push_back(make_point(v));
  return Polytope::convex_hull(std::move(pts));
}

// Number of lambda in N^m with |lambda| = d.
Integer composition_count(std::size_t m, long d) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d + static_cast<long>(m) - 1),
               static_cast<unsigned long>(m - 1));
  return c;
}

void check_cap(std::size_t m, long d, std::uint64_t cap) {
  const Integer count = composition_count(m, d);
  if (count > Integer(std::to_string(cap))) {
    throw CapExceededError("enumeration of " + count.get_str() +
                           " monomials exceeds the cap of " + std::to_string(cap));
  }
}

// Calls visit(lambda) for every lambda in N^m with |lambda| = d, in
// lexicographically decreasing order.
void for_each_composition(std::size_t m, long d,
                          const std::function<void(const std::vector<long>&)>& visit) {
  std::vector<long> lambda(m, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i + 1 == m) {
      lambda[i] = left;
      visit(lambda);
      return;
    }
    for (long k = left; k >= 0; --k) {
      lambda[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
}

struct Normalized {
  std::vector<LatticeVector> b;
  std::size_t rank;
};

Normalized normalize(const MonomialPair& pair) {
  LatticeNormalization n = lattice_normalize(pair.exponents());
  return {std::move(n.coordinates), n.rank};
}

}  // namespace

MonomialPair::MonomialPair(std::vector<LatticeVector> exponents,
                           std::vector<Rational> coefficients)
    : exponents_(std::move(exponents)), coefficients_(std::move(coefficients)) {
  if (exponents_.empty()) throw HypothesisError("a monomial pair needs at least one term");
  if (exponents_.size() != coefficients_.size()) {
    throw HypothesisError("exponent and coefficient lists differ in length");
  }
  for (const LatticeVector& a : exponents_) {
    if (a.size() != exponents_.front().size()) {
      throw HypothesisError("exponent vectors of different lengths");
    }
  }
  for (const Rational& q : coefficients_) {
    if (q == 0) throw HypothesisError("zero coefficient; drop the coordinate first");
  }
}

MonomialPair::Restricted MonomialPair::drop_zero_coordinates(
    std::vector<LatticeVector> exponents, std::vector<Rational> coefficients) {
  if (exponents.size() != coefficients.size()) {
    throw HypothesisError("exponent and coefficient lists differ in length");
  }
  std::vector<LatticeVector> a;
  std::vector<Rational> alpha;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) continue;
    a.push_back(std::move(exponents[i]));
    alpha.push_back(coefficients[i]);
    kept.push_back(i);
  }
  return {MonomialPair(std::move(a), std::move(alpha)), std::move(kept)};
}

std::vector<LogLinear> weight_vector(const MonomialPair& pair, const Place& v) {
  std::vector<LogLinear> tau;
  tau.reserve(pair.size());
  for (const Rational& q : pair.coefficients()) tau.push_back(log_abs(q, v));
  return tau;
}

Integer degree(const MonomialPair& pair) {
  const Normalized n = normalize(pair);
  const LogLinear vol = volume(hull_of(n.b));
  const Rational d = vol.constant() * Rational(factorial(static_cast<long>(n.rank)));
  return d.get_num();
}

HeightReport normalized_height(const MonomialPair& pair) {
  const Normalized n = normalize(pair);
  HeightReport report;
  report.dim = static_cast<int>(n.rank);
  report.local_factor = factorial(static_cast<long>(n.rank) + 1);
  report.degree = degree(pair);
  LogLinear sum;
  for (const Place& v : relevant_places(pair.coefficients())) {
    const std::vector<LogLinear> tau = weight_vector(pair, v);
    LogLinear local = roof_integral(roof_from_weight(n.b, tau));
    sum += local;
    report.per_place.emplace(v, std::move(local));
  }
  report.value = sum * Rational(report.local_factor);
  return report;
}

LogLinear chow_weight(std::span<const LatticeVector> exponents,
                      std::span<const LogLinear> tau) {
  require_full_lattice(exponents);
  const long n = static_cast<long>(exponents.front().size());
  return roof_integral(roof_from_weight(exponents, tau)) * Rational(factorial(n + 1));
}

LogLinear hilbert_weight(std::span<const LatticeVector> exponents,
                         std::span<const LogLinear> tau, long degree,
                         std::uint64_t cap) {
  if (exponents.size() != tau.size()) {
    throw HypothesisError("exponent and weight lists differ in length");
  }
  if (degree < 0) throw HypothesisError("negative degree");
  require_full_lattice(exponents);
  const std::size_t m = exponents.size();
  const std::size_t n = exponents.front().size();
  check_cap(m, degree, cap);
  std::map<LatticeVector, LogLinear> best;
  for_each_composition(m, degree, [&](const std::vector<long>& lambda) {
    LatticeVector key(n, Integer(0));
    LogLinear w;
    for (std::size_t i = 0; i < m; ++i) {
      if (lambda[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) key[j] += lambda[i] * exponents[i][j];
      w += tau[i] * Rational(lambda[i]);
    }
    auto [it, inserted] = best.emplace(std::move(key), w);
    if (!inserted && w > it->second) it->second = std::move(w);
  });
  LogLinear sum;
  for (const auto& [key, w] : best) sum += w;
  return sum;
}

LogLinear arithmetic_hilbert_norm(const MonomialPair& pair, long degree,
                                  std::uint64_t cap) {
  const Normalized n = normalize(pair);
  LogLinear sum;
  for (const Place& v : relevant_places(pair.coefficients())) {
    sum += hilbert_weight(n.b, weight_vector(pair, v), degree, cap);
  }
  return sum;
}

AsymptoticGap hilbert_asymptotic_gap(const MonomialPair& pair, long degree,
                                     long bits, std::uint64_t cap) {
  if (degree < 1) throw HypothesisError("the asymptotic gap needs D >= 1");
  const HeightReport h = normalized_height(pair);
  const LogLinear hn = arithmetic_hilbert_norm(pair, degree, cap);
  Integer dpow = 1;
  for (int i = 0; i <= h.dim; ++i) dpow *= degree;
  const LogLinear gap = (hn * Rational(factorial(h.dim + 1)) / Rational(dpow) - h.value).abs();
  return {gap, gap.approximate(bits)};
}

LogLinear symmetric_height_sum(const MonomialPair& pair) {
  const Normalized n = normalize(pair);
  LogLinear sum;
  for (const Place& v : relevant_places(pair.coefficients())) {
    const std::vector<LogLinear> tau = weight_vector(pair, v);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < pair.size(); ++i) {
      Point p = make_point(n.b[i]);
      p.push_back(tau[i]);
      pts.push_back(std::move(p));
    }
    sum += volume(Polytope::convex_hull(std::move(pts)));
  }
  return sum * Rational(factorial(static_cast<long>(n.rank) + 1));
}

MonomialPair invert(const MonomialPair& pair) {
  std::vector<Rational> alpha;
  for (const Rational& q : pair.coefficients()) alpha.push_back(1 / q);
  return MonomialPair(pair.exponents(), std::move(alpha));
}

MonomialPair power(const MonomialPair& pair, long k) {
  if (k < 1) throw HypothesisError("power needs a positive exponent");
  std::vector<Rational> alpha;
  for (const Rational& q : pair.coefficients()) alpha.push_back(pow(q, k));
  return MonomialPair(pair.exponents(), std::move(alpha));
}

MonomialPair translate(const MonomialPair& pair, const LatticeVector& c,
                       const Rational& gamma) {
  if (gamma == 0) throw HypothesisError("translation by a zero scalar");
  if (c.size() != pair.ambient_dim()) {
    throw HypothesisError("translation vector has the wrong dimension");
  }
  std::vector<LatticeVector> a = pair.exponents();
  for (LatticeVector& v : a) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[j];
  }
  std::vector<Rational> alpha;
  for (const Rational& q : pair.coefficients()) alpha.push_back(gamma * q);
  return MonomialPair(std::move(a), std::move(alpha));
}

std::vector<Orbit> orbit_decomposition(const MonomialPair& pair) {
  const Polytope q = hull_of(pair.exponents());
  std::vector<Orbit> out;
  for (const Face& face : q.face_lattice().faces()) {
    std::vector<std::size_t> members;
    std::vector<LatticeVector> a;
    std::vector<Rational> alpha;
    for (std::size_t i = 0; i < pair.size(); ++i) {
      if (!q.in_affine_hull(face.vertices, make_point(pair.exponents()[i]))) continue;
      members.push_back(i);
      a.push_back(pair.exponents()[i]);
      alpha.push_back(pair.coefficients()[i]);
    }
    out.push_back({face, std::move(members), MonomialPair(std::move(a), std::move(alpha))});
  }
  return out;
}

MonomialPair join(const MonomialPair& p, const MonomialPair& q) {
  const std::size_t n = p.ambient_dim(), m = q.ambient_dim();
  std::vector<LatticeVector> a;
  std::vector<Rational> alpha;
  for (std::size_t i = 0; i < p.size(); ++i) {
    LatticeVector v{Integer(1)};
    v.insert(v.end(), p.exponents()[i].begin(), p.exponents()[i].end());
    v.resize(1 + n + m, Integer(0));
    a.push_back(std::move(v));
    alpha.push_back(p.coefficients()[i]);
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    LatticeVector v(1 + n, Integer(0));
    v.insert(v.end(), q.exponents()[j].begin(), q.exponents()[j].end());
    a.push_back(std::move(v));
    alpha.push_back(q.coefficients()[j]);
  }
  return MonomialPair(std::move(a), std::move(alpha));
}

MonomialPair segre(const MonomialPair& p, const MonomialPair& q) {
  std::vector<LatticeVector> a;
  std::vector<Rational> alpha;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      LatticeVector v = p.exponents()[i];
      v.insert(v.end(), q.exponents()[j].begin(), q.exponents()[j].end());
      a.push_back(std::move(v));
      alpha.push_back(p.coefficients()[i] * q.coefficients()[j]);
    }
  }
  return MonomialPair(std::move(a), std::move(alpha));
}

MonomialPair veronese(const MonomialPair& pair, long degree, std::uint64_t cap) {
  if (degree < 1) throw HypothesisError("Veronese degree must be positive");
  check_cap(pair.size(), degree, cap);
  std::vector<LatticeVector> b;
  for_each_composition(pair.size(), degree, [&](const std::vector<long>& lambda) {
    LatticeVector v;
    for (long x : lambda) v.emplace_back(x);
    b.push_back(std::move(v));
  });
  return monomial_image(pair, b, std::vector<Rational>(b.size(), Rational(1)));
}

MonomialPair monomial_image(const MonomialPair& pair,
                            const std::vector<LatticeVector>& b,
                            const std::vector<Rational>& beta) {
  if (b.empty() || b.size() != beta.size()) {
    throw HypothesisError("monomial map needs equally many exponents and coefficients");
  }
  Integer total = -1;
  for (const LatticeVector& v : b) {
    if (v.size() != pair.size()) {
      throw HypothesisError("monomial map exponent has the wrong length");
    }
    Integer s = 0;
    for (const Integer& z : v) {
      if (z < 0) throw HypothesisError("monomial map exponents must be nonnegative");
      s += z;
    }
    if (total >= 0 && s != total) {
      throw HypothesisError("monomial map exponents must share one total degree");
    }
    total = s;
  }
  const std::size_t n = pair.ambient_dim();
  std::vector<LatticeVector> c;
  std::vector<Rational> gamma;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (beta[j] == 0) throw HypothesisError("zero coefficient in the monomial map");
    LatticeVector v(n, Integer(0));
    Rational g = beta[j];
    for (std::size_t i = 0; i < pair.size(); ++i) {
      if (b[j][i] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) v[k] += b[j][i] * pair.exponents()[i][k];
      g *= pow(pair.coefficients()[i], b[j][i].get_si());
    }
    c.push_back(std::move(v));
    gamma.push_back(std::move(g));
  }
  return MonomialPair(std::move(c), std::move(gamma));
}

Rational function_field_height(std::span<const LatticeVector> exponents,
                               std::span<const Integer> tau) {
  if (exponents.size() != tau.size()) {
    throw HypothesisError("exponent and weight lists differ in length");
  }
  require_full_lattice(exponents);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    Point p = make_point(exponents[i]);
    p.emplace_back(Rational(tau[i]));
    pts.push_back(std::move(p));
  }
  const long n = static_cast<long>(exponents.front().size());
  return volume(Polytope::convex_hull(std::move(pts))).constant() *
         Rational(factorial(n + 1));
}

}  // namespace toricheight
