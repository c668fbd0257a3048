#include <random>

#include "doctest.h"
#include "oracles.h"
#include "toricheight/roof.h"

using namespace toricheight;

namespace {

LogLinear L(const char* s) { return LogLinear::parse(s); }

std::vector<LatticeVector> line(std::initializer_list<long> xs) {
  std::vector<LatticeVector> a;
  for (long x : xs) a.push_back({Integer(x)});
  return a;
}

std::vector<LogLinear> taus(std::initializer_list<const char*> ts) {
  std::vector<LogLinear> out;
  for (const char* t : ts) out.push_back(L(t));
  return out;
}

std::vector<Rational> X(std::initializer_list<Rational> c) { return c; }

const auto kCubic = line({0, 1, 2, 3});

}  // namespace

TEST_CASE("cubic roofs") {
  Roof inf = roof_from_weight(kCubic, taus({"0", "2*log(2)", "-log(3)", "-log(2)"}));
  CHECK(inf.cells().size() == 2);
  CHECK(roof_eval(inf, X({1})) == L("2*log(2)"));
  CHECK(roof_eval(inf, X({2})) == L("1/2*log(2)"));
  CHECK(roof_integral(inf) == L("2*log(2)"));
  CHECK(inf.roof_generators() == std::vector<std::size_t>{0, 1, 3});
  CHECK(inf.min_value() == L("-log(2)"));
  CHECK_THROWS_AS(roof_eval(inf, X({4})), HypothesisError);

  Roof two = roof_from_weight(kCubic, taus({"0", "-2*log(2)", "0", "log(2)"}));
  CHECK(two.cells().size() == 1);
  CHECK(roof_integral(two) == L("3/2*log(2)"));

  Roof three = roof_from_weight(kCubic, taus({"0", "0", "log(3)", "0"}));
  CHECK(roof_eval(three, X({1})) == L("1/2*log(3)"));
  CHECK(roof_integral(three) == L("3/2*log(3)"));

  Roof zero = roof_from_weight(kCubic, taus({"0", "0", "0", "0"}));
  CHECK(roof_integral(zero) == LogLinear(0));
  CHECK(roof_eval(zero, X({Rational(5, 2)})) == LogLinear(0));
  CHECK_THROWS_AS(roof_from_weight(kCubic, taus({"0"})), HypothesisError);
}

TEST_CASE("chow example roof") {
  Roof f = roof_from_weight(line({0, 1, 2, 3, 4, 5}), taus({"-3", "0", "1", "-1", "0", "-2"}));
  CHECK(f.roof_generators() == std::vector<std::size_t>{0, 1, 2, 4, 5});
  CHECK(roof_integral(f) == LogLinear(-1));
}

TEST_CASE("sup-convolution") {
  std::vector<LiftedPoint> fg{{{0}, L("-log(2)")}, {{1}, L("2*log(2)")}};
  std::vector<LiftedPoint> gg{{{0}, L("-log(3)")}, {{1}, L("-log(2)")}};
  Roof h = sup_convolution(Roof(fg), Roof(gg));
  CHECK(roof_eval(h, X({0})) == L("-log(2) - log(3)"));
  CHECK(roof_eval(h, X({1})) == L("2*log(2) - log(3)"));
  CHECK(roof_eval(h, X({2})) == L("log(2)"));

  Roof f = roof_from_weight(kCubic, taus({"0", "2*log(2)", "-log(3)", "-log(2)"}));
  Roof unit({LiftedPoint{{0}, LogLinear(0)}});
  Roof same = sup_convolution(f, unit);
  for (int x = 0; x <= 3; ++x) CHECK(roof_eval(same, X({x})) == roof_eval(f, X({x})));
  Roof dbl = sup_convolution(f, f);
  for (int x = 0; x <= 3; ++x) {
    CHECK(roof_eval(dbl, X({2 * x})) == roof_eval(f, X({x})) * Rational(2));
  }
}

TEST_CASE("restriction and lifted polytopes") {
  Roof f = roof_from_weight(kCubic, taus({"0", "2*log(2)", "-log(3)", "-log(2)"}));
  const FaceLattice& faces = f.domain().face_lattice();
  Roof left = restrict_to_face(f, faces.faces()[0]);
  Roof right = restrict_to_face(f, faces.faces()[1]);
  CHECK(roof_eval(left, X({0})) == LogLinear(0));
  CHECK(roof_eval(right, X({3})) == L("-log(2)"));
  Roof whole = restrict_to_face(f, faces.faces().back());
  CHECK(roof_integral(whole) == roof_integral(f));
  CHECK_THROWS_AS(restrict_to_face(f, Face{0, {0, 5}}), HypothesisError);

  Polytope q = lifted_polytope(f, L("-log(3)"));
  CHECK(volume(q) == L("2*log(2) + 3*log(3)"));
  CHECK_THROWS_AS(lifted_polytope(f, LogLinear(0)), HypothesisError);

  Roof z = roof_from_weight(line({0, 1}), taus({"0", "0"}));
  CHECK(volume(lifted_polytope(z, LogLinear(0))) == LogLinear(0));
  CHECK(volume(lifted_polytope(z, LogLinear(-1))) == LogLinear(1));
}

TEST_CASE("pointwise sums") {
  Roof inf = roof_from_weight(kCubic, taus({"0", "2*log(2)", "-log(3)", "-log(2)"}));
  Roof two = roof_from_weight(kCubic, taus({"0", "-2*log(2)", "0", "log(2)"}));
  Roof three = roof_from_weight(kCubic, taus({"0", "0", "log(3)", "0"}));
  Roof theta = roof_pointwise_sum(roof_pointwise_sum(inf, two), three);
  for (int x = 0; x <= 3; ++x) CHECK(roof_eval(theta, X({x})) >= LogLinear(0));
  CHECK(roof_integral(theta) ==
        roof_integral(inf) + roof_integral(two) + roof_integral(three));
  Roof zero = roof_from_weight(kCubic, taus({"0", "0", "0", "0"}));
  Roof same = roof_pointwise_sum(inf, zero);
  for (int x = 0; x <= 3; ++x) CHECK(roof_eval(same, X({x})) == roof_eval(inf, X({x})));
}

TEST_CASE("two-dimensional roofs and properties") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(0, 3), lift(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LatticeVector> a;
    std::vector<LogLinear> t, t2;
    for (int i = 0; i < 6; ++i) {
      a.push_back({Integer(coord(rng)), Integer(coord(rng))});
      t.push_back(LogLinear(lift(rng)) + LogLinear::log_prime(2, lift(rng)));
      t2.push_back(LogLinear::log_prime(3, lift(rng)));
    }
    Roof f = roof_from_weight(a, t);
    Roof g = roof_from_weight(a, t2);
    if (!f.domain().full_dimensional()) continue;
    // Constant shift.
    std::vector<LogLinear> shifted = t;
    for (auto& x : shifted) x += LogLinear(Rational(3, 2));
    Roof fs = roof_from_weight(a, shifted);
    for (const Point& v : f.domain().vertices()) {
      std::vector<Rational> x{v[0].constant(), v[1].constant()};
      CHECK(roof_eval(fs, x) == roof_eval(f, x) + LogLinear(Rational(3, 2)));
    }
    // Integral vs floor decomposition.
    const LogLinear mu = f.min_value() - LogLinear(1);
    CHECK(roof_integral(f) == volume(lifted_polytope(f, mu)) + mu * volume(f.domain()));
    // Concavity along random chords.
    const auto& vs = f.domain().vertices();
    for (int k = 0; k < 5; ++k) {
      const Point& p = vs[rng() % vs.size()];
      const Point& q = vs[rng() % vs.size()];
      Rational s(static_cast<long>(rng() % 7), 6);
      std::vector<Rational> xp{p[0].constant(), p[1].constant()};
      std::vector<Rational> xq{q[0].constant(), q[1].constant()};
      std::vector<Rational> xm{s * xp[0] + (1 - s) * xq[0], s * xp[1] + (1 - s) * xq[1]};
      CHECK(roof_eval(f, xm) >= roof_eval(f, xp) * s + roof_eval(f, xq) * Rational(1 - s));
    }
    // Pointwise sum linearity and commutation with restriction.
    Roof h = roof_pointwise_sum(f, g);
    CHECK(roof_integral(h) == roof_integral(f) + roof_integral(g));
    for (const Face& face : f.domain().face_lattice().faces()) {
      Roof r = restrict_to_face(f, face);
      for (std::size_t v : face.vertices) {
        std::vector<Rational> x{vs[v][0].constant(), vs[v][1].constant()};
        CHECK(roof_eval(r, x) == roof_eval(f, x));
      }
    }
    // Commutativity of sup-convolution.
    Roof fg = sup_convolution(f, g), gf = sup_convolution(g, f);
    CHECK(roof_integral(fg) == roof_integral(gf));
  }
}

TEST_CASE("roof integral against Riemann sums") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> coord(0, 3), lift(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = trial % 2 == 0 ? 1 : 2;
    std::vector<LatticeVector> a;
    std::vector<LogLinear> t;
    std::vector<oracle::Vec> base;
    oracle::Vec lifts;
    for (int i = 0; i < 5; ++i) {
      LatticeVector v;
      oracle::Vec b;
      for (std::size_t j = 0; j < dim; ++j) {
        v.emplace_back(coord(rng));
        b.push_back(v.back().get_d());
      }
      a.push_back(v);
      base.push_back(b);
      t.push_back(LogLinear(Rational(lift(rng), 2)) + LogLinear::log_prime(3, lift(rng)));
      lifts.push_back(t.back().to_double());
    }
    Roof f = roof_from_weight(a, t);
    if (!f.domain().full_dimensional()) continue;
    const auto est = oracle::riemann_roof_integral(base, lifts, 256);
    CHECK(std::abs(roof_integral(f).to_double() - est.value) <= est.bound);
    ++checked;
  }
  CHECK(checked > 20);
}
