// Concave piecewise-affine roof functions: the upper envelope of finitely
// many lifted points over the hull of their bases.

#ifndef TORICHEIGHT_ROOF_H_
#define TORICHEIGHT_ROOF_H_

#include <span>
#include <vector>

#include "toricheight/exactnum.h"
#include "toricheight/geomkernel.h"

namespace toricheight {

class Roof {
 public:
  Roof() = default;
  // Throws HypothesisError on an empty or ragged generator list.
  explicit Roof(std::vector<LiftedPoint> generators);

  std::size_t base_dim() const { return domain_.ambient_dim(); }
  const std::vector<LiftedPoint>& generators() const { return generators_; }
  const Polytope& domain() const { return domain_; }
  const std::vector<EnvelopeCell>& cells() const { return cells_; }
  const std::vector<std::size_t>& chart() const { return chart_; }

  // Generators lying on the roof (vertices of some cell), ascending.
  std::vector<std::size_t> roof_generators() const;
  // Minimum over the vertices of the subdivision.
  LogLinear min_value() const;

 private:
  std::vector<LiftedPoint> generators_;
  Polytope domain_;
  std::vector<EnvelopeCell> cells_;
  std::vector<std::size_t> chart_;
};

// Roof of the points (a_i, tau_i) over Conv(A).
Roof roof_from_weight(std::span<const LatticeVector> exponents,
                      std::span<const LogLinear> tau);

// Throws HypothesisError if x is not in the domain.
LogLinear roof_eval(const Roof& f, std::span<const Rational> x);

// Integral over the domain with respect to the ambient Lebesgue measure:
// zero for a lower-dimensional domain, the value itself in dimension 0.
LogLinear roof_integral(const Roof& f);

// (f [+] g)(x) = max{ f(y) + g(z) : y + z = x }.
Roof sup_convolution(const Roof& f, const Roof& g);

// Roof restricted to a face of its domain; the face is given by indices into
// f.domain().vertices().
Roof restrict_to_face(const Roof& f, const Face& face);

// Conv(graph(f), domain x {mu}); requires mu <= min f.
Polytope lifted_polytope(const Roof& f, const LogLinear& mu);

// Pointwise sum of two roofs on the same full-dimensional domain of
// dimension at most 3.
Roof roof_pointwise_sum(const Roof& f, const Roof& g);

}  // namespace toricheight

#endif  // TORICHEIGHT_ROOF_H_
