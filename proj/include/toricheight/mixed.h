// Mixed volumes, mixed integrals of roofs and multiheights of the torus
// with respect to several monomial embeddings.

#ifndef TORICHEIGHT_MIXED_H_
#define TORICHEIGHT_MIXED_H_

#include <span>
#include <vector>

#include "toricheight/geomkernel.h"
#include "toricheight/roof.h"
#include "toricheight/toric.h"

namespace toricheight {

// MV(Q_1, ..., Q_n) for n polytopes in R^n, normalized so that
// MV(Q, ..., Q) = n! Vol(Q). MV of no polytopes is 1.
LogLinear mixed_volume(std::span<const Polytope> polytopes);

// MI(f_0, ..., f_n) for n+1 roofs on R^n:
//   sum over nonempty S of (-1)^(n+1-|S|) int([+]_{i in S} f_i).
LogLinear mixed_integral(std::span<const Roof> roofs);

// The same quantity through MV_{n+1}(Q_{f_i,mu_i}) + sum_i mu_i MV_n(Q_j : j != i).
// Each mu_i must satisfy mu_i <= min(f_i, 0).
LogLinear mixed_integral_via_mv(std::span<const Roof> roofs,
                                std::span<const LogLinear> floors);

struct WeightedSupport {
  std::vector<LatticeVector> exponents;
  std::vector<LogLinear> tau;
};

// Mixed integral of the roofs of n+1 weighted supports with full lattices.
LogLinear multi_chow_weight(std::span<const WeightedSupport> data);

// Normalized height of the torus for n+1 monomial embeddings of T^n. The
// degree field holds MV(Q_{A_1}, ..., Q_{A_n}); local_factor is 1.
HeightReport multiheight(std::span<const MonomialPair> family);

}  // namespace toricheight

#endif  // TORICHEIGHT_MIXED_H_
