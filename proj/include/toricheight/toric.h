// Projective toric varieties X_{A,alpha} given by monomial data over Q:
// degrees, normalized heights, Chow and Hilbert weights, orbits and the
// standard constructions.

#ifndef TORICHEIGHT_TORIC_H_
#define TORICHEIGHT_TORIC_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "toricheight/exactnum.h"
#include "toricheight/geomkernel.h"

namespace toricheight {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class MonomialPair {
 public:
  // Throws HypothesisError on empty or unequal lists, ragged exponents or a
  // zero coefficient.
  MonomialPair(std::vector<LatticeVector> exponents,
               std::vector<Rational> coefficients);

  // Drops the coordinates with zero coefficient. kept[i] is the original
  // index of the i-th surviving coordinate.
  struct Restricted;
  static Restricted drop_zero_coordinates(std::vector<LatticeVector> exponents,
                                          std::vector<Rational> coefficients);

  const std::vector<LatticeVector>& exponents() const { return exponents_; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  std::size_t size() const { return exponents_.size(); }
  // n, with exponents in Z^n.
  std::size_t ambient_dim() const { return exponents_.front().size(); }

  friend bool operator==(const MonomialPair&, const MonomialPair&) = default;

 private:
  std::vector<LatticeVector> exponents_;
  std::vector<Rational> coefficients_;
};

struct MonomialPair::Restricted {
  MonomialPair pair;
  std::vector<std::size_t> kept;
};

struct HeightReport {
  LogLinear value;
  // Local contributions; value = local_factor * (sum of these).
  std::map<Place, LogLinear> per_place;
  Integer degree;
  int dim = 0;
  Integer local_factor = 1;
};

std::vector<LogLinear> weight_vector(const MonomialPair& pair, const Place& v);

Integer degree(const MonomialPair& pair);

HeightReport normalized_height(const MonomialPair& pair);

// Require the differences of A to generate Z^n (HypothesisError otherwise).
LogLinear chow_weight(std::span<const LatticeVector> exponents,
                      std::span<const LogLinear> tau);
LogLinear hilbert_weight(std::span<const LatticeVector> exponents,
                         std::span<const LogLinear> tau, long degree,
                         std::uint64_t cap = kDefaultEnumerationCap);

LogLinear arithmetic_hilbert_norm(const MonomialPair& pair, long degree,
                                  std::uint64_t cap = kDefaultEnumerationCap);

struct AsymptoticGap {
  LogLinear exact;
  Approximation approx;
};
// |(r+1)! H_norm(D) / D^(r+1) - h|, D >= 1.
AsymptoticGap hilbert_asymptotic_gap(const MonomialPair& pair, long degree,
                                     long bits = 128,
                                     std::uint64_t cap = kDefaultEnumerationCap);

// (r+1)! sum_v Vol_{r+1}(Q_{A,tau_v}) = h(X) + h([-1]X).
LogLinear symmetric_height_sum(const MonomialPair& pair);

MonomialPair invert(const MonomialPair& pair);
MonomialPair power(const MonomialPair& pair, long k);
MonomialPair translate(const MonomialPair& pair, const LatticeVector& c,
                       const Rational& gamma);

struct Orbit {
  // Face of Conv(A) as indices into its vertex list.
  Face face;
  // Indices i with a_i in the face.
  std::vector<std::size_t> members;
  MonomialPair pair;
};
std::vector<Orbit> orbit_decomposition(const MonomialPair& pair);

MonomialPair join(const MonomialPair& p, const MonomialPair& q);
MonomialPair segre(const MonomialPair& p, const MonomialPair& q);
MonomialPair veronese(const MonomialPair& pair, long degree,
                      std::uint64_t cap = kDefaultEnumerationCap);
// Image under y_j = beta_j x^{b_j}; every b_j in N^{N+1} of one total degree.
MonomialPair monomial_image(const MonomialPair& pair,
                            const std::vector<LatticeVector>& b,
                            const std::vector<Rational>& beta);

// (n+1)! Vol_{n+1}(Conv((a_i, tau_i))) for integral weights.
Rational function_field_height(std::span<const LatticeVector> exponents,
                               std::span<const Integer> tau);

}  // namespace toricheight

#endif  // TORICHEIGHT_TORIC_H_
