// Exact rationals, places of Q and the log-linear number field.
//
// A LogLinear is an element c + sum_p q_p log(p) of the Q-span of
// {1} U {log p : p prime}. Since this family is linearly independent over Q,
// equality is decided coefficient-wise; signs are certified by interval
// evaluation at increasing precision.

#ifndef TORICHEIGHT_EXACTNUM_H_
#define TORICHEIGHT_EXACTNUM_H_

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toricheight {

using Integer = mpz_class;
using Rational = mpq_class;

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A mathematical hypothesis of an operation does not hold (zero
// coefficient, non-full lattice, point outside a domain, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Distinct prime divisors of |n|, ascending. n must be nonzero.
std::vector<Integer> prime_divisors(const Integer& n);

bool is_prime(const Integer& p);

// ord_p(q): exponent of p in the factorization of q != 0.
long padic_order(const Rational& q, const Integer& p);

class Place {
 public:
  static Place infinite() { return Place(); }
  // Throws HypothesisError unless p is prime.
  static Place finite(Integer p);

  bool is_infinite() const { return prime_ == 0; }
  const Integer& prime() const { return prime_; }

  // "inf" or the decimal prime.
  std::string to_string() const;
  // Accepts "inf", "infinity", "oo" or a prime.
  static Place parse(std::string_view text);

  // The archimedean place sorts first, then primes ascending.
  friend bool operator==(const Place& a, const Place& b) {
    return a.prime_ == b.prime_;
  }
  friend bool operator<(const Place& a, const Place& b) {
    return a.prime_ < b.prime_;
  }

 private:
  Place() = default;
  Integer prime_ = 0;
};

struct Approximation {
  std::string decimal;
  // |value - decimal| <= error_bound (rounded upwards).
  double error_bound = 0.0;
};

class LogLinear {
 public:
  using Term = std::pair<Integer, Rational>;

  LogLinear() = default;
  LogLinear(Rational constant);  // NOLINT: the rationals embed in the field
  LogLinear(long constant) : LogLinear(Rational(constant)) {}  // NOLINT
  LogLinear(int constant) : LogLinear(Rational(constant)) {}   // NOLINT

  // coefficient * log(p); p must be prime.
  static LogLinear log_prime(const Integer& p, const Rational& coefficient = 1);

  const Rational& constant() const { return constant_; }
  // Sorted by prime, no zero coefficients.
  const std::vector<Term>& log_terms() const { return terms_; }
  Rational log_coefficient(const Integer& p) const;

  bool is_zero() const { return constant_ == 0 && terms_.empty(); }
  bool is_rational() const { return terms_.empty(); }

  // -1, 0 or +1, certified.
  int sign() const;
  LogLinear abs() const { return sign() < 0 ? -*this : *this; }

  Approximation approximate(long bits) const;
  double to_double() const;

  // "c + a*log(2) + b*log(3)" with primes ascending and zero terms omitted.
  std::string to_string() const;
  static LogLinear parse(std::string_view text);

  LogLinear& operator+=(const LogLinear& other);
  LogLinear& operator-=(const LogLinear& other);
  LogLinear& operator*=(const Rational& factor);
  LogLinear& operator/=(const Rational& divisor);

  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
  friend LogLinear operator*(LogLinear a, const Rational& q) { return a *= q; }
  friend LogLinear operator*(const Rational& q, LogLinear a) { return a *= q; }
  friend LogLinear operator/(LogLinear a, const Rational& q) { return a /= q; }
  LogLinear operator-() const;

  // Product where at least one factor is rational; a product of two
  // logarithms would leave the field and throws std::logic_error.
  friend LogLinear operator*(const LogLinear& a, const LogLinear& b);

  friend bool operator==(const LogLinear& a, const LogLinear& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

 private:
  Rational constant_ = 0;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LogLinear& x) {
  return os << x.to_string();
}

// Certified comparison: sign(a - b).
int compare(const LogLinear& a, const LogLinear& b);
inline bool operator<(const LogLinear& a, const LogLinear& b) {
  return compare(a, b) < 0;
}
inline bool operator<=(const LogLinear& a, const LogLinear& b) {
  return compare(a, b) <= 0;
}
inline bool operator>(const LogLinear& a, const LogLinear& b) {
  return compare(a, b) > 0;
}
inline bool operator>=(const LogLinear& a, const LogLinear& b) {
  return compare(a, b) >= 0;
}

inline int certified_sign(const LogLinear& x) { return x.sign(); }
inline Approximation approximate(const LogLinear& x, long bits) {
  return x.approximate(bits);
}

// log|q|_v. For a prime p this is -ord_p(q) log p; at infinity it is
// log|q| written through the factorization of q.
LogLinear log_abs(const Rational& q, const Place& v);

// Infinity followed by every prime dividing a numerator or denominator.
std::vector<Place> relevant_places(std::span<const Rational> coefficients);

}  // namespace toricheight

#endif  // TORICHEIGHT_EXACTNUM_H_
