#include "toricheight/exactnum.h"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>

namespace toricheight {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) != 0;
         });
}

// Brent's variant of Pollard rho; n is odd, composite, > 1.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) {
      Integer out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

// RAII wrapper around an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
  ~Mpfr() { mpfr_clear(value_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

struct LogEnclosure {
  explicit LogEnclosure(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  Mpfr lo;
  Mpfr hi;
};

// Cached outward-rounded enclosures of log(p).
const LogEnclosure& log_enclosure(const Integer& p, mpfr_prec_t prec) {
  thread_local std::map<std::pair<Integer, mpfr_prec_t>,
                        std::unique_ptr<LogEnclosure>>
      cache;
  auto key = std::make_pair(p, prec);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto enc = std::make_unique<LogEnclosure>(prec);
  const mpfr_prec_t exact_prec =
      std::max<mpfr_prec_t>(prec, mpz_sizeinbase(p.get_mpz_t(), 2) + 2);
  Mpfr arg(exact_prec);
  mpfr_set_z(arg.get(), p.get_mpz_t(), MPFR_RNDN);
  mpfr_log(enc->lo.get(), arg.get(), MPFR_RNDD);
  mpfr_log(enc->hi.get(), arg.get(), MPFR_RNDU);
  return *cache.emplace(key, std::move(enc)).first->second;
}

// lo <= x <= hi.
void enclose(const LogLinear& x, Mpfr& lo, Mpfr& hi, mpfr_prec_t prec) {
  mpfr_set_q(lo.get(), x.constant().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.constant().get_mpq_t(), MPFR_RNDU);
  Mpfr t(prec);
  for (const auto& [p, q] : x.log_terms()) {
    const LogEnclosure& e = log_enclosure(p, prec);
    // log p > 0, so the extreme products pair the bounds by the sign of q.
    const bool positive = q > 0;
    mpfr_mul_q(t.get(), positive ? e.lo.get() : e.hi.get(), q.get_mpq_t(),
               MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_mul_q(t.get(), positive ? e.hi.get() : e.lo.get(), q.get_mpq_t(),
               MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  }
}

std::string format_coefficient_term(const Rational& magnitude,
                                    const Integer& p) {
  std::string log_text = "log(" + p.get_str() + ")";
  if (magnitude == 1) return log_text;
  return to_string(magnitude) + "*" + log_text;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  const auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  Rational q;
  q.get_num() = Integer(std::string(num));
  q.get_den() = Integer(std::string(den));
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

bool is_prime(const Integer& p) {
  return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  if (n == 0) throw HypothesisError("prime_divisors of zero");
  Integer m = abs(n);
  std::vector<Integer> out;
  for (unsigned long p = 2; p < 1000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
    }
  }
  std::vector<Integer> rest;
  collect_factors(m, rest);
  out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long padic_order(const Rational& q, const Integer& p) {
  if (q == 0) throw HypothesisError("p-adic order of zero");
  if (!is_prime(p)) throw HypothesisError(p.get_str() + " is not prime");
  Integer scratch;
  const long up = static_cast<long>(mpz_remove(
      scratch.get_mpz_t(), q.get_num_mpz_t(), p.get_mpz_t()));
  const long down = static_cast<long>(mpz_remove(
      scratch.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t()));
  return up - down;
}

Place Place::finite(Integer p) {
  if (!is_prime(p)) throw HypothesisError(p.get_str() + " is not prime");
  Place v;
  v.prime_ = std::move(p);
  return v;
}

std::string Place::to_string() const {
  return is_infinite() ? std::string("inf") : prime_.get_str();
}

Place Place::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "infinity" || s == "oo" || s == "∞") {
    return infinite();
  }
  if (!all_digits(s)) throw ParseError("not a place: '" + std::string(s) + "'");
  Integer p{std::string(s)};
  if (!is_prime(p)) throw ParseError("not a prime: '" + std::string(s) + "'");
  return finite(p);
}

LogLinear::LogLinear(Rational constant) : constant_(std::move(constant)) {
  constant_.canonicalize();
}

LogLinear LogLinear::log_prime(const Integer& p, const Rational& coefficient) {
  if (!is_prime(p)) throw HypothesisError(p.get_str() + " is not prime");
  LogLinear x;
  if (coefficient != 0) {
    x.terms_.emplace_back(p, coefficient);
    x.terms_.back().second.canonicalize();
  }
  return x;
}

Rational LogLinear::log_coefficient(const Integer& p) const {
  for (const auto& [prime, q] : terms_) {
    if (prime == p) return q;
  }
  return 0;
}

LogLinear& LogLinear::operator+=(const LogLinear& other) {
  constant_ += other.constant_;
  if (other.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational sum = a->second + b->second;
      if (sum != 0) merged.emplace_back(std::move(a->first), std::move(sum));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LogLinear& LogLinear::operator-=(const LogLinear& other) {
  return *this += -other;
}

LogLinear& LogLinear::operator*=(const Rational& factor) {
  if (factor == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= factor;
  for (auto& term : terms_) term.second *= factor;
  return *this;
}

LogLinear& LogLinear::operator/=(const Rational& divisor) {
  if (divisor == 0) throw std::domain_error("LogLinear division by zero");
  constant_ /= divisor;
  for (auto& term : terms_) term.second /= divisor;
  return *this;
}

LogLinear LogLinear::operator-() const {
  LogLinear out = *this;
  out.constant_ = -out.constant_;
  for (auto& term : out.terms_) term.second = -term.second;
  return out;
}

LogLinear operator*(const LogLinear& a, const LogLinear& b) {
  if (a.is_rational()) return b * a.constant();
  if (b.is_rational()) return a * b.constant();
  throw std::logic_error("product of two logarithmic quantities");
}

int LogLinear::sign() const {
  if (terms_.empty()) return sgn(constant_);
  // Nonzero by linear independence of {1, log p}; refinement terminates.
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    Mpfr lo(prec), hi(prec);
    enclose(*this, lo, hi, prec);
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
}

Approximation LogLinear::approximate(long bits) const {
  if (bits < 16) throw HypothesisError("approximation needs at least 16 bits");
  if (is_zero()) return {"0", 0.0};
  const long digits =
      static_cast<long>(std::ceil(static_cast<double>(bits) * 0.30102999566)) +
      1;
  for (mpfr_prec_t prec = bits + 32;; prec *= 2) {
    Mpfr lo(prec), hi(prec), mid(prec + 1);
    enclose(*this, lo, hi, prec);
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Rf", static_cast<int>(digits), mid.get());
    std::string text(raw);
    mpfr_free_str(raw);
    if (text.find_first_not_of("-0.") == std::string::npos) text = "0";

    // Rigorous bound: max(hi - d, d - lo) with d read back outwards.
    Mpfr d_lo(prec + 64), d_hi(prec + 64), e1(53), e2(53);
    mpfr_set_str(d_lo.get(), text.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(d_hi.get(), text.c_str(), 10, MPFR_RNDU);
    mpfr_sub(e1.get(), hi.get(), d_lo.get(), MPFR_RNDU);
    mpfr_sub(e2.get(), d_hi.get(), lo.get(), MPFR_RNDU);
    mpfr_max(e1.get(), e1.get(), e2.get(), MPFR_RNDU);
    Mpfr limit(53);
    mpfr_set_ui_2exp(limit.get(), 1, -bits, MPFR_RNDN);
    if (mpfr_lessequal_p(e1.get(), limit.get())) {
      return {text, mpfr_get_d(e1.get(), MPFR_RNDU)};
    }
  }
}

double LogLinear::to_double() const {
  if (terms_.empty()) return constant_.get_d();
  Mpfr lo(96), hi(96);
  enclose(*this, lo, hi, 96);
  return mpfr_get_d(lo.get(), MPFR_RNDN);
}

std::string LogLinear::to_string() const {
  std::vector<std::pair<bool, std::string>> parts;  // (negative, magnitude)
  if (constant_ != 0) {
    parts.emplace_back(constant_ < 0, toricheight::to_string(Rational(::abs(constant_))));
  }
  for (const auto& [p, q] : terms_) {
    parts.emplace_back(q < 0, format_coefficient_term(Rational(::abs(q)), p));
  }
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [negative, text] = parts[i];
    if (i == 0) {
      out += negative ? "-" + text : text;
    } else {
      out += negative ? " - " : " + ";
      out += text;
    }
  }
  return out;
}

LogLinear LogLinear::parse(std::string_view text) {
  const std::string_view all = text;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cannot parse log-linear number '" + std::string(all) +
                      "': " + why);
  };
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) throw fail("empty");
  LogLinear out;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw fail("expected '+' or '-'");
    }
    std::size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') {
      ++end;
    }
    std::string_view term(compact.data() + pos, end - pos);
    pos = end;
    if (term.empty()) throw fail("empty term");
    Rational coefficient = 1;
    std::string_view log_part;
    const auto lp = term.find("log(");
    if (lp == std::string_view::npos) {
      coefficient = parse_rational(term);
    } else {
      if (lp != 0) {
        if (lp < 2 || term[lp - 1] != '*') throw fail("expected '*' before log");
        coefficient = parse_rational(term.substr(0, lp - 1));
      }
      log_part = term.substr(lp + 4);
      if (log_part.empty() || log_part.back() != ')') throw fail("missing ')'");
      log_part.remove_suffix(1);
      if (!all_digits(log_part)) throw fail("log argument must be a positive integer");
    }
    if (negative) coefficient = -coefficient;
    if (log_part.empty()) {
      out += LogLinear(coefficient);
      continue;
    }
    Integer n{std::string(log_part)};
    if (n == 0) throw fail("log(0)");
    for (const Integer& p : prime_divisors(n)) {
      out += LogLinear::log_prime(p, coefficient * padic_order(Rational(n), p));
    }
  }
  return out;
}

int compare(const LogLinear& a, const LogLinear& b) { return (a - b).sign(); }

LogLinear log_abs(const Rational& q, const Place& v) {
  if (q == 0) throw HypothesisError("log|0| is undefined");
  if (!v.is_infinite()) {
    return LogLinear::log_prime(v.prime(), -padic_order(q, v.prime()));
  }
  LogLinear out;
  for (const Integer& p : prime_divisors(q.get_num())) {
    out += LogLinear::log_prime(p, padic_order(q, p));
  }
  for (const Integer& p : prime_divisors(q.get_den())) {
    out += LogLinear::log_prime(p, padic_order(q, p));
  }
  return out;
}

std::vector<Place> relevant_places(std::span<const Rational> coefficients) {
  std::vector<Integer> primes;
  for (const Rational& q : coefficients) {
    if (q == 0) throw HypothesisError("zero coefficient has no places");
    for (const Integer& p : prime_divisors(q.get_num())) primes.push_back(p);
    for (const Integer& p : prime_divisors(q.get_den())) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out{Place::infinite()};
  for (Integer& p : primes) out.push_back(Place::finite(std::move(p)));
  return out;
}

}  // namespace toricheight
