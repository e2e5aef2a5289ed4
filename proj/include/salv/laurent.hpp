#pragma once
// Exact arithmetic over the rational Laurent ring Q[t,t^-1], its cyclotomic
// polynomials, and the quotient fields used by the rank engines.
//
// Conventions:
//  * A LaurentPoly is a sorted term list (exponent ascending) with nonzero
//    rational coefficients. Exponents may be negative.
//  * Units of the ring are exactly the width-0 elements c*t^k; "width"
//    (max_exp - min_exp) is the Euclidean measure used by gcd and by pivot
//    selection in the Smith normal form.
//  * Textual form: "exp:num/den" terms joined by commas, exponents strictly
//    increasing; the zero polynomial prints as the empty string.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salv/errors.hpp"

namespace salv {

using Rat = mpq_class;

class LaurentPoly {
 public:
  using Term = std::pair<long, Rat>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& c);
  explicit LaurentPoly(long c);
  static LaurentPoly monomial(const Rat& c, long e);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  long min_exp() const;
  long max_exp() const;
  long width() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_unit() const { return terms_.size() == 1; }
  Rat coeff(long e) const;
  const std::vector<Term>& terms() const { return terms_; }

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly scaled(const Rat& c) const;
  LaurentPoly shifted(long k) const;  // multiply by t^k

  // Strips the unit c*t^min so the result is monic with nonzero constant
  // term. Zero stays zero.
  LaurentPoly unit_normalized() const;

  static LaurentPoly from_terms(std::vector<Term> t);

 private:
  std::vector<Term> terms_;  // exponent ascending, coefficients nonzero
};

// a = q*b + r with r == 0 or width(r) < width(b). Throws DivisionByZeroError.
void divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q,
            LaurentPoly& r);
// Quotient when b divides a exactly, nullopt otherwise.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a,
                                        const LaurentPoly& b);
// Monic gcd with nonzero constant term (unit-normalized); gcd(0,0) = 0.
LaurentPoly gcd_poly(LaurentPoly a, LaurentPoly b);
LaurentPoly pow_poly(const LaurentPoly& p, unsigned k);
// Evaluation at t0; t0 must be nonzero when p has negative exponents.
Rat eval_poly(const LaurentPoly& p, const Rat& t0);

std::string poly_to_text(const LaurentPoly& p);
// Throws ParseError on malformed input (message includes offending token).
LaurentPoly poly_from_text(const std::string& s);

// d-th cyclotomic polynomial, d >= 1; memoized.
const LaurentPoly& cyclotomic(int d);

int totient(int d);
std::vector<int> divisors_of(long n);

struct UnityFactorization {
  Rat unit_coeff;
  long unit_exp = 0;
  std::vector<std::pair<int, int>> factors;  // (d, multiplicity), d ascending
};

// Splits p into unit * prod Phi_d^e_d. Throws NonCyclotomicFactorError if a
// non-cyclotomic factor remains, DivisionByZeroError on p == 0.
UnityFactorization factor_unity(const LaurentPoly& p);

// ---------------------------------------------------------------------------
// Scalar fields for the elimination engines. All expose the same surface:
//   Value, zero(), one(), is_zero, add_assign, sub_assign, mul, div, inv,
//   submul (a -= f*b), from_monomial(sign, exp) = sign * t^exp,
//   from_poly, to_poly (relative to the ring tag).
// ---------------------------------------------------------------------------

// F_d = Q[t]/(Phi_d). Elements are coefficient vectors of length deg(Phi_d).
// t has multiplicative order exactly d in F_d, which makes monomial
// specialization exponent-periodic.
class CycField {
 public:
  explicit CycField(int d);

  using Value = std::vector<Rat>;

  int d() const { return d_; }
  int deg() const { return deg_; }

  Value zero() const { return Value(deg_, Rat(0)); }
  Value one() const;
  bool is_zero(const Value& v) const;
  void add_assign(Value& a, const Value& b) const;
  void sub_assign(Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value inv(const Value& a) const;
  Value div(const Value& a, const Value& b) const;
  void submul(Value& a, const Value& f, const Value& b) const;
  Value neg(const Value& a) const;
  Value from_monomial(int sign, long exp) const;
  Value from_poly(const LaurentPoly& p) const;
  LaurentPoly to_poly(const Value& v) const;

 private:
  void reduce(std::vector<Rat>& c) const;  // length 2*deg-1 -> deg in place

  int d_;
  int deg_;
  std::vector<Rat> phi_;                    // Phi_d coefficients, monic
  std::vector<std::vector<Rat>> red_rows_;  // t^(deg..2deg-2) mod Phi_d
  std::vector<Value> tau_pow_;              // t^0..t^(d-1) mod Phi_d
};

// Z/q with a designated image r of t. When order_d > 0 the constructor
// verifies q ≡ 1 (mod d) and that r has multiplicative order exactly d
// (OrderMismatchError otherwise).
class PrimeField {
 public:
  PrimeField(std::uint64_t q, std::uint64_t r, int order_d);

  using Value = std::uint64_t;

  std::uint64_t q() const { return q_; }
  std::uint64_t r() const { return r_; }

  Value zero() const { return 0; }
  Value one() const { return 1 % q_; }
  bool is_zero(Value v) const { return v == 0; }
  void add_assign(Value& a, Value b) const { a = (a + b) % q_; }
  void sub_assign(Value& a, Value b) const { a = (a + q_ - b) % q_; }
  Value mul(Value a, Value b) const { return (a * b) % q_; }
  Value inv(Value a) const;
  Value div(Value a, Value b) const { return mul(a, inv(b)); }
  void submul(Value& a, Value f, Value b) const {
    a = (a + (q_ - mul(f, b))) % q_;
  }
  Value neg(Value a) const { return a == 0 ? 0 : q_ - a; }
  Value from_monomial(int sign, long exp) const;
  // Throws BadPrimeError when a denominator vanishes mod q.
  Value from_rat(const Rat& x) const;
  Value from_poly(const LaurentPoly& p) const;
  LaurentPoly to_poly(Value v) const { return LaurentPoly(Rat(v)); }

 private:
  std::uint64_t q_;
  std::uint64_t r_;
};

// Q with t evaluated at a fixed nonzero rational point. t0 = 1 is the
// "q1" ring of the matrix format; other points serve the generic-rank probes.
class RationalField {
 public:
  explicit RationalField(Rat t0);

  using Value = Rat;

  const Rat& point() const { return t0_; }

  Value zero() const { return Rat(0); }
  Value one() const { return Rat(1); }
  bool is_zero(const Value& v) const { return sgn(v) == 0; }
  void add_assign(Value& a, const Value& b) const { a += b; }
  void sub_assign(Value& a, const Value& b) const { a -= b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value inv(const Value& a) const;
  Value div(const Value& a, const Value& b) const;
  void submul(Value& a, const Value& f, const Value& b) const { a -= f * b; }
  Value neg(const Value& a) const { return -a; }
  Value from_monomial(int sign, long exp) const;
  Value from_poly(const LaurentPoly& p) const { return eval_poly(p, t0_); }
  LaurentPoly to_poly(const Value& v) const { return LaurentPoly(v); }

 private:
  Rat t0_;
  mutable std::vector<Rat> pow_pos_;  // t0^k cache
  mutable std::vector<Rat> pow_neg_;
};

// Deterministic prime machinery for the modular paths.
bool is_prime_u64(std::uint64_t n);
std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t q);
// Smallest prime q >= start with q ≡ 1 (mod d).
std::uint64_t prime_with_unity_root(int d, std::uint64_t start);
// Element of multiplicative order exactly d mod prime q (pre: d | q-1).
std::uint64_t element_of_order(std::uint64_t q, int d);
// Smallest witness r in [2, q) whose order does not divide any m <= bound
// with m | bound (used for transcendental-surrogate evaluations).
std::uint64_t element_avoiding_orders(std::uint64_t q, long bound);

}  // namespace salv
