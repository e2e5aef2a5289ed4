#include "salv/laurent.hpp"

#include <random>

#include "doctest.h"

using namespace salv;

namespace {

LaurentPoly tau(long e = 1) { return LaurentPoly::monomial(Rat(1), e); }

void divmod_by_zero() {
  LaurentPoly q, r;
  divmod(tau(), LaurentPoly(), q, r);
}

LaurentPoly random_poly(std::mt19937& rng, int max_terms, long exp_lo,
                        long exp_hi) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<long> ed(exp_lo, exp_hi);
  std::uniform_int_distribution<int> cd(-6, 6);
  LaurentPoly p;
  int n = nt(rng);
  for (int i = 0; i < n; ++i)
    p += LaurentPoly::monomial(Rat(cd(rng)), ed(rng));
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
  LaurentPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.term_count() == 0);

  LaurentPoly p = tau() + LaurentPoly(1l);         // 1 + t
  LaurentPoly q = tau() - LaurentPoly(1l);         // t - 1
  LaurentPoly prod = p * q;                        // t^2 - 1
  CHECK(prod == tau(2) - LaurentPoly(1l));
  CHECK(prod.min_exp() == 0);
  CHECK(prod.max_exp() == 2);
  CHECK(prod.width() == 2);
  CHECK(prod.coeff(1) == 0);
  CHECK(prod.coeff(2) == 1);

  CHECK((p - p).is_zero());
  CHECK(p + (-p) == zero);
  CHECK(p.shifted(-3) * tau(3) == p);
  CHECK(p.scaled(Rat(2, 3)).coeff(0) == Rat(2, 3));
  CHECK(tau(5).is_unit());
  CHECK(!p.is_unit());
}

TEST_CASE("unit normalization anchors at exponent zero with monic lead") {
  LaurentPoly p = LaurentPoly::monomial(Rat(-3), -2) +
                  LaurentPoly::monomial(Rat(6), 1);
  LaurentPoly u = p.unit_normalized();
  CHECK(u.min_exp() == 0);
  CHECK(u.terms().back().second == 1);
  // original = unit * (monomial factor)
  auto q = divide_exact(p, u);
  REQUIRE(q.has_value());
  CHECK(q->is_monomial());
}

TEST_CASE("division contract: a = q*b + r with r smaller than b") {
  std::mt19937 rng(20260816);
  for (int iter = 0; iter < 400; ++iter) {
    LaurentPoly a = random_poly(rng, 5, -4, 6);
    LaurentPoly b = random_poly(rng, 4, -3, 4);
    if (b.is_zero()) continue;
    LaurentPoly q, r;
    divmod(a, b, q, r);
    CHECK(a == q * b + r);
    if (!r.is_zero()) CHECK(r.width() < b.width());
  }
  CHECK_THROWS_AS(divmod_by_zero(), DivisionByZeroError);
}

TEST_CASE("exact division detects divisibility") {
  LaurentPoly p = tau(2) - LaurentPoly(1l);
  auto q = divide_exact(p, tau() - LaurentPoly(1l));
  REQUIRE(q.has_value());
  CHECK(*q == tau() + LaurentPoly(1l));
  CHECK(!divide_exact(p, tau() - LaurentPoly(2l)).has_value());
  // Laurent shifts divide anything
  auto s = divide_exact(p, tau(-3));
  REQUIRE(s.has_value());
  CHECK(*s == p.shifted(3));
}

TEST_CASE("gcd is a common divisor attained by both arguments") {
  LaurentPoly a = (tau() - LaurentPoly(1l)) * (tau() + LaurentPoly(1l));
  LaurentPoly b = (tau() - LaurentPoly(1l)) * (tau() - LaurentPoly(1l));
  LaurentPoly g = gcd_poly(a, b);
  CHECK(g == tau() - LaurentPoly(1l));

  std::mt19937 rng(7);
  for (int iter = 0; iter < 120; ++iter) {
    LaurentPoly x = random_poly(rng, 3, -2, 3);
    LaurentPoly y = random_poly(rng, 3, -2, 3);
    LaurentPoly c = random_poly(rng, 3, 0, 2);
    if (c.is_zero()) c = LaurentPoly(1l);
    LaurentPoly gg = gcd_poly(x * c, y * c);
    if (x.is_zero() && y.is_zero()) {
      CHECK(gg.is_zero());
      continue;
    }
    CHECK(divide_exact(x * c, gg).has_value());
    CHECK(divide_exact(y * c, gg).has_value());
    CHECK(divide_exact(gg, c).has_value());
    // normalization: monic, anchored at 0
    CHECK(gg.min_exp() == 0);
    CHECK(gg.terms().back().second == 1);
  }
}

TEST_CASE("gcd with zero returns the other argument normalized") {
  LaurentPoly a = LaurentPoly::monomial(Rat(4), 3) -
                  LaurentPoly::monomial(Rat(4), 1);
  CHECK(gcd_poly(a, LaurentPoly()) == a.unit_normalized());
  CHECK(gcd_poly(LaurentPoly(), a) == a.unit_normalized());
}

TEST_CASE("totient and divisor tables") {
  int expected[] = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (int d = 1; d <= 12; ++d) CHECK(totient(d) == expected[d - 1]);
  CHECK(divisors_of(12) == std::vector<int>{1, 2, 3, 4, 6, 12});
  CHECK(divisors_of(1) == std::vector<int>{1});
  CHECK(divisors_of(30) == std::vector<int>{1, 2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("cyclotomic polynomials multiply back to t^n - 1") {
  // independent check of the full table used everywhere else
  for (int n = 1; n <= 24; ++n) {
    LaurentPoly prod{Rat(1)};
    for (int d : divisors_of(n)) prod = prod * cyclotomic(d);
    CHECK(prod == tau(n) - LaurentPoly(1l));
  }
  for (int d = 1; d <= 24; ++d)
    CHECK(cyclotomic(d).max_exp() == totient(d));
}

TEST_CASE("small cyclotomic polynomials match closed forms") {
  CHECK(cyclotomic(1) == tau() - LaurentPoly(1l));
  CHECK(cyclotomic(2) == tau() + LaurentPoly(1l));
  CHECK(cyclotomic(3) == tau(2) + tau() + LaurentPoly(1l));
  CHECK(cyclotomic(4) == tau(2) + LaurentPoly(1l));
  CHECK(cyclotomic(6) == tau(2) - tau() + LaurentPoly(1l));
  CHECK(cyclotomic(12) == tau(4) - tau(2) + LaurentPoly(1l));
}

TEST_CASE("unity factorization round trips") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dpick(1, 8);
  std::uniform_int_distribution<int> mpick(0, 2);
  std::uniform_int_distribution<long> spick(-3, 3);
  std::uniform_int_distribution<int> cpick(1, 5);
  for (int iter = 0; iter < 60; ++iter) {
    LaurentPoly p = LaurentPoly::monomial(Rat(cpick(rng)), spick(rng));
    std::vector<std::pair<int, int>> built;
    for (int d = 1; d <= 8; ++d) {
      int m = dpick(rng) <= 3 ? mpick(rng) : 0;
      if (m > 0) {
        built.emplace_back(d, m);
        p = p * pow_poly(cyclotomic(d), static_cast<unsigned>(m));
      }
    }
    UnityFactorization f = factor_unity(p);
    CHECK(f.factors == built);
    // rebuild
    LaurentPoly re = LaurentPoly::monomial(f.unit_coeff, f.unit_exp);
    for (auto [d, m] : f.factors)
      re = re * pow_poly(cyclotomic(d), static_cast<unsigned>(m));
    CHECK(re == p);
  }
}

TEST_CASE("unity factorization rejects non-cyclotomic content") {
  CHECK_THROWS_AS(factor_unity(tau(2) - LaurentPoly(2l)),
                  NonCyclotomicFactorError);
  CHECK_THROWS_AS(factor_unity(LaurentPoly()), DivisionByZeroError);
  // pure unit factors fine
  UnityFactorization f = factor_unity(LaurentPoly::monomial(Rat(-5), 7));
  CHECK(f.unit_coeff == -5);
  CHECK(f.unit_exp == 7);
  CHECK(f.factors.empty());
}

TEST_CASE("evaluation handles negative exponents and zero guard") {
  LaurentPoly p = tau(-2) + LaurentPoly::monomial(Rat(3), 1);
  CHECK(eval_poly(p, Rat(2)) == Rat(1, 4) + Rat(6));
  CHECK(eval_poly(p, Rat(1, 2)) == Rat(4) + Rat(3, 2));
  CHECK(eval_poly(LaurentPoly(), Rat(0)) == 0);
  CHECK_THROWS_AS(eval_poly(p, Rat(0)), DivisionByZeroError);
}

TEST_CASE("polynomial text form round trips and rejects malformed input") {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    LaurentPoly p = random_poly(rng, 6, -5, 9);
    CHECK(poly_from_text(poly_to_text(p)) == p);
  }
  CHECK(poly_to_text(LaurentPoly()).empty());
  CHECK(poly_from_text("").is_zero());
  CHECK(poly_to_text(tau(-1) - tau(2)) == "-1:1/1,2:-1/1");
  CHECK_THROWS_AS(poly_from_text("1:2"), ParseError);
  CHECK_THROWS_AS(poly_from_text("x:1/1"), ParseError);
  CHECK_THROWS_AS(poly_from_text("0:1/0"), ParseError);
  CHECK_THROWS_AS(poly_from_text("0:0/1"), ParseError);
  CHECK_THROWS_AS(poly_from_text("2:1/1,1:1/1"), ParseError);
  CHECK_THROWS_AS(poly_from_text("0:1/1,"), ParseError);
}

TEST_CASE("cyclotomic residue field satisfies field axioms") {
  for (int d : {1, 2, 3, 4, 5, 6, 12}) {
    CycField F(d);
    CHECK(F.deg() == totient(d));
    CHECK(F.is_zero(F.zero()));
    CHECK(!F.is_zero(F.one()));
    std::mt19937 rng(1000 + d);
    std::uniform_int_distribution<int> cd(-4, 4);
    for (int iter = 0; iter < 40; ++iter) {
      CycField::Value a = F.zero(), b = F.zero();
      for (int i = 0; i < F.deg(); ++i) {
        a[i] = cd(rng);
        b[i] = cd(rng);
      }
      // commutativity and distributivity spot checks
      CHECK(F.mul(a, b) == F.mul(b, a));
      CycField::Value s = a;
      F.add_assign(s, b);
      CycField::Value left = F.mul(s, a);
      CycField::Value right = F.mul(a, a);
      F.add_assign(right, F.mul(b, a));
      CHECK(left == right);
      if (!F.is_zero(a)) {
        CycField::Value ia = F.inv(a);
        CHECK(F.mul(a, ia) == F.one());
      }
      // submul: s2 = a - b*b
      CycField::Value s2 = a;
      F.submul(s2, b, b);
      CycField::Value expect = a;
      F.sub_assign(expect, F.mul(b, b));
      CHECK(s2 == expect);
    }
    CHECK_THROWS_AS(F.inv(F.zero()), DivisionByZeroError);
  }
}

TEST_CASE("inverse of the variable in the order-3 residue field") {
  CycField F(3);
  CycField::Value t = F.from_monomial(1, 1);
  CycField::Value it = F.inv(t);
  // t^-1 = t^2 = -t - 1 mod (t^2 + t + 1)
  CHECK(F.to_poly(it) == -tau() - LaurentPoly(1l));
  CHECK(F.mul(t, it) == F.one());
}

TEST_CASE("monomial images respect the root order") {
  for (int d : {1, 2, 3, 4, 6, 12}) {
    CycField F(d);
    for (long e = -5; e <= 2 * d + 1; ++e) {
      CycField::Value direct = F.from_monomial(1, e);
      long r = ((e % d) + d) % d;
      CHECK(direct == F.from_monomial(1, r));
      CHECK(F.from_monomial(-1, e) == F.neg(direct));
      // agree with generic reduction of the actual monomial
      if (e >= 0) CHECK(direct == F.from_poly(tau(e)));
    }
    // t^d = 1
    CHECK(F.from_monomial(1, d) == F.one());
  }
}

TEST_CASE("order-1 residue field is evaluation at one") {
  CycField F(1);
  LaurentPoly p = tau(3) - LaurentPoly::monomial(Rat(2), 1) +
                  LaurentPoly(Rat(5, 2));
  CycField::Value v = F.from_poly(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == eval_poly(p, Rat(1)));
}

TEST_CASE("prime field validates modulus and root order") {
  CHECK_THROWS_AS(PrimeField(15, 2, 0), BadPrimeError);
  CHECK_THROWS_AS(PrimeField(13, 2, 5), OrderMismatchError);  // 5 ∤ 12
  CHECK_THROWS_AS(PrimeField(13, 1, 3), OrderMismatchError);  // order 1, not 3
  PrimeField F(13, 3, 3);  // 3^3 = 27 = 1 mod 13
  CHECK(F.q() == 13);
  for (std::uint64_t a = 1; a < 13; ++a)
    CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK_THROWS_AS(F.inv(0), DivisionByZeroError);
}

TEST_CASE("prime field monomials and rationals reduce consistently") {
  PrimeField F(13, 3, 3);
  for (long e = -7; e <= 9; ++e) {
    std::uint64_t expect = 1;
    long r = ((e % 3) + 3) % 3;
    for (long i = 0; i < r; ++i) expect = expect * 3 % 13;
    CHECK(F.from_monomial(1, e) == expect);
    CHECK(F.from_monomial(-1, e) == (13 - expect) % 13);
  }
  CHECK(F.from_rat(Rat(1, 2)) == 7);  // 2*7 = 14 = 1
  CHECK(F.from_rat(Rat(-1)) == 12);
  CHECK_THROWS_AS(F.from_rat(Rat(1, 13)), BadPrimeError);
  // polynomial image = sum of term images
  LaurentPoly p = tau(2) - LaurentPoly(1l);
  std::uint64_t img = F.from_poly(p);
  std::uint64_t t2 = F.from_monomial(1, 2);
  CHECK(img == (t2 + 13 - 1) % 13);
}

TEST_CASE("rational specialization field evaluates polynomials") {
  RationalField F(Rat(5));
  CHECK(F.from_monomial(1, -2) == Rat(1, 25));
  CHECK(F.from_monomial(-1, 3) == Rat(-125));
  LaurentPoly p = tau(-1) + LaurentPoly::monomial(Rat(2), 4);
  CHECK(F.from_poly(p) == eval_poly(p, Rat(5)));
  CHECK(F.div(F.one(), Rat(5)) == Rat(1, 5));
  CHECK_THROWS_AS(F.inv(Rat(0)), DivisionByZeroError);
  CHECK_THROWS_AS(RationalField(Rat(0)), DivisionByZeroError);
}

TEST_CASE("prime search helpers produce verified witnesses") {
  std::uint64_t q = prime_with_unity_root(12, 1000);
  CHECK(q >= 1000);
  CHECK(is_prime_u64(q));
  CHECK((q - 1) % 12 == 0);
  std::uint64_t r = element_of_order(q, 12);
  CHECK(powmod_u64(r, 12, q) == 1);
  for (int e : {1, 2, 3, 4, 6}) CHECK(powmod_u64(r, e, q) != 1);

  std::uint64_t s = element_avoiding_orders(101, 20);
  for (int k = 1; k <= 20; ++k) CHECK(powmod_u64(s, k, 101) != 1);

  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(1000003));
  CHECK(!is_prime_u64(1000001));  // 101 * 9901
  CHECK(!is_prime_u64(1));
}
