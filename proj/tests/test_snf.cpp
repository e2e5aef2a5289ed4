#include "salv/snf.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "salv/coxeter.hpp"
#include "salv/salvetti.hpp"

using namespace salv;

namespace {

LaurentPoly tau(long e = 1) { return LaurentPoly::monomial(Rat(1), e); }
LaurentPoly con(long c) { return LaurentPoly(c); }

using Dense = std::vector<std::vector<LaurentPoly>>;

PolyMatrix from_dense(const Dense& a) {
  PolyMatrix m;
  m.rows = static_cast<std::uint32_t>(a.size());
  m.cols = a.empty() ? 0 : static_cast<std::uint32_t>(a[0].size());
  m.col.resize(m.cols);
  for (std::uint32_t r = 0; r < m.rows; ++r)
    for (std::uint32_t c = 0; c < m.cols; ++c)
      if (!a[r][c].is_zero()) m.col[c].emplace(r, a[r][c]);
  return m;
}

LaurentPoly det(const Dense& a, std::vector<std::uint32_t> rs,
                std::vector<std::uint32_t> cs) {
  if (rs.size() == 1) return a[rs[0]][cs[0]];
  LaurentPoly acc;
  std::vector<std::uint32_t> sub_rs(rs.begin() + 1, rs.end());
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const LaurentPoly& e = a[rs[0]][cs[j]];
    if (e.is_zero()) continue;
    std::vector<std::uint32_t> sub_cs;
    for (std::size_t t = 0; t < cs.size(); ++t)
      if (t != j) sub_cs.push_back(cs[t]);
    LaurentPoly m = e * det(a, sub_rs, sub_cs);
    if (j % 2)
      acc -= m;
    else
      acc += m;
  }
  return acc;
}

void subsets(std::uint32_t n, std::uint32_t k,
             std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// Invariant factors via determinantal divisors: d_k = gcd(k-minors)/gcd((k-1)-minors).
std::vector<LaurentPoly> minor_gcd_factors(const Dense& a) {
  std::uint32_t rows = static_cast<std::uint32_t>(a.size());
  std::uint32_t cols = a.empty() ? 0 : static_cast<std::uint32_t>(a[0].size());
  std::vector<LaurentPoly> out;
  LaurentPoly prev{1l};
  for (std::uint32_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::uint32_t>> rsets, csets;
    subsets(rows, k, rsets);
    subsets(cols, k, csets);
    LaurentPoly g;
    for (const auto& rs : rsets)
      for (const auto& cs : csets) g = gcd_poly(g, det(a, rs, cs));
    if (g.is_zero()) break;
    auto q = divide_exact(g, prev);
    REQUIRE(q.has_value());
    out.push_back(q->unit_normalized());
    prev = g;
  }
  return out;
}

Dense random_dense(std::mt19937& rng, std::uint32_t rows, std::uint32_t cols) {
  std::uniform_int_distribution<int> zero(0, 9);
  std::uniform_int_distribution<int> nt(1, 2);
  std::uniform_int_distribution<long> ed(-2, 2);
  std::uniform_int_distribution<int> cd(-3, 3);
  Dense a(rows, std::vector<LaurentPoly>(cols));
  for (auto& row : a)
    for (auto& e : row) {
      if (zero(rng) < 4) continue;
      int n = nt(rng);
      for (int i = 0; i < n; ++i)
        e += LaurentPoly::monomial(Rat(cd(rng)), ed(rng));
    }
  return a;
}

}  // namespace

TEST_CASE("invariant factors of small diagonal and triangular matrices") {
  // diag(t-1, t^2-1) is already in normal form
  Dense d1 = {{tau() - con(1), LaurentPoly()},
              {LaurentPoly(), tau(2) - con(1)}};
  auto f1 = snf_invariant_factors(from_dense(d1));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == tau() - con(1));
  CHECK(f1[1] == tau(2) - con(1));

  // an upper-triangular perturbation of it has the same factors
  Dense d2 = {{tau() - con(1), tau() - con(1)},
              {LaurentPoly(), tau(2) - con(1)}};
  auto f2 = snf_invariant_factors(from_dense(d2));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == tau() - con(1));
  CHECK(f2[1] == tau(2) - con(1));

  // units normalize to the constant 1
  Dense d3 = {{tau(), LaurentPoly()}, {LaurentPoly(), con(1)}};
  auto f3 = snf_invariant_factors(from_dense(d3));
  REQUIRE(f3.size() == 2);
  CHECK(f3[0] == con(1));
  CHECK(f3[1] == con(1));
}

TEST_CASE("edge cases: zero, empty, and rank-deficient matrices") {
  PolyMatrix z;
  z.rows = 3;
  z.cols = 2;
  z.col.resize(2);
  CHECK(snf_invariant_factors(z).empty());

  PolyMatrix e;
  e.rows = 0;
  e.cols = 0;
  CHECK(snf_invariant_factors(e).empty());

  Dense r1 = {{tau() - con(1), con(1)}, {LaurentPoly(), LaurentPoly()}};
  auto f = snf_invariant_factors(from_dense(r1));
  REQUIRE(f.size() == 1);
  CHECK(f[0] == con(1));
}

TEST_CASE("rank-one boundary matrix has factors (1, t-1)") {
  CoxeterSystem a1(Family::A, 1);
  ChainComplex cx = build_complex(a1, ComplexSpec{});
  auto f = snf_invariant_factors(poly_from_mono(cx.boundary(1)));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == con(1));
  CHECK(f[1] == tau() - con(1));
}

TEST_CASE("divisibility chain holds and factors match the minor-gcd oracle") {
  std::mt19937 rng(20260816);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes = {
      {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}, {2, 5}};
  for (const auto& [rows, cols] : shapes) {
    for (int rep = 0; rep < 6; ++rep) {
      Dense a = random_dense(rng, rows, cols);
      auto expect = minor_gcd_factors(a);
      auto got = snf_invariant_factors(from_dense(a));
      REQUIRE(got.size() == expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
      for (std::size_t i = 0; i + 1 < got.size(); ++i)
        CHECK(divide_exact(got[i + 1], got[i]).has_value());
    }
  }
}

TEST_CASE("factors are invariant under unimodular row and column operations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<long> ed(-1, 1);
  std::uniform_int_distribution<int> cd(-2, 2);
  for (int rep = 0; rep < 12; ++rep) {
    Dense a = random_dense(rng, 3, 4);
    auto base = snf_invariant_factors(from_dense(a));

    Dense b = a;
    for (int op = 0; op < 8; ++op) {
      LaurentPoly q = LaurentPoly::monomial(Rat(cd(rng)), ed(rng));
      switch (pick(rng)) {
        case 0: {  // row_i += q * row_j
          std::uniform_int_distribution<std::size_t> rd(0, b.size() - 1);
          std::size_t i = rd(rng), j = rd(rng);
          if (i == j) break;
          for (std::size_t c = 0; c < b[0].size(); ++c) b[i][c] += q * b[j][c];
          break;
        }
        case 1: {  // col_i += q * col_j
          std::uniform_int_distribution<std::size_t> cdx(0, b[0].size() - 1);
          std::size_t i = cdx(rng), j = cdx(rng);
          if (i == j) break;
          for (std::size_t r = 0; r < b.size(); ++r) b[r][i] += q * b[r][j];
          break;
        }
        case 2: {  // swap rows
          std::uniform_int_distribution<std::size_t> rd(0, b.size() - 1);
          std::swap(b[rd(rng)], b[rd(rng)]);
          break;
        }
        default: {  // scale a row by a monomial unit
          std::uniform_int_distribution<std::size_t> rd(0, b.size() - 1);
          long e = ed(rng);
          int s = cd(rng) >= 0 ? 1 : -1;
          std::size_t i = rd(rng);
          for (auto& v : b[i]) v = v * LaurentPoly::monomial(Rat(s), e);
          break;
        }
      }
    }
    auto moved = snf_invariant_factors(from_dense(b));
    REQUIRE(moved.size() == base.size());
    for (std::size_t i = 0; i < moved.size(); ++i) CHECK(moved[i] == base[i]);
  }
}
