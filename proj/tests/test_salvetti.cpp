#include "salv/salvetti.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "salv/coxeter.hpp"
#include "salv/errors.hpp"
#include "salv/laurent.hpp"

using namespace salv;

namespace {

Element word(const CoxeterSystem& sys, std::initializer_list<int> gens) {
  Element w = sys.identity();
  for (int i : gens) w = sys.right_mul_gen(w, i);
  return w;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Canonical form for multiset comparison of formal chains.
std::vector<std::tuple<GenMask, std::uint32_t, long, int>> canon(
    const std::vector<ChainTerm>& chain) {
  std::vector<std::tuple<GenMask, std::uint32_t, long, int>> v;
  for (const ChainTerm& t : chain) v.emplace_back(t.cell.gamma, t.cell.w, t.exp, t.sign);
  std::sort(v.begin(), v.end());
  return v;
}

struct ExpectedTerm {
  std::initializer_list<int> w;
  GenMask gamma;
  int sign;
  long exp;
};

void check_chain(const CoxeterSystem& sys, const std::vector<ChainTerm>& got,
                 const std::vector<ExpectedTerm>& want) {
  std::vector<ChainTerm> expect;
  for (const ExpectedTerm& e : want) {
    ChainTerm t;
    t.cell = Cell{sys.element_id(word(sys, e.w)), e.gamma};
    t.sign = e.sign;
    t.exp = e.exp;
    expect.push_back(t);
  }
  CHECK(canon(got) == canon(expect));
}

bool mono_equal(const MonoMatrix& a, const MonoMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols || a.colptr != b.colptr) return false;
  if (a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (a.data[i].row != b.data[i].row || a.data[i].sign != b.data[i].sign ||
        a.data[i].exp != b.data[i].exp)
      return false;
  return true;
}

std::string dump_to_string(const ChainComplex& cx, int degree) {
  std::ostringstream os;
  dump_matrix(cx, degree, os);
  return os.str();
}

}  // namespace

TEST_CASE("complex spec parse and print") {
  CHECK(ComplexSpec::parse("full").variant == Variant::Full);
  CHECK(ComplexSpec::parse("subg:3").variant == Variant::SubG);
  CHECK(ComplexSpec::parse("subg:3").k == 3);
  CHECK(ComplexSpec::parse("quotf:1").variant == Variant::QuotF);
  CHECK(ComplexSpec::parse("quotmod:2").variant == Variant::QuotModParabolic);
  for (const char* t : {"full", "subg:0", "subg:3", "quotf:1", "quotmod:2"})
    CHECK(ComplexSpec::parse(t).to_string() == t);
  CHECK_THROWS_AS(ComplexSpec::parse("fulll"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("full:1"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("subg"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("subg:"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("subg:x"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("subg:-1"), UsageError);
  CHECK_THROWS_AS(ComplexSpec::parse("quotf:2x"), UsageError);

  CoxeterSystem a3(Family::A, 3);
  CHECK_THROWS_AS(build_complex(a3, ComplexSpec::parse("subg:4")), UsageError);
  CHECK_THROWS_AS(build_complex(a3, ComplexSpec::parse("quotf:0")), UsageError);
  CHECK_THROWS_AS(build_complex(a3, ComplexSpec::parse("quotf:4")), UsageError);
  CHECK_THROWS_AS(build_complex(a3, ComplexSpec::parse("quotmod:3")), UsageError);
  CHECK_NOTHROW(build_complex(a3, ComplexSpec::parse("subg:0")));
  CHECK_NOTHROW(build_complex(a3, ComplexSpec::parse("quotmod:0")));
}

TEST_CASE("one-generator boundaries match the dihedral picture") {
  CoxeterSystem a1(Family::A, 1);
  // dE(e,{s}) = E(s,0) - E(e,0)
  check_chain(a1, boundary_of_cell(a1, Cell{a1.element_id(a1.identity()), 1}),
              {{{1}, 0, 1, 0}, {{}, 0, -1, 0}});
  // dE(s,{s}) = tau E(e,0) - E(s,0)
  check_chain(a1, boundary_of_cell(a1, Cell{a1.element_id(word(a1, {1})), 1}),
              {{{}, 0, 1, 1}, {{1}, 0, -1, 0}});
}

TEST_CASE("top cell boundary in rank two expands over both coset families") {
  CoxeterSystem a2(Family::A, 2);
  auto chain = boundary_of_cell(a2, Cell{a2.element_id(a2.identity()), 0b11});
  check_chain(a2, chain,
              {{{}, 2, -1, 0},
               {{1}, 2, 1, 0},
               {{2, 1}, 2, -1, 0},
               {{}, 1, 1, 0},
               {{2}, 1, -1, 0},
               {{1, 2}, 1, 1, 0}});
}

TEST_CASE("rank one boundary matrix is the frozen two by two") {
  CoxeterSystem a1(Family::A, 1);
  ChainComplex cx = build_complex(a1, ComplexSpec{});
  CHECK(cx.basis_size(0) == 2);
  CHECK(cx.basis_size(1) == 2);
  const MonoMatrix& d1 = cx.boundary(1);
  CHECK(d1.rows == 2);
  CHECK(d1.cols == 2);
  REQUIRE(d1.nnz() == 4);
  // column 0 = dE(e,{s}): -1 at row 0, +1 at row 1
  CHECK(d1.data[0].row == 0);
  CHECK(d1.data[0].sign == -1);
  CHECK(d1.data[0].exp == 0);
  CHECK(d1.data[1].row == 1);
  CHECK(d1.data[1].sign == 1);
  CHECK(d1.data[1].exp == 0);
  // column 1 = dE(s,{s}): +tau at row 0, -1 at row 1
  CHECK(d1.data[2].row == 0);
  CHECK(d1.data[2].sign == 1);
  CHECK(d1.data[2].exp == 1);
  CHECK(d1.data[3].row == 1);
  CHECK(d1.data[3].sign == -1);
  CHECK(d1.data[3].exp == 0);
}

TEST_CASE("basis sizes follow the binomial counts for every variant") {
  for (auto [fam, n] : std::vector<std::pair<Family, int>>{
           {Family::A, 2}, {Family::A, 4}, {Family::B, 3}, {Family::B, 4}, {Family::D, 4}}) {
    CoxeterSystem sys(fam, n);
    long nw = sys.order();
    ChainComplex full = build_complex(sys, ComplexSpec{});
    for (int h = 0; h <= n; ++h) CHECK(full.basis_size(h) == nw * binom(n, h));
    for (int k = 0; k <= n; ++k) {
      ChainComplex sub = build_complex(sys, ComplexSpec{Variant::SubG, k});
      for (int h = 0; h <= n; ++h) CHECK(sub.basis_size(h) == nw * binom(k, h));
    }
    for (int k = 1; k <= n; ++k) {
      ChainComplex qf = build_complex(sys, ComplexSpec{Variant::QuotF, k});
      for (int h = 0; h <= n; ++h) CHECK(qf.basis_size(h) == nw * binom(n - k, h - k));
    }
    for (int k = 0; k < n; ++k) {
      ChainComplex qm = build_complex(sys, ComplexSpec{Variant::QuotModParabolic, k});
      for (int h = 0; h <= n; ++h)
        CHECK(qm.basis_size(h) == nw * (binom(n, h) - binom(k, h)));
    }
  }
}

TEST_CASE("cell indexing round trips") {
  CoxeterSystem b3(Family::B, 3);
  ChainComplex cx = build_complex(b3, ComplexSpec{Variant::QuotModParabolic, 1});
  for (int h = 0; h <= 3; ++h)
    for (std::uint64_t i = 0; i < std::uint64_t(cx.basis_size(h)); ++i) {
      Cell c = cx.cell_at(h, i);
      CHECK(cx.cell_index(h, c) == i);
      CHECK(cx.mask_position(h, c.gamma) >= 0);
    }
  CHECK(cx.mask_position(1, GenMask{1}) == -1);  // {s1} lies inside the quotiented parabolic
}

TEST_CASE("boundaries compose to zero for every variant up to rank four") {
  for (auto [fam, nlo, nhi] : std::vector<std::tuple<Family, int, int>>{
           {Family::A, 1, 4}, {Family::B, 1, 4}, {Family::D, 2, 4}}) {
    for (int n = nlo; n <= nhi; ++n) {
      CoxeterSystem sys(fam, n);
      std::vector<ComplexSpec> specs{ComplexSpec{}};
      for (int k = 0; k <= n; ++k) specs.push_back(ComplexSpec{Variant::SubG, k});
      for (int k = 1; k <= n; ++k) specs.push_back(ComplexSpec{Variant::QuotF, k});
      for (int k = 0; k < n; ++k) specs.push_back(ComplexSpec{Variant::QuotModParabolic, k});
      for (const ComplexSpec& sp : specs) {
        ChainComplex cx = build_complex(sys, sp);
        for (int h = 2; h <= cx.built_degree(); ++h) {
          INFO("family ", int(fam), " rank ", n, " ", sp.to_string(), " degree ", h);
          CHECK(composes_to_zero(cx, h));
        }
      }
    }
  }
}

TEST_CASE("boundaries compose to zero at sampled rank-five degrees") {
  CoxeterSystem a5(Family::A, 5);
  ChainComplex ca = build_complex(a5, ComplexSpec{}, BuildOptions{3, true, 8'000'000});
  CHECK(composes_to_zero(ca, 2));
  CHECK(composes_to_zero(ca, 3));
  CoxeterSystem d5(Family::D, 5);
  ChainComplex cd = build_complex(d5, ComplexSpec{}, BuildOptions{2, true, 8'000'000});
  CHECK(composes_to_zero(cd, 2));
  CoxeterSystem b5(Family::B, 5);
  ChainComplex cb = build_complex(b5, ComplexSpec{}, BuildOptions{2, true, 8'000'000});
  CHECK(composes_to_zero(cb, 2));
}

TEST_CASE("translation action and the coset factorization reproduce boundaries") {
  std::mt19937 rng(20260816);
  for (auto [fam, n] : std::vector<std::pair<Family, int>>{
           {Family::A, 3}, {Family::B, 3}, {Family::D, 4}}) {
    CoxeterSystem sys(fam, n);
    const auto& els = sys.elements();
    std::uniform_int_distribution<std::uint32_t> pick_w(0, std::uint32_t(els.size()) - 1);
    std::uniform_int_distribution<GenMask> pick_g(1, sys.full_mask());
    for (int trial = 0; trial < 300; ++trial) {
      std::uint32_t wid = pick_w(rng);
      GenMask gamma = pick_g(rng);
      auto lhs = boundary_of_cell(sys, Cell{wid, gamma});
      auto [u, v] = sys.coset_decompose(els[wid], gamma);
      auto rhs = act(sys, u, boundary_of_cell(sys, Cell{sys.element_id(v), gamma}));
      CHECK(canon(lhs) == canon(rhs));
    }
  }
}

TEST_CASE("identity acts trivially and translation relabels") {
  CoxeterSystem a2(Family::A, 2);
  auto chain = boundary_of_cell(a2, Cell{a2.element_id(word(a2, {1, 2})), 0b11});
  CHECK(canon(act(a2, a2.identity(), chain)) == canon(chain));
  Element g = word(a2, {2});
  std::vector<ChainTerm> one{ChainTerm{Cell{a2.element_id(word(a2, {1})), 0b01}, 1, 0}};
  auto moved = act(a2, g, one);
  REQUIRE(moved.size() == 1);
  CHECK(moved[0].cell.w == a2.element_id(word(a2, {2, 1})));
  CHECK(moved[0].cell.gamma == 0b01);
  CHECK(moved[0].sign == 1);
  CHECK(moved[0].exp == 0);
}

TEST_CASE("subcomplex columns keep every ambient boundary term") {
  CoxeterSystem a3(Family::A, 3);
  ChainComplex sub = build_complex(a3, ComplexSpec{Variant::SubG, 2});
  for (int h = 1; h <= sub.built_degree(); ++h) {
    const MonoMatrix& m = sub.boundary(h);
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      Cell cell = sub.cell_at(h, c);
      CHECK(std::uint64_t(m.colptr[c + 1] - m.colptr[c]) ==
            boundary_of_cell(a3, cell).size());
    }
  }
}

TEST_CASE("two quotient descriptions of the sign-node complex agree entrywise") {
  for (int n : {2, 3, 4}) {
    CoxeterSystem bn(Family::B, n);
    ChainComplex qf = build_complex(bn, ComplexSpec{Variant::QuotF, 1});
    ChainComplex qm = build_complex(bn, ComplexSpec{Variant::QuotModParabolic, n - 1});
    for (int h = 1; h <= n; ++h) {
      INFO("B", n, " degree ", h);
      CHECK(mono_equal(qf.boundary(h), qm.boundary(h)));
    }
  }
}

TEST_CASE("parallel and serial builds are identical") {
  CoxeterSystem b3(Family::B, 3);
  ChainComplex par = build_complex(b3, ComplexSpec{}, BuildOptions{-1, true, 8'000'000});
  ChainComplex ser = build_complex(b3, ComplexSpec{}, BuildOptions{-1, false, 8'000'000});
  for (int h = 1; h <= 3; ++h) CHECK(mono_equal(par.boundary(h), ser.boundary(h)));
}

TEST_CASE("degree cap skips higher boundaries but keeps the grading") {
  CoxeterSystem a3(Family::A, 3);
  ChainComplex cx = build_complex(a3, ComplexSpec{}, BuildOptions{1, true, 8'000'000});
  CHECK(cx.built_degree() == 1);
  CHECK(cx.basis_size(3) == 24);
  CHECK_NOTHROW(cx.boundary(1));
  CHECK_THROWS_AS(cx.boundary(2), UsageError);
}

TEST_CASE("cell limit rejects oversized complexes") {
  CoxeterSystem a3(Family::A, 3);
  CHECK_THROWS_AS(build_complex(a3, ComplexSpec{}, BuildOptions{-1, true, 100}),
                  ResourceLimitError);
}

TEST_CASE("specializations keep the sparsity pattern and compose to zero") {
  CoxeterSystem a2(Family::A, 2);
  ChainComplex cx = build_complex(a2, ComplexSpec{});

  RationalField q1((Rat(1)));
  auto s1 = specialize_complex(cx, q1, "q1");
  CHECK(s1.ring == "q1");
  CHECK(s1.dims == std::vector<long>{6, 12, 6});
  for (int h = 1; h <= 2; ++h) {
    CHECK(s1.bnd[h].nnz() == cx.boundary(h).nnz());
    for (std::size_t i = 0; i < s1.bnd[h].val.size(); ++i) {
      CHECK(s1.bnd[h].rowidx[i] == cx.boundary(h).data[i].row);
      CHECK(s1.bnd[h].val[i] == Rat(cx.boundary(h).data[i].sign));
    }
  }

  CycField f3(3);
  auto s3 = specialize_complex(cx, f3, "cyc:3");
  CHECK(s3.bnd[2].nnz() == cx.boundary(2).nnz());

  PrimeField p13(13, 3, 3);
  auto sp = specialize_complex(cx, p13, "mod:13:3");
  CHECK(sp.bnd[1].nnz() == cx.boundary(1).nnz());

  CoxeterSystem b3(Family::B, 3);
  ChainComplex qb = build_complex(b3, ComplexSpec{Variant::QuotModParabolic, 2});
  CHECK_NOTHROW(specialize_complex(qb, f3, "cyc:3"));
  CHECK_NOTHROW(specialize_complex(qb, q1, "q1"));
}

TEST_CASE("rank one matrix dumps to the frozen text") {
  CoxeterSystem a1(Family::A, 1);
  ChainComplex cx = build_complex(a1, ComplexSpec{});
  CHECK(dump_to_string(cx, 1) ==
        "%%LSM 2 2 laurent\n"
        "0 0 0:-1/1\n"
        "1 0 0:1/1\n"
        "0 1 1:1/1\n"
        "1 1 0:-1/1\n");
}

TEST_CASE("matrix text round trips byte for byte") {
  CoxeterSystem a2(Family::A, 2);
  ChainComplex cx = build_complex(a2, ComplexSpec{});
  for (int h = 1; h <= 2; ++h) {
    std::string text = dump_to_string(cx, h);
    std::istringstream in(text);
    LsmMatrix m = load_matrix(in);
    CHECK(m.rows == std::uint32_t(cx.basis_size(h - 1)));
    CHECK(m.cols == std::uint32_t(cx.basis_size(h)));
    CHECK(m.ring == "laurent");
    std::ostringstream out;
    dump_lsm(m, out);
    CHECK(out.str() == text);
  }
}

TEST_CASE("specialized dumps carry the scalar ring tag") {
  CoxeterSystem a1(Family::A, 1);
  ChainComplex cx = build_complex(a1, ComplexSpec{});
  CycField f2(2);
  auto s2 = specialize_complex(cx, f2, "cyc:2");
  std::ostringstream os;
  dump_lsm(to_lsm_spec(s2.bnd[1], f2, s2.ring), os);
  // tau = -1 mod phi_2, so the tau entry becomes -1
  CHECK(os.str() ==
        "%%LSM 2 2 cyc:2\n"
        "0 0 0:-1/1\n"
        "1 0 0:1/1\n"
        "0 1 0:-1/1\n"
        "1 1 0:-1/1\n");
  std::istringstream in(os.str());
  LsmMatrix m = load_matrix(in);
  CHECK(m.ring == "cyc:2");
  CHECK(m.entries.size() == 4);
}

TEST_CASE("malformed matrix text is rejected with a line number") {
  auto load = [](const std::string& s) {
    std::istringstream in(s);
    return load_matrix(in);
  };
  CHECK_THROWS_AS(load(""), ParseError);
  CHECK_THROWS_AS(load("%%LSX 2 2 laurent\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent extra\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM -2 2 laurent\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n0 0\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n0 0 0:1/1 junk\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n2 0 0:1/1\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n0 2 0:1/1\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n-1 0 0:1/1\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n0 0 0:1\n"), ParseError);
  CHECK_THROWS_AS(load("%%LSM 2 2 laurent\n0 0 0:1/1\n0 0 0:2/1\n"), ParseError);
  try {
    load("%%LSM 2 2 laurent\n0 0 0:1/1\nx 1 0:1/1\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
