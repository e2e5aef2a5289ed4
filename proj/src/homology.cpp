#include "salv/homology.hpp"

#include <algorithm>
#include <map>

#include "salv/elim.hpp"
#include "salv/snf.hpp"

namespace salv {

namespace {

// Degree range of the report and the build depth it needs. H_km needs d_{km+1},
// so the complex must be built one degree past km unless km is already the top.
int effective_kmax(const ChainComplex& cx, int kmax) {
  int top = cx.top_degree();
  int km = kmax < 0 ? top : std::min(kmax, top);
  int need = std::min(km + 1, top);
  if (cx.built_degree() < need)
    throw UsageError("complex built to degree " +
                     std::to_string(cx.built_degree()) + " but degree " +
                     std::to_string(need) + " is required for homology");
  return km;
}

long dim_at(const ChainComplex& cx, int h) {
  if (h < 0 || h > cx.top_degree()) return 0;
  return cx.basis_size(h);
}

// Cyclotomic indices that can carry torsion. The annihilator bound for the
// whole complex is the ambient reflection count, but a parabolic subcomplex
// decomposes into copies of the parabolic's own complex, whose support obeys
// the subgroup's count instead (which need not divide the ambient one).
// Quotients inherit from the exact sequence with the kernel: its pieces are
// parabolic subcomplexes, so their bounds join the ambient one.
std::vector<int> torsion_scan_divisors(const ChainComplex& cx) {
  const CoxeterSystem& sys = cx.sys();
  const ComplexSpec& sp = cx.spec();
  GenMask full = sys.full_mask();
  GenMask low = (GenMask{1} << sp.k) - 1;
  std::vector<int> out;
  auto add = [&out](long refl) {
    for (int d : divisors_of(std::max(refl, 1l))) out.push_back(d);
  };
  switch (sp.variant) {
    case Variant::Full:
      add(sys.reflection_count());
      break;
    case Variant::SubG:
      if (sp.k >= 1) add(sys.parabolic_reflection_count(low));
      break;
    case Variant::QuotModParabolic:
      add(sys.reflection_count());
      if (sp.k >= 1) add(sys.parabolic_reflection_count(low));
      break;
    case Variant::QuotF: {
      add(sys.reflection_count());
      // kernel = cells whose mask misses part of the top block; it filters
      // through the subcomplexes on full minus a nonempty top subset
      GenMask top = full & ~(full >> sp.k);
      for (GenMask t = top; t; t = (t - 1) & top)
        add(sys.parabolic_reflection_count(full & ~t));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class F>
long rank_of_boundary(const ChainComplex& cx, const F& field, int h,
                      bool parallel) {
  if (h < 1 || h > cx.built_degree()) return 0;
  const MonoMatrix& m = cx.boundary(h);
  if (m.rows == 0 || m.cols == 0 || m.nnz() == 0) return 0;
  SparseMat<F> s = sparse_from_mono(m, field);
  ElimOptions opt;
  opt.parallel = parallel;
  return rank_eliminate(field, s, opt);
}

// Rank lower bounds L[h] for d_h, h = 0..km+1, under the reduction t -> r in
// Z/q. A minor that vanishes there may still be nonzero upstream, never the
// other way round.
std::vector<long> modular_rank_bounds(const ChainComplex& cx, int km,
                                      std::uint64_t q, std::uint64_t r,
                                      int order_d, bool parallel) {
  PrimeField field(q, r, order_d);
  std::vector<long> L(km + 2, 0);
  for (int h = 1; h <= km + 1; ++h)
    L[h] = rank_of_boundary(cx, field, h, parallel);
  return L;
}

// Every column of d_1 sums to zero in F_d; then rank d_1 <= rows − 1. Fires
// at d = 1 on full complexes (the two boundary terms of an edge cancel at
// t = 1) and turns the modular bound rows − 1 into an exact rank.
bool columns_sum_zero(const MonoMatrix& m, const CycField& fd) {
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    CycField::Value acc = fd.zero();
    for (const MonoEntry* e = m.col_begin(c); e != m.col_end(c); ++e)
      fd.add_assign(acc, fd.from_monomial(e->sign, e->exp));
    if (!fd.is_zero(acc)) return false;
  }
  return true;
}

struct PinnedRanks {
  std::vector<long> rank;   // h = 0..km+1
  std::vector<char> exact;  // rank[h] is proven, not just a lower bound
  bool all_exact() const {
    return std::find(exact.begin(), exact.end(), 0) == exact.end();
  }
};

// Certified-zero pinning: L[k] + L[k+1] == dim C_k forces both ranks exact.
PinnedRanks pin_from_bounds(const ChainComplex& cx, int km,
                            const std::vector<long>& L) {
  PinnedRanks p;
  p.rank = L;
  p.exact.assign(km + 2, 0);
  p.exact[0] = 1;
  if (km + 1 > cx.built_degree()) p.exact[km + 1] = 1;  // no map there at all
  for (int k = 0; k <= km; ++k)
    if (L[k] + L[k + 1] == dim_at(cx, k)) p.exact[k] = p.exact[k + 1] = 1;
  return p;
}

std::vector<long> dims_from_ranks(const ChainComplex& cx, int km,
                                  const std::vector<long>& rk,
                                  const char* what) {
  std::vector<long> dims(km + 1);
  for (int k = 0; k <= km; ++k) {
    dims[k] = dim_at(cx, k) - rk[k] - rk[k + 1];
    if (dims[k] < 0)
      throw InternalError(std::string(what) +
                          ": rank pair exceeds the chain dimension in degree " +
                          std::to_string(k));
  }
  return dims;
}

}  // namespace

bool same_decomposition(const HomologyReport& a, const HomologyReport& b) {
  return a.kmax == b.kmax && a.degrees == b.degrees;
}

HomologyReport homology_snf(const ChainComplex& cx, int kmax,
                            std::uint64_t cell_guard) {
  if (cx.total_cells() > cell_guard)
    throw ResourceLimitError(
        "complex has " + std::to_string(cx.total_cells()) +
        " cells, above the exact-normal-form guard of " +
        std::to_string(cell_guard));
  int km = effective_kmax(cx, kmax);

  std::vector<std::vector<LaurentPoly>> fac(km + 2);
  for (int h = 1; h <= km + 1 && h <= cx.built_degree(); ++h)
    fac[h] = snf_invariant_factors(poly_from_mono(cx.boundary(h)));

  HomologyReport rep;
  rep.method = "snf";
  rep.kmax = km;
  rep.degrees.resize(km + 1);
  for (int k = 0; k <= km; ++k) {
    long rk = static_cast<long>(fac[k].size());
    long rk1 = static_cast<long>(fac[k + 1].size());
    long free = dim_at(cx, k) - rk - rk1;
    if (free < 0)
      throw InternalError("normal-form ranks exceed the chain dimension");
    DegreeHomology& deg = rep.degrees[k];
    deg.free_rank = free;
    std::map<int, long> mult;
    for (const LaurentPoly& f : fac[k + 1]) {
      if (f.is_unit()) continue;
      UnityFactorization uf = factor_unity(f);
      for (const auto& [d, e] : uf.factors) {
        if (e > 1)
          throw NonSquarefreeTorsionError(
              "invariant factor " + poly_to_text(f) +
              " is not squarefree; the semisimple report cannot express it");
        mult[d] += 1;
      }
    }
    for (const auto& [d, m] : mult) deg.torsion.push_back({d, m});
  }
  return rep;
}

FieldDimTable field_dims(const ChainComplex& cx, int d, int kmax,
                         bool parallel, RankMode mode) {
  int km = effective_kmax(cx, kmax);
  FieldDimTable t;
  t.d = d;

  std::uint64_t q1 = prime_with_unity_root(d, 1'000'000'007);
  std::uint64_t r1 = element_of_order(q1, d);
  std::vector<long> L = modular_rank_bounds(cx, km, q1, r1, d, parallel);
  PinnedRanks p = pin_from_bounds(cx, km, L);

  // Structural upper bound for d_1 to pair with the modular lower bound.
  if (km + 1 >= 1 && !p.exact[1] && cx.built_degree() >= 1) {
    const MonoMatrix& b1 = cx.boundary(1);
    CycField fd(d);
    if (b1.cols > 0 && columns_sum_zero(b1, fd) && L[1] == dim_at(cx, 0) - 1)
      p.exact[1] = 1;
  }

  if (p.all_exact()) {
    t.dims = dims_from_ranks(cx, km, p.rank, "certified field dims");
    t.certified = true;
    return t;
  }

  if (mode == RankMode::Modular) {
    std::uint64_t q2 = prime_with_unity_root(d, q1 + 2);
    std::uint64_t r2 = element_of_order(q2, d);
    std::vector<long> L2 = modular_rank_bounds(cx, km, q2, r2, d, parallel);
    if (L == L2) {
      t.dims = dims_from_ranks(cx, km, L, "modular field dims");
      t.certified = false;
      t.primes = {q1, q2};
      return t;
    }
    // Disagreement: one of the primes lost rank. Fall through to the exact
    // path rather than guessing which.
  }

  if (d == 1) {
    RationalField f(Rat(1));
    for (int h = 1; h <= km + 1; ++h)
      if (!p.exact[h]) p.rank[h] = rank_of_boundary(cx, f, h, parallel);
  } else {
    CycField f(d);
    for (int h = 1; h <= km + 1; ++h)
      if (!p.exact[h]) p.rank[h] = rank_of_boundary(cx, f, h, parallel);
  }
  t.dims = dims_from_ranks(cx, km, p.rank, "exact field dims");
  t.certified = true;
  return t;
}

std::vector<long> multiplicities_from_dims(const FieldDimTable& table,
                                           const std::vector<long>& free_ranks,
                                           bool top_closed) {
  if (free_ranks.size() != table.dims.size())
    throw UsageError("free-rank vector does not match the dimension table");
  std::vector<long> a(table.dims.size());
  long prev = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = table.dims[k] - free_ranks[k] - prev;
    if (a[k] < 0)
      throw NegativeMultiplicityError(
          "multiplicity recursion went negative at degree " +
          std::to_string(k) + " for d = " + std::to_string(table.d));
    prev = a[k];
  }
  if (top_closed && !a.empty() && a.back() != 0)
    throw InternalError(
        "torsion multiplicity " + std::to_string(a.back()) +
        " reported in the top degree, which is torsion free (d = " +
        std::to_string(table.d) + ")");
  return a;
}

GenericRanks generic_ranks(const ChainComplex& cx, int kmax, bool parallel) {
  int km = effective_kmax(cx, kmax);
  long bound = cx.sys().reflection_count();

  std::uint64_t q = prime_with_unity_root(1, 2'000'000'011);
  std::uint64_t r = element_avoiding_orders(q, bound);
  std::vector<long> L = modular_rank_bounds(cx, km, q, r, 0, parallel);
  PinnedRanks p = pin_from_bounds(cx, km, L);

  GenericRanks g;
  if (!p.all_exact()) {
    // Two agreeing rational evaluations per remaining rank. Points stay away
    // from 0 and ±1, the only rational roots of unity.
    static const std::pair<long, long> pts[] = {
        {17, 5}, {-23, 7}, {31, 11}, {-41, 13}, {53, 17}};
    for (int h = 1; h <= km + 1; ++h) {
      if (p.exact[h]) continue;
      long last = -1;
      bool settled = false;
      for (const auto& [num, den] : pts) {
        RationalField f(Rat(num, den));
        long v = rank_of_boundary(cx, f, h, parallel);
        v = std::max(v, L[h]);
        if (v == last) {
          settled = true;
          break;
        }
        last = v;
      }
      if (!settled)
        throw InternalError(
            "generic rank did not stabilize across rational points");
      p.rank[h] = last;
    }
    g.exact = false;
  }
  g.rank = p.rank;
  g.free_rank = dims_from_ranks(cx, km, p.rank, "generic ranks");
  return g;
}

HomologyReport homology_fieldrank(const ChainComplex& cx,
                                  const FieldRankOptions& opt) {
  int km = effective_kmax(cx, opt.kmax);
  bool top_closed = km == cx.top_degree();

  GenericRanks g = generic_ranks(cx, km, opt.parallel);
  bool quotient = cx.spec().variant == Variant::QuotF ||
                  cx.spec().variant == Variant::QuotModParabolic;
  for (int k = 0; k <= km; ++k)
    if (g.free_rank[k] > 0 && !quotient)
      throw FreeRankNonzeroError(
          "free rank " + std::to_string(g.free_rank[k]) + " in degree " +
          std::to_string(k) + " of a torsion-only complex");

  HomologyReport rep;
  rep.method = opt.modular ? "modular" : "field";
  rep.kmax = km;
  rep.degrees.resize(km + 1);
  for (int k = 0; k <= km; ++k) rep.degrees[k].free_rank = g.free_rank[k];

  for (int d : torsion_scan_divisors(cx)) {
    FieldDimTable t = field_dims(cx, d, km, opt.parallel,
                                 opt.modular ? RankMode::Modular
                                             : RankMode::Exact);
    std::vector<long> alpha =
        multiplicities_from_dims(t, g.free_rank, top_closed);
    for (int k = 0; k <= km; ++k)
      if (alpha[k] > 0) rep.degrees[k].torsion.push_back({d, alpha[k]});
    rep.primes.insert(rep.primes.end(), t.primes.begin(), t.primes.end());
  }
  std::sort(rep.primes.begin(), rep.primes.end());
  rep.primes.erase(std::unique(rep.primes.begin(), rep.primes.end()),
                   rep.primes.end());
  return rep;
}

HomologyReport cohomology_shift(const HomologyReport& r) {
  for (const DegreeHomology& deg : r.degrees)
    if (deg.free_rank != 0)
      throw ShiftInvalidError(
          "cohomology shift needs an all-torsion report; free rank " +
          std::to_string(deg.free_rank) + " present");
  HomologyReport c;
  c.method = r.method;
  c.primes = r.primes;
  c.kmax = r.kmax + 1;
  c.degrees.resize(c.kmax + 1);
  for (int k = 0; k <= r.kmax; ++k) c.degrees[k + 1] = r.degrees[k];
  return c;
}

namespace {

template <class F>
SparseMat<F> sparse_transposed(const MonoMatrix& m, const F& field) {
  SparseMat<F> s;
  s.rows = m.cols;
  s.cols = m.rows;
  s.col.resize(m.rows);
  for (std::uint32_t c = 0; c < m.cols; ++c)
    for (const MonoEntry* e = m.col_begin(c); e != m.col_end(c); ++e)
      s.col[e->row].emplace_back(c, field.from_monomial(e->sign, e->exp));
  return s;
}

template <class F>
std::vector<long> transposed_dims(const ChainComplex& cx, const F& field,
                                  int km, bool parallel) {
  std::vector<long> tr(km + 2, 0);
  for (int h = 1; h <= km + 1 && h <= cx.built_degree(); ++h) {
    const MonoMatrix& m = cx.boundary(h);
    if (m.rows == 0 || m.cols == 0 || m.nnz() == 0) continue;
    SparseMat<F> s = sparse_transposed(m, field);
    ElimOptions opt;
    opt.parallel = parallel;
    tr[h] = rank_eliminate(field, s, opt);
  }
  return dims_from_ranks(cx, km, tr, "transposed dims");
}

}  // namespace

std::vector<long> cohomology_dims_transposed(const ChainComplex& cx, int d,
                                             int kmax, bool parallel) {
  int km = effective_kmax(cx, kmax);
  if (d == 1) return transposed_dims(cx, RationalField(Rat(1)), km, parallel);
  return transposed_dims(cx, CycField(d), km, parallel);
}

}  // namespace salv
