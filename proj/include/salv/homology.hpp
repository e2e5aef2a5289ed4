#pragma once
// Homology of a ChainComplex as an R-module decomposition, R = Q[t,t^-1].
// Two engines:
//  * homology_snf: exact Smith normal form of the boundary matrices. Ground
//    truth, guarded to small complexes.
//  * homology_fieldrank: dimension counting over the residue fields
//    F_d = Q[t]/(Phi_d). Scales to the large instances.
//
// The field engine rests on two facts. dim H_k(C (x) F_d) = dim C_k −
// rank d_k − rank d_{k+1} over F_d; and each cyclic summand R/(Phi_d) of H_*
// contributes 1 to that dimension in its own degree (tensor) and 1 one degree
// up (Tor), while a free summand R contributes 1 in its own degree for every
// d. So with free ranks known,
//     dim_k = free_k + a_{d,k} + a_{d,k-1},
// and the recursion a_{d,k} = dim_k − free_k − a_{d,k-1} recovers the
// multiplicities degree by degree. Negative values or a nonzero value at the
// top degree (H_top is a submodule of a free module, hence torsion free)
// expose an inconsistency and are fatal.
//
// Certified modular shortcut: reducing mod a prime ideal (q, t − r) with
// Phi_d(r) ≡ 0 (mod q) can only lower a rank, so modular ranks L are lower
// bounds. Since rank d_k + rank d_{k+1} ≤ dim C_k always,
//     L_k + L_{k+1} == dim C_k
// certifies dim H_k(C (x) F_d) = 0 with both adjacent ranks exact; no
// probabilistic caveat. Degrees left uncertified fall back to exact
// elimination over F_d itself.
//
// Dimension counting cannot separate R/(Phi_d^e) from R/(Phi_d): both add 1
// to every F_d dimension they touch. Full complexes have squarefree torsion,
// so there the count is the full story. Quotient variants do carry repeated
// factors; for them homology_fieldrank reports Phi_d-primary cyclic summand
// counts (the semisimplification) and homology_snf refuses with
// NonSquarefreeTorsionError rather than drop the exponents it computed.
//
// Which d can appear is variant dependent. The full complex is annihilated
// by tau^N − 1, N the reflection count, so d | N. A parabolic subcomplex is
// index many copies of the parabolic's own full complex, and the parabolic's
// reflection count need not divide the ambient one (B3 on the first two
// generators is B2: 4 does not divide 9), so the scan uses the subgroup's
// bound. Quotients scan the union of the ambient bound and the bounds of the
// kernel's parabolic pieces.

#include <cstdint>
#include <string>
#include <vector>

#include "salv/salvetti.hpp"

namespace salv {

struct TorsionEntry {
  int d;      // cyclotomic index
  long mult;  // number of R/(Phi_d) summands, > 0

  bool operator==(const TorsionEntry& o) const {
    return d == o.d && mult == o.mult;
  }
};

struct DegreeHomology {
  long free_rank = 0;
  std::vector<TorsionEntry> torsion;  // d ascending

  bool operator==(const DegreeHomology& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

struct HomologyReport {
  std::string method;  // "snf" | "field" | "modular"
  int kmax = -1;
  std::vector<DegreeHomology> degrees;  // index = degree, 0..kmax
  std::vector<std::uint64_t> primes;    // modular mode: primes relied on
};

// Equality of the computed decompositions; metadata (method, primes) ignored.
bool same_decomposition(const HomologyReport& a, const HomologyReport& b);

// Exact engine. Reads H_k off the invariant factors of d_k and d_{k+1}.
// Throws ResourceLimitError when the complex exceeds cell_guard cells,
// NonCyclotomicFactorError / NonSquarefreeTorsionError when a factor does not
// decompose into distinct Phi_d (either would make the report type a lie).
HomologyReport homology_snf(const ChainComplex& cx, int kmax = -1,
                            std::uint64_t cell_guard = 50'000);

// dim H_k(C (x) F_d) for k = 0..kmax. certified means every entry is exact:
// either certified-zero by the modular bound or computed by exact
// elimination. With the modular option entries may instead rest on two
// agreeing primes (recorded in primes; disagreement falls back to exact).
struct FieldDimTable {
  int d = 1;
  std::vector<long> dims;
  bool certified = true;
  std::vector<std::uint64_t> primes;
};

enum class RankMode { Exact, Modular };

FieldDimTable field_dims(const ChainComplex& cx, int d, int kmax = -1,
                         bool parallel = true,
                         RankMode mode = RankMode::Exact);

// Solves dim_k = free_k + a_k + a_{k-1} for the a_k. top_closed asserts the
// complex ends at the table's last degree, forcing a_top = 0.
// Throws NegativeMultiplicityError / InternalError on inconsistency.
std::vector<long> multiplicities_from_dims(const FieldDimTable& table,
                                           const std::vector<long>& free_ranks,
                                           bool top_closed);

// Ranks of the boundary maps over the fraction field Q(t), h = 0..kmax+1,
// plus the free ranks they imply. exact is true when every rank was pinned
// by the surrogate-prime bound meeting the chain dimension; otherwise the
// values come from agreeing random rational evaluations (correct with
// probability 1, not certified).
struct GenericRanks {
  std::vector<long> rank;
  std::vector<long> free_rank;
  bool exact = true;
};

GenericRanks generic_ranks(const ChainComplex& cx, int kmax = -1,
                           bool parallel = true);

struct FieldRankOptions {
  int kmax = -1;
  bool modular = false;  // two-prime dims instead of exact per-d elimination
  bool parallel = true;
};

// Scalable engine: free ranks from generic_ranks, then per d | #reflections a
// FieldDimTable and the multiplicity recursion. Nonzero free rank is fatal
// for Full/SubG complexes (FreeRankNonzeroError) and recorded for quotient
// variants.
HomologyReport homology_fieldrank(const ChainComplex& cx,
                                  const FieldRankOptions& opt = {});

// H^k := H_{k-1}; degree 0 becomes zero and kmax grows by one. Requires an
// all-torsion report (ShiftInvalidError otherwise).
HomologyReport cohomology_shift(const HomologyReport& r);

// Cochain dimensions dim H^k(C (x) F_d) for k = 0..kmax, computed from the
// transposed boundary matrices by exact elimination. Independent of
// field_dims; used to validate the shift against a second code path.
std::vector<long> cohomology_dims_transposed(const ChainComplex& cx, int d,
                                             int kmax = -1,
                                             bool parallel = true);

}  // namespace salv
