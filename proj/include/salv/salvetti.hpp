#pragma once

// Twisted chain complexes attached to a finite Coxeter system: the full
// complex on cells E(w, Gamma) and its sub/quotient variants, with boundary
// coefficients that are single signed monomials in tau.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "salv/coxeter.hpp"
#include "salv/errors.hpp"
#include "salv/laurent.hpp"

namespace salv {

enum class Variant { Full, SubG, QuotF, QuotModParabolic };

// Basis selection. Writing M(k) for the mask of the k lowest generators and
// T(k) for the mask of the k highest:
//   Full                 every Gamma
//   SubG(k)              Gamma subset of M(k)            (subcomplex)
//   QuotF(k)             Gamma superset of T(k)          (quotient)
//   QuotModParabolic(k)  Gamma not a subset of M(k)      (quotient)
// Quotient boundaries drop terms whose target mask leaves the basis.
struct ComplexSpec {
  Variant variant = Variant::Full;
  int k = 0;

  // Accepts "full", "subg:K", "quotf:K", "quotmod:K".
  static ComplexSpec parse(const std::string& text);
  std::string to_string() const;

  // Parameter range check for a rank-n system. SubG: 0<=k<=n, QuotF: 1<=k<=n,
  // QuotModParabolic: 0<=k<=n-1. Throws UsageError.
  void validate(int n) const;

  bool admits(GenMask gamma, int n) const;
};

struct Cell {
  std::uint32_t w = 0;  // element id in CoxeterSystem order
  GenMask gamma = 0;
};

// One boundary coefficient: sign * tau^exp placed at `row`. Rows within a
// column are distinct because distinct (sigma, beta) give distinct targets.
struct MonoEntry {
  std::uint32_t row = 0;
  std::int16_t sign = 0;
  std::uint16_t exp = 0;
};

// Column-sparse matrix of signed monomials; entries sorted by row inside
// each column. Immutable after build.
struct MonoMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint64_t> colptr;  // size cols+1
  std::vector<MonoEntry> data;

  std::uint64_t nnz() const { return data.size(); }
  const MonoEntry* col_begin(std::uint32_t c) const { return data.data() + colptr[c]; }
  const MonoEntry* col_end(std::uint32_t c) const { return data.data() + colptr[c + 1]; }
};

struct BuildOptions {
  int max_degree = -1;  // boundaries built for 1..max_degree; -1 means all
  bool parallel = true;
  std::uint64_t cell_limit = 8'000'000;
};

// Degree-graded basis plus boundary matrices over the Laurent ring.
// Basis order in degree h: cell (w, Gamma) sits at w * masks(h).size() + p
// where p is the position of Gamma in masks(h) (masks ascending as integers).
// Borrows the system; it must outlive the complex.
class ChainComplex {
 public:
  ChainComplex(const CoxeterSystem& sys, const ComplexSpec& spec, const BuildOptions& opt);

  const CoxeterSystem& sys() const { return *sys_; }
  const ComplexSpec& spec() const { return spec_; }
  int top_degree() const { return n_; }
  int built_degree() const { return built_; }
  std::uint64_t total_cells() const { return total_cells_; }

  const std::vector<GenMask>& masks(int h) const;
  long basis_size(int h) const;
  int mask_position(int h, GenMask gamma) const;  // -1 if absent
  Cell cell_at(int h, std::uint64_t index) const;
  std::uint64_t cell_index(int h, const Cell& c) const;

  // h in [1, built_degree]; degrees with an empty side still carry a matrix
  // with the right shape and no entries.
  const MonoMatrix& boundary(int h) const;

 private:
  void build_boundary(int h, bool parallel);

  const CoxeterSystem* sys_;
  ComplexSpec spec_;
  int n_ = 0;
  int built_ = 0;
  std::uint64_t total_cells_ = 0;
  std::vector<std::vector<GenMask>> masks_;       // [0..n]
  std::vector<std::vector<std::int16_t>> mpos_;   // [0..n], size 1<<n, -1 absent
  std::vector<MonoMatrix> bnd_;                   // [1..built_], index 0 unused
  std::vector<std::uint8_t> len_;                 // length by element id
};

ChainComplex build_complex(const CoxeterSystem& sys, const ComplexSpec& spec,
                           const BuildOptions& opt = {});

// Formal chains for cell-level identities.
struct ChainTerm {
  Cell cell;
  int sign = 0;
  long exp = 0;
};

// Boundary of one cell in the full complex, terms ordered by (sigma asc,
// coset rep order). Every exponent (l(beta)+l(w)-l(w beta))/2 is checked to
// be a nonnegative integer; ParityViolationError otherwise.
std::vector<ChainTerm> boundary_of_cell(const CoxeterSystem& sys, const Cell& cell);

// Left translation g . E(w, Gamma) = E(gw, Gamma); coefficients unchanged.
std::vector<ChainTerm> act(const CoxeterSystem& sys, const Element& g,
                           const std::vector<ChainTerm>& chain);

// True iff boundary(h-1) * boundary(h) vanishes identically over the Laurent
// ring (exact monomial arithmetic).
bool composes_to_zero(const ChainComplex& cx, int h);

// Scalar specialization of all built boundaries. Specializing a monomial
// never yields zero, so the sparsity pattern is preserved.
template <class Field>
struct SpecMatrix {
  using Value = typename Field::Value;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint64_t> colptr;
  std::vector<std::uint32_t> rowidx;
  std::vector<Value> val;

  std::uint64_t nnz() const { return rowidx.size(); }
};

template <class Field>
struct SpecComplex {
  std::string ring;             // "q1", "cyc:<d>", "mod:<q>:<r>", "rat"
  std::vector<long> dims;       // basis sizes, degrees 0..top
  std::vector<SpecMatrix<Field>> bnd;  // [1..built], index 0 empty

  int built_degree() const { return static_cast<int>(bnd.size()) - 1; }
};

// check_d2 re-verifies d(h-1) o d(h) = 0 in the scalar ring; throws
// InternalError on failure.
template <class Field>
SpecComplex<Field> specialize_complex(const ChainComplex& cx, const Field& field,
                                      const std::string& ring_tag, bool check_d2 = true,
                                      bool parallel = true);

extern template SpecComplex<CycField> specialize_complex<CycField>(const ChainComplex&,
                                                                   const CycField&,
                                                                   const std::string&, bool, bool);
extern template SpecComplex<PrimeField> specialize_complex<PrimeField>(const ChainComplex&,
                                                                       const PrimeField&,
                                                                       const std::string&, bool,
                                                                       bool);
extern template SpecComplex<RationalField> specialize_complex<RationalField>(
    const ChainComplex&, const RationalField&, const std::string&, bool, bool);

// Sparse-matrix text format. Header "%%LSM <rows> <cols> <ring>", then one
// line "r c <poly>" per entry, 0-based indices, poly in the laurent text
// form. Dumps are emitted in (c, r) ascending order; loads accept any order
// and sort, rejecting duplicates.
struct LsmEntry {
  std::uint32_t r = 0;
  std::uint32_t c = 0;
  LaurentPoly p;
};

struct LsmMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::string ring;
  std::vector<LsmEntry> entries;
};

void dump_matrix(const ChainComplex& cx, int degree, std::ostream& out);
void dump_lsm(const LsmMatrix& m, std::ostream& out);
LsmMatrix load_matrix(std::istream& in);

LsmMatrix to_lsm(const MonoMatrix& m, const std::string& ring_tag);

template <class Field>
LsmMatrix to_lsm_spec(const SpecMatrix<Field>& m, const Field& field, const std::string& ring_tag);

}  // namespace salv
