#include "salv/salvetti.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace salv {

namespace {

GenMask low_mask(int k) { return (GenMask{1} << k) - 1; }

}  // namespace

// ---------------------------------------------------------------------------
// ComplexSpec

ComplexSpec ComplexSpec::parse(const std::string& text) {
  ComplexSpec s;
  std::string head = text;
  std::string arg;
  std::size_t colon = text.find(':');
  if (colon != std::string::npos) {
    head = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  if (head == "full") {
    if (colon != std::string::npos) throw UsageError("complex 'full' takes no parameter");
    s.variant = Variant::Full;
    return s;
  }
  if (head == "subg")
    s.variant = Variant::SubG;
  else if (head == "quotf")
    s.variant = Variant::QuotF;
  else if (head == "quotmod")
    s.variant = Variant::QuotModParabolic;
  else
    throw UsageError("unknown complex variant '" + text + "'");
  if (arg.empty()) throw UsageError("variant '" + head + "' needs a parameter, e.g. " + head + ":1");
  errno = 0;
  char* end = nullptr;
  long k = std::strtol(arg.c_str(), &end, 10);
  if (errno != 0 || end == arg.c_str() || *end != '\0' || k < 0 || k > 64)
    throw UsageError("bad variant parameter '" + arg + "'");
  s.k = static_cast<int>(k);
  return s;
}

std::string ComplexSpec::to_string() const {
  switch (variant) {
    case Variant::Full:
      return "full";
    case Variant::SubG:
      return "subg:" + std::to_string(k);
    case Variant::QuotF:
      return "quotf:" + std::to_string(k);
    case Variant::QuotModParabolic:
      return "quotmod:" + std::to_string(k);
  }
  return "?";
}

void ComplexSpec::validate(int n) const {
  switch (variant) {
    case Variant::Full:
      return;
    case Variant::SubG:
      if (k < 0 || k > n) throw UsageError("subg parameter must be in [0, rank]");
      return;
    case Variant::QuotF:
      if (k < 1 || k > n) throw UsageError("quotf parameter must be in [1, rank]");
      return;
    case Variant::QuotModParabolic:
      if (k < 0 || k >= n) throw UsageError("quotmod parameter must be in [0, rank-1]");
      return;
  }
}

bool ComplexSpec::admits(GenMask gamma, int n) const {
  switch (variant) {
    case Variant::Full:
      return true;
    case Variant::SubG:
      return (gamma & ~low_mask(k)) == 0;
    case Variant::QuotF: {
      GenMask top = low_mask(n) & ~low_mask(n - k);
      return (gamma & top) == top;
    }
    case Variant::QuotModParabolic:
      return (gamma & ~low_mask(k)) != 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(const CoxeterSystem& sys, const ComplexSpec& spec,
                           const BuildOptions& opt)
    : sys_(&sys), spec_(spec), n_(sys.rank()) {
  spec_.validate(n_);
  const long nw = sys.order();
  masks_.assign(n_ + 1, {});
  mpos_.assign(n_ + 1, std::vector<std::int16_t>(std::size_t{1} << n_, -1));
  for (GenMask g = 0; g <= sys.full_mask(); ++g) {
    if (!spec_.admits(g, n_)) continue;
    int h = std::popcount(g);
    mpos_[h][g] = static_cast<std::int16_t>(masks_[h].size());
    masks_[h].push_back(g);
  }
  total_cells_ = 0;
  for (int h = 0; h <= n_; ++h) total_cells_ += std::uint64_t(nw) * masks_[h].size();
  if (total_cells_ > opt.cell_limit)
    throw ResourceLimitError("complex " + spec_.to_string() + " has " +
                             std::to_string(total_cells_) + " cells, limit " +
                             std::to_string(opt.cell_limit));

  const auto& els = sys.elements();
  len_.resize(els.size());
  for (std::size_t i = 0; i < els.size(); ++i)
    len_[i] = static_cast<std::uint8_t>(sys.length(els[i]));

  built_ = opt.max_degree < 0 ? n_ : std::min(n_, opt.max_degree);
  bnd_.resize(std::size_t(built_) + 1);
  for (int h = 1; h <= built_; ++h) build_boundary(h, opt.parallel);
}

const std::vector<GenMask>& ChainComplex::masks(int h) const {
  static const std::vector<GenMask> kEmpty;
  if (h < 0 || h > n_) return kEmpty;
  return masks_[h];
}

long ChainComplex::basis_size(int h) const {
  if (h < 0 || h > n_) return 0;
  return sys_->order() * static_cast<long>(masks_[h].size());
}

int ChainComplex::mask_position(int h, GenMask gamma) const {
  if (h < 0 || h > n_) return -1;
  return mpos_[h][gamma];
}

Cell ChainComplex::cell_at(int h, std::uint64_t index) const {
  std::size_t width = masks_[h].size();
  Cell c;
  c.w = static_cast<std::uint32_t>(index / width);
  c.gamma = masks_[h][index % width];
  return c;
}

std::uint64_t ChainComplex::cell_index(int h, const Cell& c) const {
  int p = mpos_[h][c.gamma];
  if (p < 0) throw InternalError("cell mask not in basis");
  return std::uint64_t(c.w) * masks_[h].size() + p;
}

const MonoMatrix& ChainComplex::boundary(int h) const {
  if (h < 1 || h > built_) throw UsageError("boundary degree out of range");
  return bnd_[h];
}

void ChainComplex::build_boundary(int h, bool parallel) {
  const auto& els = sys_->elements();
  const std::uint32_t nw = static_cast<std::uint32_t>(els.size());
  const std::size_t width = masks_[h].size();
  const std::size_t pwidth = masks_[h - 1].size();

  MonoMatrix m;
  m.rows = static_cast<std::uint32_t>(nw * pwidth);
  m.cols = static_cast<std::uint32_t>(nw * width);
  m.colptr.assign(std::size_t(m.cols) + 1, 0);

  // Per-mask term schedule: target position, rep, its length, and the sign
  // contribution (-1)^(l(beta)+mu). Identical for every w.
  struct Sched {
    std::int32_t tpos;
    std::int16_t sign;
    std::uint8_t lbeta;
    Element beta;
  };
  std::vector<std::vector<Sched>> sched(width);
  for (std::size_t gp = 0; gp < width; ++gp) {
    GenMask gamma = masks_[h][gp];
    for (GenMask rest = gamma; rest != 0; rest &= rest - 1) {
      int bit = std::countr_zero(rest);
      GenMask tgt = gamma ^ (GenMask{1} << bit);
      std::int32_t tpos = mpos_[h - 1][tgt];
      if (tpos < 0) continue;  // dropped by the quotient projection
      int musig = CoxeterSystem::mu(gamma, bit + 1);
      for (const Element& beta : sys_->minimal_coset_reps(gamma, tgt)) {
        int lb = sys_->length(beta);
        Sched s;
        s.tpos = tpos;
        s.sign = ((lb + musig) & 1) ? -1 : 1;
        s.lbeta = static_cast<std::uint8_t>(lb);
        s.beta = beta;
        sched[gp].push_back(s);
      }
    }
  }

  std::uint64_t run = 0;
  for (std::uint32_t w = 0; w < nw; ++w)
    for (std::size_t gp = 0; gp < width; ++gp) {
      m.colptr[std::uint64_t(w) * width + gp] = run;
      run += sched[gp].size();
    }
  m.colptr[m.cols] = run;
  m.data.resize(run);

  if (nw > 0) sys_->element_id(els[0]);  // warm the id table before the loop
  std::atomic<bool> parity_bad{false};

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t wi = 0; wi < std::int64_t(nw); ++wi) {
    const std::uint32_t w = static_cast<std::uint32_t>(wi);
    const int lw = len_[w];
    for (std::size_t gp = 0; gp < width; ++gp) {
      const auto& terms = sched[gp];
      std::uint64_t base = m.colptr[std::uint64_t(w) * width + gp];
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const Sched& t = terms[i];
        Element wb = sys_->multiply(els[w], t.beta);
        std::uint32_t id = sys_->element_id(wb);
        int e2 = t.lbeta + lw - len_[id];
        if (e2 < 0 || (e2 & 1)) {
          parity_bad.store(true, std::memory_order_relaxed);
          e2 = 0;
        }
        MonoEntry& e = m.data[base + i];
        e.row = static_cast<std::uint32_t>(std::uint64_t(id) * pwidth + t.tpos);
        e.sign = t.sign;
        e.exp = static_cast<std::uint16_t>(e2 >> 1);
      }
      std::sort(m.data.begin() + base, m.data.begin() + base + terms.size(),
                [](const MonoEntry& a, const MonoEntry& b) { return a.row < b.row; });
    }
  }

  if (parity_bad.load())
    throw ParityViolationError("odd or negative twist exponent in degree " + std::to_string(h));
  bnd_[h] = std::move(m);
}

ChainComplex build_complex(const CoxeterSystem& sys, const ComplexSpec& spec,
                           const BuildOptions& opt) {
  return ChainComplex(sys, spec, opt);
}

// ---------------------------------------------------------------------------
// Cell-level chains

std::vector<ChainTerm> boundary_of_cell(const CoxeterSystem& sys, const Cell& cell) {
  const auto& els = sys.elements();
  if (cell.w >= els.size()) throw MalformedElementError("cell element id out of range");
  if ((cell.gamma & ~sys.full_mask()) != 0)
    throw MalformedElementError("cell mask outside the generator set");
  const Element& w = els[cell.w];
  const int lw = sys.length(w);
  std::vector<ChainTerm> out;
  for (GenMask rest = cell.gamma; rest != 0; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    GenMask tgt = cell.gamma ^ (GenMask{1} << bit);
    int musig = CoxeterSystem::mu(cell.gamma, bit + 1);
    for (const Element& beta : sys.minimal_coset_reps(cell.gamma, tgt)) {
      Element wb = sys.multiply(w, beta);
      int lb = sys.length(beta);
      int e2 = lb + lw - sys.length(wb);
      if (e2 < 0 || (e2 & 1))
        throw ParityViolationError("odd or negative twist exponent at cell boundary");
      ChainTerm t;
      t.cell = Cell{sys.element_id(wb), tgt};
      t.sign = ((lb + musig) & 1) ? -1 : 1;
      t.exp = e2 / 2;
      out.push_back(t);
    }
  }
  return out;
}

std::vector<ChainTerm> act(const CoxeterSystem& sys, const Element& g,
                           const std::vector<ChainTerm>& chain) {
  sys.validate(g);
  std::vector<ChainTerm> out = chain;
  const auto& els = sys.elements();
  for (ChainTerm& t : out) {
    if (t.cell.w >= els.size()) throw MalformedElementError("cell element id out of range");
    t.cell.w = sys.element_id(sys.multiply(g, els[t.cell.w]));
  }
  return out;
}

bool composes_to_zero(const ChainComplex& cx, int h) {
  if (h < 1 || h > cx.built_degree()) throw UsageError("degree out of range");
  if (h == 1) return true;  // boundary into degree -1 is zero
  const MonoMatrix& a = cx.boundary(h - 1);
  const MonoMatrix& b = cx.boundary(h);
  for (std::uint32_t j = 0; j < b.cols; ++j) {
    std::map<std::uint32_t, LaurentPoly> acc;
    for (const MonoEntry* e1 = b.col_begin(j); e1 != b.col_end(j); ++e1) {
      LaurentPoly m1 = LaurentPoly::monomial(Rat(e1->sign), e1->exp);
      for (const MonoEntry* e0 = a.col_begin(e1->row); e0 != a.col_end(e1->row); ++e0)
        acc[e0->row] = acc[e0->row] + LaurentPoly::monomial(Rat(e0->sign), e0->exp) * m1;
    }
    for (const auto& [row, p] : acc)
      if (!p.is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Specialization

template <class Field>
SpecComplex<Field> specialize_complex(const ChainComplex& cx, const Field& field,
                                      const std::string& ring_tag, bool check_d2,
                                      bool parallel) {
  SpecComplex<Field> out;
  out.ring = ring_tag;
  out.dims.resize(cx.top_degree() + 1);
  for (int h = 0; h <= cx.top_degree(); ++h) out.dims[h] = cx.basis_size(h);
  out.bnd.resize(std::size_t(cx.built_degree()) + 1);
  for (int h = 1; h <= cx.built_degree(); ++h) {
    const MonoMatrix& m = cx.boundary(h);
    SpecMatrix<Field>& s = out.bnd[h];
    s.rows = m.rows;
    s.cols = m.cols;
    s.colptr = m.colptr;
    s.rowidx.resize(m.data.size());
    s.val.resize(m.data.size());
    for (std::size_t i = 0; i < m.data.size(); ++i) {
      s.rowidx[i] = m.data[i].row;
      s.val[i] = field.from_monomial(m.data[i].sign, m.data[i].exp);
    }
  }

  if (check_d2) {
    for (int h = 2; h <= cx.built_degree(); ++h) {
      const SpecMatrix<Field>& a = out.bnd[h - 1];
      const SpecMatrix<Field>& b = out.bnd[h];
      std::atomic<bool> bad{false};
#pragma omp parallel if (parallel)
      {
        std::vector<typename Field::Value> acc(a.rows, field.zero());
        std::vector<std::uint32_t> touched;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t j = 0; j < std::int64_t(b.cols); ++j) {
          if (bad.load(std::memory_order_relaxed)) continue;
          touched.clear();
          for (std::uint64_t i1 = b.colptr[j]; i1 < b.colptr[j + 1]; ++i1) {
            std::uint32_t mid = b.rowidx[i1];
            const auto& v1 = b.val[i1];
            for (std::uint64_t i0 = a.colptr[mid]; i0 < a.colptr[mid + 1]; ++i0) {
              std::uint32_t r = a.rowidx[i0];
              if (field.is_zero(acc[r])) touched.push_back(r);
              field.add_assign(acc[r], field.mul(a.val[i0], v1));
            }
          }
          for (std::uint32_t r : touched) {
            if (!field.is_zero(acc[r])) bad.store(true, std::memory_order_relaxed);
            acc[r] = field.zero();
          }
        }
      }
      if (bad.load())
        throw InternalError("specialized boundaries do not compose to zero at degree " +
                            std::to_string(h));
    }
  }
  return out;
}

template SpecComplex<CycField> specialize_complex<CycField>(const ChainComplex&, const CycField&,
                                                            const std::string&, bool, bool);
template SpecComplex<PrimeField> specialize_complex<PrimeField>(const ChainComplex&,
                                                                const PrimeField&,
                                                                const std::string&, bool, bool);
template SpecComplex<RationalField> specialize_complex<RationalField>(const ChainComplex&,
                                                                      const RationalField&,
                                                                      const std::string&, bool,
                                                                      bool);

// ---------------------------------------------------------------------------
// LSM text format

LsmMatrix to_lsm(const MonoMatrix& m, const std::string& ring_tag) {
  LsmMatrix out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.ring = ring_tag;
  out.entries.reserve(m.data.size());
  for (std::uint32_t c = 0; c < m.cols; ++c)
    for (const MonoEntry* e = m.col_begin(c); e != m.col_end(c); ++e)
      out.entries.push_back({e->row, c, LaurentPoly::monomial(Rat(e->sign), e->exp)});
  return out;
}

namespace {

LaurentPoly value_poly(const CycField&, const CycField::Value& v) {
  std::vector<LaurentPoly::Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) terms.push_back({static_cast<long>(i), v[i]});
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly value_poly(const PrimeField&, const PrimeField::Value& v) {
  if (v == 0) return LaurentPoly();
  return LaurentPoly::monomial(Rat(static_cast<unsigned long>(v)), 0);
}

LaurentPoly value_poly(const RationalField&, const RationalField::Value& v) {
  if (sgn(v) == 0) return LaurentPoly();
  return LaurentPoly::monomial(v, 0);
}

}  // namespace

template <class Field>
LsmMatrix to_lsm_spec(const SpecMatrix<Field>& m, const Field& field,
                      const std::string& ring_tag) {
  LsmMatrix out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.ring = ring_tag;
  out.entries.reserve(m.nnz());
  for (std::uint32_t c = 0; c < m.cols; ++c)
    for (std::uint64_t i = m.colptr[c]; i < m.colptr[c + 1]; ++i) {
      LaurentPoly p = value_poly(field, m.val[i]);
      if (!p.is_zero()) out.entries.push_back({m.rowidx[i], c, std::move(p)});
    }
  return out;
}

template LsmMatrix to_lsm_spec<CycField>(const SpecMatrix<CycField>&, const CycField&,
                                         const std::string&);
template LsmMatrix to_lsm_spec<PrimeField>(const SpecMatrix<PrimeField>&, const PrimeField&,
                                           const std::string&);
template LsmMatrix to_lsm_spec<RationalField>(const SpecMatrix<RationalField>&,
                                              const RationalField&, const std::string&);

void dump_lsm(const LsmMatrix& m, std::ostream& out) {
  out << "%%LSM " << m.rows << ' ' << m.cols << ' ' << m.ring << '\n';
  for (const LsmEntry& e : m.entries) out << e.r << ' ' << e.c << ' ' << poly_to_text(e.p) << '\n';
}

void dump_matrix(const ChainComplex& cx, int degree, std::ostream& out) {
  dump_lsm(to_lsm(cx.boundary(degree), "laurent"), out);
}

namespace {

std::uint32_t parse_index(const std::string& tok, std::uint32_t bound, const char* what,
                          long line_no) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (errno != 0 || end == tok.c_str() || *end != '\0' || v < 0)
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  if (std::uint64_t(v) >= bound)
    throw ParseError("line " + std::to_string(line_no) + ": " + what + " " + tok +
                     " out of range (bound " + std::to_string(bound) + ")");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

LsmMatrix load_matrix(std::istream& in) {
  LsmMatrix m;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("line 1: missing header");
  ++line_no;
  {
    std::istringstream hs(line);
    std::string magic;
    long long rows = -1, cols = -1;
    hs >> magic >> rows >> cols >> m.ring;
    std::string rest;
    if (magic != "%%LSM" || hs.fail() || (hs >> rest, !rest.empty()) || rows < 0 || cols < 0 ||
        m.ring.empty())
      throw ParseError("line 1: bad header '" + line + "'");
    m.rows = static_cast<std::uint32_t>(rows);
    m.cols = static_cast<std::uint32_t>(cols);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string rt, ct, pt, rest;
    ls >> rt >> ct >> pt;
    if (rt.empty() || ct.empty() || pt.empty() || (ls >> rest, !rest.empty()))
      throw ParseError("line " + std::to_string(line_no) + ": expected 'r c poly'");
    LsmEntry e;
    e.r = parse_index(rt, m.rows, "row", line_no);
    e.c = parse_index(ct, m.cols, "column", line_no);
    try {
      e.p = poly_from_text(pt);
    } catch (const ParseError& pe) {
      throw ParseError("line " + std::to_string(line_no) + ": " + pe.what());
    }
    if (e.p.is_zero())
      throw ParseError("line " + std::to_string(line_no) + ": zero entry not allowed");
    m.entries.push_back(std::move(e));
  }
  std::sort(m.entries.begin(), m.entries.end(), [](const LsmEntry& a, const LsmEntry& b) {
    return a.c != b.c ? a.c < b.c : a.r < b.r;
  });
  for (std::size_t i = 1; i < m.entries.size(); ++i)
    if (m.entries[i - 1].c == m.entries[i].c && m.entries[i - 1].r == m.entries[i].r)
      throw ParseError("duplicate entry at row " + std::to_string(m.entries[i].r) + " column " +
                       std::to_string(m.entries[i].c));
  return m;
}

}  // namespace salv
