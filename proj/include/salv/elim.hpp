#pragma once

// Sparse Gaussian elimination over an exact field, used for every rank
// computation. rank_eliminate is the production kernel: right-looking with
// Markowitz-flavored pivoting, singleton peeling, freed pivot storage, and
// OpenMP column updates. rank_reference is a small left-looking echelon
// kept as an independent cross-check.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "salv/laurent.hpp"
#include "salv/salvetti.hpp"

namespace salv {

template <class Field>
struct SparseMat {
  using Value = typename Field::Value;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Value>>> col;  // sorted by row
};

template <class Field>
SparseMat<Field> to_sparse(const SpecMatrix<Field>& m) {
  SparseMat<Field> s;
  s.rows = m.rows;
  s.cols = m.cols;
  s.col.resize(m.cols);
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    s.col[c].reserve(m.colptr[c + 1] - m.colptr[c]);
    for (std::uint64_t i = m.colptr[c]; i < m.colptr[c + 1]; ++i)
      s.col[c].emplace_back(m.rowidx[i], m.val[i]);
  }
  return s;
}

// Specialize one monomial boundary straight into elimination form.
template <class Field>
SparseMat<Field> sparse_from_mono(const MonoMatrix& m, const Field& field) {
  SparseMat<Field> s;
  s.rows = m.rows;
  s.cols = m.cols;
  s.col.resize(m.cols);
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    s.col[c].reserve(m.colptr[c + 1] - m.colptr[c]);
    for (const MonoEntry* e = m.col_begin(c); e != m.col_end(c); ++e)
      s.col[c].emplace_back(e->row, field.from_monomial(e->sign, e->exp));
  }
  return s;
}

// Pivot preference: 0 for values whose elimination step cannot grow
// coefficients, 1 otherwise.
inline int pivot_weight(const RationalField&, const Rat& v) {
  return (v == 1 || v == -1) ? 0 : 1;
}
inline int pivot_weight(const PrimeField&, const PrimeField::Value&) { return 0; }
inline int pivot_weight(const CycField&, const CycField::Value& v) {
  int nz = 0;
  bool unit = true;
  for (const Rat& c : v)
    if (sgn(c) != 0) {
      ++nz;
      if (!(c == 1 || c == -1)) unit = false;
    }
  return (nz == 1 && unit) ? 0 : 1;
}

struct ElimOptions {
  bool parallel = true;
};

struct ElimStats {
  std::uint64_t pivots = 0;
  std::uint64_t updates = 0;       // column axpy count
  std::uint64_t fill_peak = 0;     // max live entries seen
};

namespace elim_detail {

// Min-heap of (key, id) with lazy invalidation.
struct LazyHeap {
  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q;
  void push(std::uint64_t key, std::uint32_t id) { q.emplace(key, id); }
};

template <class Value>
const Value* find_row(const std::vector<std::pair<std::uint32_t, Value>>& col,
                      std::uint32_t row) {
  auto it = std::lower_bound(col.begin(), col.end(), row,
                             [](const auto& a, std::uint32_t r) { return a.first < r; });
  if (it == col.end() || it->first != row) return nullptr;
  return &it->second;
}

}  // namespace elim_detail

template <class Field>
std::uint32_t rank_eliminate(const Field& F, SparseMat<Field>& M, const ElimOptions& opt = {},
                             ElimStats* stats = nullptr) {
  using Value = typename Field::Value;
  using Col = std::vector<std::pair<std::uint32_t, Value>>;
  const std::uint32_t R = M.rows, C = M.cols;

  std::vector<std::uint32_t> cnnz(C), rnnz(R, 0);
  std::vector<std::vector<std::uint32_t>> row_cols(R);  // superset, lazily filtered
  std::uint64_t live = 0;
  for (std::uint32_t c = 0; c < C; ++c) {
    cnnz[c] = static_cast<std::uint32_t>(M.col[c].size());
    live += cnnz[c];
    for (const auto& [r, v] : M.col[c]) {
      ++rnnz[r];
      row_cols[r].push_back(c);
    }
  }
  std::vector<char> col_live(C, 1), row_live(R, 1);

  elim_detail::LazyHeap cheap, rheap;
  for (std::uint32_t c = 0; c < C; ++c)
    if (cnnz[c] > 0) cheap.push(cnnz[c], c);
  for (std::uint32_t r = 0; r < R; ++r)
    if (rnnz[r] > 0) rheap.push(rnnz[r], r);

  std::uint32_t rank = 0;
  std::uint64_t fill_peak = live, updates = 0;

  // Scratch reused across pivots.
  std::vector<std::uint32_t> affected;
  std::vector<Col> fresh;
  std::vector<std::vector<std::uint32_t>> added, removed;

  while (true) {
    // Singleton rows first: their pivot needs no update at all.
    std::uint32_t prow = UINT32_MAX, pcol = UINT32_MAX;
    while (!rheap.q.empty()) {
      auto [key, r] = rheap.q.top();
      if (!row_live[r] || rnnz[r] == 0 || key != rnnz[r]) {
        rheap.q.pop();
        continue;
      }
      if (key == 1) {
        rheap.q.pop();
        for (std::uint32_t c : row_cols[r])
          if (col_live[c] && elim_detail::find_row(M.col[c], r)) {
            prow = r;
            pcol = c;
            break;
          }
        if (pcol != UINT32_MAX) break;
        continue;  // stale listing; the row's column was consumed earlier
      }
      break;
    }

    if (pcol == UINT32_MAX) {
      // Markowitz-flavored: smallest live column, then best row inside it.
      while (!cheap.q.empty()) {
        auto [key, c] = cheap.q.top();
        if (!col_live[c] || cnnz[c] == 0 || key != cnnz[c]) {
          cheap.q.pop();
          continue;
        }
        pcol = c;
        break;
      }
      if (pcol == UINT32_MAX) break;
      long best = -1;
      for (const auto& [r, v] : M.col[pcol]) {
        long score = (long(pivot_weight(F, v)) << 32) + rnnz[r];
        if (best < 0 || score < best) {
          best = score;
          prow = r;
        }
      }
    }
    if (pcol == UINT32_MAX) break;

    const Col& pv_col = M.col[pcol];
    const Value* pv = elim_detail::find_row(pv_col, prow);

    // Live columns other than the pivot that really contain the pivot row.
    affected.clear();
    for (std::uint32_t c : row_cols[prow])
      if (c != pcol && col_live[c] && elim_detail::find_row(M.col[c], prow))
        affected.push_back(c);
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    const std::size_t na = affected.size();
    fresh.assign(na, {});
    added.assign(na, {});
    removed.assign(na, {});

#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel && na > 1)
    for (std::int64_t ti = 0; ti < std::int64_t(na); ++ti) {
      const Col& tgt = M.col[affected[ti]];
      Value scale = F.div(*elim_detail::find_row(tgt, prow), *pv);
      Col out;
      out.reserve(tgt.size() + pv_col.size());
      auto a = tgt.begin();
      auto b = pv_col.begin();
      while (a != tgt.end() || b != pv_col.end()) {
        if (b == pv_col.end() || (a != tgt.end() && a->first < b->first)) {
          out.push_back(*a);
          ++a;
        } else if (a == tgt.end() || b->first < a->first) {
          Value nv = F.neg(F.mul(scale, b->second));
          if (!F.is_zero(nv)) {
            added[ti].push_back(b->first);
            out.emplace_back(b->first, std::move(nv));
          }
          ++b;
        } else {
          Value nv = a->second;
          F.submul(nv, scale, b->second);
          if (F.is_zero(nv))
            removed[ti].push_back(a->first);
          else
            out.emplace_back(a->first, std::move(nv));
          ++a;
          ++b;
        }
      }
      fresh[ti] = std::move(out);
    }

    // Serial bookkeeping in ascending column order keeps the run
    // deterministic regardless of thread count.
    for (std::size_t ti = 0; ti < na; ++ti) {
      std::uint32_t c = affected[ti];
      live += fresh[ti].size();
      live -= M.col[c].size();
      M.col[c] = std::move(fresh[ti]);
      cnnz[c] = static_cast<std::uint32_t>(M.col[c].size());
      for (std::uint32_t r : added[ti]) {
        ++rnnz[r];
        row_cols[r].push_back(c);
        rheap.push(rnnz[r], r);
      }
      // removed[] always includes prow: the merge cancels it exactly.
      for (std::uint32_t r : removed[ti]) {
        --rnnz[r];
        if (rnnz[r] > 0) rheap.push(rnnz[r], r);
      }
      if (cnnz[c] > 0) cheap.push(cnnz[c], c);
      updates += 1;
    }

    for (const auto& [r, v] : M.col[pcol]) {
      --rnnz[r];
      if (r != prow && rnnz[r] > 0) rheap.push(rnnz[r], r);
    }
    live -= M.col[pcol].size();
    Col().swap(M.col[pcol]);  // free pivot storage
    col_live[pcol] = 0;
    row_live[prow] = 0;
    cnnz[pcol] = 0;
    ++rank;
    if (live > fill_peak) fill_peak = live;
  }

  if (stats) {
    stats->pivots = rank;
    stats->updates = updates;
    stats->fill_peak = fill_peak;
  }
  return rank;
}

// Independent left-looking echelon; quadratic in the number of pivots, for
// tests and the benchmark comparison only.
template <class Field>
std::uint32_t rank_reference(const Field& F, const SparseMat<Field>& M) {
  using Value = typename Field::Value;
  using Col = std::vector<std::pair<std::uint32_t, Value>>;
  std::vector<std::pair<std::uint32_t, Col>> pivots;  // (pivot row, column)
  for (std::uint32_t c = 0; c < M.cols; ++c) {
    Col v = M.col[c];
    for (const auto& [pr, pc] : pivots) {
      const Value* at = elim_detail::find_row(v, pr);
      if (!at) continue;
      Value scale = F.div(*at, *elim_detail::find_row(pc, pr));
      Col out;
      out.reserve(v.size() + pc.size());
      auto a = v.begin();
      auto b = pc.begin();
      while (a != v.end() || b != pc.end()) {
        if (b == pc.end() || (a != v.end() && a->first < b->first)) {
          out.push_back(*a);
          ++a;
        } else if (a == v.end() || b->first < a->first) {
          Value nv = F.neg(F.mul(scale, b->second));
          if (!F.is_zero(nv)) out.emplace_back(b->first, std::move(nv));
          ++b;
        } else {
          Value nv = a->second;
          F.submul(nv, scale, b->second);
          if (!F.is_zero(nv)) out.emplace_back(a->first, std::move(nv));
          ++a;
          ++b;
        }
      }
      v = std::move(out);
    }
    if (!v.empty()) pivots.emplace_back(v.front().first, std::move(v));
  }
  return static_cast<std::uint32_t>(pivots.size());
}

}  // namespace salv
