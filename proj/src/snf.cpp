#include "salv/snf.hpp"

#include <limits>
#include <set>

#include "salv/errors.hpp"

namespace salv {

PolyMatrix poly_from_mono(const MonoMatrix& m) {
  PolyMatrix p;
  p.rows = m.rows;
  p.cols = m.cols;
  p.col.resize(m.cols);
  for (std::uint32_t c = 0; c < m.cols; ++c)
    for (const MonoEntry* e = m.col_begin(c); e != m.col_end(c); ++e)
      p.col[c].emplace(e->row, LaurentPoly::monomial(Rat(e->sign), e->exp));
  return p;
}

namespace {

// Entries are compared by normalized width; narrower entries make better
// pivots because width strictly drops along remainder chains.
long entry_width(const LaurentPoly& p) { return p.width(); }

struct Workspace {
  PolyMatrix* m;
  std::vector<std::set<std::uint32_t>> rows_in;  // columns holding each row
  std::vector<char> row_live, col_live;

  explicit Workspace(PolyMatrix& mm) : m(&mm) {
    rows_in.resize(m->rows);
    row_live.assign(m->rows, 1);
    col_live.assign(m->cols, 1);
    for (std::uint32_t c = 0; c < m->cols; ++c)
      for (const auto& [r, p] : m->col[c]) rows_in[r].insert(c);
  }

  const LaurentPoly* at(std::uint32_t r, std::uint32_t c) const {
    auto it = m->col[c].find(r);
    return it == m->col[c].end() ? nullptr : &it->second;
  }

  void set(std::uint32_t r, std::uint32_t c, LaurentPoly v) {
    if (v.is_zero()) {
      if (m->col[c].erase(r)) rows_in[r].erase(c);
    } else {
      auto [it, fresh] = m->col[c].insert_or_assign(r, std::move(v));
      (void)it;
      if (fresh) rows_in[r].insert(c);
    }
  }

  // Rescale a column by the rational unit that makes its entries primitive
  // integer polynomials. Unit column scalings leave the invariant factors
  // alone and keep the coefficient size of the Euclidean steps flat.
  void normalize_col(std::uint32_t c) {
    auto& col = m->col[c];
    if (col.empty()) return;
    mpz_class num_g = 0, den_l = 1;
    for (const auto& [r, p] : col)
      for (const auto& [e, q] : p.terms()) {
        num_g = gcd(num_g, q.get_num());
        den_l = lcm(den_l, q.get_den());
      }
    Rat scale(den_l, num_g);
    scale.canonicalize();
    if (scale == 1) return;
    for (auto& [r, p] : col) p = p.scaled(scale);
  }

  // col_j -= q * col_c
  void col_axpy(std::uint32_t j, const LaurentPoly& q, std::uint32_t c) {
    for (const auto& [r, v] : m->col[c]) {
      const LaurentPoly* cur = at(r, j);
      LaurentPoly nv = cur ? *cur - q * v : -(q * v);
      set(r, j, std::move(nv));
    }
    normalize_col(j);
  }

  // row_i -= q * row_r
  void row_axpy(std::uint32_t i, const LaurentPoly& q, std::uint32_t r) {
    std::vector<std::uint32_t> cols(rows_in[r].begin(), rows_in[r].end());
    for (std::uint32_t j : cols) {
      const LaurentPoly* src = at(r, j);
      if (!src) continue;
      const LaurentPoly* cur = at(i, j);
      LaurentPoly nv = cur ? *cur - q * *src : -(q * *src);
      set(i, j, std::move(nv));
      normalize_col(j);
    }
  }

  // Smallest-width live entry; ties broken by the Markowitz fill estimate
  // (row count − 1)(column count − 1), then by position. Returns false when
  // the live submatrix is zero.
  bool best_pivot(std::uint32_t& pr, std::uint32_t& pc) const {
    long best_w = std::numeric_limits<long>::max();
    std::uint64_t best_fill = ~std::uint64_t{0};
    bool found = false;
    for (std::uint32_t c = 0; c < m->cols; ++c) {
      if (!col_live[c]) continue;
      std::uint64_t clen = m->col[c].size();
      if (clen == 0) continue;
      for (const auto& [r, p] : m->col[c]) {
        if (!row_live[r]) continue;
        long w = entry_width(p);
        if (w > best_w) continue;
        std::uint64_t fill = (rows_in[r].size() - 1) * (clen - 1);
        if (w < best_w || fill < best_fill) {
          best_w = w;
          best_fill = fill;
          pr = r;
          pc = c;
          found = true;
        }
      }
    }
    return found;
  }
};

bool divides(const LaurentPoly& d, const LaurentPoly& x) {
  return divide_exact(x, d).has_value();
}

}  // namespace

std::vector<LaurentPoly> snf_invariant_factors(PolyMatrix m) {
  Workspace ws(m);
  std::vector<LaurentPoly> diag;

  std::uint32_t pr = 0, pc = 0;
  while (ws.best_pivot(pr, pc)) {
    // Shrink the pivot until it divides its whole row and column. Every
    // remainder replacement strictly reduces width, so this terminates.
    for (;;) {
      const LaurentPoly pivot = *ws.at(pr, pc);
      bool shrunk = false;

      std::vector<std::uint32_t> cols(ws.rows_in[pr].begin(), ws.rows_in[pr].end());
      for (std::uint32_t j : cols) {
        if (j == pc || !ws.col_live[j]) continue;
        const LaurentPoly* e = ws.at(pr, j);
        if (!e) continue;
        LaurentPoly q, r;
        divmod(*e, pivot, q, r);
        if (r.is_zero()) continue;
        ws.col_axpy(j, q, pc);  // leaves the remainder at (pr, j)
        pc = j;
        shrunk = true;
        break;
      }
      if (shrunk) continue;

      bool shrunk_row = false;
      std::vector<std::pair<std::uint32_t, LaurentPoly>> colents(m.col[pc].begin(),
                                                                 m.col[pc].end());
      for (const auto& [i, e] : colents) {
        if (i == pr || !ws.row_live[i]) continue;
        LaurentPoly q, r;
        divmod(e, pivot, q, r);
        if (r.is_zero()) continue;
        ws.row_axpy(i, q, pr);  // leaves the remainder at (i, pc)
        pr = i;
        shrunk_row = true;
        break;
      }
      if (shrunk_row) continue;
      break;
    }

    // Clear the pivot row by column operations, then the pivot column by row
    // operations (which by then touch only the pivot column).
    const LaurentPoly pivot = *ws.at(pr, pc);
    std::vector<std::uint32_t> cols(ws.rows_in[pr].begin(), ws.rows_in[pr].end());
    for (std::uint32_t j : cols) {
      if (j == pc || !ws.col_live[j]) continue;
      const LaurentPoly* e = ws.at(pr, j);
      if (!e) continue;
      auto q = divide_exact(*e, pivot);
      if (!q) throw InternalError("pivot stopped dividing its row");
      ws.col_axpy(j, *q, pc);
    }
    // Quotients here are immune to the unit rescaling done by row_axpy:
    // entry and pivot share the column, so any rescale cancels in e/pivot.
    std::vector<std::pair<std::uint32_t, LaurentPoly>> colents(m.col[pc].begin(),
                                                               m.col[pc].end());
    for (const auto& [i, e] : colents) {
      if (i == pr || !ws.row_live[i]) continue;
      auto q = divide_exact(e, pivot);
      if (!q) throw InternalError("pivot stopped dividing its column");
      ws.row_axpy(i, *q, pr);
    }

    diag.push_back(pivot.unit_normalized());
    ws.row_live[pr] = 0;
    ws.col_live[pc] = 0;
  }

  // Fold the diagonal into a divisibility chain: (a, b) -> (gcd, lcm)
  // preserves the product and only moves factors downward.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (divides(diag[i], diag[j])) continue;
        LaurentPoly g = gcd_poly(diag[i], diag[j]);
        LaurentPoly l = *divide_exact(diag[i] * diag[j], g);
        diag[i] = g.unit_normalized();
        diag[j] = l.unit_normalized();
        changed = true;
      }
  }
  return diag;
}

}  // namespace salv
