#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "intdecomp/errors.hpp"
#include "intdecomp/matrix.hpp"
#include "intdecomp/ring.hpp"

namespace intdecomp {

/// Column Hermite form H = M * transform.
///
/// H is in column echelon form: column j < rank has its pivot at
/// pivot_rows[j], strictly increasing in j, and is zero above it. Pivots are
/// unit-normalized and the entries of a pivot row left of the pivot are
/// reduced modulo the pivot. Columns rank.. of H are zero, so the matching
/// columns of the transform span the kernel.
template <EuclideanRing R>
struct ColumnHermite {
  Matrix<R> form;
  Matrix<R> transform;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
};

template <EuclideanRing R>
ColumnHermite<R> column_hermite(const Matrix<R>& m, bool with_transform = true) {
  const R& ring = m.ring();
  const std::size_t rows = m.rows(), cols = m.cols();
  ColumnHermite<R> out{m, with_transform ? Matrix<R>::identity(ring, cols) : Matrix<R>(ring, 0, 0), {}};
  Matrix<R>& h = out.form;
  Matrix<R>& v = out.transform;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    h.swap_cols(a, b);
    if (with_transform) v.swap_cols(a, b);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const typename R::Element& f) {
    h.add_col_multiple(dst, src, f);
    if (with_transform) v.add_col_multiple(dst, src, f);
  };

  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < cols; ++i) {
    bool has_pivot = false;
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t j = c; j < cols; ++j)
        if (!ring.is_zero(h(i, j)) && (!best || ring.norm_less(h(i, j), h(i, *best)))) best = j;
      if (!best) break;
      swap_cols(*best, c);
      bool clean = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (ring.is_zero(h(i, j))) continue;
        auto q = ring.divmod(h(i, j), h(i, c)).quot;
        add_col(j, c, -q);
        if (!ring.is_zero(h(i, j))) clean = false;
      }
      if (clean) {
        has_pivot = true;
        break;
      }
    }
    if (!has_pivot) continue;

    auto u = ring.unit_part(h(i, c));
    h.scale_col(c, u);
    if (with_transform) v.scale_col(c, u);
    for (std::size_t j = 0; j < c; ++j) {
      if (ring.is_zero(h(i, j))) continue;
      auto q = ring.divmod(h(i, j), h(i, c)).quot;
      add_col(j, c, -q);
    }
    out.pivot_rows.push_back(i);
    ++c;
  }
  return out;
}

/// S = U * M * V with U, V unimodular and S diagonal.
template <EuclideanRing R>
struct SmithDecomposition {
  Matrix<R> u;
  Matrix<R> s;
  Matrix<R> v;
  std::vector<typename R::Element> invariant_factors;  // nonzero diagonal of S, in order
};

// Minimal-norm pivoting with row/column elimination; a pivot that fails to
// divide the remaining block pulls the offending row in and restarts.
template <EuclideanRing R>
SmithDecomposition<R> smith(const Matrix<R>& m) {
  const R& ring = m.ring();
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithDecomposition<R> out{Matrix<R>::identity(ring, rows), m, Matrix<R>::identity(ring, cols), {}};
  Matrix<R>& a = out.s;
  Matrix<R>& u = out.u;
  Matrix<R>& v = out.v;

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    bool found = false;
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (!ring.is_zero(a(i, j)) && (!best || ring.norm_less(a(i, j), a(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      found = true;
      a.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      a.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (ring.is_zero(a(i, t))) continue;
        typename R::Element q = -ring.divmod(a(i, t), a(t, t)).quot;
        a.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (!ring.is_zero(a(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (ring.is_zero(a(t, j))) continue;
        typename R::Element q = -ring.divmod(a(t, j), a(t, t)).quot;
        a.add_col_multiple(j, t, q);
        v.add_col_multiple(j, t, q);
        if (!ring.is_zero(a(t, j))) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!ring.divides(a(t, t), a(i, j))) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row_multiple(t, *bad_row, ring.one());
      u.add_row_multiple(t, *bad_row, ring.one());
    }
    if (!found) break;
    auto unit = ring.unit_part(a(t, t));
    a.scale_row(t, unit);
    u.scale_row(t, unit);
    out.invariant_factors.push_back(a(t, t));
  }
  return out;
}

template <EuclideanRing R>
std::size_t rank(const Matrix<R>& m) {
  return column_hermite(m, false).rank();
}

/// Columns form a basis of ker(M), in column Hermite form. The kernel is
/// always saturated in the source module.
template <EuclideanRing R>
Matrix<R> kernel_basis(const Matrix<R>& m) {
  auto h = column_hermite(m, true);
  Matrix<R> k = h.transform.column_range(h.rank(), m.cols());
  return column_hermite(k, false).form.column_range(0, k.cols());
}

/// Columns form a basis of the column span of M, in column Hermite form.
template <EuclideanRing R>
Matrix<R> image_basis(const Matrix<R>& m) {
  auto h = column_hermite(m, false);
  return h.form.column_range(0, h.rank());
}

template <EuclideanRing R>
struct CokernelInvariants {
  std::size_t free_rank = 0;
  std::vector<typename R::Element> torsion;

  bool is_free() const { return torsion.empty(); }
};

template <EuclideanRing R>
CokernelInvariants<R> cokernel_invariants(const Matrix<R>& m) {
  auto snf = smith(m);
  CokernelInvariants<R> out;
  out.free_rank = m.rows() - snf.invariant_factors.size();
  for (const auto& d : snf.invariant_factors)
    if (!m.ring().is_unit(d)) out.torsion.push_back(d);
  return out;
}

/// Reusable solver for M x = b; computes the Hermite form once.
template <EuclideanRing R>
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix<R>& m) : hermite_(column_hermite(m, true)), rows_(m.rows()) {}

  std::optional<Vector<R>> solve(const Vector<R>& b) const {
    if (b.size() != rows_) throw DimensionMismatch("right-hand side has wrong length");
    const Matrix<R>& h = hermite_.form;
    const R& ring = h.ring();
    Vector<R> residual = b;
    Vector<R> y(h.cols(), ring.zero());
    for (std::size_t c = 0; c < hermite_.rank(); ++c) {
      const std::size_t r = hermite_.pivot_rows[c];
      if (ring.is_zero(residual[r])) continue;
      if (!ring.divides(h(r, c), residual[r])) return std::nullopt;
      y[c] = ring.div_exact(residual[r], h(r, c));
      for (std::size_t i = r; i < rows_; ++i)
        if (!ring.is_zero(h(i, c))) residual[i] -= y[c] * h(i, c);
    }
    for (const auto& x : residual)
      if (!ring.is_zero(x)) return std::nullopt;
    return hermite_.transform.apply(y);
  }

 private:
  ColumnHermite<R> hermite_;
  std::size_t rows_;
};

template <EuclideanRing R>
std::optional<Vector<R>> solve(const Matrix<R>& m, const Vector<R>& b) {
  return LinearSolver<R>(m).solve(b);
}

template <EuclideanRing R>
Matrix<R> inverse_unimodular(const Matrix<R>& m) {
  const R& ring = m.ring();
  if (m.rows() != m.cols()) throw NotUnimodular();
  auto snf = smith(m);
  if (snf.invariant_factors.size() != m.rows()) throw NotUnimodular();
  Matrix<R> sinv(ring, m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!ring.is_unit(snf.invariant_factors[i])) throw NotUnimodular();
    sinv(i, i) = ring.unit_inverse(snf.invariant_factors[i]);
  }
  return snf.v * sinv * snf.u;
}

template <EuclideanRing R>
bool is_unimodular(const Matrix<R>& m) {
  if (m.rows() != m.cols()) return false;
  auto snf = smith(m);
  if (snf.invariant_factors.size() != m.rows()) return false;
  for (const auto& d : snf.invariant_factors)
    if (!m.ring().is_unit(d)) return false;
  return true;
}

}  // namespace intdecomp
