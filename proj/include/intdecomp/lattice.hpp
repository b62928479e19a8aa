#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "intdecomp/errors.hpp"
#include "intdecomp/exactla.hpp"
#include "intdecomp/matrix.hpp"

namespace intdecomp {

/// A finitely generated submodule of R^n, stored by a basis in column Hermite
/// form. Two submodules are equal iff their basis matrices are identical.
template <EuclideanRing R>
class Submodule {
 public:
  using Element = typename R::Element;

  /// Span of the columns of `generators` (which may be dependent).
  static Submodule span(const Matrix<R>& generators) {
    auto h = column_hermite(generators, false);
    Matrix<R> basis = h.form.column_range(0, h.rank());
    return Submodule(generators.rows(), std::move(basis), std::move(h.pivot_rows));
  }
  static Submodule zero(const R& ring, std::size_t ambient) {
    return Submodule(ambient, Matrix<R>(ring, ambient, 0), {});
  }
  static Submodule full(const R& ring, std::size_t ambient) {
    std::vector<std::size_t> pivots(ambient);
    for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
    return Submodule(ambient, Matrix<R>::identity(ring, ambient), std::move(pivots));
  }

  const R& ring() const { return basis_.ring(); }
  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  bool is_full() const { return basis_.cols() == ambient_ && *this == full(ring(), ambient_); }
  const Matrix<R>& basis() const { return basis_; }

  /// Coordinates of v in this basis, if v lies in the submodule.
  std::optional<Vector<R>> coordinates(const Vector<R>& v) const {
    if (v.size() != ambient_) throw AmbientMismatch();
    const R& r = ring();
    Vector<R> residual = v;
    Vector<R> y(rank(), r.zero());
    for (std::size_t c = 0; c < rank(); ++c) {
      const std::size_t row = pivots_[c];
      if (r.is_zero(residual[row])) continue;
      if (!r.divides(basis_(row, c), residual[row])) return std::nullopt;
      y[c] = r.div_exact(residual[row], basis_(row, c));
      for (std::size_t i = row; i < ambient_; ++i)
        if (!r.is_zero(basis_(i, c))) residual[i] -= y[c] * basis_(i, c);
    }
    for (const auto& x : residual)
      if (!r.is_zero(x)) return std::nullopt;
    return y;
  }

  bool contains(const Vector<R>& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Submodule(std::size_t ambient, Matrix<R> basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_;
  Matrix<R> basis_;
  std::vector<std::size_t> pivots_;
};

template <EuclideanRing R>
Submodule<R> sum(const Submodule<R>& a, const Submodule<R>& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch();
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  return Submodule<R>::span(hconcat(a.basis(), b.basis()));
}

// A ∩ B = A * (top block of ker [A | -B]).
template <EuclideanRing R>
Submodule<R> intersect(const Submodule<R>& a, const Submodule<R>& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch();
  if (a.is_zero() || b.is_zero()) return Submodule<R>::zero(a.ring(), a.ambient_rank());
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  Matrix<R> k = kernel_basis(hconcat(a.basis(), -b.basis()));
  return Submodule<R>::span(a.basis() * k.row_range(0, a.rank()));
}

/// {x : M x ∈ B}
template <EuclideanRing R>
Submodule<R> preimage(const Matrix<R>& m, const Submodule<R>& b) {
  if (m.rows() != b.ambient_rank()) throw AmbientMismatch();
  if (b.is_full()) return Submodule<R>::full(m.ring(), m.cols());
  Matrix<R> k = kernel_basis(hconcat(m, -b.basis()));
  return Submodule<R>::span(k.row_range(0, m.cols()));
}

/// Image M(A) as a submodule of the target.
template <EuclideanRing R>
Submodule<R> image_of(const Matrix<R>& m, const Submodule<R>& a) {
  if (m.cols() != a.ambient_rank()) throw AmbientMismatch();
  return Submodule<R>::span(m * a.basis());
}

/// True iff B ⊆ A.
template <EuclideanRing R>
bool contains(const Submodule<R>& a, const Submodule<R>& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch();
  for (std::size_t j = 0; j < b.rank(); ++j)
    if (!a.contains(b.basis().column(j))) return false;
  return true;
}

/// Coordinates of A's basis with respect to B's basis (B.rank x A.rank).
template <EuclideanRing R>
Matrix<R> coordinates_in(const Submodule<R>& a, const Submodule<R>& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch();
  Matrix<R> c(a.ring(), b.rank(), a.rank());
  for (std::size_t j = 0; j < a.rank(); ++j) {
    auto x = b.coordinates(a.basis().column(j));
    if (!x) throw NotContained();
    c.set_column(j, *x);
  }
  return c;
}

/// True iff B/A is free, for A ⊆ B.
template <EuclideanRing R>
bool is_free_quotient(const Submodule<R>& a, const Submodule<R>& b) {
  Matrix<R> c = coordinates_in(a, b);
  return cokernel_invariants(c).is_free();
}

/// C with A ⊕ C = B. Completes A's B-coordinates through the unimodular
/// factor of their Smith decomposition.
template <EuclideanRing R>
Submodule<R> complement(const Submodule<R>& a, const Submodule<R>& b) {
  Matrix<R> c = coordinates_in(a, b);
  if (a.rank() == b.rank()) {
    if (!cokernel_invariants(c).is_free()) throw NotFreeQuotient();
    return Submodule<R>::zero(a.ring(), a.ambient_rank());
  }
  auto snf = smith(c);
  for (const auto& d : snf.invariant_factors)
    if (!a.ring().is_unit(d)) throw NotFreeQuotient();
  // c = U^{-1} S V^{-1}; the trailing columns of U^{-1} complete the leading ones.
  Matrix<R> uinv = inverse_unimodular(snf.u);
  Matrix<R> tail = uinv.column_range(a.rank(), b.rank());
  return Submodule<R>::span(b.basis() * tail);
}

/// Matrix of M restricted to src, written in dst's basis.
template <EuclideanRing R>
Matrix<R> restrict_map(const Matrix<R>& m, const Submodule<R>& src, const Submodule<R>& dst) {
  if (m.cols() != src.ambient_rank() || m.rows() != dst.ambient_rank()) throw AmbientMismatch();
  Matrix<R> images = m * src.basis();
  Matrix<R> out(m.ring(), dst.rank(), src.rank());
  for (std::size_t j = 0; j < src.rank(); ++j) {
    auto x = dst.coordinates(images.column(j));
    if (!x) throw ImageEscapesTarget();
    out.set_column(j, *x);
  }
  return out;
}

}  // namespace intdecomp
