#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intdecomp/barcode.hpp"
#include "intdecomp/decomp.hpp"
#include "intdecomp/errors.hpp"
#include "intdecomp/exactla.hpp"
#include "intdecomp/lattice.hpp"
#include "intdecomp/matrix.hpp"
#include "intdecomp/persmod.hpp"

namespace intdecomp {

struct Simplex {
  std::vector<std::uint32_t> vertices;  // strictly increasing
  std::int64_t grade = 0;
  std::size_t line = 0;  // source line, for diagnostics

  std::size_t dim() const { return vertices.size() - 1; }
};

/// A finite simplicial filtration. Simplices of each dimension are kept in a
/// fixed order (grade, then vertex list), so the chain groups at a smaller
/// grade are leading blocks of those at a larger one.
class SimplicialFiltration {
 public:
  SimplicialFiltration() = default;
  /// Validates vertex sets, duplicates and face closure; throws ParseError.
  explicit SimplicialFiltration(std::vector<Simplex> simplices);

  /// Distinct grades in increasing order.
  const std::vector<std::int64_t>& grades() const { return grades_; }
  std::size_t max_dim() const { return by_dim_.empty() ? 0 : by_dim_.size() - 1; }
  bool empty() const { return grades_.empty(); }

  /// Simplices of dimension `dim` in the fixed order.
  const std::vector<Simplex>& simplices(std::size_t dim) const;

  /// Number of `dim`-simplices with grade <= g (all of them when g is absent).
  std::size_t count(std::size_t dim, std::optional<std::int64_t> g) const;

  /// Position of a simplex within its dimension, if present.
  std::optional<std::size_t> find(const std::vector<std::uint32_t>& vertices) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> lookup_;
  std::vector<std::int64_t> grades_;
};

/// ∂_n restricted to simplices with lo < grade <= hi (lo absent means no lower
/// bound). Rows are (n-1)-simplices, columns n-simplices; the face dropping
/// vertex i has coefficient (-1)^i.
template <EuclideanRing R>
Matrix<R> boundary_matrix(const SimplicialFiltration& k, std::size_t n, std::optional<std::int64_t> lo,
                          std::int64_t hi, const R& ring = R{}) {
  const std::size_t col_begin = lo ? k.count(n, *lo) : 0;
  const std::size_t col_end = std::max(col_begin, k.count(n, hi));
  if (n == 0) return Matrix<R>(ring, 0, col_end - col_begin);
  const std::size_t row_begin = lo ? k.count(n - 1, *lo) : 0;
  const std::size_t row_end = std::max(row_begin, k.count(n - 1, hi));
  Matrix<R> m(ring, row_end - row_begin, col_end - col_begin);
  const auto& cells = k.simplices(n);
  for (std::size_t c = col_begin; c < col_end; ++c) {
    const auto& v = cells[c].vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<std::uint32_t> face;
      face.reserve(v.size() - 1);
      for (std::size_t x = 0; x < v.size(); ++x)
        if (x != i) face.push_back(v[x]);
      std::size_t row = *k.find(face);
      if (row < row_begin) continue;  // face lies in the subcomplex being quotiented out
      m(row - row_begin, c - col_begin) = ring.from_int(i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

template <EuclideanRing R>
Matrix<R> boundary_matrix(const SimplicialFiltration& k, std::size_t n, std::int64_t g, const R& ring = R{}) {
  return boundary_matrix(k, n, std::nullopt, g, ring);
}

template <EuclideanRing R>
struct HomologySnapshot {
  std::int64_t grade = 0;
  std::size_t dim = 0;
  std::size_t betti = 0;
  std::vector<typename R::Element> torsion;
  Matrix<R> cycle_basis;                   // basis of Z_n in chain coordinates
  Matrix<R> boundary_basis;                // basis of B_n in chain coordinates
  std::optional<Matrix<R>> free_basis;     // complement of B_n in Z_n, when torsion is empty
};

/// Homology of a chain complex given by ∂_n (C_n -> C_{n-1}) and ∂_{n+1} (C_{n+1} -> C_n).
template <EuclideanRing R>
HomologySnapshot<R> homology_from_boundaries(const Matrix<R>& dn, const Matrix<R>& dn1) {
  const R& ring = dn.ring();
  Submodule<R> cycles = Submodule<R>::span(kernel_basis(dn));
  Submodule<R> boundaries = Submodule<R>::span(dn1);
  HomologySnapshot<R> out{0, 0, 0, {}, cycles.basis(), boundaries.basis(), std::nullopt};
  auto snf = smith(coordinates_in(boundaries, cycles));
  out.betti = cycles.rank() - snf.invariant_factors.size();
  for (const auto& d : snf.invariant_factors)
    if (!ring.is_unit(d)) out.torsion.push_back(d);
  if (out.torsion.empty()) out.free_basis = complement(boundaries, cycles).basis();
  return out;
}

/// H_n(K_g) with coefficients in R.
template <EuclideanRing R>
HomologySnapshot<R> homology_snapshot(const SimplicialFiltration& k, std::size_t n, std::int64_t g,
                                      const R& ring = R{}) {
  auto out = homology_from_boundaries(boundary_matrix(k, n, g, ring), boundary_matrix(k, n + 1, g, ring));
  out.grade = g;
  out.dim = n;
  return out;
}

template <EuclideanRing R>
std::vector<std::string> element_strings(const R& ring, const std::vector<typename R::Element>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(ring.to_string(x));
  return out;
}

/// The persistence module g -> H_n(K_g; R) with maps induced by inclusion,
/// indexed by the filtration's grades. Throws TorsionHomology if some H_n(K_g)
/// is not free.
template <EuclideanRing R>
PersistenceModule<R> persistent_homology_module(const SimplicialFiltration& k, std::size_t n, const R& ring = R{}) {
  const auto& grades = k.grades();
  std::vector<HomologySnapshot<R>> snaps;
  std::vector<std::size_t> ranks;
  for (std::int64_t g : grades) {
    snaps.push_back(homology_snapshot(k, n, g, ring));
    if (!snaps.back().torsion.empty()) throw TorsionHomology(g, n, element_strings(ring, snaps.back().torsion));
    ranks.push_back(snaps.back().betti);
  }
  std::vector<Matrix<R>> steps;
  for (std::size_t i = 0; i + 1 < grades.size(); ++i) {
    const Matrix<R>& from = *snaps[i].free_basis;
    const Matrix<R>& to = *snaps[i + 1].free_basis;
    LinearSolver<R> solver(hconcat(to, snaps[i + 1].boundary_basis));
    Matrix<R> step(ring, ranks[i + 1], ranks[i]);
    for (std::size_t c = 0; c < from.cols(); ++c) {
      Vector<R> chain = from.column(c);
      chain.resize(to.rows(), ring.zero());
      auto x = solver.solve(chain);
      if (!x) throw InconsistentInput("included cycle is not a cycle of the larger complex");
      for (std::size_t r = 0; r < ranks[i + 1]; ++r) step(r, c) = (*x)[r];
    }
    steps.push_back(std::move(step));
  }
  return PersistenceModule<R>(ring, IndexSet(grades), std::move(ranks), std::move(steps));
}

/// Persistence diagram of H_n over GF(p).
Barcode field_diagram(const SimplicialFiltration& k, std::size_t n, std::uint64_t p);

struct RelativeHomology {
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;
};

/// H_n(K_b, K_a; Z) for grades a <= b.
RelativeHomology relative_homology_invariants(const SimplicialFiltration& k, std::int64_t a, std::int64_t b,
                                              std::size_t n);

enum class Verdict { True, False, NotApplicable };

struct PairWitness {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<std::string> torsion;
};

struct FieldIndependenceReport {
  std::size_t dim = 0;
  std::vector<std::uint64_t> primes;

  bool hypothesis_holds = true;
  /// First grade where H_n or H_{n-1} has torsion.
  std::optional<std::int64_t> hypothesis_grade;
  std::size_t hypothesis_dim = 0;
  std::vector<std::string> hypothesis_torsion;

  Verdict decomposable = Verdict::NotApplicable;
  Verdict cokernels_free = Verdict::NotApplicable;
  Verdict relative_free = Verdict::NotApplicable;
  Verdict diagrams_equal = Verdict::NotApplicable;

  std::optional<PairWitness> cokernel_witness;
  std::optional<PairWitness> relative_witness;  // in dimension `dim`
  std::optional<std::pair<std::string, std::string>> diagram_witness;

  /// Diagram per coefficient field, keyed "2", "3", ..., "Q".
  std::map<std::string, Barcode> diagrams;
  /// Largest invariant factor over all structure maps of the integer module.
  std::string max_invariant_factor = "0";

  bool all_true() const {
    return decomposable == Verdict::True && cokernels_free == Verdict::True && relative_free == Verdict::True &&
           diagrams_equal == Verdict::True;
  }
};

FieldIndependenceReport field_independence_report(const SimplicialFiltration& k, std::size_t n,
                                                  const std::vector<std::uint64_t>& primes);

}  // namespace intdecomp
