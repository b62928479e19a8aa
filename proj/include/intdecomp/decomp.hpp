#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intdecomp/barcode.hpp"
#include "intdecomp/errors.hpp"
#include "intdecomp/exactla.hpp"
#include "intdecomp/lattice.hpp"
#include "intdecomp/matrix.hpp"
#include "intdecomp/persmod.hpp"

namespace intdecomp {

#ifdef NDEBUG
inline constexpr bool kVerifyByDefault = false;
#else
inline constexpr bool kVerifyByDefault = true;
#endif

/// Birth and death representatives of a basis vector, as 1-based positions
/// into the critical index set of its grade.
struct PQLabel {
  std::size_t p = 0;
  std::size_t q = 0;

  friend auto operator<=>(const PQLabel&, const PQLabel&) = default;
};

template <EuclideanRing R>
struct GradeBasis {
  Matrix<R> basis;              // square, unimodular; columns are the basis vectors
  std::vector<PQLabel> labels;  // one per column
  std::vector<Pos> reps;        // critical index set the labels refer to
};

/// Per-grade bases over a subset J of the actual grades. The virtual
/// endpoints belong to J implicitly and carry empty bases.
template <EuclideanRing R>
struct ConsistentBasis {
  std::map<Pos, GradeBasis<R>> grades;

  GradeSet domain() const {
    GradeSet j;
    for (const auto& [p, g] : grades) j.insert(p);
    return j;
  }
};

struct ExtendOptions {
  bool verify_input = kVerifyByDefault;
  bool verify_exactness = kVerifyByDefault;
};

/// True iff every entry is 0 or 1 and every row and column has at most one nonzero.
template <EuclideanRing R>
bool is_matching_matrix(const Matrix<R>& m) {
  const R& ring = m.ring();
  std::vector<bool> col_used(m.cols(), false);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool row_used = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& x = m(i, j);
      if (ring.is_zero(x)) continue;
      if (!ring.equal(x, ring.one()) || row_used || col_used[j]) return false;
      row_used = true;
      col_used[j] = true;
    }
  }
  return true;
}

/// (min p : v ∈ Im[i_p, j], min q : v ∈ Ker[j, i_q]), 1-based.
template <EuclideanRing R>
PQLabel label_vector(const PersistenceModule<R>& f, Pos j, const std::vector<Pos>& reps, const Vector<R>& v) {
  bool zero = true;
  for (const auto& x : v) zero = zero && f.ring().is_zero(x);
  if (zero) throw ZeroVector();
  PQLabel out;
  for (std::size_t n = 0; n < reps.size() && out.p == 0; ++n)
    if (f.im_sub(reps[n], j).contains(v)) out.p = n + 1;
  for (std::size_t n = 0; n < reps.size() && out.q == 0; ++n)
    if (f.ker_sub(j, reps[n]).contains(v)) out.q = n + 1;
  if (out.p == 0 || out.q == 0) throw InconsistentInput("representatives do not cover the vector's birth or death");
  return out;
}

template <EuclideanRing R>
PQLabel label_vector(const PersistenceModule<R>& f, Pos j, const CriticalIndexSet& s, const Vector<R>& v) {
  return label_vector(f, j, s.reps, v);
}

namespace detail {

template <EuclideanRing R>
Submodule<R> span_of_columns(const Matrix<R>& basis, const std::vector<std::size_t>& cols) {
  return Submodule<R>::span(basis.select_columns(cols));
}

/// IK_a[i_{p-1}, i_q] + IK_a[i_p, i_{q-1}] with 0-based p, q; a missing
/// predecessor contributes nothing.
template <EuclideanRing R>
Submodule<R> lower_ik(const PersistenceModule<R>& f, Pos a, const std::vector<Pos>& reps, std::size_t p,
                      std::size_t q) {
  Submodule<R> out = Submodule<R>::zero(f.ring(), f.rank_at(a));
  if (p > 0) out = sum(out, f.ik(a, reps[p - 1], reps[q]));
  if (q > 0) out = sum(out, f.ik(a, reps[p], reps[q - 1]));
  return out;
}

}  // namespace detail

/// The split pullback used when a basis group is inherited from above: one
/// preimage under f(a <= i_t) per column of `targets`, each inside IK_a[i_p, i_q].
template <EuclideanRing R>
struct PullbackSplit {
  Matrix<R> preimages;

  Submodule<R> span() const { return Submodule<R>::span(preimages); }
};

/// p, q are 0-based positions into s.reps with s.s < p <= s.k < s.t < q.
/// `targets` holds the basis vectors of A^{pq} at i_t as columns.
template <EuclideanRing R>
PullbackSplit<R> pullback_split(const PersistenceModule<R>& f, Pos a, const CriticalIndexSet& s, std::size_t p,
                                std::size_t q, const Matrix<R>& targets, bool verify_exactness) {
  if (!(s.s < p && p <= s.k && s.k < s.t && s.t < q)) throw CaseGap("pullback_split called outside its case");
  const Pos it = s.reps[s.t];
  const Matrix<R>& fmap = f.structure_map(a, it);
  const Submodule<R>& domain = f.ik(a, s.reps[p], s.reps[q]);

  if (verify_exactness) {
    // f(a <= i_t) maps IK_a[i_p, i_q] onto IK_{i_t}[i_p, i_q].
    if (!(image_of(fmap, domain) == f.ik(it, s.reps[p], s.reps[q])))
      throw ExactnessViolation("f(a <= i_t) is not onto IK_{i_t}[i_p, i_q]");
    // The kernel of the induced map onto A^{pq}_{i_t} is exactly the lower IK sum at a.
    Submodule<R> lower_t = detail::lower_ik(f, it, s.reps, p, q);
    Submodule<R> lower_a = detail::lower_ik(f, a, s.reps, p, q);
    if (!(intersect(preimage(fmap, lower_t), domain) == lower_a))
      throw ExactnessViolation("preimage of the lower IK sum at i_t differs from the lower IK sum at a");
  }

  PullbackSplit<R> out{Matrix<R>(f.ring(), f.rank_at(a), targets.cols())};
  if (targets.cols() == 0) return out;
  LinearSolver<R> solver(fmap * domain.basis());
  for (std::size_t c = 0; c < targets.cols(); ++c) {
    auto y = solver.solve(targets.column(c));
    if (!y) throw ExactnessViolation("basis vector at i_t has no preimage inside IK_a[i_p, i_q]");
    out.preimages.set_column(c, domain.basis().apply(*y));
  }
  return out;
}

/// Why `bases` fails to be a consistent basis with respect to f, if it does.
template <EuclideanRing R>
std::optional<std::string> find_inconsistency(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases) {
  std::map<Pos, Matrix<R>> inverses;
  for (const auto& [j, g] : bases.grades) {
    if (f.index().is_virtual(j) || j > f.max()) return "basis attached to a virtual or unknown index";
    if (g.basis.rows() != f.rank_at(j) || g.basis.cols() != f.rank_at(j) || g.labels.size() != g.basis.cols())
      return "basis at grade " + std::to_string(f.index().label(j)) + " has the wrong shape";
    try {
      inverses.emplace(j, inverse_unimodular(g.basis));
    } catch (const NotUnimodular&) {
      return "basis at grade " + std::to_string(f.index().label(j)) + " is not unimodular";
    }
  }
  for (auto a = bases.grades.begin(); a != bases.grades.end(); ++a)
    for (auto b = std::next(a); b != bases.grades.end(); ++b) {
      Matrix<R> rep = inverses.at(b->first) * f.structure_map(a->first, b->first) * a->second.basis;
      if (!is_matching_matrix(rep))
        return "structure map " + std::to_string(f.index().label(a->first)) + " -> " +
               std::to_string(f.index().label(b->first)) + " is not a matching matrix";
    }
  // Every kernel out of and image into f_j must be spanned by a subset of β_j.
  for (const auto& [j, g] : bases.grades) {
    auto spanned = [&](const Submodule<R>& target) {
      std::vector<std::size_t> inside;
      for (std::size_t c = 0; c < g.basis.cols(); ++c)
        if (target.contains(g.basis.column(c))) inside.push_back(c);
      return detail::span_of_columns(g.basis, inside) == target;
    };
    for (Pos y = j + 1; y <= f.max(); ++y)
      if (!spanned(f.ker_sub(j, y)))
        return "basis at grade " + std::to_string(f.index().label(j)) + " misses a kernel";
    for (Pos x = f.min(); x < j; ++x)
      if (!spanned(f.im_sub(x, j)))
        return "basis at grade " + std::to_string(f.index().label(j)) + " misses an image";
  }
  return std::nullopt;
}

template <EuclideanRing R>
bool verify_consistent(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases) {
  return !find_inconsistency(f, bases).has_value();
}

/// Appends a basis at `a` (not yet in the domain of `bases`) keeping the
/// family consistent with respect to f.
template <EuclideanRing R>
ConsistentBasis<R> extend_basis(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases, Pos a,
                                const ExtendOptions& opts = {}) {
  if (f.index().is_virtual(a) || a > f.max() || bases.grades.count(a))
    throw InconsistentInput("extension index must be an actual grade outside J");
  if (opts.verify_input)
    if (auto why = find_inconsistency(f, bases)) throw InconsistentInput(*why);

  const CriticalIndexSet s = critical_index_set(f, a, bases.domain());
  const std::size_t r = s.size();

  // Existing columns at an index of J grouped by their label relative to s.
  auto groups = [&](Pos j) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> out;
    auto it = bases.grades.find(j);
    if (it == bases.grades.end()) return out;
    const Matrix<R>& b = it->second.basis;
    for (std::size_t c = 0; c < b.cols(); ++c) {
      PQLabel l = label_vector(f, j, s.reps, b.column(c));
      out[{l.p - 1, l.q - 1}].push_back(c);
    }
    return out;
  };
  const Pos is = s.reps[s.s], it = s.reps[s.t];
  const auto below = groups(is);
  const auto above = groups(it);
  auto lookup = [](const auto& g, std::size_t p, std::size_t q) {
    auto found = g.find({p, q});
    return found == g.end() ? std::vector<std::size_t>{} : found->second;
  };

  std::vector<Vector<R>> columns;
  std::vector<PQLabel> labels;
  auto push = [&](const Matrix<R>& m, std::size_t p, std::size_t q) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      columns.push_back(m.column(c));
      labels.push_back({p + 1, q + 1});
    }
  };

  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q) {
      if (p > s.k || q <= s.k) continue;  // born after a or dead by a
      if (p <= s.s) {
        // Push forward from i_s.
        auto cols = lookup(below, p, q);
        if (cols.empty()) continue;
        push(f.structure_map(is, a) * bases.grades.at(is).basis.select_columns(cols), p, q);
      } else if (q > s.t) {
        // Pull back from i_t.
        auto cols = lookup(above, p, q);
        if (cols.empty()) continue;
        auto split = pullback_split(f, a, s, p, q, bases.grades.at(it).basis.select_columns(cols),
                                    opts.verify_exactness);
        push(split.preimages, p, q);
      } else if (q > s.k && q <= s.t) {
        // Nothing to inherit: take a fresh complement.
        const Submodule<R>& whole = f.ik(a, s.reps[p], s.reps[q]);
        Submodule<R> lower = detail::lower_ik(f, a, s.reps, p, q);
        try {
          push(complement(lower, whole).basis(), p, q);
        } catch (const NotFreeQuotient&) {
          throw NotFreeCokernel("no complement for (p, q) = (" + std::to_string(p + 1) + ", " +
                                std::to_string(q + 1) + ") at grade " + std::to_string(f.index().label(a)));
        }
      } else {
        throw CaseGap("no extension case applies to (p, q) = (" + std::to_string(p + 1) + ", " +
                      std::to_string(q + 1) + ")");
      }
    }

  Matrix<R> basis = Matrix<R>::from_columns(f.ring(), f.rank_at(a), columns);
  if (basis.cols() != f.rank_at(a) || !is_unimodular(basis))
    throw NotFreeCokernel("assembled vectors do not form a basis at grade " + std::to_string(f.index().label(a)));

  ConsistentBasis<R> out = bases;
  out.grades.emplace(a, GradeBasis<R>{std::move(basis), std::move(labels), s.reps});
  return out;
}

/// Checks the (p, q) partition at grade a against its stored labels: the
/// groups exhaust f_a, prefixes span kernels and images, each stored label is
/// the computed one, and each group complements the lower IK sum in IK_a[i_p, i_q].
template <EuclideanRing R>
std::optional<std::string> check_partition(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases, Pos a) {
  const GradeBasis<R>& g = bases.grades.at(a);
  const auto& reps = g.reps;
  const std::size_t r = reps.size();
  if (!is_unimodular(g.basis)) return "groups do not form a direct sum decomposition of f_a";
  for (std::size_t c = 0; c < g.basis.cols(); ++c)
    if (!(label_vector(f, a, reps, g.basis.column(c)) == g.labels[c])) return "stored label differs from computed label";
  for (std::size_t n = 1; n <= r; ++n) {
    std::vector<std::size_t> dead, born;
    for (std::size_t c = 0; c < g.labels.size(); ++c) {
      if (g.labels[c].q <= n) dead.push_back(c);
      if (g.labels[c].p <= n) born.push_back(c);
    }
    if (!(detail::span_of_columns(g.basis, dead) == f.ker_sub(a, reps[n - 1]))) return "kernel prefix mismatch";
    if (!(detail::span_of_columns(g.basis, born) == f.im_sub(reps[n - 1], a))) return "image prefix mismatch";
  }
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < g.labels.size(); ++c)
        if (g.labels[c].p == p + 1 && g.labels[c].q == q + 1) cols.push_back(c);
      Submodule<R> group = detail::span_of_columns(g.basis, cols);
      Submodule<R> lower = detail::lower_ik(f, a, reps, p, q);
      const Submodule<R>& whole = f.ik(a, reps[p], reps[q]);
      if (!(sum(group, lower) == whole) || group.rank() + lower.rank() != whole.rank())
        return "group (" + std::to_string(p + 1) + ", " + std::to_string(q + 1) + ") is not a complement";
    }
  return std::nullopt;
}

/// Follows matchings between consecutive grades; each maximal chain is a bar.
template <EuclideanRing R>
Barcode barcode_of(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases) {
  const std::size_t n = f.index().size();
  for (Pos p = 1; p <= n; ++p)
    if (!bases.grades.count(p)) throw InconsistentInput("basis missing at a grade");

  // next[p][c]: column at p + 1 that column c at p maps to.
  std::vector<std::vector<std::optional<std::size_t>>> next(n + 1);
  std::vector<std::vector<bool>> has_prev(n + 2);
  for (Pos p = 1; p <= n; ++p) has_prev[p].assign(f.rank_at(p), false);
  for (Pos p = 1; p < n; ++p) {
    Matrix<R> rep = inverse_unimodular(bases.grades.at(p + 1).basis) * f.step(p) * bases.grades.at(p).basis;
    if (!is_matching_matrix(rep)) throw InconsistentInput("consecutive map is not a matching matrix");
    next[p].assign(f.rank_at(p), std::nullopt);
    for (std::size_t i = 0; i < rep.rows(); ++i)
      for (std::size_t c = 0; c < rep.cols(); ++c)
        if (!f.ring().is_zero(rep(i, c))) {
          next[p][c] = i;
          has_prev[p + 1][i] = true;
        }
  }

  Barcode out;
  for (Pos p = 1; p <= n; ++p)
    for (std::size_t c = 0; c < f.rank_at(p); ++c) {
      if (has_prev[p][c]) continue;
      Pos last = p;
      std::size_t col = c;
      while (last < n && next[last][col]) {
        col = *next[last][col];
        ++last;
      }
      Interval bar{f.index().label(p), last == n ? std::nullopt : std::optional(f.index().label(last + 1))};
      out.add(bar);
    }
  return out;
}

/// Barcode from ranks of structure maps by inclusion-exclusion.
template <EuclideanRing R>
Barcode rank_barcode_oracle(const PersistenceModule<R>& f) {
  const std::size_t n = f.index().size();
  auto r = [&](Pos x, Pos y) -> long {
    if (f.index().is_virtual(x) || f.index().is_virtual(y)) return 0;
    return static_cast<long>(rank(f.structure_map(x, y)));
  };
  Barcode out;
  for (Pos b = 1; b <= n; ++b)
    for (Pos d = b + 1; d <= n + 1; ++d) {
      long m = r(b, d - 1) - r(b, d) - r(b - 1, d - 1) + r(b - 1, d);
      if (m < 0)
        throw NegativeMultiplicity("negative multiplicity for bar starting at " + std::to_string(f.index().label(b)));
      Interval bar{f.index().label(b), d == n + 1 ? std::nullopt : std::optional(f.index().label(d))};
      out.add(bar, static_cast<std::size_t>(m));
    }
  return out;
}

template <EuclideanRing R>
struct DecomposeOptions {
  /// Insertion order of the actual grades; empty means ascending.
  std::vector<Pos> order;
  ExtendOptions extend;
  /// Called after every extension with the new basis family and the grade added.
  std::function<void(const ConsistentBasis<R>&, Pos)> on_extend;
};

template <EuclideanRing R>
struct Decomposition {
  ConsistentBasis<R> bases;
  Barcode barcode;
};

template <EuclideanRing R>
[[noreturn]] void throw_not_decomposable(const PersistenceModule<R>& f, const CokernelWitness<R>& w) {
  std::vector<std::string> torsion;
  for (const auto& d : w.torsion) torsion.push_back(f.ring().to_string(d));
  throw NotDecomposable(f.index().label(w.a), f.index().label(w.b), std::move(torsion));
}

/// Interval decomposition by repeated extension from J = {-inf, +inf}.
template <EuclideanRing R>
Decomposition<R> decompose(const PersistenceModule<R>& f, const DecomposeOptions<R>& opts = {}) {
  if (auto w = check_free_cokernels(f)) throw_not_decomposable(f, *w);

  std::vector<Pos> order = opts.order;
  if (order.empty())
    for (Pos p = 1; p <= f.index().size(); ++p) order.push_back(p);
  if (order.size() != f.index().size() || GradeSet(order.begin(), order.end()).size() != order.size())
    throw InconsistentInput("insertion order must list every grade exactly once");

  ConsistentBasis<R> bases;
  for (Pos a : order) {
    bases = extend_basis(f, bases, a, opts.extend);
    if (opts.on_extend) opts.on_extend(bases, a);
  }
  Barcode bars = barcode_of(f, bases);
  return {std::move(bases), std::move(bars)};
}

}  // namespace intdecomp
