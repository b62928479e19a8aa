#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intdecomp/barcode.hpp"
#include "intdecomp/errors.hpp"
#include "intdecomp/exactla.hpp"
#include "intdecomp/lattice.hpp"
#include "intdecomp/matrix.hpp"

namespace intdecomp {

/// Position in the extended index set: 0 is the virtual minimum, size()+1 the
/// virtual maximum, 1..size() the actual grades in increasing order.
using Pos = std::size_t;

/// Strictly increasing grade labels plus virtual -inf / +inf endpoints.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::int64_t> grades) : grades_(std::move(grades)) {
    for (std::size_t i = 1; i < grades_.size(); ++i)
      if (grades_[i - 1] >= grades_[i]) throw DimensionMismatch("grades must be strictly increasing");
  }

  std::size_t size() const { return grades_.size(); }
  Pos min() const { return 0; }
  Pos max() const { return grades_.size() + 1; }
  bool is_virtual(Pos p) const { return p == min() || p == max(); }
  std::int64_t label(Pos p) const {
    if (is_virtual(p) || p > max()) throw DimensionMismatch("virtual index has no grade label");
    return grades_[p - 1];
  }
  std::optional<Pos> find(std::int64_t g) const {
    auto it = std::lower_bound(grades_.begin(), grades_.end(), g);
    if (it == grades_.end() || *it != g) return std::nullopt;
    return static_cast<Pos>(it - grades_.begin()) + 1;
  }
  const std::vector<std::int64_t>& grades() const { return grades_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::int64_t> grades_;
};

/// Set of positions; the virtual endpoints are always treated as members by
/// the decomposition code.
using GradeSet = std::set<Pos>;

/// Representatives i_1 < ... < i_r realizing every kernel out of and image
/// into f_a. k, s, t are indices into `reps` of a itself and the nearest
/// members of J below and above a.
struct CriticalIndexSet {
  std::vector<Pos> reps;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t t = 0;

  std::size_t size() const { return reps.size(); }
};

template <EuclideanRing R>
struct CokernelWitness {
  Pos a = 0;
  Pos b = 0;
  std::vector<typename R::Element> torsion;
};

/// Pointwise free, finitely generated persistence module over a finite
/// totally ordered index set. Only consecutive structure maps are stored;
/// composites and the kernel/image lattice are memoized in a shared cache.
template <EuclideanRing R>
class PersistenceModule {
 public:
  using Element = typename R::Element;

  PersistenceModule(R ring, IndexSet index, std::vector<std::size_t> ranks, std::vector<Matrix<R>> steps)
      : ring_(std::move(ring)), index_(std::move(index)), cache_(std::make_shared<Cache>()) {
    const std::size_t n = index_.size();
    if (ranks.size() != n) throw DimensionMismatch("one rank per grade required");
    if (steps.size() != (n == 0 ? 0 : n - 1)) throw DimensionMismatch("one map per consecutive grade pair required");
    ranks_.assign(n + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ranks_[i + 1] = ranks[i];
    // steps_[p] maps position p to p + 1, including the virtual ends.
    steps_.reserve(n + 1);
    for (Pos p = 0; p <= n; ++p) {
      if (p == 0 || p == n) {
        steps_.emplace_back(ring_, ranks_[p + 1], ranks_[p]);
        continue;
      }
      const Matrix<R>& m = steps[p - 1];
      if (m.rows() != ranks_[p + 1] || m.cols() != ranks_[p])
        throw DimensionMismatch("map " + std::to_string(index_.label(p)) + " -> " +
                                std::to_string(index_.label(p + 1)) + " has wrong shape");
      steps_.push_back(m);
    }
  }

  const R& ring() const { return ring_; }
  const IndexSet& index() const { return index_; }
  Pos min() const { return index_.min(); }
  Pos max() const { return index_.max(); }
  std::size_t rank_at(Pos p) const { return ranks_.at(p); }

  /// Stored map from position p to p + 1.
  const Matrix<R>& step(Pos p) const { return steps_.at(p); }

  /// f(a <= b).
  const Matrix<R>& structure_map(Pos a, Pos b) const {
    if (a > b) throw BadOrder();
    if (b > max()) throw DimensionMismatch("index out of range");
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->maps.find({a, b}); it != cache_->maps.end()) return it->second;
    }
    Matrix<R> m = a == b ? Matrix<R>::identity(ring_, ranks_[a])
                  : (index_.is_virtual(a) || index_.is_virtual(b))
                      ? Matrix<R>(ring_, ranks_[b], ranks_[a])
                      : steps_[b - 1] * structure_map(a, b - 1);
    std::lock_guard lock(cache_->mutex);
    return cache_->maps.try_emplace({a, b}, std::move(m)).first->second;
  }

  /// Ker[a, y]: kernel of f(a <= y) when a <= y, zero otherwise.
  const Submodule<R>& ker_sub(Pos a, Pos y) const {
    return memo(cache_->kernels, {a, y}, [&] {
      if (y <= a) return Submodule<R>::zero(ring_, ranks_[a]);
      return Submodule<R>::span(kernel_basis(structure_map(a, y)));
    });
  }

  /// Im[x, a]: image of f(x <= a) when x <= a, all of f_a otherwise.
  const Submodule<R>& im_sub(Pos x, Pos a) const {
    return memo(cache_->images, {x, a}, [&] {
      if (x >= a) return Submodule<R>::full(ring_, ranks_[a]);
      return Submodule<R>::span(structure_map(x, a));
    });
  }

  /// IK_a[x, y] = Im[x, a] ∩ Ker[a, y].
  const Submodule<R>& ik(Pos a, Pos x, Pos y) const {
    return memo(cache_->iks, {a, x, y}, [&] { return intersect(im_sub(x, a), ker_sub(a, y)); });
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<Pos, Pos>, Matrix<R>> maps;
    std::map<std::vector<Pos>, Submodule<R>> kernels, images, iks;
  };

  template <class Fn>
  const Submodule<R>& memo(std::map<std::vector<Pos>, Submodule<R>>& table, std::vector<Pos> key, Fn&& make) const {
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = table.find(key); it != table.end()) return it->second;
    }
    Submodule<R> value = make();
    std::lock_guard lock(cache_->mutex);
    return table.try_emplace(std::move(key), std::move(value)).first->second;
  }

  R ring_;
  IndexSet index_;
  std::vector<std::size_t> ranks_;
  std::vector<Matrix<R>> steps_;
  std::shared_ptr<Cache> cache_;
};

/// Chooses representatives for every distinct Ker[a, y] (y >= a) and
/// Im[x, a] (x <= a). A class realized by members of J is represented by the
/// member nearest to a; otherwise by a itself when a realizes it, else by the
/// smallest grade realizing it. The endpoints are always included.
template <EuclideanRing R>
CriticalIndexSet critical_index_set(const PersistenceModule<R>& f, Pos a, const GradeSet& j) {
  auto in_j = [&](Pos p) { return p == f.min() || p == f.max() || j.count(p) > 0; };
  if (in_j(a)) throw InconsistentInput("focal index already belongs to J");

  std::set<Pos> reps{f.min(), a, f.max()};

  // Kernels grow with y, so each class is a contiguous run.
  for (Pos y = a + 1; y <= f.max();) {
    const Submodule<R>& cls = f.ker_sub(a, y);
    Pos end = y;
    std::optional<Pos> first_j;
    while (end <= f.max() && f.ker_sub(a, end) == cls) {
      if (!first_j && in_j(end)) first_j = end;
      ++end;
    }
    if (first_j)
      reps.insert(*first_j);
    else if (!cls.is_zero())
      reps.insert(y);
    y = end;
  }

  // Images grow with x as well.
  for (Pos x = f.min(); x < a;) {
    const Submodule<R>& cls = f.im_sub(x, a);
    Pos end = x;
    std::optional<Pos> last_j;
    while (end < a && f.im_sub(end, a) == cls) {
      if (in_j(end)) last_j = end;
      ++end;
    }
    if (last_j)
      reps.insert(*last_j);
    else if (!cls.is_full())
      reps.insert(x);
    x = end;
  }

  CriticalIndexSet out;
  out.reps.assign(reps.begin(), reps.end());
  for (std::size_t i = 0; i < out.reps.size(); ++i) {
    Pos p = out.reps[i];
    if (p == a) out.k = i;
    if (p < a && in_j(p)) out.s = i;
    if (p > a && in_j(p) && out.t == 0) out.t = i;
  }
  return out;
}

/// First pair (a, b), lexicographically, whose structure map has a cokernel
/// with torsion; nullopt if every cokernel is free. Pairs whose image repeats
/// an already tested image into the same target are skipped.
template <EuclideanRing R>
std::optional<CokernelWitness<R>> check_free_cokernels(const PersistenceModule<R>& f) {
  const std::size_t n = f.index().size();
  std::map<Pos, std::vector<const Submodule<R>*>> tested;
  for (Pos a = 1; a <= n; ++a)
    for (Pos b = a + 1; b <= n; ++b) {
      const Submodule<R>& img = f.im_sub(a, b);
      auto& seen = tested[b];
      if (std::any_of(seen.begin(), seen.end(), [&](const Submodule<R>* s) { return *s == img; })) continue;
      seen.push_back(&img);
      auto inv = cokernel_invariants(f.structure_map(a, b));
      if (!inv.is_free()) return CokernelWitness<R>{a, b, std::move(inv.torsion)};
    }
  return std::nullopt;
}

struct DisguiseOptions {
  /// Bound on the entries of the triangular factors; 0 gives the identity.
  long max_entry = 3;
};

namespace detail {

inline long draw(std::mt19937_64& rng, long bound) {
  return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
}

template <EuclideanRing R>
Matrix<R> random_unimodular(const R& ring, std::size_t n, long bound, std::mt19937_64& rng) {
  Matrix<R> lower = Matrix<R>::identity(ring, n), upper = Matrix<R>::identity(ring, n);
  if (bound == 0) return lower;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() & 1) lower(i, i) = ring.from_int(-1);
    for (std::size_t j = 0; j < i; ++j) lower(i, j) = ring.from_int(draw(rng, bound));
    for (std::size_t j = i + 1; j < n; ++j) upper(i, j) = ring.from_int(draw(rng, bound));
  }
  return lower * upper;
}

}  // namespace detail

/// Direct sum of the interval modules in `bars` over the given grades, with
/// every f_g conjugated by a seeded random unimodular matrix.
template <EuclideanRing R>
PersistenceModule<R> disguise(const R& ring, const std::vector<std::int64_t>& grades, const Barcode& bars,
                              std::uint64_t seed, DisguiseOptions opts = {}) {
  IndexSet index(grades);
  for (const auto& [bar, m] : bars) {
    if (!index.find(bar.birth) || (bar.death && !index.find(*bar.death)) || (bar.death && *bar.death <= bar.birth))
      throw DimensionMismatch("bar " + to_string(bar) + " does not fit the grade list");
  }
  // One column per bar copy alive at each grade.
  std::vector<std::vector<std::pair<Interval, std::size_t>>> alive(grades.size());
  for (std::size_t g = 0; g < grades.size(); ++g)
    for (const auto& [bar, m] : bars)
      if (bar.alive_at(grades[g]))
        for (std::size_t c = 0; c < m; ++c) alive[g].emplace_back(bar, c);

  std::mt19937_64 rng(seed);
  std::vector<Matrix<R>> disguises;
  std::vector<std::size_t> ranks;
  for (std::size_t g = 0; g < grades.size(); ++g) {
    ranks.push_back(alive[g].size());
    disguises.push_back(detail::random_unimodular(ring, alive[g].size(), opts.max_entry, rng));
  }

  std::vector<Matrix<R>> steps;
  for (std::size_t g = 0; g + 1 < grades.size(); ++g) {
    Matrix<R> e(ring, ranks[g + 1], ranks[g]);
    for (std::size_t c = 0; c < alive[g].size(); ++c) {
      auto it = std::find(alive[g + 1].begin(), alive[g + 1].end(), alive[g][c]);
      if (it != alive[g + 1].end()) e(static_cast<std::size_t>(it - alive[g + 1].begin()), c) = ring.one();
    }
    steps.push_back(disguises[g + 1] * e * inverse_unimodular(disguises[g]));
  }
  return PersistenceModule<R>(ring, std::move(index), std::move(ranks), std::move(steps));
}

/// Reduces every structure map of an integer module modulo p.
inline PersistenceModule<PrimeField> reduce_mod(const PersistenceModule<Integers>& f, const PrimeField& field) {
  std::vector<std::size_t> ranks;
  std::vector<Matrix<PrimeField>> steps;
  const std::size_t n = f.index().size();
  for (Pos p = 1; p <= n; ++p) ranks.push_back(f.rank_at(p));
  for (Pos p = 1; p < n; ++p) steps.push_back(reduce_mod(f.step(p), field));
  return PersistenceModule<PrimeField>(field, f.index(), std::move(ranks), std::move(steps));
}

}  // namespace intdecomp
