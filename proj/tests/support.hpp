#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "intdecomp/decomp.hpp"
#include "intdecomp/homology.hpp"
#include "intdecomp/persmod.hpp"

namespace support {

using namespace intdecomp;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Matrix<Integers> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  Integers zz;
  Matrix<Integers> m(zz, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

struct BarcodeSample {
  std::vector<std::int64_t> grades;
  Barcode bars;
};

// Up to max_grades strictly increasing grades and up to max_bars bars on them.
inline BarcodeSample random_barcode(Rng& rng, std::size_t max_grades = 8, std::size_t max_bars = 6) {
  BarcodeSample out;
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_grades)));
  std::int64_t g = uniform(rng, -5, 5);
  for (std::size_t i = 0; i < n; ++i) {
    out.grades.push_back(g);
    g += uniform(rng, 1, 3);
  }
  const long bars = uniform(rng, 0, static_cast<long>(max_bars));
  for (long b = 0; b < bars; ++b) {
    const auto birth = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    const auto death = static_cast<std::size_t>(uniform(rng, static_cast<long>(birth) + 1, static_cast<long>(n)));
    out.bars.add({out.grades[birth], death == n ? std::nullopt : std::optional(out.grades[death])});
  }
  return out;
}

// Interval module with one bar step scaled by `factor`, then conjugated by
// random unimodular matrices. Returns nullopt if no bar crosses a step.
inline std::optional<PersistenceModule<Integers>> torsion_injected(Rng& rng, const BarcodeSample& s, long factor) {
  Integers zz;
  auto plain = disguise(zz, s.grades, s.bars, rng(), DisguiseOptions{0});
  std::vector<std::pair<Pos, std::pair<std::size_t, std::size_t>>> ones;
  for (Pos p = 1; p < s.grades.size(); ++p) {
    const auto& m = plain.step(p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!zz.is_zero(m(i, j))) ones.push_back({p, {i, j}});
  }
  if (ones.empty()) return std::nullopt;
  const auto& [step, at] = ones[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ones.size()) - 1))];

  const std::size_t n = s.grades.size();
  std::vector<Matrix<Integers>> conj;
  std::vector<std::size_t> ranks;
  for (Pos p = 1; p <= n; ++p) {
    ranks.push_back(plain.rank_at(p));
    conj.push_back(detail::random_unimodular(zz, plain.rank_at(p), 3, rng));
  }
  std::vector<Matrix<Integers>> steps;
  for (Pos p = 1; p < n; ++p) {
    Matrix<Integers> e = plain.step(p);
    if (p == step) e(at.first, at.second) = factor;
    steps.push_back(conj[p] * e * inverse_unimodular(conj[p - 1]));
  }
  return PersistenceModule<Integers>(zz, IndexSet(s.grades), std::move(ranks), std::move(steps));
}

inline std::vector<Pos> shuffled_order(Rng& rng, std::size_t n) {
  std::vector<Pos> order(n);
  std::iota(order.begin(), order.end(), Pos{1});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// Face-closed random filtration: random edges and triangles (and, with
// probability 1/mobius_odds, a Moebius band) over at most 8 vertices and 4 grades.
inline SimplicialFiltration random_filtration(Rng& rng, long mobius_odds = 4) {
  const auto nv = static_cast<std::uint32_t>(uniform(rng, 3, 8));
  const long ng = uniform(rng, 1, 4);
  std::map<std::vector<std::uint32_t>, std::int64_t> cells;
  auto put = [&](std::vector<std::uint32_t> v, std::int64_t g) {
    std::sort(v.begin(), v.end());
    auto [it, fresh] = cells.emplace(v, g);
    if (!fresh) it->second = std::min(it->second, g);
  };
  auto vertex = [&] { return static_cast<std::uint32_t>(uniform(rng, 0, nv - 1)); };

  std::int64_t noise_from = 1;
  if (nv >= 5 && uniform(rng, 1, mobius_odds) == 1) {
    // Moebius band on five relabelled vertices, boundary first.
    std::vector<std::uint32_t> lab(nv);
    std::iota(lab.begin(), lab.end(), 0u);
    std::shuffle(lab.begin(), lab.end(), rng);
    // Interior strictly after the boundary when there is room for it.
    const std::int64_t g1 = uniform(rng, 1, std::max(1L, ng - 1)), g2 = uniform(rng, std::min(g1 + 1, ng), ng);
    for (std::uint32_t i = 0; i < 5; ++i) {
      put({lab[i], lab[(i + 2) % 5]}, g1);
      put({lab[i], lab[(i + 1) % 5]}, g2);
      put({lab[i], lab[(i + 1) % 5], lab[(i + 2) % 5]}, g2);
    }
    // Earlier noise would usually realize the core circle before the band closes.
    noise_from = g2;
  }
  const long edges = uniform(rng, 0, 10), triangles = uniform(rng, 0, 6);
  for (long e = 0; e < edges; ++e) {
    auto a = vertex(), b = vertex();
    if (a != b) put({a, b}, uniform(rng, noise_from, ng));
  }
  for (long t = 0; t < triangles; ++t) {
    auto a = vertex(), b = vertex(), c = vertex();
    if (a != b && b != c && a != c) put({a, b, c}, uniform(rng, noise_from, ng));
  }
  // Close under faces: a face takes the smallest grade of its cofaces.
  for (std::size_t d = 3; d-- > 1;)
    for (auto [v, g] : std::map(cells))
      if (v.size() == d + 1)
        for (std::size_t i = 0; i < v.size(); ++i) {
          auto face = v;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          put(face, g);
        }
  for (std::uint32_t v = 0; v < nv; ++v) put({v}, cells.count({v}) ? cells.at({v}) : 1);

  std::vector<Simplex> out;
  for (const auto& [v, g] : cells) out.push_back({v, g, 0});
  return SimplicialFiltration(std::move(out));
}

}  // namespace support
