#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "intdecomp/homology.hpp"
#include "intdecomp/io.hpp"
#include "support.hpp"

using namespace intdecomp;
using M = Matrix<Integers>;

namespace {

Integers zz;

SimplicialFiltration load(const std::string& name) { return io::read_filtration_file(std::string(TEST_DATA_DIR) + "/" + name); }

SimplicialFiltration make(std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> cells) {
  std::vector<Simplex> out;
  for (auto& [g, v] : cells) out.push_back({v, g, 0});
  return SimplicialFiltration(std::move(out));
}

Barcode bars(std::initializer_list<Interval> xs) {
  Barcode b;
  for (const auto& x : xs) b.add(x);
  return b;
}

// dim H_n(K_g; GF(p)) from ranks of reduced boundary matrices.
std::size_t betti_mod_p(const SimplicialFiltration& k, std::size_t n, std::int64_t g, long p) {
  PrimeField f(p);
  const std::size_t cells = k.count(n, g);
  const std::size_t rn = rank(reduce_mod(boundary_matrix(k, n, g, zz), f));
  const std::size_t rn1 = rank(reduce_mod(boundary_matrix(k, n + 1, g, zz), f));
  return cells - rn - rn1;
}

}  // namespace

TEST_CASE("filtration validation") {
  CHECK_THROWS_AS(make({{1, {0, 1}}}), ParseError);               // missing faces
  CHECK_THROWS_AS(make({{1, {0}}, {1, {1}}, {0, {0, 1}}}), ParseError);  // face later than simplex
  CHECK_THROWS_AS(make({{1, {0}}, {1, {0}}}), ParseError);         // duplicate
  CHECK_THROWS_AS(make({{1, {0, 0}}}), ParseError);                // repeated vertex
  auto k = make({{2, {1}}, {1, {0}}, {2, {1, 0}}});
  CHECK(k.grades() == std::vector<std::int64_t>{1, 2});
  CHECK(k.simplices(1)[0].vertices == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("boundary_matrix") {
  auto pt = make({{0, {0}}});
  CHECK(boundary_matrix(pt, 1, 0, zz).cols() == 0);

  auto edge = make({{0, {0}}, {0, {1}}, {0, {0, 1}}});
  CHECK(boundary_matrix(edge, 1, 0, zz) == M::from_rows(zz, {{-1}, {1}}));

  auto circle = load("circle.txt");
  auto d1 = boundary_matrix(circle, 1, 1, zz);
  CHECK(d1.rows() == 3);
  CHECK(d1.cols() == 3);
  CHECK(rank(d1) == 2);
  CHECK((d1 * boundary_matrix(circle, 2, 1, zz)).is_zero());
}

TEST_CASE("nested boundary matrices") {
  support::Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    auto k = support::random_filtration(rng);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto& gs = k.grades();
      for (std::size_t a = 0; a < gs.size(); ++a)
        for (std::size_t b = a; b < gs.size(); ++b) {
          auto small = boundary_matrix(k, n, gs[a], zz);
          auto big = boundary_matrix(k, n, gs[b], zz);
          REQUIRE(big.row_range(0, small.rows()).column_range(0, small.cols()) == small);
        }
      auto top = boundary_matrix(k, n, gs.back(), zz);
      auto below = boundary_matrix(k, n - 1, gs.back(), zz);
      if (n > 1) REQUIRE((below * top).is_zero());
    }
  }
}

TEST_CASE("homology_snapshot") {
  auto circle = load("circle.txt");
  auto h = homology_snapshot(circle, 1, 1, zz);
  CHECK(h.betti == 1);
  CHECK(h.torsion.empty());
  REQUIRE(h.free_basis);
  CHECK(h.free_basis->cols() == 1);

  auto pt = make({{0, {0}}});
  CHECK(homology_snapshot(pt, 1, 0, zz).betti == 0);
  CHECK(homology_snapshot(pt, 2, 0, zz).betti == 0);
  CHECK(homology_snapshot(pt, 0, 0, zz).betti == 1);

  auto mobius = load("mobius.txt");
  auto m = homology_snapshot(mobius, 1, 2, zz);
  CHECK(m.betti == 1);
  CHECK(m.torsion.empty());
  CHECK(mobius.count(0, 2) == 5);
  CHECK(mobius.count(1, 2) == 10);
  CHECK(mobius.count(2, 2) == 5);

  auto rp2 = load("rp2.txt");
  auto r = homology_snapshot(rp2, 1, 1, zz);
  CHECK(r.betti == 0);
  CHECK(r.torsion == std::vector<mpz_class>{2});
  CHECK_FALSE(r.free_basis);
}

TEST_CASE("persistent_homology_module") {
  auto circle = load("circle.txt");
  auto f = persistent_homology_module(circle, 1, zz);
  CHECK(f.index().grades() == std::vector<std::int64_t>{0, 1, 2});
  CHECK(f.rank_at(1) == 0);
  CHECK(f.rank_at(2) == 1);
  CHECK(f.step(2) == M::from_rows(zz, {{1}}));

  auto mobius = load("mobius.txt");
  auto g = persistent_homology_module(mobius, 1, zz);
  REQUIRE(g.rank_at(1) == 1);
  REQUIRE(g.rank_at(2) == 1);
  CHECK(abs(g.step(1)(0, 0)) == 2);

  auto empty = persistent_homology_module(SimplicialFiltration{}, 1, zz);
  CHECK(empty.index().size() == 0);

  CHECK_THROWS_AS(persistent_homology_module(load("rp2.txt"), 1, zz), TorsionHomology);
}

TEST_CASE("field_diagram") {
  CHECK(field_diagram(load("circle.txt"), 1, 2) == bars({{1, std::nullopt}}));
  auto mobius = load("mobius.txt");
  CHECK(field_diagram(mobius, 1, 2) == bars({{1, 2}, {2, std::nullopt}}));
  CHECK(field_diagram(mobius, 1, 3) == bars({{1, std::nullopt}}));
  CHECK(field_diagram(mobius, 0, 2) == bars({{1, std::nullopt}}));
}

TEST_CASE("relative_homology_invariants") {
  auto mobius = load("mobius.txt");
  auto same = relative_homology_invariants(mobius, 2, 2, 1);
  CHECK(same.betti == 0);
  CHECK(same.torsion.empty());

  auto disk = make({{1, {0}}, {1, {1}}, {1, {2}}, {1, {0, 1}}, {1, {1, 2}}, {1, {0, 2}}, {2, {0, 1, 2}}});
  auto d = relative_homology_invariants(disk, 1, 2, 2);
  CHECK(d.betti == 1);
  CHECK(d.torsion.empty());

  auto m = relative_homology_invariants(mobius, 1, 2, 1);
  CHECK(m.betti == 0);
  CHECK(m.torsion == std::vector<mpz_class>{2});

  CHECK_THROWS_AS(relative_homology_invariants(mobius, 2, 1, 1), BadOrder);
}

TEST_CASE("field_independence_report") {
  auto c = field_independence_report(load("circle.txt"), 1, {2, 3});
  CHECK(c.hypothesis_holds);
  CHECK(c.all_true());

  auto m = field_independence_report(load("mobius.txt"), 1, {2, 3});
  CHECK(m.hypothesis_holds);
  CHECK(m.decomposable == Verdict::False);
  CHECK(m.cokernels_free == Verdict::False);
  CHECK(m.relative_free == Verdict::False);
  CHECK(m.diagrams_equal == Verdict::False);
  REQUIRE(m.relative_witness);
  CHECK(m.relative_witness->a == 1);
  CHECK(m.relative_witness->b == 2);
  CHECK(m.relative_witness->torsion == std::vector<std::string>{"2"});
  REQUIRE(m.cokernel_witness);
  CHECK(m.cokernel_witness->torsion == std::vector<std::string>{"2"});
  REQUIRE(m.diagram_witness);
  CHECK(m.diagram_witness->first == "2");
  CHECK(m.diagram_witness->second == "3");
  CHECK(m.max_invariant_factor == "2");

  auto r = field_independence_report(load("rp2.txt"), 1, {2, 3});
  CHECK_FALSE(r.hypothesis_holds);
  CHECK(r.hypothesis_grade == std::int64_t{1});
  CHECK(r.hypothesis_torsion == std::vector<std::string>{"2"});
  CHECK(r.decomposable == Verdict::NotApplicable);
  CHECK(r.diagrams_equal == Verdict::NotApplicable);
}

TEST_CASE("universal coefficients and Betti consistency") {
  support::Rng rng(52);
  int tested = 0;
  for (int i = 0; i < 80; ++i) {
    auto k = support::random_filtration(rng);
    for (std::size_t n : {0u, 1u}) {
      std::optional<PersistenceModule<Integers>> f;
      try {
        f.emplace(persistent_homology_module(k, n, zz));
      } catch (const TorsionHomology&) {
        continue;
      }
      bool lower_free = true;
      if (n > 0)
        for (auto g : k.grades()) lower_free = lower_free && homology_snapshot(k, n - 1, g, zz).torsion.empty();
      for (long p : {2, 3, 5}) {
        auto diagram = field_diagram(k, n, static_cast<std::uint64_t>(p));
        for (auto g : k.grades()) REQUIRE(diagram.alive_at(g) == betti_mod_p(k, n, g, p));
        if (lower_free) REQUIRE(diagram == decompose(reduce_mod(*f, PrimeField(p))).barcode);
      }
      ++tested;
    }
  }
  CHECK(tested > 50);
}
