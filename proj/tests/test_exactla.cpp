#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "intdecomp/exactla.hpp"
#include "support.hpp"

using namespace intdecomp;
using M = Matrix<Integers>;

namespace {

Integers zz;

// Independent oracle: elementary operations recorded on the left and right
// must reproduce S from M.
bool replays(const SmithDecomposition<Integers>& d, const M& m) { return d.u * m * d.v == d.s; }

bool diagonal_chain(const SmithDecomposition<Integers>& d) {
  const auto& s = d.s;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  const std::size_t r = d.invariant_factors.size();
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) {
    if (i < r && (s(i, i) <= 0 || (i > 0 && !zz.divides(s(i - 1, i - 1), s(i, i))))) return false;
    if (i >= r && s(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("snf examples") {
  auto id = smith(M::identity(zz, 2));
  CHECK(id.s == M::identity(zz, 2));
  CHECK(id.invariant_factors == std::vector<mpz_class>{1, 1});

  auto two = smith(M::from_rows(zz, {{2}}));
  CHECK(two.s == M::from_rows(zz, {{2}}));

  auto m = M::from_rows(zz, {{2, 0}, {0, 3}});
  auto d = smith(m);
  CHECK(d.invariant_factors == std::vector<mpz_class>{1, 6});
  CHECK(replays(d, m));
  CHECK(is_unimodular(d.u));
  CHECK(is_unimodular(d.v));

  auto z = smith(M(zz, 0, 3));
  CHECK(z.invariant_factors.empty());
  CHECK(z.v == M::identity(zz, 3));
}

TEST_CASE("snf round trip on random matrices") {
  support::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto r = static_cast<std::size_t>(support::uniform(rng, 0, 8));
    const auto c = static_cast<std::size_t>(support::uniform(rng, 0, 8));
    M m = support::random_matrix(rng, r, c, 9);
    auto d = smith(m);
    REQUIRE(replays(d, m));
    REQUIRE(diagonal_chain(d));
    REQUIRE(is_unimodular(d.u));
    REQUIRE(is_unimodular(d.v));
  }
}

TEST_CASE("rank") {
  CHECK(rank(M(zz, 3, 3)) == 0);
  CHECK(rank(M::identity(zz, 4)) == 4);
  CHECK(rank(M::from_rows(zz, {{2, 4}, {1, 2}})) == 1);
}

TEST_CASE("rank over Z matches rank mod p away from invariant factors") {
  support::Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    M m = support::random_matrix(rng, 5, 6, 5);
    auto d = smith(m);
    for (long p : {2, 3, 5, 7, 11}) {
      bool divides_some = false;
      for (const auto& f : d.invariant_factors) divides_some = divides_some || mpz_divisible_ui_p(f.get_mpz_t(), p);
      if (divides_some) continue;
      PrimeField fp(p);
      REQUIRE(rank(reduce_mod(m, fp)) == d.invariant_factors.size());
    }
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(M::identity(zz, 3)).cols() == 0);
  CHECK(kernel_basis(M(zz, 2, 2)) == M::identity(zz, 2));

  auto k = kernel_basis(M::from_rows(zz, {{2, -4}}));
  REQUIRE(k.cols() == 1);
  // Enumerated small solutions: (2t, t); the basis must be +-(2, 1).
  CHECK(((k(0, 0) == 2 && k(1, 0) == 1) || (k(0, 0) == -2 && k(1, 0) == -1)));
  // Empty target: everything is in the kernel.
  CHECK(kernel_basis(M(zz, 0, 2)) == M::identity(zz, 2));
}

TEST_CASE("kernel is saturated and annihilated") {
  support::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    M m = support::random_matrix(rng, static_cast<std::size_t>(support::uniform(rng, 1, 5)),
                                 static_cast<std::size_t>(support::uniform(rng, 1, 7)), 6);
    M k = kernel_basis(m);
    REQUIRE(k.cols() == m.cols() - rank(m));
    REQUIRE((m * k).is_zero());
    for (const auto& f : smith(k).invariant_factors) REQUIRE(zz.is_unit(f));
  }
}

TEST_CASE("image_basis") {
  CHECK(image_basis(M(zz, 2, 3)).cols() == 0);
  CHECK(image_basis(M::identity(zz, 3)) == M::identity(zz, 3));
  CHECK(image_basis(M::from_rows(zz, {{2, 4}})) == M::from_rows(zz, {{2}}));
}

TEST_CASE("cokernel_invariants") {
  auto id = cokernel_invariants(M::identity(zz, 2));
  CHECK(id.free_rank == 0);
  CHECK(id.is_free());

  auto two = cokernel_invariants(M::from_rows(zz, {{2}}));
  CHECK(two.free_rank == 0);
  CHECK(two.torsion == std::vector<mpz_class>{2});

  auto wide = cokernel_invariants(M::from_rows(zz, {{1, 0, 0}, {0, 2, 0}}));
  CHECK(wide.free_rank == 0);
  CHECK(wide.torsion == std::vector<mpz_class>{2});

  auto tall = cokernel_invariants(M::from_rows(zz, {{3}, {0}}));
  CHECK(tall.free_rank == 1);
  CHECK(tall.torsion == std::vector<mpz_class>{3});
}

TEST_CASE("solve") {
  auto x = solve(M::identity(zz, 2), Vector<Integers>{5, -3});
  REQUIRE(x);
  CHECK(*x == Vector<Integers>{5, -3});
  CHECK_FALSE(solve(M::from_rows(zz, {{2}}), Vector<Integers>{1}));

  PrimeField f3(3);
  auto y = solve(reduce_mod(M::from_rows(zz, {{2}}), f3), Vector<PrimeField>{f3.one()});
  REQUIRE(y);
  CHECK((*y)[0].value == 2);
}

TEST_CASE("solve agrees with multiplication") {
  support::Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    M m = support::random_matrix(rng, 4, 3, 4);
    Vector<Integers> x0 = support::random_matrix(rng, 3, 1, 4).column(0);
    auto b = m.apply(x0);
    auto x = solve(m, b);
    REQUIRE(x);
    REQUIRE(m.apply(*x) == b);
  }
}

TEST_CASE("inverse_unimodular") {
  CHECK(inverse_unimodular(M::identity(zz, 3)) == M::identity(zz, 3));
  CHECK(inverse_unimodular(M::from_rows(zz, {{1, 1}, {0, 1}})) == M::from_rows(zz, {{1, -1}, {0, 1}}));
  CHECK_THROWS_AS(inverse_unimodular(M::from_rows(zz, {{2}})), NotUnimodular);
  CHECK_THROWS_AS(inverse_unimodular(M(zz, 2, 3)), NotUnimodular);

  support::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto n = static_cast<std::size_t>(support::uniform(rng, 0, 6));
    M u = detail::random_unimodular(zz, n, 3, rng);
    REQUIRE(u * inverse_unimodular(u) == M::identity(zz, n));
  }
}

TEST_CASE("column hermite form is canonical") {
  support::Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    M m = support::random_matrix(rng, 4, 5, 5);
    M u = detail::random_unimodular(zz, 5, 2, rng);
    auto a = column_hermite(m);
    auto b = column_hermite(m * u);
    REQUIRE(a.form == b.form);
    REQUIRE(m * a.transform == a.form);
  }
}
