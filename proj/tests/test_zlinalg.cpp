#include <doctest.h>

#include <random>

#include "gammalat/zlinalg.hpp"

using namespace gammalat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// gcd of all k x k minors, by brute force over row and column subsets.
Integer minor_gcd(const IntMatrix& a, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rs, cs;
  auto for_subsets = [](std::size_t n, std::size_t k, auto&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      fn(idx);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  for_subsets(a.rows(), k, [&](const std::vector<std::size_t>& r) {
    for_subsets(a.cols(), k, [&](const std::vector<std::size_t>& c) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(r[i], c[j]);
      Integer det = sub.determinant();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
    });
  });
  return g;
}

bool is_unit(const Integer& d) { return d == 1 || d == -1; }

}  // namespace

TEST_CASE("smith form of small examples") {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(s.diagonal() == std::vector<Integer>{2, 4});
  CHECK(minor_gcd(IntMatrix::from_rows({{2, 4}, {6, 8}}), 1) == 2);
  CHECK(minor_gcd(IntMatrix::from_rows({{2, 4}, {6, 8}}), 2) == 8);

  auto id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.S.is_identity());

  auto z = smith_normal_form(IntMatrix(2, 2));
  CHECK(z.S.is_zero());
  CHECK(z.rank == 0);
}

TEST_CASE("smith form agrees with determinantal divisors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, 9);
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.S);
    CHECK(is_unit(s.U.determinant()));
    CHECK(is_unit(s.V.determinant()));
    auto d = s.diagonal();
    Integer prod = 1;
    for (std::size_t k = 0; k < d.size(); ++k) {
      CHECK(d[k] > 0);
      if (k + 1 < d.size()) CHECK(d[k + 1] % d[k] == 0);
      prod *= d[k];
      CHECK(prod == minor_gcd(a, k + 1));
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j || i >= s.rank) CHECK(s.S(i, j) == 0);
  }
}

TEST_CASE("smith invariants on larger random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    IntMatrix a = random_matrix(rng, r, c, 9);
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.S);
    CHECK(is_unit(s.U.determinant()));
    CHECK(is_unit(s.V.determinant()));
    CHECK(smith_invariants(a) == s.diagonal());
    auto right = smith_right(a);
    CHECK(right.diagonal == s.diagonal());
    CHECK(is_unit(right.V.determinant()));
  }
}

TEST_CASE("hermite basis") {
  CHECK(hermite_basis(IntMatrix::from_rows({{2, 0}, {0, 3}, {1, 1}})) == IntMatrix::identity(2));
  CHECK(hermite_basis(IntMatrix::from_rows({{2, 0}, {0, 2}})) == IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK(hermite_basis(std::vector<IntVector>{}, 2).rows() == 0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix a = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 5, 9);
    IntMatrix h = hermite_basis(a);
    std::size_t col = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      while (h(i, col) == 0) ++col;
      CHECK(h(i, col) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h(k, col) >= 0);
        CHECK(h(k, col) < h(i, col));
      }
      for (std::size_t k = i + 1; k < h.rows(); ++k) CHECK(h(k, col) == 0);
      ++col;
    }
    // same span: each side's rows are integer combinations of the other's
    for (std::size_t i = 0; i < a.rows(); ++i)
      CHECK(solve_integer_system(h.transpose(), a.row(i)).solvable());
    for (std::size_t i = 0; i < h.rows(); ++i)
      CHECK(solve_integer_system(a.transpose(), h.row(i)).solvable());
    // canonical: permuting and combining the input rows does not change it
    IntMatrix mixed = IntMatrix::vstack(a, a.row_range(0, 1).scaled(3));
    mixed.swap_rows(0, mixed.rows() - 1);
    CHECK(hermite_basis(mixed) == h);
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix::from_rows({{1, -1}})) == IntMatrix::from_rows({{1}, {1}}));
  CHECK(kernel_basis(IntMatrix::from_rows({{2}})).cols() == 0);
  CHECK(kernel_basis(IntMatrix::from_rows({{2, -4}})) == IntMatrix::from_rows({{2}, {1}}));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
    IntMatrix a = random_matrix(rng, r, c, 9);
    IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    auto s = smith_normal_form(a);
    CHECK(k.cols() == c - s.rank);
    for (const auto& d : smith_invariants(k)) CHECK(d == 1);
    CHECK(kernel_basis_raw(a).cols() == k.cols());
    CHECK(hermite_basis(kernel_basis_raw(a).transpose()).transpose() == k);
  }
  // Sparse entries in {0, ±1, ±2}: unit pivots eliminate most rows and the
  // rest go through the transform route.
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 12;
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) a(i, j) = static_cast<long>(rng() % 5) - 2;
    IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(hermite_basis(kernel_basis_raw(a).transpose()).transpose() == k);
  }
}

TEST_CASE("solve integer systems") {
  auto r1 = solve_integer_system(IntMatrix::from_rows({{2}}), int_vector({4}));
  REQUIRE(r1.solvable());
  CHECK(*r1.solution == int_vector({2}));
  auto r2 = solve_integer_system(IntMatrix::from_rows({{2}}), int_vector({3}));
  CHECK_FALSE(r2.solvable());
  CHECK_FALSE(r2.obstruction.empty());
  auto a3 = IntMatrix::from_rows({{1, 2}, {2, 4}});
  auto r3 = solve_integer_system(a3, int_vector({1, 2}));
  REQUIRE(r3.solvable());
  CHECK(a3 * *r3.solution == int_vector({1, 2}));
  CHECK_THROWS_AS(solve_integer_system(a3, int_vector({1})), std::invalid_argument);

  // verdicts against an exhaustive box search
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = 1 + rng() % 2, c = 1 + rng() % 2;
    IntMatrix a = random_matrix(rng, r, c, 4);
    IntVector b(r);
    for (auto& x : b) x = static_cast<long>(rng() % 9) - 4;
    auto res = solve_integer_system(a, b);
    if (res.solvable()) {
      CHECK(a * *res.solution == b);
      continue;
    }
    bool found = false;
    for (long x = -20; x <= 20 && !found; ++x)
      for (long y = -20; y <= 20 && !found; ++y) {
        IntVector v = c == 1 ? int_vector({x}) : int_vector({x, y});
        if (a * v == b) found = true;
      }
    CHECK_FALSE(found);
  }

  // A unit pivot leaves 0 = 1 behind.
  auto r4 = solve_integer_system(IntMatrix::from_rows({{1}, {1}}), int_vector({1, 2}));
  CHECK_FALSE(r4.solvable());
  CHECK_FALSE(r4.obstruction.empty());

  // Sparse systems with many unit entries, against the Smith-form oracle:
  // solvable iff every d_i divides (U b)_i and U b vanishes past the rank.
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 2) a(i, j) = static_cast<long>(rng() % 5) - 2;
    IntVector b(r);
    if (rng() % 2) {
      IntVector x(c);
      for (auto& v : x) v = static_cast<long>(rng() % 7) - 3;
      b = a * x;
    } else {
      for (auto& v : b) v = static_cast<long>(rng() % 5) - 2;
    }
    auto s = smith_normal_form(a);
    IntVector ub = s.U * b;
    bool expected = true;
    for (std::size_t i = 0; i < ub.size(); ++i)
      if (i < s.rank ? ub[i] % s.S(i, i) != 0 : ub[i] != 0) expected = false;
    auto res = solve_integer_system(a, b);
    CHECK(res.solvable() == expected);
    if (res.solvable()) CHECK(a * *res.solution == b);
    else CHECK_FALSE(res.obstruction.empty());
  }
}

TEST_CASE("cokernel invariants") {
  auto c1 = cokernel_invariants(IntMatrix::diagonal({2, 4}));
  CHECK(c1.torsion == std::vector<Integer>{2, 4});
  CHECK(c1.free_rank == 0);
  CHECK(cokernel_invariants(IntMatrix(2, 0)).free_rank == 2);
  CHECK(cokernel_invariants(IntMatrix(2, 3)).free_rank == 2);
  CHECK(cokernel_invariants(IntMatrix::from_rows({{2, 4}, {6, 8}})).to_string() == "[2,4]");
  CHECK(AbelianGroupInvariants::from_cyclic_orders({6, 4, 1, 0}).to_string() == "[2,12]+Z^1");
}

TEST_CASE("no overflow at large magnitudes") {
  IntMatrix a(2, 2);
  a(0, 0) = Integer("123456789012345678901234567890");
  a(0, 1) = Integer("987654321098765432109876543210");
  a(1, 0) = 7;
  a(1, 1) = 11;
  auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.S);
  Integer det = a.determinant();
  if (det < 0) det = -det;
  CHECK(s.S(0, 0) * s.S(1, 1) == det);
}

TEST_CASE("saturation and sublattice coordinates") {
  auto sat = saturation_basis(IntMatrix::from_rows({{2}, {4}}));
  CHECK(sat.cols() == 1);
  CHECK((sat == IntMatrix::from_rows({{1}, {2}}) || sat == IntMatrix::from_rows({{-1}, {-2}})));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng() % 5, k = 1 + rng() % n;
    IntMatrix b = random_matrix(rng, n, k, 5);
    SublatticeBasis sb(saturation_basis(b));
    IntVector coeffs(b.cols());
    for (auto& x : coeffs) x = static_cast<long>(rng() % 7) - 3;
    IntVector v = b * coeffs;
    auto y = sb.coordinates(v);
    REQUIRE(y.has_value());
    CHECK(sb.basis() * *y == v);
  }
  SublatticeBasis even(IntMatrix::from_rows({{2, 0}, {0, 1}}));
  CHECK_FALSE(even.contains(int_vector({1, 0})));
  CHECK(even.contains(int_vector({4, 3})));
}

TEST_CASE("unimodular inverse") {
  IntMatrix a = IntMatrix::from_rows({{2, 1}, {1, 1}});
  CHECK(a * inverse_unimodular(a) == IntMatrix::identity(2));
}
