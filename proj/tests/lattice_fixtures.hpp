#pragma once

#include <random>

#include "gammalat/lattices.hpp"
#include "group_fixtures.hpp"

namespace fixtures {

using gammalat::IntMatrix;
using gammalat::LatticePtr;

// ℤ⁻ over C₂.
inline LatticePtr sign_lattice(const gammalat::GroupPtr& c2) {
  return gammalat::matrix_lattice(c2, {IntMatrix::from_rows({{-1}})});
}

// ℤ[G] / ⟨Σg⟩.
inline LatticePtr norm_quotient(const gammalat::GroupPtr& g) {
  auto reg = gammalat::regular_lattice(g);
  IntMatrix sigma(reg->rank(), 1);
  for (std::size_t i = 0; i < reg->rank(); ++i) sigma(i, 0) = 1;
  auto one = gammalat::trivial_lattice(g, 1);
  return gammalat::quotient_lattice(gammalat::make_map(one, reg, sigma)).lattice;
}

// Kernel of the augmentation ℤ[G] → ℤ.
inline LatticePtr augmentation_ideal(const gammalat::GroupPtr& g) {
  auto reg = gammalat::regular_lattice(g);
  IntMatrix aug(1, reg->rank());
  for (std::size_t i = 0; i < reg->rank(); ++i) aug(0, i) = 1;
  return gammalat::kernel_lattice(gammalat::make_map(reg, gammalat::trivial_lattice(g, 1), aug)).source;
}

// Random unimodular matrix built from elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    long k = static_cast<long>(rng() % 3) - 1;
    if (k == 0) k = 1;
    u.add_row_multiple(a, b, k);
  }
  if (rng() % 2) u.swap_rows(0, n - 1);
  return u;
}

// The same lattice in the basis given by the columns of u.
inline LatticePtr conjugate(const LatticePtr& m, const IntMatrix& u) {
  IntMatrix ui = gammalat::inverse_unimodular(u);
  std::vector<IntMatrix> mats;
  for (const auto& a : m->generator_matrices()) mats.push_back(ui * a * u);
  return gammalat::matrix_lattice(m->group(), mats);
}

// A small zoo of lattices over the fixture groups, small enough for the
// full-system reference solvers.
inline std::vector<std::pair<std::string, LatticePtr>> small_lattices() {
  std::vector<std::pair<std::string, LatticePtr>> out;
  auto c2 = cyclic(2);
  out.push_back({"Z-", sign_lattice(c2)});
  out.push_back({"Z[C2]", gammalat::regular_lattice(c2)});
  out.push_back({"Z+Z- over C2", gammalat::direct_sum(gammalat::trivial_lattice(c2, 1), sign_lattice(c2))});
  auto c3 = cyclic(3);
  out.push_back({"I_C3", augmentation_ideal(c3)});
  out.push_back({"J_C3", norm_quotient(c3)});
  auto c4 = cyclic(4);
  out.push_back({"J_C4", norm_quotient(c4)});
  out.push_back({"C4 rotation", gammalat::matrix_lattice(c4, {IntMatrix::from_rows({{0, -1}, {1, 0}})})});
  auto v4 = klein4();
  out.push_back({"J_V4", norm_quotient(v4)});
  out.push_back({"I_V4", augmentation_ideal(v4)});
  out.push_back({"Z[V4]", gammalat::regular_lattice(v4)});
  out.push_back({"V4 signs", gammalat::matrix_lattice(v4, {IntMatrix::from_rows({{-1, 0}, {0, 1}}),
                                                           IntMatrix::from_rows({{1, 0}, {0, -1}})})});
  auto s3 = symmetric3();
  out.push_back({"J_S3", norm_quotient(s3)});
  out.push_back({"S3 natural", gammalat::coset_lattice(s3->subgroup_classes()[1])});
  out.push_back({"S3 sign", gammalat::matrix_lattice(s3, {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{-1}})})});
  return out;
}

}  // namespace fixtures
