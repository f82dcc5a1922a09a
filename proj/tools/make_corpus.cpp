// Writes the bundled corpus: one workspace per group, canonical JSON.
//
//   gammalat_make_corpus OUTDIR
//
// Per group: the trivial lattice, every rank-1 sign character, the regular
// lattice, every coset lattice, J = ℤ[G]/⟨Σg⟩ and its dual, direct sums of
// pairs of these, and disguised permutation lattices.  The output depends
// only on the fixed seeds below.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "gammalat/resolutions.hpp"
#include "lemmas.hpp"
#include "report.hpp"
#include "workspace.hpp"

using namespace gammalat;
using namespace gammalat::cli;

namespace {

struct GroupDef {
  std::string name;
  std::size_t degree;
  std::vector<Permutation> generators;
  std::size_t disguises;
};

// Left multiplications by i and j on Q₈ = {±1, ±i, ±j, ±k}, element
// 2u + s standing for (−1)^s·unit_u with units 1, i, j, k.
std::vector<Permutation> quaternion_generators() {
  // unit_a · unit_b = sign · unit_c
  const int table[4][4][2] = {{{1, 0}, {1, 1}, {1, 2}, {1, 3}},
                              {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
                              {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
                              {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}};
  std::vector<Permutation> out;
  for (int a : {1, 2}) {
    Permutation p(8);
    for (int x = 0; x < 8; ++x) {
      int u = x / 2, s = x % 2;
      int sign = table[a][u][0], c = table[a][u][1];
      int t = (sign < 0) != (s == 1) ? 1 : 0;
      p[static_cast<std::size_t>(x)] = 2 * c + t;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<GroupDef> corpus_groups() {
  return {
      {"C1", 1, {{0}}, 0},
      {"C2", 2, {{1, 0}}, 5},
      {"C3", 3, {{1, 2, 0}}, 5},
      {"C4", 4, {{1, 2, 3, 0}}, 5},
      {"V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, 5},
      {"C6", 6, {{1, 2, 3, 4, 5, 0}}, 5},
      {"S3", 3, {{1, 2, 0}, {1, 0, 2}}, 5},
      {"D4", 4, {{1, 2, 3, 0}, {3, 2, 1, 0}}, 5},
      {"Q8", 8, quaternion_generators(), 5},
      {"A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}}, 5},
      {"S4", 4, {{1, 2, 3, 0}, {1, 0, 2, 3}}, 5},
  };
}

// Pairwise sums are kept while the combined rank stays within this bound.
// Over S₄ the census and lemma suite on sums up to rank 24 already take
// minutes, hence the flat bound for the larger groups.
std::size_t max_sum_rank(std::size_t order) { return order <= 8 ? 2 * order : 12; }

std::string two_digits(std::size_t k) { return (k < 10 ? "0" : "") + std::to_string(k); }

IntMatrix max_norm_inverse_check(const IntMatrix& u, long bound, bool& ok) {
  IntMatrix ui = inverse_unimodular(u);
  ok = true;
  for (std::size_t i = 0; i < ui.rows(); ++i)
    for (std::size_t j = 0; j < ui.cols(); ++j)
      if (abs(ui(i, j)) > bound) ok = false;
  return ui;
}

bool signed_permutation(const IntMatrix& u) {
  for (std::size_t i = 0; i < u.rows(); ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (u(i, j) != 0) ++nz;
    if (nz != 1) return false;
  }
  return true;
}

Workspace corpus_workspace(const GroupDef& d) {
  Workspace w;
  w.degree = d.degree;
  w.generators = d.generators;
  auto g = group_from_generators(d.degree, d.generators);
  const std::size_t ngens = d.generators.size();

  std::vector<std::pair<std::string, std::size_t>> base;  // name, rank
  auto add = [&](const std::string& name, Spec s, std::size_t rank) {
    w.lattices[name] = std::move(s);
    base.push_back({name, rank});
  };

  add("trivial", spec::Trivial{1}, 1);

  // Nontrivial characters G → {±1}, by sign patterns on the generators.
  std::vector<spec::Matrices> signs;
  for (std::size_t mask = 1; mask < (std::size_t{1} << ngens); ++mask) {
    spec::Matrices m{1, {}};
    for (std::size_t j = 0; j < ngens; ++j) m.generator_matrices.push_back(IntMatrix::from_rows({{(mask >> j) & 1 ? -1 : 1}}));
    try {
      build_lattice(g, MatricesSpec{1, m.generator_matrices});
      signs.push_back(m);
    } catch (const InputError&) {
    }
  }
  for (std::size_t k = 0; k < signs.size(); ++k)
    add(signs.size() == 1 ? "sign" : "sign_" + std::to_string(k + 1), signs[k], 1);

  add("regular", spec::Regular{}, g->order());
  const auto classes = g->subgroup_classes();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    spec::Cosets c;
    for (int x : classes[k].generators()) c.generators.push_back(word_of(x, *g));
    add("cosets_" + two_digits(k), c, g->order() / classes[k].order());
  }
  if (g->order() > 1) {
    IntVector ones(g->order(), 1);
    add("J", spec::Quotient{"regular", {ones}}, g->order() - 1);
    add("J_dual", spec::Dual{"J"}, g->order() - 1);
  }

  const std::size_t bound = max_sum_rank(g->order());
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if (base[i].second + base[j].second <= bound)
        w.lattices[base[i].first + "+" + base[j].first] = spec::Sum{base[i].first, base[j].first};

  // Disguises: a permutation lattice of rank 2..6 in a basis whose
  // permuted basis has max-norm at most 2, recovered by the search.
  std::mt19937_64 rng(0xd15 + g->order() * 131 + ngens);
  auto built = build_workspace(w);
  std::vector<std::string> sources;
  for (const auto& [name, m] : built.lattices)
    if (m->rank() >= 2 && m->rank() <= 6 && is_permutation(m).verdict == Verdict::yes) sources.push_back(name);
  std::size_t made = 0;
  for (std::size_t attempt = 0; made < d.disguises && !sources.empty(); ++attempt) {
    if (attempt > 100000) throw std::runtime_error("no disguise found for " + d.name);
    const auto& src = sources[rng() % sources.size()];
    const auto& m = built.lattices.at(src);
    IntMatrix u = random_unimodular(rng, m->rank(), 4 + static_cast<int>(rng() % 6));
    bool ok = false;
    max_norm_inverse_check(u, 2, ok);
    if (!ok || signed_permutation(u)) continue;
    auto disguised = conjugate_lattice(m, u);
    auto found = is_permutation(disguised);
    if (found.verdict != Verdict::yes || !is_permuted_basis(disguised, found.basis)) continue;
    w.lattices["disguise_" + two_digits(made)] = spec::Matrices{m->rank(), disguised->generator_matrices()};
    ++made;
  }
  if (made < d.disguises) throw std::runtime_error("too few disguise sources for " + d.name);
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gammalat_make_corpus OUTDIR\n";
    return 2;
  }
  std::filesystem::path out(argv[1]);
  std::filesystem::create_directories(out);
  for (const auto& d : corpus_groups()) {
    auto w = corpus_workspace(d);
    std::ofstream f(out / (d.name + ".json"), std::ios::binary | std::ios::trunc);
    f << canonical(to_json(w));
    std::cout << d.name << ": " << w.lattices.size() << " lattices\n";
  }
  return 0;
}
