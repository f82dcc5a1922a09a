// Bounded searches for permuted bases and stable permutation isomorphisms.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gammalat/errors.hpp"
#include "gammalat/resolutions.hpp"

namespace gammalat {

namespace {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;  // row-major, small entries

// Number of H-orbits on G/K, i.e. rank ℤ[G/K]^H.
std::size_t orbit_count(const Subgroup& h, const Subgroup& k) {
  const auto& g = k.parent();
  auto cosets = left_cosets(k);
  std::vector<int> owner(g->order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (int y : cosets[i]) owner[static_cast<std::size_t>(y)] = static_cast<int>(i);
  std::vector<char> seen(cosets.size(), 0);
  std::size_t count = 0;
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    if (seen[c]) continue;
    ++count;
    for (int x : h.members()) seen[static_cast<std::size_t>(owner[static_cast<std::size_t>(g->multiply(x, cosets[c][0]))])] = 1;
  }
  return count;
}

// marks[h][k] = rank ℤ[G/K]^H over the subgroup classes.
std::vector<std::vector<std::size_t>> orbit_table(const GroupPtr& g) {
  const auto classes = g->subgroup_classes();
  std::vector<std::vector<std::size_t>> t(classes.size(), std::vector<std::size_t>(classes.size()));
  for (std::size_t h = 0; h < classes.size(); ++h)
    for (std::size_t k = 0; k < classes.size(); ++k) t[h][k] = orbit_count(classes[h], classes[k]);
  return t;
}

// Multiplicity vectors a ≥ 0 over subgroup classes with
// Σ_K a_K rank ℤ[G/K]^H = target[H] for every H (H = e fixes the rank).
std::vector<std::vector<std::size_t>> permutation_types(const GroupPtr& g, const std::vector<std::size_t>& target,
                                                        std::size_t max_results = 64) {
  auto t = orbit_table(g);
  const std::size_t nc = t.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(nc, 0);
  std::vector<std::size_t> acc(nc, 0);
  // Class 0 is the trivial subgroup: t[0][k] = [G:K] > 0.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= max_results) return;
    if (k == nc) {
      if (acc == target) out.push_back(a);
      return;
    }
    for (std::size_t mult = 0;; ++mult) {
      bool fits = true;
      for (std::size_t h = 0; h < nc; ++h)
        if (acc[h] + mult * t[h][k] > target[h]) fits = false;
      if (!fits) break;
      for (std::size_t h = 0; h < nc; ++h) acc[h] += mult * t[h][k];
      a[k] = mult;
      self(self, k + 1);
      for (std::size_t h = 0; h < nc; ++h) acc[h] -= mult * t[h][k];
    }
    a[k] = 0;
  };
  rec(rec, 0);
  return out;
}

std::vector<std::size_t> fixed_ranks(const CohFingerprint& fp) {
  std::vector<std::size_t> r;
  for (const auto& e : fp.entries) r.push_back(e.fixed_rank);
  return r;
}

std::string cohomology_obstruction(const LatticePtr& m, const CohFingerprint& fp) {
  const auto classes = m->group()->subgroup_classes();
  for (std::size_t i = 0; i < fp.entries.size(); ++i) {
    if (!fp.entries[i].h1.trivial())
      return "h1(" + classes[i].label() + ") = " + fp.entries[i].h1.to_string() + " is nonzero";
    if (!fp.entries[i].tate_minus1.trivial())
      return "Tate H^-1(" + classes[i].label() + ") = " + fp.entries[i].tate_minus1.to_string() + " is nonzero";
  }
  return {};
}

bool fits_small(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (cmpabs(a(i, j), 1ul << 20) > 0) return false;
  return true;
}

Mat to_small(const IntMatrix& a) {
  Mat out(a.rows(), Vec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j).get_si();
  return out;
}

Vec act(const Mat& a, const Vec& v) {
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

IntVector to_big(const Vec& v) {
  IntVector out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

struct Orbit {
  std::vector<Vec> vectors;  // sorted
  std::size_t cls;
  std::int64_t weight;  // Σ |entries| of the vectors, for ordering
};

// Rows extend to a ℤ-basis: independent with saturated span.
bool extends_to_basis(const std::vector<IntVector>& rows, std::size_t n) {
  IntMatrix a(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) a.set_row(i, rows[i]);
  auto d = smith_invariants(a);
  if (d.size() != rows.size()) return false;
  for (const auto& x : d)
    if (x != 1) return false;
  return true;
}

std::vector<Orbit> candidate_orbits(const LatticePtr& m, int bound, const std::vector<char>& wanted) {
  const auto& g = m->group();
  const std::size_t n = m->rank();
  std::vector<Mat> rho;
  for (std::size_t x = 0; x < g->order(); ++x) rho.push_back(to_small(m->rho(static_cast<int>(x))));
  std::vector<Orbit> out;
  Vec v(n, -bound);
  auto next = [&]() {
    for (std::size_t i = n; i-- > 0;) {
      if (v[i] < bound) {
        ++v[i];
        return true;
      }
      v[i] = -bound;
    }
    return false;
  };
  do {
    std::int64_t gcd = 0;
    for (auto x : v) gcd = std::gcd(gcd, x < 0 ? -x : x);
    if (gcd != 1) continue;
    // Keep v only if it is the least vector of its orbit.
    std::set<Vec> orbit;
    std::vector<int> stab;
    bool least = true;
    for (std::size_t x = 0; x < rho.size() && least; ++x) {
      Vec w = act(rho[x], v);
      if (w < v) least = false;
      if (w == v) stab.push_back(static_cast<int>(x));
      orbit.insert(std::move(w));
    }
    if (!least || orbit.size() > n) continue;
    // O and −O are interchangeable in a basis; keep the one whose least
    // vector is larger.
    Vec neg_min = *orbit.rbegin();
    for (auto& x : neg_min) x = -x;
    if (neg_min > v) continue;
    std::vector<IntVector> rows;
    for (const auto& w : orbit) rows.push_back(to_big(w));
    if (!extends_to_basis(rows, n)) continue;
    std::size_t cls = g->class_index(g->make_subgroup(stab));
    if (!wanted[cls]) continue;
    std::int64_t weight = 0;
    for (const auto& w : orbit)
      for (auto x : w) weight += x < 0 ? -x : x;
    out.push_back({std::vector<Vec>(orbit.begin(), orbit.end()), cls, weight});
  } while (next());
  std::stable_sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.weight < b.weight; });
  return out;
}

PermutationResult witness_from_action(const LatticePtr& m, IntMatrix basis) {
  // Orbits of the permuted basis and their stabilizer classes.
  const auto& g = m->group();
  const std::size_t n = m->rank();
  IntMatrix inv = inverse_unimodular(basis);
  std::vector<IntMatrix> perm;
  for (std::size_t x = 0; x < g->order(); ++x) perm.push_back(inv * m->rho(static_cast<int>(x)) * basis);
  PermutationResult r;
  r.verdict = Verdict::yes;
  std::vector<char> seen(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j]) continue;
    std::vector<int> stab;
    for (std::size_t x = 0; x < g->order(); ++x) {
      std::size_t img = perm[x].permutation_image(j);
      seen[img] = 1;
      if (img == j) stab.push_back(static_cast<int>(x));
    }
    r.orbit_classes.push_back(g->class_index(g->make_subgroup(stab)));
  }
  r.basis = std::move(basis);
  return r;
}

// Direct sum of coset lattices with the given class multiplicities.
LatticePtr permutation_lattice(const GroupPtr& g, const std::vector<std::size_t>& mult) {
  const auto classes = g->subgroup_classes();
  std::vector<LatticePtr> parts;
  for (std::size_t k = 0; k < mult.size(); ++k)
    for (std::size_t i = 0; i < mult[k]; ++i) parts.push_back(coset_lattice(classes[k]));
  return direct_sum(parts, g);
}

}  // namespace

LatticePtr transported(const LatticePtr& m, const IntMatrix& w) {
  IntMatrix inv = inverse_unimodular(w);
  std::vector<IntMatrix> mats;
  for (const auto& a : m->generator_matrices()) mats.push_back(inv * a * w);
  return make_lattice(m->group(), m->rank(), std::move(mats), "P");
}

std::string permutation_obstruction(const LatticePtr& m) {
  auto fp = fingerprint(m);
  auto s = cohomology_obstruction(m, fp);
  if (!s.empty()) return s;
  if (permutation_types(m->group(), fixed_ranks(fp), 1).empty())
    return "fixed-point ranks match no direct sum of coset lattices";
  return {};
}

std::string stable_obstruction(const LatticePtr& m) { return cohomology_obstruction(m, fingerprint(m)); }

bool is_permuted_basis(const LatticePtr& m, const IntMatrix& basis) {
  const std::size_t n = m->rank();
  if (basis.rows() != n || basis.cols() != n) return false;
  if (n == 0) return true;
  Integer det = basis.determinant();
  if (det != 1 && det != -1) return false;
  IntMatrix inv = inverse_unimodular(basis);
  for (const auto& a : m->generator_matrices())
    if (!(inv * a * basis).is_permutation_matrix()) return false;
  return true;
}

PermutationResult is_permutation(const LatticePtr& m, const SearchLimits& limits) {
  const std::size_t n = m->rank();
  if (n == 0 || m->has_permutation_action()) return witness_from_action(m, IntMatrix::identity(n));
  PermutationResult r;
  auto fp = fingerprint(m);
  r.obstruction = cohomology_obstruction(m, fp);
  auto types = r.obstruction.empty() ? permutation_types(m->group(), fixed_ranks(fp)) :
                                       std::vector<std::vector<std::size_t>>{};
  if (r.obstruction.empty() && types.empty())
    r.obstruction = "fixed-point ranks match no direct sum of coset lattices";
  if (!r.obstruction.empty()) {
    r.verdict = Verdict::no;
    return r;
  }
  if (n > limits.max_rank) {
    r.note = "rank " + std::to_string(n) + " exceeds the search cap " + std::to_string(limits.max_rank);
    return r;
  }
  for (std::size_t x = 0; x < m->group()->order(); ++x)
    if (!fits_small(m->rho(static_cast<int>(x)))) {
      r.note = "action matrices too large for the orbit search";
      return r;
    }
  const auto classes = m->group()->subgroup_classes();
  std::vector<char> wanted(classes.size(), 0);
  for (const auto& t : types)
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t[k]) wanted[k] = 1;
  auto orbits = candidate_orbits(m, limits.norm_bound, wanted);
  std::vector<std::vector<std::size_t>> by_class(classes.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) by_class[orbits[i].cls].push_back(i);

  std::size_t nodes = 0;
  bool exhausted = false;
  std::vector<IntVector> chosen;
  std::vector<std::size_t> picked;
  for (const auto& t : types) {
    std::vector<std::size_t> slots;  // one class per orbit still to place
    for (std::size_t k = 0; k < t.size(); ++k)
      for (std::size_t i = 0; i < t[k]; ++i) slots.push_back(k);
    // Combinations within a class: slot positions of one class pick
    // increasing candidate indices.
    auto rec = [&](auto&& self, std::size_t slot, std::size_t start) -> bool {
      if (slot == slots.size()) return true;
      const auto& cands = by_class[slots[slot]];
      for (std::size_t ci = start; ci < cands.size(); ++ci) {
        if (++nodes > limits.max_nodes) {
          exhausted = true;
          return false;
        }
        const auto& o = orbits[cands[ci]];
        std::size_t before = chosen.size();
        for (const auto& w : o.vectors) chosen.push_back(to_big(w));
        if (extends_to_basis(chosen, n)) {
          picked.push_back(cands[ci]);
          bool same_next = slot + 1 < slots.size() && slots[slot + 1] == slots[slot];
          if (self(self, slot + 1, same_next ? ci + 1 : 0)) return true;
          picked.pop_back();
        }
        chosen.resize(before);
        if (exhausted) return false;
      }
      return false;
    };
    if (rec(rec, 0, 0)) {
      IntMatrix basis(n, n);
      for (std::size_t j = 0; j < n; ++j) basis.set_column(j, chosen[j]);
      if (!is_permuted_basis(m, basis)) throw PropertyViolation("orbit search produced an invalid permuted basis");
      return witness_from_action(m, std::move(basis));
    }
    if (exhausted) break;
  }
  r.note = exhausted ? "node budget " + std::to_string(limits.max_nodes) + " exhausted" :
                       "no permuted basis among vectors of max-norm <= " + std::to_string(limits.norm_bound);
  return r;
}

namespace {

// An equivariant unimodular L → P among small combinations of a Hom_G basis.
std::optional<IntMatrix> find_isomorphism(const LatticePtr& l, const LatticePtr& p, const SearchLimits& limits) {
  auto basis = equivariant_maps(l, p);
  const std::size_t k = basis.size();
  if (k == 0) return std::nullopt;
  auto accept = [&](const std::vector<int>& coeffs) -> std::optional<IntMatrix> {
    IntMatrix f(p->rank(), l->rank());
    for (std::size_t i = 0; i < k; ++i)
      if (coeffs[i] != 0) f += basis[i].scaled(coeffs[i]);
    if (cmpabs(f.max_abs(), static_cast<unsigned long>(limits.entry_bound)) > 0) return std::nullopt;
    Integer d = f.determinant();
    if (d == 1 || d == -1) return f;
    return std::nullopt;
  };
  std::vector<int> coeffs(k, -2);
  double space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= 5;
  if (space <= static_cast<double>(limits.iso_trials)) {
    while (true) {
      if (auto f = accept(coeffs)) return f;
      std::size_t i = 0;
      while (i < k && coeffs[i] == 2) coeffs[i++] = -2;
      if (i == k) break;
      ++coeffs[i];
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(limits.seed);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (std::size_t trial = 0; trial < limits.iso_trials; ++trial) {
    for (auto& c : coeffs) c = dist(rng);
    if (auto f = accept(coeffs)) return f;
  }
  return std::nullopt;
}

}  // namespace

StablyPermutationResult is_stably_permutation(const LatticePtr& m, const SearchLimits& limits) {
  StablyPermutationResult r;
  const auto& g = m->group();
  r.obstruction = stable_obstruction(m);
  if (!r.obstruction.empty()) {
    r.verdict = Verdict::no;
    return r;
  }
  auto direct = is_permutation(m, limits);
  if (direct.verdict == Verdict::yes) {
    r.verdict = Verdict::yes;
    r.route = "permuted basis of M";
    r.p1 = trivial_lattice(g, 0);
    r.p2 = transported(m, direct.basis);
    r.iso = inverse_unimodular(direct.basis);
    return r;
  }
  // Stably permutation lattices are invertible.
  auto inv = is_invertible(m);
  if (!inv.holds) {
    r.verdict = Verdict::no;
    r.obstruction = "M is not invertible: " + inv.refutation;
    return r;
  }
  // 0 → C → P → M → 0 splits, so M ⊕ C ≅ P; done if C is permutation.
  {
    const auto& seq = inv.resolution;
    auto pc = is_permutation(seq.sub(), limits);
    if (pc.verdict == Verdict::yes) {
      r.verdict = Verdict::yes;
      r.route = "split coflasque resolution with permutation kernel";
      r.p1 = transported(seq.sub(), pc.basis);
      r.p2 = seq.mid();
      r.iso = IntMatrix::hstack(*inv.section, seq.inj.matrix * pc.basis);
      return r;
    }
  }
  // M ⊕ P₁ for coset multiplicities up to the bound, smallest ranks first.
  const auto classes = g->subgroup_classes();
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> mult(classes.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, std::size_t rank) -> void {
    if (k == classes.size()) {
      if (rank > m->rank()) candidates.push_back(mult);
      return;
    }
    std::size_t idx = g->order() / classes[k].order();
    for (int a = 0; a <= limits.multiplicity_bound; ++a) {
      std::size_t nr = rank + static_cast<std::size_t>(a) * idx;
      if (nr > limits.max_rank) break;
      mult[k] = static_cast<std::size_t>(a);
      self(self, k + 1, nr);
    }
    mult[k] = 0;
  };
  rec(rec, 0, m->rank());
  std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    std::size_t ra = 0, rb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      ra += a[k] * (g->order() / classes[k].order());
      rb += b[k] * (g->order() / classes[k].order());
    }
    return ra < rb;
  });
  for (const auto& a : candidates) {
    auto p1 = permutation_lattice(g, a);
    auto sum = direct_sum(m, p1);
    auto pr = is_permutation(sum, limits);
    if (pr.verdict == Verdict::yes) {
      r.verdict = Verdict::yes;
      r.route = "permuted basis of M ⊕ P1";
      r.p1 = p1;
      r.p2 = transported(sum, pr.basis);
      r.iso = inverse_unimodular(pr.basis);
      return r;
    }
    if (pr.verdict == Verdict::no) continue;
    for (const auto& b : permutation_types(g, fixed_ranks(fingerprint(sum)), 8)) {
      auto p2 = permutation_lattice(g, b);
      if (auto f = find_isomorphism(sum, p2, limits)) {
        r.verdict = Verdict::yes;
        r.route = "bounded isomorphism search M ⊕ P1 → P2";
        r.p1 = p1;
        r.p2 = p2;
        r.iso = *f;
        return r;
      }
    }
  }
  r.note = "no witness with multiplicities <= " + std::to_string(limits.multiplicity_bound) + " and rank <= " +
           std::to_string(limits.max_rank);
  return r;
}

bool verify_stable_witness(const LatticePtr& m, const StablyPermutationResult& r) {
  if (r.verdict != Verdict::yes || !r.p1 || !r.p2) return false;
  if (!r.p1->has_permutation_action() || !r.p2->has_permutation_action()) return false;
  auto sum = direct_sum(m, r.p1);
  if (r.iso.rows() != r.p2->rank() || r.iso.cols() != sum->rank()) return false;
  if (sum->rank() > 0) {
    Integer d = r.iso.determinant();
    if (d != 1 && d != -1) return false;
  }
  return check_equivariant(r.iso, sum, r.p2).ok;
}

}  // namespace gammalat
