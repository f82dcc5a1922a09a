#include "gammalat/resolutions.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>

#include "gammalat/errors.hpp"

namespace gammalat {

namespace {

IntMatrix coordinates_in(const SublatticeBasis& sb, const IntMatrix& cols, const char* what) {
  IntMatrix out(sb.rank(), cols.cols());
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    auto x = sb.coordinates(cols.column(j));
    if (!x) throw PropertyViolation(what);
    out.set_column(j, *x);
  }
  return out;
}

// Coset index of every element, for the left cosets of k.
std::vector<int> coset_owner(const Subgroup& k, const std::vector<std::vector<int>>& cosets) {
  std::vector<int> owner(k.parent()->order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (int y : cosets[i]) owner[static_cast<std::size_t>(y)] = static_cast<int>(i);
  return owner;
}

// H-orbits on G/K as lists of coset indices.
std::vector<std::vector<int>> coset_orbits(const Subgroup& h, const Subgroup& k) {
  const auto& g = k.parent();
  auto cosets = left_cosets(k);
  auto owner = coset_owner(k, cosets);
  std::vector<int> seen(cosets.size(), 0);
  std::vector<std::vector<int>> out;
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    if (seen[c]) continue;
    std::vector<int> orbit;
    for (int x : h.members()) {
      int d = owner[static_cast<std::size_t>(g->multiply(x, cosets[c][0]))];
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        orbit.push_back(d);
      }
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

struct Summand {
  std::size_t cls;
  IntVector gen;  // in M^{K}, K the class representative
};

// Image of P^H in M^H, spanned by the orbit sums of each summand.
void append_orbit_sums(const LatticePtr& m, const Subgroup& k, const IntVector& gen, const Subgroup& h,
                       std::vector<IntVector>& out) {
  auto cosets = left_cosets(k);
  for (const auto& orbit : coset_orbits(h, k)) {
    IntVector s(m->rank());
    for (int c : orbit) s = s + m->rho(cosets[static_cast<std::size_t>(c)][0]) * gen;
    out.push_back(std::move(s));
  }
}

struct CoflasqueOne {
  ShortExactSequence seq;
  std::vector<std::size_t> summands;
};

CoflasqueOne coflasque_one(const LatticePtr& m, GeneratorStrategy strategy) {
  const auto& g = m->group();
  const auto classes = g->subgroup_classes();
  const std::size_t n = m->rank();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < classes.size(); ++i) order.push_back(i);
  // Classes are enumerated by increasing order.
  if (strategy != GeneratorStrategy::ascending) std::reverse(order.begin(), order.end());

  std::vector<Summand> sums;
  for (std::size_t idx : order) {
    const Subgroup& h = classes[idx];
    IntMatrix fixed = fixed_sublattice(m, h);
    if (fixed.cols() == 0) continue;
    IntMatrix gens = hermite_basis(fixed.transpose());
    if (strategy == GeneratorStrategy::full) {
      for (std::size_t r = 0; r < gens.rows(); ++r) sums.push_back({idx, gens.row(r)});
      continue;
    }
    std::vector<IntVector> image;
    for (const auto& s : sums) append_orbit_sums(m, classes[s.cls], s.gen, h, image);
    // Rebuilt only when a summand is added; the image only grows.
    std::optional<SublatticeBasis> span;
    for (std::size_t r = 0; r < gens.rows(); ++r) {
      IntVector v = gens.row(r);
      if (!image.empty()) {
        if (!span) {
          IntMatrix hb = hermite_basis(image, n);
          image.assign({});
          for (std::size_t i = 0; i < hb.rows(); ++i) image.push_back(hb.row(i));
          span.emplace(hb.transpose());
        }
        if (span->rank() > 0 && span->contains(v)) continue;
      }
      sums.push_back({idx, v});
      append_orbit_sums(m, h, v, h, image);
      span.reset();
    }
  }

  std::vector<LatticePtr> parts;
  std::vector<IntMatrix> blocks;
  std::vector<std::size_t> summand_classes;
  std::size_t total = 0;
  for (const auto& s : sums) {
    auto cosets = left_cosets(classes[s.cls]);
    IntMatrix block(n, cosets.size());
    for (std::size_t c = 0; c < cosets.size(); ++c) block.set_column(c, m->rho(cosets[c][0]) * s.gen);
    parts.push_back(coset_lattice(classes[s.cls]));
    blocks.push_back(std::move(block));
    summand_classes.push_back(s.cls);
    total += cosets.size();
  }
  auto p = direct_sum(parts, g, "P");
  IntMatrix alpha(n, total);
  std::size_t col = 0;
  for (const auto& b : blocks) {
    alpha.set_block(0, col, b);
    col += b.cols();
  }
  LatticeMap surj = make_map(p, m, alpha);
  LatticeMap inc = kernel_lattice(surj);
  auto c = renamed_lattice(inc.source, "C");
  return {{{c, p, inc.matrix}, surj}, summand_classes};
}

LatticePtr renamed(const LatticePtr& l, const std::string& name) {
  return renamed_lattice(l, name);
}

// Permutation lattices are self-dual with the same matrices; keep them.
LatticePtr dual_or_same(const LatticePtr& l) { return l->has_permutation_action() ? l : dual_lattice(l); }

// Dual of 0 → A → B → C → 0 with chosen lattice objects for the new terms.
ShortExactSequence dual_with(const ShortExactSequence& s, const LatticePtr& sub, const LatticePtr& mid,
                             const LatticePtr& quot) {
  return {{sub, mid, s.surj.matrix.transpose()}, {mid, quot, s.inj.matrix.transpose()}};
}

std::vector<AbelianGroupInvariants> h1_profile(const LatticePtr& m) {
  const auto classes = m->group()->subgroup_classes();
  std::vector<AbelianGroupInvariants> out(classes.size());
  std::vector<std::exception_ptr> errors(classes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(classes.size()); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = h1(classes[static_cast<std::size_t>(i)], m).structure();
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool prime_power_order(const Subgroup& h) { return prime_divisors(static_cast<long>(h.order())).size() <= 1; }

ResolutionCertificate coflasque_type2(const LatticePtr& m, const ResolutionOptions& options);

ResolutionCertificate flasque_type1(const LatticePtr& m, const ResolutionOptions& options) {
  auto dual = coflasque_one(dual_lattice(m), options.strategy);
  const auto& p = dual.seq.mid();
  auto f = renamed(dual_lattice(dual.seq.sub()), "F");
  ResolutionCertificate c;
  c.sequence = dual_with(dual.seq, m, p, f);
  c.kind = ResolutionKind::flasque;
  c.type = 1;
  c.permutation_term = p;
  c.permutation_summands = dual.summands;
  c.designated_term = f;
  return c;
}

ResolutionCertificate coflasque_type1(const LatticePtr& m, const ResolutionOptions& options) {
  auto r = coflasque_one(m, options.strategy);
  ResolutionCertificate c;
  c.sequence = r.seq;
  c.kind = ResolutionKind::coflasque;
  c.type = 1;
  c.permutation_term = r.seq.mid();
  c.permutation_summands = r.summands;
  c.designated_term = r.seq.sub();
  return c;
}

// 0 → M → C → P → 0 with P permutation has C coflasque iff every
// P^H → H¹(H, M) is onto.  One summand ℤ[G/H] per generator [f] of each
// H¹(H, M), glued by the class matching [f] under Shapiro, achieves that:
// with coset representatives x_i (x_0 = e) and g·x_i = x_j·h,
//   g·ẽ_i = ẽ_j + ρ(x_j) f(h),
// so (h − 1)ẽ_0 = f(h) and e_H maps to [f].
ResolutionCertificate coflasque_type2(const LatticePtr& m, const ResolutionOptions& options) {
  const auto& g = m->group();
  const auto classes = g->subgroup_classes();
  const std::size_t r = m->rank();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < classes.size(); ++i) order.push_back(i);
  if (options.strategy != GeneratorStrategy::ascending) std::reverse(order.begin(), order.end());

  struct Glue {
    std::size_t cls;
    std::vector<IntVector> cocycle;  // f(h) by position in members()
  };
  std::vector<Glue> glue;
  for (std::size_t idx : order) {
    const Subgroup& h = classes[idx];
    if (h.order() == 1) continue;
    auto coh = h1(h, m);
    for (const auto& z : coh.torsion_generators()) glue.push_back({idx, expand_cocycle1(h, m, z)});
  }

  std::vector<LatticePtr> parts;
  std::vector<std::size_t> summand_classes;
  std::size_t total = r;
  for (const auto& gl : glue) {
    parts.push_back(coset_lattice(classes[gl.cls]));
    summand_classes.push_back(gl.cls);
    total += parts.back()->rank();
  }
  auto p = direct_sum(parts, g, "P");

  std::vector<IntMatrix> mats;
  for (int s : g->generator_indices()) {
    IntMatrix a(total, total);
    a.set_block(0, 0, m->rho(s));
    std::size_t at = r;
    for (const auto& gl : glue) {
      const Subgroup& h = classes[gl.cls];
      auto cosets = left_cosets(h);
      auto owner = coset_owner(h, cosets);
      std::vector<int> position(g->order(), -1);
      for (std::size_t k = 0; k < h.members().size(); ++k) position[static_cast<std::size_t>(h.members()[k])] = static_cast<int>(k);
      for (std::size_t i = 0; i < cosets.size(); ++i) {
        const int sx = g->multiply(s, cosets[i][0]);
        const auto j = static_cast<std::size_t>(owner[static_cast<std::size_t>(sx)]);
        const int xj = cosets[j][0];
        const int hh = g->multiply(g->inverse(xj), sx);
        a(at + j, at + i) = 1;
        IntVector v = m->rho(xj) * gl.cocycle[static_cast<std::size_t>(position[static_cast<std::size_t>(hh)])];
        for (std::size_t q = 0; q < r; ++q) a(q, at + i) = v[q];
      }
      at += cosets.size();
    }
    mats.push_back(std::move(a));
  }
  auto e = make_lattice(g, total, std::move(mats), "C");

  IntMatrix inj(total, r), surj(total - r, total);
  for (std::size_t i = 0; i < r; ++i) inj(i, i) = 1;
  for (std::size_t i = 0; i < total - r; ++i) surj(i, r + i) = 1;
  ResolutionCertificate c;
  c.sequence = {{m, e, inj}, {e, p, surj}};
  c.kind = ResolutionKind::coflasque;
  c.type = 2;
  c.permutation_term = p;
  c.permutation_summands = summand_classes;
  c.designated_term = e;
  return c;
}

ResolutionCertificate flasque_type2(const LatticePtr& m, const ResolutionOptions& options) {
  auto co = coflasque_type2(dual_lattice(m), options);
  auto f = renamed(dual_lattice(co.designated_term), "F");
  ResolutionCertificate c;
  c.sequence = dual_with(co.sequence, co.permutation_term, f, m);
  c.kind = ResolutionKind::flasque;
  c.type = 2;
  c.permutation_term = co.permutation_term;
  c.permutation_summands = co.permutation_summands;
  c.designated_term = f;
  return c;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
  }
}

const char* to_string(ResolutionKind k) { return k == ResolutionKind::coflasque ? "coflasque" : "flasque"; }

const char* to_string(GeneratorStrategy s) {
  switch (s) {
    case GeneratorStrategy::descending: return "descending";
    case GeneratorStrategy::ascending: return "ascending";
    default: return "full";
  }
}

PredicateVerdict is_coflasque(const LatticePtr& m, CoflasqueMode mode) {
  const auto classes = m->group()->subgroup_classes();
  std::vector<AbelianGroupInvariants> out(classes.size());
  std::vector<std::exception_ptr> errors(classes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(classes.size()); ++i) {
    const auto& h = classes[static_cast<std::size_t>(i)];
    if (mode == CoflasqueMode::prime_power_classes && !prime_power_order(h)) continue;
    try {
      out[static_cast<std::size_t>(i)] = h1(h, m).structure();
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  PredicateVerdict v;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!out[i].trivial()) {
      v.holds = false;
      v.failing_class = static_cast<int>(i);
      v.witness = out[i];
      break;
    }
  return v;
}

PredicateVerdict is_coflasque_serial(const LatticePtr& m, CoflasqueMode mode) {
  const auto classes = m->group()->subgroup_classes();
  PredicateVerdict v;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (mode == CoflasqueMode::prime_power_classes && !prime_power_order(classes[i])) continue;
    auto s = h1(classes[i], m).structure();
    if (!s.trivial()) {
      v.holds = false;
      v.failing_class = static_cast<int>(i);
      v.witness = s;
      return v;
    }
  }
  return v;
}

PredicateVerdict is_flasque(const LatticePtr& m) {
  auto v = is_coflasque(dual_lattice(m));
  bool tate_vanishes = true;
  for (const auto& h : m->group()->subgroup_classes())
    if (!tate_minus1(h, m).trivial()) {
      tate_vanishes = false;
      break;
    }
  if (tate_vanishes != v.holds)
    throw PropertyViolation("flasque test disagrees: h1 of the dual and Tate H^-1 give different answers");
  return v;
}

ShortExactSequence dual_sequence(const ShortExactSequence& s) {
  return dual_with(s, dual_or_same(s.quot()), dual_or_same(s.mid()), dual_or_same(s.sub()));
}

bool verify_certificate(ResolutionCertificate& c) {
  c.verified = false;
  c.failure.clear();
  auto ex = verify_exact(c.sequence);
  if (!ex.ok) {
    c.failure = "sequence is not exact: " + ex.failure;
    return false;
  }
  if (!c.permutation_term || !c.permutation_term->has_permutation_action()) {
    c.failure = "permutation term does not act by permutation matrices";
    return false;
  }
  const auto& s = c.sequence;
  LatticePtr want_p, want_d;
  if (c.kind == ResolutionKind::coflasque) {
    want_p = c.type == 1 ? s.mid() : s.quot();
    want_d = c.type == 1 ? s.sub() : s.mid();
  } else {
    want_p = c.type == 1 ? s.mid() : s.sub();
    want_d = c.type == 1 ? s.quot() : s.mid();
  }
  if (want_p != c.permutation_term || want_d != c.designated_term) {
    c.failure = "certificate terms do not match the sequence shape";
    return false;
  }
  c.evidence = h1_profile(c.kind == ResolutionKind::coflasque ? c.designated_term : dual_lattice(c.designated_term));
  const auto classes = c.designated_term->group()->subgroup_classes();
  for (std::size_t i = 0; i < c.evidence.size(); ++i)
    if (!c.evidence[i].trivial()) {
      c.failure = std::string(c.kind == ResolutionKind::coflasque ? "h1(" : "h1 of dual at (") + classes[i].label() +
                  ") = " + c.evidence[i].to_string();
      return false;
    }
  c.verified = true;
  return true;
}

ResolutionCertificate build_resolution(const LatticePtr& m, ResolutionKind kind, int type,
                                       const ResolutionOptions& options) {
  if (type != 1 && type != 2) throw InputError("resolution type must be 1 or 2");
  ResolutionCertificate c;
  if (kind == ResolutionKind::coflasque)
    c = type == 1 ? coflasque_type1(m, options) : coflasque_type2(m, options);
  else
    c = type == 1 ? flasque_type1(m, options) : flasque_type2(m, options);
  if (options.verify && !verify_certificate(c))
    throw PropertyViolation(std::string("constructed ") + to_string(kind) + " resolution of type " +
                            std::to_string(type) + " fails verification: " + c.failure);
  return c;
}

FlasqueInvariant flasque_invariant(const LatticePtr& m, const ResolutionOptions& options) {
  FlasqueInvariant out;
  out.resolution = build_resolution(m, ResolutionKind::flasque, 1, options);
  out.flasque = out.resolution.designated_term;
  out.fingerprint = fingerprint(out.flasque);
  return out;
}

InvertibleVerdict is_invertible(const LatticePtr& m, std::size_t max_entries) {
  InvertibleVerdict v;
  const bool large = m->rank() > 8;
  if (large) {
    // Summands of permutation lattices have vanishing H¹ and Ĥ⁻¹ everywhere;
    // a nonzero group refutes without building the splitting system.
    auto fp = fingerprint(m);
    for (std::size_t k = 0; k < fp.entries.size(); ++k) {
      const auto& e = fp.entries[k];
      const bool in_h1 = !e.h1.trivial();
      if (!in_h1 && e.tate_minus1.trivial()) continue;
      v.refutation = std::string(in_h1 ? "h1" : "tate-1") + " of subgroup class " + std::to_string(k) + " is " +
                     (in_h1 ? e.h1 : e.tate_minus1).to_string() + ", nonzero, so M is no summand of a permutation lattice";
      return v;
    }
  }
  v.resolution = coflasque_one(m, GeneratorStrategy::descending).seq;
  auto split = is_split(v.resolution, max_entries);
  v.holds = split.split();
  v.section = split.section;
  v.refutation = split.refutation;
  // Ext¹(M, C) lives on Hom(M, C); keep it to sizes the cocycle solver
  // handles quickly.
  if (!v.holds && m->rank() * v.resolution.sub()->rank() <= 256) {
    auto cls = class_of_extension(v.resolution);
    v.ext_group = ext1(m, v.resolution.sub());
    v.class_coordinates = ext_coordinates(cls);
  }
  return v;
}

// ------------------------------------------------------------ versality

namespace {

void require_invertible(const LatticePtr& l, const char* what) {
  auto v = is_invertible(l);
  if (!v.holds) throw InputError(std::string(what) + " is not invertible: " + v.refutation);
}

IntVector concat(const std::vector<IntMatrix>& parts) {
  IntVector out;
  for (const auto& p : parts) {
    IntVector v = vectorize(p);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Coflasque 0 → M -α→ C -π→ P → 0 and 0 → M -γ→ N -q→ Q → 0.
Factorization second_kind(const ShortExactSequence& res, const ShortExactSequence& given) {
  Factorization out;
  const auto& m = res.sub();
  const auto& q = given.quot();
  const auto& g = m->group();
  const auto gens = g->generator_indices();
  const std::size_t rm = m->rank(), rq = q->rank();

  IntMatrix sigma_n = linear_section(given.surj);
  auto c_n = class_of_extension(given, sigma_n);
  auto c_c = class_of_extension(res);

  // c_N(s) = Σ t_i c_C(s) β_i + (s·f − f) on the generators s; the
  // cocycle identity extends it to all of G.
  auto betas = equivariant_maps(q, res.quot());
  std::vector<IntVector> cols;
  for (const auto& b : betas) {
    std::vector<IntMatrix> vals;
    for (int s : gens) vals.push_back(c_c.values[static_cast<std::size_t>(s)] * b);
    cols.push_back(concat(vals));
  }
  auto delta_column = [&](std::size_t a, std::size_t b) {
    IntMatrix e(rm, rq);
    e(a, b) = 1;
    std::vector<IntMatrix> vals;
    for (int s : gens) vals.push_back(m->rho(s) * e * q->rho(g->inverse(s)) - e);
    return concat(vals);
  };
  for (std::size_t a = 0; a < rm; ++a)
    for (std::size_t b = 0; b < rq; ++b) cols.push_back(delta_column(a, b));
  std::vector<IntMatrix> rhs_parts;
  for (int s : gens) rhs_parts.push_back(c_n.values[static_cast<std::size_t>(s)]);
  IntVector rhs = concat(rhs_parts);
  IntMatrix sys(rhs.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) sys.set_column(j, cols[j]);
  auto sol = solve_integer_system(sys, rhs);
  if (!sol.solvable()) {
    out.obstruction = "class of N is not pulled back from the resolution: " + sol.obstruction;
    return out;
  }
  IntMatrix beta(res.quot()->rank(), rq);
  for (std::size_t i = 0; i < betas.size(); ++i) beta += betas[i].scaled((*sol.solution)[i]);

  // E = Q ×_P C with 0 → M → E → Q → 0; its projection to C comes first.
  auto diagram = pullback_diagram(res, {q, res.quot(), beta});
  const auto& pb = diagram.sequence;
  IntMatrix sigma_e = linear_section(pb.surj);
  auto c_e = class_of_extension(pb, sigma_e);

  // c_N − c_E = δh on the generators.
  std::vector<IntVector> hcols;
  for (std::size_t a = 0; a < rm; ++a)
    for (std::size_t b = 0; b < rq; ++b) hcols.push_back(delta_column(a, b));
  std::vector<IntMatrix> diff;
  for (int s : gens) diff.push_back(c_n.values[static_cast<std::size_t>(s)] - c_e.values[static_cast<std::size_t>(s)]);
  IntVector hrhs = concat(diff);
  IntMatrix hsys(hrhs.size(), hcols.size());
  for (std::size_t j = 0; j < hcols.size(); ++j) hsys.set_column(j, hcols[j]);
  auto hsol = solve_integer_system(hsys, hrhs);
  if (!hsol.solvable()) {
    out.obstruction = "N and Q ⊕_P C are not equivalent: " + hsol.obstruction;
    return out;
  }
  IntMatrix h = unvectorize(*hsol.solution, rm, rq);

  // Θ(γm) = ι_E m and Θ(σ_N x) = σ_E x + ι_E h(x).
  const std::size_t rn = given.mid()->rank();
  IntMatrix defect = IntMatrix::identity(rn) - sigma_n * given.surj.matrix;
  IntMatrix gamma_inv = coordinates_in(SublatticeBasis(given.inj.matrix), defect, "N is not γ(M) + σ(Q)");
  IntMatrix theta = pb.inj.matrix * gamma_inv + (sigma_e + pb.inj.matrix * h) * given.surj.matrix;
  if (!check_equivariant(theta, given.mid(), pb.mid()).ok)
    throw PropertyViolation("N → Q ⊕_P C is not equivariant");
  IntMatrix phi = diagram.to_mid.matrix * theta;
  if (!check_equivariant(phi, given.mid(), res.mid()).ok) throw PropertyViolation("φ: N → C is not equivariant");
  if (phi * given.inj.matrix != res.inj.matrix) throw PropertyViolation("φ∘γ differs from α");
  out.map = LatticeMap{given.mid(), res.mid(), phi};
  return out;
}

}  // namespace

Factorization versal_factorization(const ResolutionCertificate& r, const LatticeMap& psi, bool check_hypothesis) {
  if (r.type != 1) throw InputError("first-kind versality needs a resolution of the first type");
  const auto& s = r.sequence;
  Factorization out;
  if (r.kind == ResolutionKind::coflasque) {
    // ψ: P′ → M, want ψ̃: P′ → P with α∘ψ̃ = ψ.
    if (!same_action(*psi.target, *s.quot())) throw InputError("ψ must land in the resolved lattice");
    if (!check_equivariant(psi.matrix, psi.source, psi.target).ok) throw InputError("ψ is not equivariant");
    if (check_hypothesis) require_invertible(psi.source, "P′");
    auto sol = solve_equivariant(psi.source, s.mid(),
                                 {{s.surj.matrix, IntMatrix::identity(psi.source->rank()), psi.matrix}});
    if (sol.map) out.map = LatticeMap{psi.source, s.mid(), *sol.map};
    else out.obstruction = sol.obstruction;
  } else {
    // ψ: M → P′, want ψ̃: P → P′ with ψ̃∘β = ψ.
    if (!same_action(*psi.source, *s.sub())) throw InputError("ψ must start at the resolved lattice");
    if (!check_equivariant(psi.matrix, psi.source, psi.target).ok) throw InputError("ψ is not equivariant");
    if (check_hypothesis) require_invertible(psi.target, "P′");
    auto sol = solve_equivariant(s.mid(), psi.target,
                                 {{IntMatrix::identity(psi.target->rank()), s.inj.matrix, psi.matrix}});
    if (sol.map) out.map = LatticeMap{s.mid(), psi.target, *sol.map};
    else out.obstruction = sol.obstruction;
  }
  return out;
}

Factorization versal_factorization(const ResolutionCertificate& r, const ShortExactSequence& given,
                                   bool check_hypothesis) {
  if (r.type != 2) throw InputError("second-kind versality needs a resolution of the second type");
  auto ex = verify_exact(given);
  if (!ex.ok) throw InputError("given sequence is not exact: " + ex.failure);
  const auto& s = r.sequence;
  if (r.kind == ResolutionKind::coflasque) {
    if (!same_action(*given.sub(), *s.sub())) throw InputError("both sequences must start at M");
    if (check_hypothesis) require_invertible(given.quot(), "Q");
    return second_kind(s, given);
  }
  // 0 → P → F -α→ M → 0 and 0 → Q → N -γ→ M → 0: dualize, factor, dualize back.
  if (!same_action(*given.quot(), *s.quot())) throw InputError("both sequences must end at M");
  if (check_hypothesis) require_invertible(given.sub(), "Q");
  auto m_dual = dual_lattice(s.quot());
  auto dres = dual_with(s, m_dual, dual_or_same(s.mid()), dual_or_same(s.sub()));
  auto dgiven = dual_with(given, m_dual, dual_or_same(given.mid()), dual_or_same(given.sub()));
  auto f = second_kind(dres, dgiven);
  Factorization out;
  if (!f.map) {
    out.obstruction = f.obstruction;
    return out;
  }
  IntMatrix phi = f.map->matrix.transpose();
  if (!check_equivariant(phi, s.mid(), given.mid()).ok) throw PropertyViolation("φ: F → N is not equivariant");
  if (given.surj.matrix * phi != s.surj.matrix) throw PropertyViolation("γ∘φ differs from α");
  out.map = LatticeMap{s.mid(), given.mid(), phi};
  return out;
}

CrossedCheck crossed_resolution_check(const LatticePtr& m, int type, GeneratorStrategy a, GeneratorStrategy b) {
  CrossedCheck out;
  out.first = build_resolution(m, ResolutionKind::coflasque, type, {a, true});
  out.second = build_resolution(m, ResolutionKind::coflasque, type, {b, true});
  out.left = fingerprint(direct_sum(out.first.permutation_term, out.second.designated_term));
  out.right = fingerprint(direct_sum(out.second.permutation_term, out.first.designated_term));
  out.consistent = out.left == out.right;
  return out;
}

}  // namespace gammalat
