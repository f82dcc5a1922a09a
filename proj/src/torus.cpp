#include "gammalat/torus.hpp"

#include "gammalat/errors.hpp"

namespace gammalat {

TorusFlags classify_torus(const Torus& t, const SearchLimits& limits) {
  const auto& m = t.character_lattice;
  TorusFlags f;
  f.quasi_trivial = is_permutation(m, limits).verdict == Verdict::yes;
  f.coflasque = is_coflasque(m).holds;
  f.flasque = is_flasque(m).holds;
  f.special = is_invertible(m).holds;
  if (f.quasi_trivial && !f.special) throw PropertyViolation("permutation lattice found not invertible");
  if (f.special && !(f.coflasque && f.flasque)) throw PropertyViolation("invertible lattice fails coflasque or flasque");
  return f;
}

RetractVerdict retract_rational(const Torus& t) {
  RetractVerdict v;
  v.invariant = flasque_invariant(t.character_lattice);
  v.splitting = is_invertible(v.invariant.flasque);
  v.holds = v.splitting.holds;
  return v;
}

StablyPermutationResult stably_rational_partial(const Torus& t, const SearchLimits& limits) {
  const auto& m = t.character_lattice;
  auto inv = flasque_invariant(m);
  // For T̂ permutation, Ext¹(F̂, T̂) is a sum of H¹(H, F̂^∨) = 0, so
  // 0 → T̂ → P → F̂ → 0 splits and F̂ ⊕ T̂ ≅ P.
  auto pm = is_permutation(m, limits);
  if (pm.verdict != Verdict::yes) return is_stably_permutation(inv.flasque, limits);
  const auto& seq = inv.resolution.sequence;
  auto split = is_split(seq);
  if (!split.split()) throw PropertyViolation("flasque resolution of a permutation lattice does not split");
  StablyPermutationResult r;
  r.verdict = Verdict::yes;
  r.route = "quasi-trivial torus: the flasque resolution splits";
  r.p1 = transported(m, pm.basis);
  r.p2 = seq.mid();
  r.iso = IntMatrix::hstack(*split.section, seq.inj.matrix * pm.basis);
  if (!verify_stable_witness(inv.flasque, r)) throw PropertyViolation("split flasque resolution gives no isomorphism");
  return r;
}

ZheVerdict zhe_trivial(const Torus& t) {
  ZheVerdict z;
  auto a = retract_rational(t);
  z.route_a = a.holds;
  z.evidence_a = a.holds ? "F̂ (rank " + std::to_string(a.invariant.flasque->rank()) + ") splits off its coflasque resolution" :
                           "F̂ is not invertible: " + a.splitting.refutation;
  auto c = build_resolution(t.character_lattice, ResolutionKind::coflasque, 2);
  auto b = is_invertible(c.designated_term);
  z.route_b = b.holds;
  z.evidence_b = b.holds ? "Ĉ (rank " + std::to_string(c.designated_term->rank()) + ") splits off its coflasque resolution" :
                           "Ĉ is not invertible: " + b.refutation;
  if (z.route_a != z.route_b)
    throw PropertyViolation("Ж routes disagree: F̂ invertible = " + std::string(z.route_a ? "true" : "false") +
                            ", Ĉ invertible = " + std::string(z.route_b ? "true" : "false"));
  z.trivial = z.route_a;
  return z;
}

ShaResult sha_kernel(const Torus& t, int degree, LocalsChoice choice, const std::vector<Subgroup>& listed,
                     const CohomologyLimits& limits) {
  const auto& m = t.character_lattice;
  const auto& g = m->group();
  std::vector<Subgroup> locals;
  switch (choice) {
    case LocalsChoice::cyclic: locals = cyclic_subgroups_up_to_conjugacy(g); break;
    case LocalsChoice::all: locals = g->subgroup_classes(); break;
    case LocalsChoice::listed:
      for (const auto& h : listed)
        if (h.parent() != g) throw InputError("local subgroup belongs to another group");
      locals = listed;
      break;
  }
  auto k = restriction_kernel(degree, m, locals, limits);
  ShaResult r;
  r.degree = degree;
  r.structure = k.structure;
  r.generators = k.generators;
  for (const auto& h : locals) r.locals.push_back(g->class_index(h));
  r.label = choice == LocalsChoice::cyclic ? "ω-kernel (upper bound)" : "realized";
  return r;
}

const char* to_string(FieldModel m) {
  switch (m) {
    case FieldModel::number_field: return "number_field";
    case FieldModel::local_nonarchimedean: return "local_nonarchimedean";
    case FieldModel::finite: return "finite";
    case FieldModel::cohomological_dim_le_1: return "cohomological_dim_le_1";
    default: return "general";
  }
}

FieldModel parse_field_model(const std::string& s) {
  for (auto m : {FieldModel::number_field, FieldModel::local_nonarchimedean, FieldModel::finite,
                 FieldModel::cohomological_dim_le_1, FieldModel::general})
    if (s == to_string(m)) return m;
  throw InputError("unknown field model '" + s + "'");
}

TorusReport zhe_report(const Torus& t, FieldModel model, const TorusOptions& options) {
  TorusReport r;
  r.label = t.label;
  r.model = model;
  r.flags = classify_torus(t, options.search);
  auto z = zhe_trivial(t);
  r.retract_rational = z.route_a;
  r.stably_rational = stably_rational_partial(t, options.search).verdict;
  r.provenance.push_back("retract rationality: " + z.evidence_a);
  r.provenance.push_back("coflasque route: " + z.evidence_b);
  r.sha1 = sha_kernel(t, 1, options.locals, options.listed, options.cohomology);
  try {
    r.sha2 = sha_kernel(t, 2, options.locals, options.listed, options.cohomology);
  } catch (const CapExceeded& e) {
    if (model == FieldModel::number_field) throw;
    r.provenance.push_back(std::string("degree-2 kernel skipped: ") + e.what());
  }
  switch (model) {
    case FieldModel::number_field:
      r.zhe_group = r.sha2->structure;
      r.zhe_trivial = r.zhe_group->trivial();
      r.provenance.push_back(
          "Ж(k,S) = Ш¹(k,S); its invariant factors are those of the degree-2 restriction kernel of the character "
          "lattice by Poitou–Tate duality (classical input)");
      if (r.retract_rational && !r.zhe_trivial)
        throw PropertyViolation("retract rational torus with nonzero degree-2 restriction kernel");
      break;
    case FieldModel::local_nonarchimedean:
    case FieldModel::finite:
    case FieldModel::cohomological_dim_le_1:
      r.zhe_group = AbelianGroupInvariants{};
      r.zhe_trivial = true;
      r.provenance.push_back(std::string("Ж vanishes over fields of type ") + to_string(model));
      break;
    case FieldModel::general:
      r.zhe_trivial = z.trivial;
      r.provenance.push_back("Ж is trivial over every field iff the torus is retract rational");
      break;
  }
  if (r.flags.quasi_trivial && !r.flags.special) throw PropertyViolation("quasi-trivial torus that is not special");
  if (r.flags.special && !(r.retract_rational && z.trivial))
    throw PropertyViolation("special torus that is not retract rational");
  return r;
}

}  // namespace gammalat
