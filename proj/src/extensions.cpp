#include "gammalat/extensions.hpp"

#include "gammalat/cohomology.hpp"

namespace gammalat {

namespace {

IntMatrix coordinates_of_columns(const SublatticeBasis& sb, const IntMatrix& v, const char* what) {
  IntMatrix out(sb.rank(), v.cols());
  for (std::size_t c = 0; c < v.cols(); ++c) {
    auto y = sb.coordinates(v.column(c));
    if (!y) throw PropertyViolation(what);
    out.set_column(c, *y);
  }
  return out;
}

void check_same_ends(const ExtensionClass& x, const ExtensionClass& y) {
  if (!same_action(*x.quot, *y.quot) || !same_action(*x.sub, *y.sub))
    throw InputError("extension classes have different end terms");
}

}  // namespace

bool is_surjective(const IntMatrix& f) {
  auto d = smith_invariants(f);
  if (d.size() != f.rows()) return false;
  for (const auto& x : d)
    if (x != 1) return false;
  return true;
}

bool is_saturated_injective(const IntMatrix& f) {
  auto d = smith_invariants(f);
  if (d.size() != f.cols()) return false;
  for (const auto& x : d)
    if (x != 1) return false;
  return true;
}

ExactnessCheck verify_exact(const ShortExactSequence& s) {
  auto fail = [](std::string why) { return ExactnessCheck{false, std::move(why)}; };
  if (s.inj.target != s.surj.source && !same_action(*s.inj.target, *s.surj.source))
    return fail("middle terms differ");
  if (!check_equivariant(s.inj.matrix, s.sub(), s.mid()).ok) return fail("inclusion is not equivariant");
  if (!check_equivariant(s.surj.matrix, s.mid(), s.quot()).ok) return fail("projection is not equivariant");
  if (!is_saturated_injective(s.inj.matrix)) return fail("inclusion is not injective onto a saturated sublattice");
  if (!is_surjective(s.surj.matrix)) return fail("projection is not surjective");
  if (!(s.surj.matrix * s.inj.matrix).is_zero()) return fail("composite is not zero");
  if (s.mid()->rank() != s.sub()->rank() + s.quot()->rank()) return fail("ranks do not add up");
  // With the ranks matching and the image saturated, ker(surj) = im(inj).
  return {};
}

bool ExtensionClass::is_cocycle() const {
  const FiniteGroup& g = *quot->group();
  if (values.size() != g.order()) return false;
  for (int x = 0; x < static_cast<int>(g.order()); ++x)
    for (int y = 0; y < static_cast<int>(g.order()); ++y) {
      IntMatrix act = sub->rho(x) * values[static_cast<std::size_t>(y)] * quot->rho(g.inverse(x));
      if (values[static_cast<std::size_t>(g.multiply(x, y))] != values[static_cast<std::size_t>(x)] + act) return false;
    }
  return true;
}

IntVector ExtensionClass::compact() const {
  IntVector out;
  const Subgroup whole = quot->group()->whole();
  for (int s : whole.generators()) {
    IntVector v = vectorize(values[static_cast<std::size_t>(s)]);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

ExtensionClass zero_class(const LatticePtr& a, const LatticePtr& b) {
  return {a, b, std::vector<IntMatrix>(a->group()->order(), IntMatrix(b->rank(), a->rank()))};
}

ExtensionClass class_from_compact(const LatticePtr& a, const LatticePtr& b, const IntVector& compact) {
  auto hom = hom_lattice(a, b);
  Subgroup g = a->group()->whole();
  auto full = expand_cocycle1(g, hom, compact);
  ExtensionClass c{a, b, {}};
  c.values.resize(a->group()->order());
  for (std::size_t p = 0; p < g.order(); ++p)
    c.values[static_cast<std::size_t>(g.members()[p])] = unvectorize(full[p], b->rank(), a->rank());
  return c;
}

ExtensionClass add_classes(const ExtensionClass& x, const ExtensionClass& y) {
  check_same_ends(x, y);
  ExtensionClass out{x.quot, x.sub, x.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += y.values[i];
  return out;
}

ExtensionClass scale_class(const ExtensionClass& x, const Integer& k) {
  ExtensionClass out{x.quot, x.sub, x.values};
  for (auto& v : out.values) v = v.scaled(k);
  return out;
}

bool cohomologous(const ExtensionClass& x, const ExtensionClass& y) {
  check_same_ends(x, y);
  auto diff = add_classes(x, scale_class(y, -1));
  auto hom = hom_lattice(x.quot, x.sub);
  return h1(x.quot->group()->whole(), hom).is_coboundary(diff.compact());
}

IntVector ext_coordinates(const ExtensionClass& x) {
  auto hom = hom_lattice(x.quot, x.sub);
  return h1(x.quot->group()->whole(), hom).class_of(x.compact());
}

ShortExactSequence extension_from_class(const ExtensionClass& c) {
  if (!c.is_cocycle()) throw InputError("extension data does not satisfy the cocycle identity");
  const auto& a = c.quot;
  const auto& b = c.sub;
  const GroupPtr& g = a->group();
  const std::size_t nb = b->rank(), na = a->rank();
  std::vector<IntMatrix> mats;
  for (int s : g->generator_indices()) {
    IntMatrix m(nb + na, nb + na);
    m.set_block(0, 0, b->rho(s));
    m.set_block(0, nb, c.values[static_cast<std::size_t>(s)] * a->rho(s));
    m.set_block(nb, nb, a->rho(s));
    mats.push_back(std::move(m));
  }
  auto mid = make_lattice(g, nb + na, std::move(mats), "ext(" + a->name() + "," + b->name() + ")");
  IntMatrix inj(nb + na, nb), surj(na, nb + na);
  for (std::size_t i = 0; i < nb; ++i) inj(i, i) = 1;
  for (std::size_t i = 0; i < na; ++i) surj(i, nb + i) = 1;
  return {{b, mid, inj}, {mid, a, surj}};
}

IntMatrix linear_section(const LatticeMap& surj) {
  const std::size_t q = surj.matrix.rows();
  IntMatrix s(surj.matrix.cols(), q);
  for (std::size_t c = 0; c < q; ++c) {
    IntVector e(q, 0);
    e[c] = 1;
    auto r = solve_integer_system(surj.matrix, e);
    if (!r.solvable()) throw InputError("projection is not surjective: " + r.obstruction);
    s.set_column(c, *r.solution);
  }
  return s;
}

ExtensionClass class_of_extension(const ShortExactSequence& s, const std::optional<IntMatrix>& section) {
  IntMatrix sigma = section ? *section : linear_section(s.surj);
  if (!(s.surj.matrix * sigma).is_identity()) throw InputError("section is not a right inverse of the projection");
  SublatticeBasis image(s.inj.matrix);
  const GroupPtr& g = s.quot()->group();
  ExtensionClass c{s.quot(), s.sub(), std::vector<IntMatrix>(g->order())};
  for (int x = 0; x < static_cast<int>(g->order()); ++x) {
    IntMatrix d = s.mid()->rho(x) * sigma * s.quot()->rho(g->inverse(x)) - sigma;
    c.values[static_cast<std::size_t>(x)] = coordinates_of_columns(image, d, "section defect leaves the subobject");
  }
  return c;
}

SplitResult is_split(const ShortExactSequence& s, std::size_t max_entries) {
  SplitResult out;
  // π∘σ and the identity are both equivariant, so comparing them on module
  // generators of the quotient suffices.
  IntMatrix gens = module_generators(s.quot());
  MapConstraint c{s.surj.matrix, gens, gens};
  auto sol = s.mid()->has_permutation_action() ? solve_into_permutation(s.quot(), s.mid(), c, max_entries)
                                               : solve_equivariant(s.quot(), s.mid(), {c});
  if (sol.map) out.section = std::move(sol.map);
  else out.refutation = "no equivariant section: " + sol.obstruction;
  return out;
}

EquivalenceResult extensions_equivalent(const ShortExactSequence& s1, const ShortExactSequence& s2) {
  EquivalenceResult out;
  if (!same_action(*s1.sub(), *s2.sub()) || !same_action(*s1.quot(), *s2.quot())) return out;
  auto sol = solve_equivariant(s1.mid(), s2.mid(),
                               {{IntMatrix::identity(s2.mid()->rank()), s1.inj.matrix, s2.inj.matrix},
                                {s2.surj.matrix, IntMatrix::identity(s1.mid()->rank()), s1.surj.matrix}});
  out.middle = std::move(sol.map);
  return out;
}

ExtensionClass baer_sum(const ExtensionClass& c1, const ExtensionClass& c2) { return add_classes(c1, c2); }

ExtensionClass baer_sum_diagram(const ExtensionClass& c1, const ExtensionClass& c2) {
  check_same_ends(c1, c2);
  auto e1 = extension_from_class(c1);
  auto e2 = extension_from_class(c2);
  const auto& a = c1.quot;
  const auto& b = c1.sub;
  // X = E1 ×_A E2 is an extension of A by B ⊕ B.
  auto fp = fiber_product(e1.surj, e2.surj);
  auto bb = direct_sum(b, b);
  const std::size_t nb = b->rank();
  IntMatrix inj_bb(fp.lattice->rank(), 2 * nb);
  {
    IntMatrix big = IntMatrix::block_diagonal(e1.inj.matrix, e2.inj.matrix);
    SublatticeBasis fb(IntMatrix::vstack(fp.q1.matrix, fp.q2.matrix));
    inj_bb = coordinates_of_columns(fb, big, "B ⊕ B does not lie in the fiber product");
  }
  ShortExactSequence x{{bb, fp.lattice, inj_bb}, {fp.lattice, a, e1.surj.matrix * fp.q1.matrix}};
  IntMatrix mu = IntMatrix::hstack(IntMatrix::identity(nb), IntMatrix::identity(nb));
  auto y = pushout_sequence(x, {bb, b, mu});
  return class_of_extension(y);
}

ExtensionClass pushout_extension(const ExtensionClass& c, const LatticeMap& f) {
  if (!check_equivariant(f.matrix, c.sub, f.target).ok) throw InputError("pushout map is not equivariant");
  ExtensionClass out{c.quot, f.target, {}};
  for (const auto& v : c.values) out.values.push_back(f.matrix * v);
  return out;
}

ExtensionClass pullback_extension(const ExtensionClass& c, const LatticeMap& g) {
  if (!check_equivariant(g.matrix, g.source, c.quot).ok) throw InputError("pullback map is not equivariant");
  ExtensionClass out{g.source, c.sub, {}};
  for (const auto& v : c.values) out.values.push_back(v * g.matrix);
  return out;
}

ShortExactSequence pushout_sequence(const ShortExactSequence& s, const LatticeMap& f) {
  if (!check_equivariant(f.matrix, s.sub(), f.target).ok) throw InputError("pushout map is not equivariant");
  const auto& bp = f.target;
  auto sum = direct_sum(bp, s.mid());
  // b ↦ (−f b, inj b)
  IntMatrix anti = IntMatrix::vstack(-f.matrix, s.inj.matrix);
  auto q = quotient_lattice(make_map(s.sub(), sum, anti));
  const std::size_t nbp = bp->rank();
  IntMatrix incl(sum->rank(), nbp);
  for (std::size_t i = 0; i < nbp; ++i) incl(i, i) = 1;
  IntMatrix inj = q.projection.matrix * incl;
  IntMatrix lifted = IntMatrix::hstack(IntMatrix(s.quot()->rank(), nbp), s.surj.matrix);
  IntMatrix surj = lifted * q.section;
  ShortExactSequence out{{bp, q.lattice, inj}, {q.lattice, s.quot(), surj}};
  auto chk = verify_exact(out);
  if (!chk.ok) throw PropertyViolation("pushout sequence is not exact: " + chk.failure);
  return out;
}

ShortExactSequence pullback_sequence(const ShortExactSequence& s, const LatticeMap& g) {
  return pullback_diagram(s, g).sequence;
}

Pullback pullback_diagram(const ShortExactSequence& s, const LatticeMap& g) {
  if (!check_equivariant(g.matrix, g.source, s.quot()).ok) throw InputError("pullback map is not equivariant");
  // E ×_A A′ needs only p1 surjective; build it directly as a kernel.
  IntMatrix sys = IntMatrix::hstack(s.surj.matrix, -g.matrix);
  auto sum = direct_sum(s.mid(), g.source);
  auto k = sublattice(sum, kernel_basis(sys));
  const std::size_t ne = s.mid()->rank();
  IntMatrix q2 = k.matrix.row_range(ne, g.source->rank());
  SublatticeBasis kb(k.matrix);
  IntMatrix emb = IntMatrix::vstack(s.inj.matrix, IntMatrix(g.source->rank(), s.sub()->rank()));
  IntMatrix inj = coordinates_of_columns(kb, emb, "subobject does not lie in the pullback");
  ShortExactSequence out{{s.sub(), k.source, inj}, {k.source, g.source, q2}};
  auto chk = verify_exact(out);
  if (!chk.ok) throw PropertyViolation("pullback sequence is not exact: " + chk.failure);
  return {out, {k.source, s.mid(), k.matrix.row_range(0, ne)}};
}

FiberProduct fiber_product(const LatticeMap& p1, const LatticeMap& p2) {
  if (!same_action(*p1.target, *p2.target)) throw InputError("fiber product maps have different targets");
  if (!is_surjective(p1.matrix) || !is_surjective(p2.matrix)) throw InputError("fiber product maps must be surjective");
  if (!check_equivariant(p1.matrix, p1.source, p1.target).ok || !check_equivariant(p2.matrix, p2.source, p2.target).ok)
    throw InputError("fiber product maps must be equivariant");
  auto sum = direct_sum(p1.source, p2.source);
  auto k = sublattice(sum, kernel_basis(IntMatrix::hstack(p1.matrix, -p2.matrix)));
  const std::size_t n1 = p1.source->rank();
  FiberProduct out;
  out.lattice = k.source;
  out.q1 = {k.source, p1.source, k.matrix.row_range(0, n1)};
  out.q2 = {k.source, p2.source, k.matrix.row_range(n1, p2.source->rank())};
  return out;
}

}  // namespace gammalat
