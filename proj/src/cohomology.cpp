#include "gammalat/cohomology.hpp"

#include <algorithm>

namespace gammalat {

namespace {

Integer mod_floor(const Integer& a, const Integer& d) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

void copy_into(IntVector& dst, std::size_t offset, const IntVector& src) {
  for (std::size_t a = 0; a < src.size(); ++a) dst[offset + a] = src[a];
}

IntVector slice(const IntVector& v, std::size_t offset, std::size_t n) {
  return IntVector(v.begin() + static_cast<std::ptrdiff_t>(offset), v.begin() + static_cast<std::ptrdiff_t>(offset + n));
}

// Coordinates of the columns of `vectors` in the lattice spanned by `basis`
// (both as columns); throws if some column lies outside.
IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& vectors) {
  SublatticeBasis sb(basis);
  IntMatrix out(basis.cols(), vectors.cols());
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    auto y = sb.coordinates(vectors.column(c));
    if (!y) throw PropertyViolation("vector expected in sublattice is missing");
    out.set_column(c, *y);
  }
  return out;
}

IntMatrix norm_matrix(const Subgroup& h, const LatticePtr& m) {
  IntMatrix n(m->rank(), m->rank());
  for (int g : h.members()) n += m->rho(g);
  return n;
}

void check_local(const Subgroup& h, const LatticePtr& m) {
  if (h.parent() != m->group()) throw InputError("subgroup belongs to a different group than the lattice");
}

}  // namespace

WordTree word_tree(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  WordTree t;
  t.parent.assign(h.order(), -2);
  t.gen.assign(h.order(), -1);
  t.parent[0] = -1;
  t.order.push_back(0);
  for (std::size_t k = 0; k < t.order.size(); ++k) {
    int cur = h.members()[static_cast<std::size_t>(t.order[k])];
    for (std::size_t j = 0; j < h.generators().size(); ++j) {
      int nxt = h.position(g.multiply(cur, h.generators()[j]));
      if (t.parent[static_cast<std::size_t>(nxt)] != -2) continue;
      t.parent[static_cast<std::size_t>(nxt)] = t.order[k];
      t.gen[static_cast<std::size_t>(nxt)] = static_cast<int>(j);
      t.order.push_back(nxt);
    }
  }
  return t;
}

CohomologyGroup::CohomologyGroup(int degree, Subgroup h, LatticePtr m, IntMatrix coboundary_matrix)
    : degree_(degree), h_(std::move(h)), m_(std::move(m)), coboundary_(std::move(coboundary_matrix)) {
  const std::size_t amb = coboundary_.rows();
  if (amb == 0 || coboundary_.cols() == 0) {
    cocycles_ = SublatticeBasis(IntMatrix(amb, 0));
    return;
  }
  SmithRight sr = smith_right(coboundary_);
  IntMatrix image = coboundary_ * sr.V;
  const std::size_t r = sr.diagonal.size();
  IntMatrix basis(amb, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t a = 0; a < amb; ++a) {
      Integer q;
      mpz_divexact(q.get_mpz_t(), image(a, i).get_mpz_t(), sr.diagonal[i].get_mpz_t());
      basis(a, i) = q;
    }
    if (sr.diagonal[i] > 1) {
      if (orders_.empty()) first_torsion_ = i;
      orders_.push_back(sr.diagonal[i]);
      generators_.push_back(basis.column(i));
    }
  }
  if (orders_.empty()) first_torsion_ = r;
  cocycles_ = SublatticeBasis(std::move(basis));
  structure_.torsion = orders_;
}

IntVector CohomologyGroup::class_of(const IntVector& compact) const {
  if (compact.size() != ambient()) throw InputError("cocycle has wrong length");
  auto y = cocycles_.coordinates(compact);
  if (!y) throw InputError("vector is not a cocycle");
  IntVector out(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = mod_floor((*y)[first_torsion_ + i], orders_[i]);
  return out;
}

bool CohomologyGroup::is_coboundary(const IntVector& compact) const {
  auto c = class_of(compact);
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

IntVector CohomologyGroup::representative(const IntVector& class_coords) const {
  IntVector v(ambient(), 0);
  for (std::size_t i = 0; i < generators_.size() && i < class_coords.size(); ++i)
    v = v + scaled(generators_[i], class_coords[i]);
  return v;
}

CohomologyGroup h1(const Subgroup& h, const LatticePtr& m) {
  check_local(h, m);
  const std::size_t n = m->rank();
  const auto& gens = h.generators();
  IntMatrix b(gens.size() * n, n);
  for (std::size_t j = 0; j < gens.size(); ++j) b.set_block(j * n, 0, m->rho(gens[j]) - IntMatrix::identity(n));
  return CohomologyGroup(1, h, m, std::move(b));
}

CohomologyGroup h2(const Subgroup& h, const LatticePtr& m, const CohomologyLimits& limits) {
  check_local(h, m);
  if (h.order() > limits.h2_max_order)
    throw CapExceeded("H^2 over a subgroup of order " + std::to_string(h.order()) + " exceeds the cap " +
                      std::to_string(limits.h2_max_order) + "; raise the H2 cap to compute it");
  const FiniteGroup& grp = *h.parent();
  const std::size_t n = m->rank();
  const std::size_t q = h.order() - 1;
  const auto& gens = h.generators();
  const std::size_t k = gens.size();
  // Row block (g, s_j), g ≠ e; column block b(x), x ≠ e.
  // δb(g, s) = g·b(s) − b(gs) + b(g).
  IntMatrix b(q * k * n, q * n);
  for (std::size_t gp = 1; gp <= q; ++gp) {
    int g = h.members()[gp];
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t row = ((gp - 1) * k + j) * n;
      int s = gens[j];
      auto add = [&](std::size_t pos, const IntMatrix& blk, long sign) {
        if (pos == 0) return;
        std::size_t col = (pos - 1) * n;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t c = 0; c < n; ++c)
            if (sign > 0) b(row + a, col + c) += blk(a, c);
            else b(row + a, col + c) -= blk(a, c);
      };
      const IntMatrix id = IntMatrix::identity(n);
      add(static_cast<std::size_t>(h.position(s)), m->rho(g), 1);
      add(static_cast<std::size_t>(h.position(grp.multiply(g, s))), id, -1);
      add(gp, id, 1);
    }
  }
  return CohomologyGroup(2, h, m, std::move(b));
}

std::vector<IntVector> expand_cocycle1(const Subgroup& h, const LatticePtr& m, const IntVector& compact) {
  const std::size_t n = m->rank();
  WordTree t = word_tree(h);
  std::vector<IntVector> f(h.order(), IntVector(n, 0));
  for (std::size_t k = 1; k < t.order.size(); ++k) {
    int pos = t.order[k];
    int par = t.parent[static_cast<std::size_t>(pos)];
    int j = t.gen[static_cast<std::size_t>(pos)];
    int parent_elem = h.members()[static_cast<std::size_t>(par)];
    f[static_cast<std::size_t>(pos)] =
        f[static_cast<std::size_t>(par)] + m->rho(parent_elem) * slice(compact, static_cast<std::size_t>(j) * n, n);
  }
  return f;
}

std::vector<std::vector<IntVector>> expand_cocycle2(const Subgroup& h, const LatticePtr& m, const IntVector& compact) {
  const FiniteGroup& grp = *h.parent();
  const std::size_t n = m->rank();
  const std::size_t order = h.order();
  const std::size_t k = h.generators().size();
  auto gen_value = [&](std::size_t gp, std::size_t j) -> IntVector {
    if (gp == 0) return IntVector(n, 0);
    return slice(compact, ((gp - 1) * k + j) * n, n);
  };
  WordTree t = word_tree(h);
  std::vector<std::vector<IntVector>> c(order, std::vector<IntVector>(order, IntVector(n, 0)));
  // c(g, h's) = c(g, h') + c(gh', s) − g·c(h', s)
  for (std::size_t idx = 1; idx < t.order.size(); ++idx) {
    std::size_t hp = static_cast<std::size_t>(t.order[idx]);
    std::size_t par = static_cast<std::size_t>(t.parent[hp]);
    std::size_t j = static_cast<std::size_t>(t.gen[hp]);
    int hprime = h.members()[par];
    IntVector c_hprime_s = gen_value(par, j);
    for (std::size_t gp = 0; gp < order; ++gp) {
      if (gp == 0) continue;
      int g = h.members()[gp];
      std::size_t ghp = static_cast<std::size_t>(h.position(grp.multiply(g, hprime)));
      c[gp][hp] = c[gp][par] + gen_value(ghp, j) - m->rho(g) * c_hprime_s;
    }
  }
  return c;
}

IntVector compact_from_full1(const Subgroup& h, const std::vector<IntVector>& f, const Subgroup& k) {
  std::size_t n = f.empty() ? 0 : f[0].size();
  IntVector out(k.generators().size() * n);
  for (std::size_t j = 0; j < k.generators().size(); ++j)
    copy_into(out, j * n, f[static_cast<std::size_t>(h.position(k.generators()[j]))]);
  return out;
}

IntVector compact_from_full2(const Subgroup& h, const std::vector<std::vector<IntVector>>& c, const Subgroup& k) {
  std::size_t n = c.empty() || c[0].empty() ? 0 : c[0][0].size();
  const std::size_t kg = k.generators().size();
  IntVector out((k.order() - 1) * kg * n);
  for (std::size_t gp = 1; gp < k.order(); ++gp) {
    std::size_t hg = static_cast<std::size_t>(h.position(k.members()[gp]));
    for (std::size_t j = 0; j < kg; ++j)
      copy_into(out, ((gp - 1) * kg + j) * n, c[hg][static_cast<std::size_t>(h.position(k.generators()[j]))]);
  }
  return out;
}

AbelianGroupInvariants h1_reference(const Subgroup& h, const LatticePtr& m) {
  check_local(h, m);
  const FiniteGroup& grp = *h.parent();
  const std::size_t n = m->rank();
  const std::size_t q = h.order();
  // Unknowns f(x) for every member x; equations f(gk) − f(g) − g·f(k) = 0.
  IntMatrix sys(q * q * n, q * n);
  for (std::size_t gp = 0; gp < q; ++gp)
    for (std::size_t kp = 0; kp < q; ++kp) {
      int g = h.members()[gp];
      std::size_t row = (gp * q + kp) * n;
      std::size_t gk = static_cast<std::size_t>(h.position(grp.multiply(g, h.members()[kp])));
      for (std::size_t a = 0; a < n; ++a) {
        sys(row + a, gk * n + a) += 1;
        sys(row + a, gp * n + a) -= 1;
        for (std::size_t c = 0; c < n; ++c) sys(row + a, kp * n + c) -= m->rho(g)(a, c);
      }
    }
  IntMatrix z = kernel_basis(sys);
  IntMatrix bnd(q * n, n);
  for (std::size_t gp = 0; gp < q; ++gp) bnd.set_block(gp * n, 0, m->rho(h.members()[gp]) - IntMatrix::identity(n));
  if (z.cols() == 0) return {};
  return cokernel_invariants(coordinates_in(z, bnd));
}

AbelianGroupInvariants h2_reference(const Subgroup& h, const LatticePtr& m) {
  check_local(h, m);
  const FiniteGroup& grp = *h.parent();
  const std::size_t n = m->rank();
  const std::size_t q = h.order() - 1;
  if (q == 0) return {};
  auto idx = [&](std::size_t gp, std::size_t kp) { return ((gp - 1) * q + (kp - 1)) * n; };
  auto pos = [&](int x) { return static_cast<std::size_t>(h.position(x)); };
  // g·c(k,l) − c(gk,l) + c(g,kl) − c(g,k) = 0 over all triples of non-identity elements.
  IntMatrix sys(q * q * q * n, q * q * n);
  std::size_t row = 0;
  for (std::size_t gp = 1; gp <= q; ++gp)
    for (std::size_t kp = 1; kp <= q; ++kp)
      for (std::size_t lp = 1; lp <= q; ++lp, row += n) {
        int g = h.members()[gp], k = h.members()[kp], l = h.members()[lp];
        std::size_t gk = pos(grp.multiply(g, k)), kl = pos(grp.multiply(k, l));
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t c = 0; c < n; ++c) sys(row + a, idx(kp, lp) + c) += m->rho(g)(a, c);
          if (gk != 0) sys(row + a, idx(gk, lp) + a) -= 1;
          if (kl != 0) sys(row + a, idx(gp, kl) + a) += 1;
          sys(row + a, idx(gp, kp) + a) -= 1;
        }
      }
  IntMatrix z = kernel_basis(sys);
  // δb(g,k) = g·b(k) − b(gk) + b(g)
  IntMatrix bnd(q * q * n, q * n);
  for (std::size_t gp = 1; gp <= q; ++gp)
    for (std::size_t kp = 1; kp <= q; ++kp) {
      int g = h.members()[gp], k = h.members()[kp];
      std::size_t r = idx(gp, kp);
      std::size_t gk = pos(grp.multiply(g, k));
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < n; ++c) bnd(r + a, (kp - 1) * n + c) += m->rho(g)(a, c);
        if (gk != 0) bnd(r + a, (gk - 1) * n + a) -= 1;
        bnd(r + a, (gp - 1) * n + a) += 1;
      }
    }
  if (z.cols() == 0) return {};
  return cokernel_invariants(coordinates_in(z, bnd));
}

AbelianGroupInvariants tate_zero(const Subgroup& h, const LatticePtr& m) {
  check_local(h, m);
  IntMatrix fixed = fixed_sublattice(m, h);
  if (fixed.cols() == 0) return {};
  return cokernel_invariants(coordinates_in(fixed, norm_matrix(h, m)));
}

AbelianGroupInvariants tate_minus1(const Subgroup& h, const LatticePtr& m) {
  check_local(h, m);
  const std::size_t n = m->rank();
  IntMatrix ker = kernel_basis(norm_matrix(h, m));
  if (ker.cols() == 0) return {};
  std::vector<IntMatrix> parts;
  for (int s : h.generators()) parts.push_back(m->rho(s) - IntMatrix::identity(n));
  IntMatrix aug(n, 0);
  for (const auto& p : parts) aug = IntMatrix::hstack(aug, p);
  return cokernel_invariants(coordinates_in(ker, aug));
}

AbelianGroupInvariants tate(int i, const Subgroup& h, const LatticePtr& m) {
  if (i == 0) return tate_zero(h, m);
  if (i == -1) return tate_minus1(h, m);
  throw InputError("Tate degree must be -1 or 0");
}

AbelianGroupInvariants ext1(const LatticePtr& a, const LatticePtr& b) {
  auto hom = hom_lattice(a, b);
  return h1(hom->group()->whole(), hom).structure();
}

RestrictionKernel restriction_kernel(int degree, const LatticePtr& m, const std::vector<Subgroup>& locals,
                                     const CohomologyLimits& limits) {
  if (degree != 1 && degree != 2) throw InputError("restriction kernels are available in degrees 1 and 2");
  for (const auto& k : locals)
    if (k.parent() != m->group()) throw InputError("local subgroup belongs to a different group");
  Subgroup g = m->group()->whole();
  RestrictionKernel out;
  out.ambient = degree == 1 ? h1(g, m) : h2(g, m, limits);
  const auto& gens = out.ambient.torsion_generators();
  const auto& d = out.ambient.structure().torsion;
  const std::size_t t = gens.size();
  if (t == 0) return out;

  // Φ: local class coordinates of each generator; moduli e.
  std::vector<IntVector> columns(t);
  std::vector<Integer> moduli;
  for (const auto& k : locals) {
    CohomologyGroup local = degree == 1 ? h1(k, m) : h2(k, m, limits);
    for (const auto& e : local.structure().torsion) moduli.push_back(e);
    for (std::size_t i = 0; i < t; ++i) {
      IntVector res = degree == 1 ? compact_from_full1(g, expand_cocycle1(g, m, gens[i]), k)
                                  : compact_from_full2(g, expand_cocycle2(g, m, gens[i]), k);
      IntVector cls = local.class_of(res);
      columns[i].insert(columns[i].end(), cls.begin(), cls.end());
    }
  }
  const std::size_t r = moduli.size();
  // {x : Φx ≡ 0 mod e} is the projection of ker [Φ | diag(e)].
  IntMatrix kb;
  if (r == 0) {
    kb = IntMatrix::identity(t);
  } else {
    IntMatrix sys(r, t + r);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t l = 0; l < r; ++l) sys(l, i) = columns[i][l];
    for (std::size_t l = 0; l < r; ++l) sys(l, t + l) = moduli[l];
    IntMatrix ker = kernel_basis(sys);
    kb = hermite_basis(ker.row_range(0, t).transpose()).transpose();
  }
  // Ш ≅ K / diag(d).
  IntMatrix y = coordinates_in(kb, IntMatrix::diagonal(d));
  auto inv = cokernel_invariants(y);
  out.structure = inv;
  for (std::size_t c = 0; c < kb.cols(); ++c) {
    IntVector cocycle = out.ambient.representative(kb.column(c));
    if (!out.ambient.is_coboundary(cocycle)) out.generators.push_back(cocycle);
  }
  return out;
}

}  // namespace gammalat
