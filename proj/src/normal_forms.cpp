#include <sstream>
#include <stdexcept>

#include "gammalat/zlinalg.hpp"

namespace gammalat {

namespace {

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const Integer& d, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Smith reduction in place.  U and V (optional) accumulate the row and
// column operations so that U * A_in * V = A_out.
std::vector<Integer> smith_core(IntMatrix& A, IntMatrix* U, IntMatrix* V) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Integer& x = A(i, j);
        if (sgn(x) != 0 && (bi == m || cmpabs(x, A(bi, bj)) < 0)) {
          bi = i;
          bj = j;
          if (cmpabs(x, 1) == 0) goto found;
        }
      }
  found:
    if (bi == m) break;
    A.swap_rows(t, bi);
    if (U) U->swap_rows(t, bi);
    A.swap_cols(t, bj);
    if (V) V->swap_cols(t, bj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(A(i, t)) == 0) continue;
        Integer q = -tdiv(A(i, t), A(t, t));
        A.add_row_multiple(i, t, q, t);
        if (U) U->add_row_multiple(i, t, q);
        if (sgn(A(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(A(t, j)) == 0) continue;
        Integer q = -tdiv(A(t, j), A(t, t));
        A.add_col_multiple(j, t, q, t);
        if (V) V->add_col_multiple(j, t, q);
        if (sgn(A(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        // New pivot: least remainder in row t, then column t (row-major).
        std::size_t pi = t, pj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(A(t, j)) != 0 && cmpabs(A(t, j), A(pi, pj)) < 0) {
            pi = t;
            pj = j;
          }
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(A(i, t)) != 0 && cmpabs(A(i, t), A(pi, pj)) < 0) {
            pi = i;
            pj = t;
          }
        if (pi != t) {
          A.swap_rows(t, pi);
          if (U) U->swap_rows(t, pi);
        } else if (pj != t) {
          A.swap_cols(t, pj);
          if (V) V->swap_cols(t, pj);
        }
        continue;
      }
      // Row and column are clear; enforce divisibility of the rest.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(A(i, j)) != 0 && !divides(A(t, t), A(i, j))) {
            bad = i;
            break;
          }
      if (bad == m) break;
      A.add_row_multiple(t, bad, Integer(1), t);
      if (U) U->add_row_multiple(t, bad, Integer(1));
    }
    if (sgn(A(t, t)) < 0) {
      A.negate_row(t);
      if (U) U->negate_row(t);
    }
    diag.push_back(A(t, t));
  }
  return diag;
}

// Rows of the echelon form of A (no transform), zero rows dropped.  Smith
// invariants and right transforms are unaffected by row operations, so this
// shrinks tall inputs before the quadratic pivot searches.
IntMatrix compress_rows(const IntMatrix& A) {
  if (A.rows() <= A.cols()) return A;
  RowEchelon e = row_echelon(A, false, false);
  return e.H.row_range(0, e.rank());
}

}  // namespace

Integer AbelianGroupInvariants::order() const {
  if (free_rank > 0) return 0;
  Integer o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

std::string AbelianGroupInvariants::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
  os << ']';
  if (free_rank > 0) os << "+Z^" << free_rank;
  return os.str();
}

bool AbelianGroupInvariants::is_valid() const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) return false;
    if (i > 0 && !divides(torsion[i - 1], torsion[i])) return false;
  }
  return true;
}

AbelianGroupInvariants AbelianGroupInvariants::from_cyclic_orders(const std::vector<Integer>& orders) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
  return cokernel_invariants(d);
}

AbelianGroupInvariants AbelianGroupInvariants::direct_sum(const AbelianGroupInvariants& a,
                                                          const AbelianGroupInvariants& b) {
  std::vector<Integer> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  AbelianGroupInvariants r = from_cyclic_orders(orders);
  r.free_rank = a.free_rank + b.free_rank;
  return r;
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  SmithDecomposition out;
  out.S = A;
  out.U = IntMatrix::identity(A.rows());
  out.V = IntMatrix::identity(A.cols());
  out.rank = smith_core(out.S, &out.U, &out.V).size();
  return out;
}

SmithRight smith_right(const IntMatrix& A) {
  IntMatrix work = compress_rows(A);
  SmithRight out;
  out.V = IntMatrix::identity(A.cols());
  out.diagonal = smith_core(work, nullptr, &out.V);
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& A) {
  IntMatrix work = compress_rows(A);
  return smith_core(work, nullptr, nullptr);
}

RowEchelon row_echelon(const IntMatrix& A, bool with_transform, bool reduce_above) {
  RowEchelon out;
  out.H = A;
  IntMatrix& H = out.H;
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (with_transform) out.T = IntMatrix::identity(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (sgn(H(i, c)) != 0 && (p == m || cmpabs(H(i, c), H(p, c)) < 0)) p = i;
      if (p == m) break;
      H.swap_rows(r, p);
      if (with_transform) out.T.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(H(i, c)) == 0) continue;
        Integer q = -tdiv(H(i, c), H(r, c));
        H.add_row_multiple(i, r, q, c);
        if (with_transform) out.T.add_row_multiple(i, r, q);
        if (sgn(H(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(H(r, c)) == 0) continue;
    if (sgn(H(r, c)) < 0) {
      H.negate_row(r);
      if (with_transform) out.T.negate_row(r);
    }
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) {
        if (sgn(H(i, c)) == 0) continue;
        Integer q = -fdiv(H(i, c), H(r, c));
        H.add_row_multiple(i, r, q, c);
        if (with_transform) out.T.add_row_multiple(i, r, q);
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

IntMatrix hermite_basis(const IntMatrix& spanning_rows) {
  RowEchelon e = row_echelon(spanning_rows, false, true);
  return e.H.row_range(0, e.rank());
}

IntMatrix hermite_basis(const std::vector<IntVector>& spanning_rows, std::size_t dim) {
  IntMatrix m(spanning_rows.size(), dim);
  for (std::size_t i = 0; i < spanning_rows.size(); ++i) {
    if (spanning_rows[i].size() != dim) throw std::invalid_argument("hermite_basis: mixed dimensions");
    m.set_row(i, spanning_rows[i]);
  }
  return hermite_basis(m);
}

IntMatrix kernel_basis_raw(const IntMatrix& A) {
  RowEchelon e = row_echelon(A.transpose(), true, false);
  const std::size_t n = A.cols();
  const std::size_t k = n - e.rank();
  return e.T.row_range(e.rank(), k).transpose();
}

namespace {

// Row reduction of W on ±1 pivots among its first `vars` columns, choosing
// the pivot column with the fewest nonzeros.  Afterwards each pivot row is
// e_c plus entries in free columns (and any columns past `vars`), and the
// remaining rows vanish on pivot columns.  Row operations keep the
// solution set of W·(x, −1) = 0, so pivot variables are integral functions
// of the free ones.
struct UnitElimination {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> rest_rows;  // nonzero rows without a unit pivot
};

UnitElimination unit_eliminate(IntMatrix& W, std::size_t vars) {
  const std::size_t m = W.rows();
  UnitElimination out;
  std::vector<char> pivot_col(vars, 0), done(m, 0);
  auto column_weight = [&](std::size_t c) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && sgn(W(i, c)) != 0) ++w;
    return w;
  };
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < m; ++r) {
      if (done[r]) continue;
      std::size_t best = vars, best_weight = 0;
      bool zero_row = true;
      for (std::size_t c = 0; c < vars; ++c) {
        if (pivot_col[c] || sgn(W(r, c)) == 0) continue;
        zero_row = false;
        if (cmpabs(W(r, c), 1) != 0) continue;
        std::size_t w = column_weight(c);
        if (best == vars || w < best_weight) best = c, best_weight = w;
      }
      if (zero_row) {
        // Nothing left on the variables; an rhs entry keeps it in the rest.
        bool rhs_zero = true;
        for (std::size_t c = vars; c < W.cols(); ++c)
          if (sgn(W(r, c)) != 0) rhs_zero = false;
        if (rhs_zero) done[r] = 1;
        continue;
      }
      if (best == vars) continue;
      if (sgn(W(r, best)) < 0) W.negate_row(r);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r || sgn(W(i, best)) == 0) continue;
        Integer q = -W(i, best);
        W.add_row_multiple(i, r, q);
      }
      done[r] = 1;
      pivot_col[best] = 1;
      out.pivots.push_back({r, best});
      progress = true;
    }
  }
  for (std::size_t c = 0; c < vars; ++c)
    if (!pivot_col[c]) out.free_cols.push_back(c);
  for (std::size_t r = 0; r < m; ++r)
    if (!done[r]) out.rest_rows.push_back(r);
  return out;
}

IntMatrix rest_matrix(const IntMatrix& W, const UnitElimination& u) {
  IntMatrix rest(u.rest_rows.size(), u.free_cols.size());
  for (std::size_t i = 0; i < u.rest_rows.size(); ++i)
    for (std::size_t j = 0; j < u.free_cols.size(); ++j) rest(i, j) = W(u.rest_rows[i], u.free_cols[j]);
  return rest;
}

// x on all variables from x on the free columns; rhs_col is the column of b
// in W, or W.cols() when solving the homogeneous system.
IntVector back_substitute(const IntMatrix& W, const UnitElimination& u, const IntVector& free_values,
                          std::size_t vars, std::size_t rhs_col) {
  IntVector x(vars);
  for (std::size_t j = 0; j < u.free_cols.size(); ++j) x[u.free_cols[j]] = free_values[j];
  for (const auto& [r, c] : u.pivots) {
    Integer v = rhs_col < W.cols() ? W(r, rhs_col) : Integer(0);
    for (std::size_t j = 0; j < u.free_cols.size(); ++j)
      if (sgn(W(r, u.free_cols[j])) != 0) v -= W(r, u.free_cols[j]) * free_values[j];
    x[c] = v;
  }
  return x;
}

IntMatrix unit_pivot_kernel(const IntMatrix& A) {
  IntMatrix W = A;
  auto u = unit_eliminate(W, A.cols());
  IntMatrix free_kernel =
      u.rest_rows.empty() ? IntMatrix::identity(u.free_cols.size()) : kernel_basis_raw(rest_matrix(W, u));
  IntMatrix K(A.cols(), free_kernel.cols());
  for (std::size_t k = 0; k < free_kernel.cols(); ++k)
    K.set_column(k, back_substitute(W, u, free_kernel.column(k), A.cols(), W.cols()));
  return K;
}

SolveResult solve_by_echelon(const IntMatrix& A, const IntVector& b);

}  // namespace

IntMatrix kernel_basis(const IntMatrix& A) {
  IntMatrix raw = unit_pivot_kernel(A);
  if (raw.cols() == 0) return raw;
  return hermite_basis(raw.transpose()).transpose();
}

SolveResult solve_integer_system(const IntMatrix& A, const IntVector& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_integer_system: dimension mismatch");
  const std::size_t n = A.cols();
  IntMatrix W(A.rows(), n + 1);
  W.set_block(0, 0, A);
  W.set_column(n, b);
  auto u = unit_eliminate(W, n);
  if (u.pivots.empty()) return solve_by_echelon(A, b);
  IntVector rest_b(u.rest_rows.size());
  for (std::size_t i = 0; i < u.rest_rows.size(); ++i) rest_b[i] = W(u.rest_rows[i], n);
  SolveResult rest = solve_by_echelon(rest_matrix(W, u), rest_b);
  SolveResult out;
  if (rest.solution) out.solution = back_substitute(W, u, *rest.solution, n, n);
  else out.obstruction = rest.obstruction + " after eliminating " + std::to_string(u.pivots.size()) + " unit pivots";
  return out;
}

namespace {

SolveResult solve_by_echelon(const IntMatrix& A, const IntVector& b) {
  const std::size_t n = A.cols();
  RowEchelon e = row_echelon(A.transpose(), true, false);
  IntVector residual = b;
  IntVector y(n);
  bool ok = true;
  for (std::size_t j = 0; j < e.rank() && ok; ++j) {
    const std::size_t p = e.pivot_cols[j];
    const Integer& piv = e.H(j, p);
    if (!divides(piv, residual[p])) {
      ok = false;
      break;
    }
    y[j] = residual[p] / piv;
    for (std::size_t i = p; i < residual.size(); ++i)
      if (sgn(e.H(j, i)) != 0) residual[i] -= y[j] * e.H(j, i);
  }
  SolveResult out;
  if (ok && is_zero(residual)) {
    out.solution = e.T.transpose() * y;
    return out;
  }
  // Certify with the Smith form when it is affordable.
  if (A.rows() <= 400 && A.cols() <= 400) {
    SmithDecomposition s = smith_normal_form(A);
    IntVector ub = s.U * b;
    std::ostringstream os;
    for (std::size_t i = 0; i < ub.size(); ++i) {
      if (i < s.rank) {
        if (!divides(s.S(i, i), ub[i])) {
          os << s.S(i, i) << "*y" << i << " = " << ub[i] << " has no integer solution (Smith coordinates U*A*V = S)";
          break;
        }
      } else if (sgn(ub[i]) != 0) {
        os << "0*y" << i << " = " << ub[i] << " has no solution: b is outside the rational span";
        break;
      }
    }
    out.obstruction = os.str();
  } else {
    out.obstruction = "column echelon substitution failed";
  }
  return out;
}

}  // namespace

AbelianGroupInvariants cokernel_invariants(const IntMatrix& A) {
  std::vector<Integer> d = smith_invariants(A);
  AbelianGroupInvariants g;
  for (const auto& x : d)
    if (x > 1) g.torsion.push_back(x);
  g.free_rank = A.rows() - d.size();
  return g;
}

IntMatrix inverse_unimodular(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse_unimodular: non-square");
  RowEchelon e = row_echelon(A, true, true);
  if (!e.H.is_identity()) throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  return e.T;
}

IntMatrix saturation_basis(const IntMatrix& A) {
  SmithRight s = smith_right(A);
  IntMatrix AV = A * s.V;
  IntMatrix out(A.rows(), s.diagonal.size());
  for (std::size_t j = 0; j < s.diagonal.size(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (sgn(AV(i, j)) == 0) continue;
      mpz_divexact(out(i, j).get_mpz_t(), AV(i, j).get_mpz_t(), s.diagonal[j].get_mpz_t());
    }
  return out;
}

SublatticeBasis::SublatticeBasis(IntMatrix basis_columns) : basis_(std::move(basis_columns)) {
  RowEchelon e = row_echelon(basis_.transpose(), true, false);
  if (e.rank() != basis_.cols()) throw std::invalid_argument("SublatticeBasis: columns are dependent");
  echelon_ = std::move(e.H);
  transform_ = e.T.transpose();
  pivot_rows_ = std::move(e.pivot_cols);
}

std::optional<IntVector> SublatticeBasis::coordinates(const IntVector& v) const {
  if (v.size() != basis_.rows()) throw std::invalid_argument("SublatticeBasis: dimension mismatch");
  IntVector residual = v;
  IntVector y(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t p = pivot_rows_[j];
    const Integer& piv = echelon_(j, p);
    if (!divides(piv, residual[p])) return std::nullopt;
    y[j] = residual[p] / piv;
    if (sgn(y[j]) == 0) continue;
    for (std::size_t i = p; i < residual.size(); ++i)
      if (sgn(echelon_(j, i)) != 0) residual[i] -= y[j] * echelon_(j, i);
  }
  if (!is_zero(residual)) return std::nullopt;
  return transform_ * y;
}

}  // namespace gammalat
