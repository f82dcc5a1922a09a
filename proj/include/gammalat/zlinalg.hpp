#pragma once

// Exact linear algebra over the integers.
//
// Everything here works on arbitrary-precision entries (GMP); no routine
// overflows, no matter how large intermediate values become.  Matrices are
// dense and row-major.  The normal-form routines follow fixed conventions so
// that their output is reproducible bit for bit:
//
//  * Smith form: the pivot at every step is the nonzero entry of least
//    absolute value in the remaining block, ties broken by row-major position.
//  * Hermite form: row style, positive pivots, entries above a pivot reduced
//    into [0, pivot).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gammalat {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const Integer& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix column_vector(const IntVector& v);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  void set_row(std::size_t i, const IntVector& v);
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix row_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
  IntMatrix col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

  bool is_zero() const;
  bool is_identity() const;
  // Each column holds exactly one entry 1 and zeros elsewhere, and the
  // matrix is square.
  bool is_permutation_matrix() const;
  // Position of the 1 in column j of a permutation matrix.
  std::size_t permutation_image(std::size_t j) const;

  Integer determinant() const;
  Integer max_abs() const;

  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix scaled(const Integer& k) const;
  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);

  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  // Row-major lexicographic comparison on (rows, cols, entries).
  bool operator<(const IntMatrix& o) const;

  std::string to_string() const;
  std::vector<std::vector<long>> to_longs() const;

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const std::vector<IntMatrix>& parts, std::size_t cols);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
  // Kronecker product a ⊗ b.
  static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src], restricted to columns >= from_col.
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k, std::size_t from_col = 0);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k, std::size_t from_row = 0);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector scaled(const IntVector& v, const Integer& k);
bool is_zero(const IntVector& v);
std::string to_string(const IntVector& v);
IntVector int_vector(std::initializer_list<long> xs);

// Finite-or-not abelian group ⊕ Z/d_i ⊕ Z^free_rank with d_1 | d_2 | ...,
// every d_i >= 2.
struct AbelianGroupInvariants {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  bool finite() const { return free_rank == 0; }
  Integer order() const;  // product of torsion; 0 when infinite
  bool operator==(const AbelianGroupInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
  bool operator!=(const AbelianGroupInvariants& o) const { return !(*this == o); }
  // "[2,4]" for torsion only, "[2,4]+Z^3" when a free part exists.
  std::string to_string() const;
  bool is_valid() const;

  // Invariant factors of the direct sum of two groups.
  static AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a,
                                           const AbelianGroupInvariants& b);
  // Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 dropped).
  static AbelianGroupInvariants from_cyclic_orders(const std::vector<Integer>& orders);
};

struct SmithDecomposition {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix V;  // cols x cols, unimodular
  IntMatrix S;  // U * A * V
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;  // the r nonzero invariant factors
};

// U * A * V = S with S diagonal, d_1 | d_2 | ... | d_r > 0.
SmithDecomposition smith_normal_form(const IntMatrix& A);

// The invariant factors and the right transform only.  A * V has columns
// d_i * u_i for i < rank, where u_i extend to a basis of Z^rows, followed by
// zero columns.  Cheaper than the full decomposition for tall matrices.
struct SmithRight {
  std::vector<Integer> diagonal;
  IntMatrix V;
};
SmithRight smith_right(const IntMatrix& A);

// Invariant factors only.
std::vector<Integer> smith_invariants(const IntMatrix& A);

// Row-style Hermite normal form of the row span; zero rows dropped.
IntMatrix hermite_basis(const IntMatrix& spanning_rows);
IntMatrix hermite_basis(const std::vector<IntVector>& spanning_rows, std::size_t dim);

struct RowEchelon {
  IntMatrix H;                 // echelon form, zero rows at the bottom
  IntMatrix T;                 // T * A = H (empty unless requested)
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};
RowEchelon row_echelon(const IntMatrix& A, bool with_transform, bool reduce_above);

// Basis (as columns) of the saturated lattice {x : A x = 0}, in Hermite
// normal form when read as rows.
IntMatrix kernel_basis(const IntMatrix& A);
// Same lattice without the final canonicalization; used by internals that
// only need some basis and care about sparsity.
IntMatrix kernel_basis_raw(const IntMatrix& A);

struct SolveResult {
  std::optional<IntVector> solution;
  // When no solution exists: an explanation in terms of the Smith form
  // U A V = S, naming the coordinate of U b that breaks divisibility.
  std::string obstruction;
  bool solvable() const { return solution.has_value(); }
};
// One integer solution of A x = b, or a certified "none".
// Throws std::invalid_argument on dimension mismatch.
SolveResult solve_integer_system(const IntMatrix& A, const IntVector& b);

// Z^rows / column-span(A).
AbelianGroupInvariants cokernel_invariants(const IntMatrix& A);

IntMatrix inverse_unimodular(const IntMatrix& A);

// Basis of the saturation (Q·span ∩ Z^n) of the column span of A, as columns.
IntMatrix saturation_basis(const IntMatrix& A);

// A sublattice given by a basis of columns, with fast coordinate lookup.
// Coordinates are found by substitution against a column echelon form, so no
// transform of the ambient dimension is ever formed.
class SublatticeBasis {
 public:
  SublatticeBasis() = default;
  explicit SublatticeBasis(IntMatrix basis_columns);

  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.cols(); }
  std::size_t ambient() const { return basis_.rows(); }
  // x with basis * x = v, if v lies in the sublattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

 private:
  IntMatrix basis_;
  IntMatrix echelon_;    // rows are the columns of basis_ * transform_
  IntMatrix transform_;  // r x r unimodular
  std::vector<std::size_t> pivot_rows_;
};

}  // namespace gammalat
