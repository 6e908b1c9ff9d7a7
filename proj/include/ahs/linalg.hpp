#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ahs {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix, row-major. Shape is fixed at construction.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Builds a rows x cols.size() matrix whose j-th column is cols[j].
  static IntMatrix from_columns(std::span<const IntVector> cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  /// Columns [first, first + count).
  IntMatrix column_block(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  bool is_zero() const;

  IntVector operator*(const IntVector& v) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ... | dr, then zeros.
struct SNFDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  IntVector diagonal() const;
};

/// Finitely generated abelian group Z^free_rank + Z/d1 + ... + Z/dk in invariant-factor form.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each >= 2, successive divisibility

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  /// "0", "Z^5", "Z_2^6", "Z^2 + Z_2 + Z_4", ...
  std::string to_string() const;

  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// W * A = H with H in row Hermite normal form: echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). H is unique for the row lattice of A.
struct HermiteDecomposition {
  IntMatrix W;
  IntMatrix H;
  std::size_t rank = 0;
};

SNFDecomposition snf(const IntMatrix& a);
HermiteDecomposition hermite(const IntMatrix& a);

/// Cokernel of A viewed as a map into Z^rows.
AbelianGroup cokernel(const IntMatrix& a);
/// Canonical basis (columns) of the integer kernel of A: the Hermite basis of the kernel lattice.
IntMatrix kernel_basis(const IntMatrix& a);

bool is_primitive(std::span<const Integer> v);
/// Square unimodular matrix whose first column is v. Throws std::invalid_argument unless v is primitive.
IntMatrix complete_to_basis(std::span<const Integer> v);
/// True iff the vectors span Z^ambient_rank over the integers.
bool generates(std::span<const IntVector> vectors, std::size_t ambient_rank);

Integer determinant(const IntMatrix& a);
/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);
/// For K with saturated column lattice (SNF diagonal all ones), returns P with P * K = I.
IntMatrix left_inverse(const IntMatrix& k);

Integer gcd_of(std::span<const Integer> v);
IntVector to_integers(std::initializer_list<long> values);

}  // namespace ahs
