#pragma once

// Exact integer-lattice linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace twsusp {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `dim`).
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t dim);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Integer> entries() const noexcept { return data_; }
  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;

  IntMatrix transpose() const;
  /// Rows [first, first + count).
  IntMatrix row_block(std::size_t first, std::size_t count) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// left * input * right == diag, with left and right unimodular and the
/// diagonal of `diag` nonnegative and divisibility-chained.
struct SnfDecomposition {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;

  /// The min(rows, cols) main-diagonal entries of `diag`.
  IntVector invariant_factors() const;
};

SnfDecomposition snf(const IntMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

bool is_unimodular(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws Precondition if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Square unimodular completion whose top `a.rows()` rows equal `a`.
/// Throws NotGenerating when the columns of `a` do not span Z^rows.
IntMatrix unimodular_extension(const IntMatrix& a);

/// gcd of the entries; 0 for the zero vector.
Integer divisibility(std::span<const Integer> v);

/// True iff the gcd of the entries is 1. Throws ZeroVector on the zero vector.
bool is_primitive(std::span<const Integer> v);

/// True iff the vectors (columns in Z^dim) extend to a basis of Z^dim.
bool extends_to_basis(const std::vector<IntVector>& vs, std::size_t dim);

IntVector to_int_vector(std::initializer_list<long> values);
std::string to_string(std::span<const Integer> v);

}  // namespace twsusp
