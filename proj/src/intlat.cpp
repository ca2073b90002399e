#include "twsusp/intlat.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "twsusp/error.hpp"

namespace twsusp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::UnrecognizedPattern: return "UnrecognizedPattern";
    case ErrorKind::InvalidLabelling: return "InvalidLabelling";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NoStop: return "NoStop";
    case ErrorKind::MarginLost: return "MarginLost";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows x cols");
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t dim) {
  IntMatrix m(dim, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "column length differs from lattice dimension");
    }
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
  IntMatrix b(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b(r, c) = (*this)(first + r, c);
  return b;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ',';
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ',';
      out << (*this)(r, c).get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

IntVector SnfDecomposition::invariant_factors() const {
  const std::size_t k = std::min(diag.rows(), diag.cols());
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = diag(i, i);
  return d;
}

namespace {

// SNF that also carries the inverses of the transforms, so unimodular
// inverses never need a separate elimination.
struct SnfWork {
  IntMatrix d, left, left_inv, right, right_inv;
};

SnfWork snf_with_inverses(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
            IntMatrix::identity(n)};
  IntMatrix& d = w.d;

  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    d.add_row_multiple(dst, src, f);
    w.left.add_row_multiple(dst, src, f);
    w.left_inv.add_col_multiple(src, dst, -f);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    d.add_col_multiple(dst, src, f);
    w.right.add_col_multiple(dst, src, f);
    w.right_inv.add_row_multiple(src, dst, -f);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    w.left.swap_rows(x, y);
    w.left_inv.swap_cols(x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    w.right.swap_cols(x, y);
    w.right_inv.swap_rows(x, y);
  };

  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer v = abs(d(i, j));
          if (!pivot || v < best) {
            best = v;
            pivot = {i, j};
          }
        }
      if (!pivot) return w;
      row_swap(t, pivot->first);
      col_swap(t, pivot->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);  // truncating; remainder smaller than pivot
        row_add(i, t, -q);
        if (d(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        col_add(j, t, -q);
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // enforce d_t | every trailing entry
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      w.left.negate_row(t);
      w.left_inv.negate_col(t);
    }
  }
  return w;
}

}  // namespace

SnfDecomposition snf(const IntMatrix& a) {
  SnfWork w = snf_with_inverses(a);
  return SnfDecomposition{std::move(w.left), std::move(w.d), std::move(w.right)};
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
  return a.rows() == a.cols() && abs(determinant(a)) == 1;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!is_unimodular(a)) throw Error(ErrorKind::Precondition, "matrix is not unimodular");
  SnfWork w = snf_with_inverses(a);
  // left * a * right = I  =>  a^{-1} = right * left
  return w.right * w.left;
}

IntMatrix unimodular_extension(const IntMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  if (r > c) throw Error(ErrorKind::DimensionMismatch, "more rows than columns");
  SnfWork w = snf_with_inverses(a);
  for (std::size_t i = 0; i < r; ++i) {
    if (w.d(i, i) != 1) {
      throw Error(ErrorKind::NotGenerating, "columns do not generate Z^" + std::to_string(r));
    }
  }
  IntMatrix block = IntMatrix::identity(c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) block(i, j) = w.left_inv(i, j);
  return block * w.right_inv;
}

Integer divisibility(std::span<const Integer> v) {
  Integer g = 0;
  for (const Integer& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(std::span<const Integer> v) {
  Integer g = divisibility(v);
  if (g == 0) throw Error(ErrorKind::ZeroVector, "primitivity of the zero vector");
  return g == 1;
}

bool extends_to_basis(const std::vector<IntVector>& vs, std::size_t dim) {
  if (vs.empty() || vs.size() > dim) {
    throw Error(ErrorKind::DimensionMismatch, "need between 1 and dim vectors");
  }
  IntMatrix m = IntMatrix::from_columns(vs, dim);
  IntVector d = snf(m).invariant_factors();
  return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

IntVector to_int_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

std::string to_string(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace twsusp
