#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "idempotoric/error.hpp"
#include "idempotoric/integer.hpp"

namespace idempotoric {

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size())
    throw ValidationError("dot product of vectors with lengths " +
                          std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

/// gcd of all entries; 0 for the zero vector.
inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Divides out the content; the zero vector is returned unchanged.
inline IntegerVector primitive(IntegerVector v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Smallest positive integer multiple of a rational vector, made primitive.
inline IntegerVector primitive_integer_multiple(const RationalVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
  IntegerVector out;
  out.reserve(v.size());
  for (const auto& x : v)
    out.push_back(boost::multiprecision::numerator(x) *
                  (den / boost::multiprecision::denominator(x)));
  return primitive(std::move(out));
}

/// Dense integer matrix, row-major. Lattices are row spans throughout.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Stacks vectors as rows. `cols` is needed to shape an empty list.
  static IntegerMatrix from_rows(std::span<const IntegerVector> rows,
                                 std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw ValidationError("row " + std::to_string(i) + " has length " +
                              std::to_string(rows[i].size()) + ", expected " +
                              std::to_string(cols));
      std::copy(rows[i].begin(), rows[i].end(), m.row_begin(i));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Integer> row_span(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Integer> row_span(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  IntegerVector row(std::size_t r) const {
    auto s = row_span(r);
    return {s.begin(), s.end()};
  }
  std::vector<IntegerVector> row_vectors() const {
    std::vector<IntegerVector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Rows [begin, end) as a new matrix.
  IntegerMatrix row_block(std::size_t begin, std::size_t end) const {
    IntegerMatrix m(end - begin, cols_);
    std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_,
              m.data_.begin());
    return m;
  }

  // Elementary row and column operations.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_begin(a), row_begin(a) + cols_, row_begin(b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  void negate_row(std::size_t r) {
    for (auto& x : row_span(r)) x = -x;
  }
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  /// (row a, row b) <- (x*a + y*b, z*a + w*b)
  void combine_rows(std::size_t a, std::size_t b, const Integer& x,
                    const Integer& y, const Integer& z, const Integer& w) {
    for (std::size_t c = 0; c < cols_; ++c) {
      Integer va = (*this)(a, c), vb = (*this)(b, c);
      (*this)(a, c) = x * va + y * vb;
      (*this)(b, c) = z * va + w * vb;
    }
  }

  bool operator==(const IntegerMatrix&) const = default;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_)
      throw ValidationError("matrix product shape mismatch: " +
                            std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                            " times " + std::to_string(b.rows_) + "x" +
                            std::to_string(b.cols_));
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::vector<Integer>::iterator row_begin(std::size_t r) {
    return data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row vector times matrix.
inline IntegerVector operator*(std::span<const Integer> v, const IntegerMatrix& m) {
  if (v.size() != m.rows())
    throw ValidationError("vector-matrix shape mismatch");
  IntegerVector out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += v[r] * m(r, c);
  }
  return out;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Rank over the rationals by fraction-free elimination.
inline std::size_t rank(IntegerMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer a = m(r, c), b = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * a - m(r, j) * b;
      auto g = content(m.row_span(i));
      if (g > 1)
        for (auto& x : m.row_span(i)) x /= g;
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of_vectors(std::span<const IntegerVector> vs, std::size_t dim) {
  return rank(IntegerMatrix::from_rows(vs, dim));
}

}  // namespace idempotoric
