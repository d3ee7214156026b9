#pragma once

// Dense exact linear algebra: a small row-major matrix template, Gaussian
// elimination over an exact field (Rational or a prime field), and integer
// lattice routines (Smith invariants, saturated kernels).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clustercat/rational.hpp"

namespace clustercat {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix{};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = row(r);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("Matrix: shape mismatch in product");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch in sum");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == T{}; });
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using QMatrix = Matrix<Rational>;

// Element of the prime field F_p with p = 2^61 - 1.
class ModP {
 public:
  static constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

  constexpr ModP() = default;
  ModP(std::int64_t v) {  // NOLINT(implicit)
    __int128 r = v % static_cast<__int128>(kPrime);
    if (r < 0) r += kPrime;
    v_ = static_cast<std::uint64_t>(r);
  }

  std::uint64_t value() const { return v_; }

  friend ModP operator+(ModP a, ModP b) { return raw((a.v_ + b.v_) % kPrime); }
  friend ModP operator-(ModP a, ModP b) { return raw((a.v_ + kPrime - b.v_) % kPrime); }
  ModP operator-() const { return raw((kPrime - v_) % kPrime); }
  friend ModP operator*(ModP a, ModP b) {
    return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % kPrime));
  }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator+=(ModP o) { return *this = *this + o; }
  ModP& operator-=(ModP o) { return *this = *this - o; }
  ModP& operator*=(ModP o) { return *this = *this * o; }
  ModP& operator/=(ModP o) { return *this = *this / o; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  bool is_zero() const { return v_ == 0; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
    return pow(kPrime - 2);
  }

  ModP pow(std::uint64_t e) const {
    ModP base = *this, acc = raw(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

 private:
  static ModP raw(std::uint64_t v) {
    ModP m;
    m.v_ = v;
    return m;
  }
  std::uint64_t v_ = 0;
};

template <class F>
struct Echelon {
  Matrix<F> reduced;                     // reduced row echelon form
  std::vector<std::size_t> pivot_cols;   // one per nonzero row, increasing
  std::size_t rank() const { return pivot_cols.size(); }
};

template <class F>
Echelon<F> row_reduce(Matrix<F> m) {
  Echelon<F> out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!(m(i, c) == F{})) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j)
      if (!(m(r, j) == F{})) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == F{}) continue;
      const F factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!(m(r, j) == F{})) m(i, j) -= factor * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).rank();
}

// Basis of {x : m x = 0}, one vector per free column of the echelon form.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m) {
  const auto ech = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols);
    v[free] = F(1);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix<F> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  return out;
}

template <class F>
F determinant(Matrix<F> m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!(m(i, c) == F{})) {
        piv = i;
        break;
      }
    if (piv == n) return F{};
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const F inv = F(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == F{}) continue;
      const F factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

// Coordinates of v in the span of the given vectors, if it lies there.
template <class F>
std::optional<std::vector<F>> coordinates(const std::vector<std::vector<F>>& basis, const std::vector<F>& v) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  Matrix<F> aug(n, k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != n) throw std::invalid_argument("coordinates: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
  const auto ech = row_reduce(std::move(aug));
  std::vector<F> coeffs(k);
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const std::size_t c = ech.pivot_cols[r];
    if (c == k) return std::nullopt;
    coeffs[c] = ech.reduced(r, k);
  }
  return coeffs;
}

QMatrix to_rational(const IntMatrix& m);

// Converts a rational matrix with integral entries; throws otherwise.
IntMatrix to_integer(const QMatrix& m);

// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<std::int64_t> smith_invariants(const IntMatrix& m);

// Basis of the full integer kernel {x in Z^n : m x = 0}. The basis spans a
// saturated sublattice: its Smith invariants are all 1.
std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& m);

}  // namespace clustercat
