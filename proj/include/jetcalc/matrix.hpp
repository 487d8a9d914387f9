#ifndef JETCALC_MATRIX_HPP
#define JETCALC_MATRIX_HPP

#include <optional>
#include <type_traits>
#include <vector>

#include "jetcalc/ratfunc.hpp"

namespace jetcalc {

namespace detail {
inline Q ring_one_like(const Q&) { return 1; }
inline Poly ring_one_like(const Poly& p) { return Poly::constant(p.ctx(), 1); }
inline RatFunc ring_one_like(const RatFunc& f) {
  return RatFunc(Poly::constant(f.num().ctx(), 1));
}
inline Q ring_exact_div(const Q& a, const Q& b) { return a / b; }
inline Poly ring_exact_div(const Poly& a, const Poly& b) { return exact_div(a, b); }
}  // namespace detail

/// Dense exact matrix over Q, Poly, or RatFunc.
template <class T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }
  static Matrix identity(std::size_t n)
    requires std::is_same_v<T, Q>
  {
    return identity(n, Q(1));
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  Matrix operator+(const Matrix& o) const {
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        if (is_zero(at(i, k))) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
      }
    return m;
  }
  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t k = 0; k < e_.size(); ++k)
      if (!(e_[k] == o.e_[k])) return false;
    return true;
  }
  bool is_zero_matrix() const {
    for (const auto& v : e_)
      if (!is_zero(v)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  void append_row(const std::vector<T>& row) {
    if (r_ == 0 && c_ == 0) c_ = row.size();
    e_.insert(e_.end(), row.begin(), row.end());
    ++r_;
  }

 private:
  std::size_t r_, c_;
  std::vector<T> e_;
};

/// Row-reduce in place over the fraction field; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m.at(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    T inv = detail::ring_one_like(m.at(row, col)) / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      T f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t exact_rank(const Matrix<T>& m) {
  Matrix<T> c = m;
  return rref(c).size();
}

/// Basis of the right kernel {v : Mv = 0}; dimension = cols - rank.
template <class T>
std::vector<std::vector<T>> exact_kernel(const Matrix<T>& m) {
  Matrix<T> r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  T one{};
  if constexpr (std::is_same_v<T, Q>) {
    one = 1;
  } else {
    // derive a usable multiplicative unit from matrix content (carries the context)
    bool found = false;
    for (std::size_t i = 0; i < m.rows() && !found; ++i)
      for (std::size_t j = 0; j < m.cols() && !found; ++j)
        if (!is_zero(m.at(i, j))) {
          one = detail::ring_one_like(m.at(i, j));
          found = true;
        }
    if (!found && m.cols() > pivots.size())
      throw std::domain_error("exact_kernel: cannot form unit for all-zero symbolic matrix");
  }
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = one;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = T() - r.at(pr, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of Mx = b, or nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<T> x(m.cols());
  for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(pr, m.cols());
  return x;
}

/// Inverse over the fraction field; throws on singular input.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  T one{};
  if constexpr (std::is_same_v<T, Q>) {
    one = 1;
  } else {
    bool found = false;
    for (std::size_t i = 0; i < m.rows() && !found; ++i)
      for (std::size_t j = 0; j < m.cols() && !found; ++j)
        if (!is_zero(m.at(i, j))) {
          one = detail::ring_one_like(m.at(i, j));
          found = true;
        }
    if (!found) throw std::domain_error("inverse: zero matrix");
  }
  Matrix<T> aug(m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols() + i) = one;
  }
  auto pivots = rref(aug);
  if (pivots.size() != m.rows() || pivots.back() != m.rows() - 1)
    throw std::domain_error("inverse: singular matrix");
  Matrix<T> inv(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) inv.at(i, j) = aug.at(i, m.cols() + j);
  return inv;
}

/// Fraction-free Bareiss determinant for Q or Poly entries.
template <class T>
T bareiss_det(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
  std::size_t n = m.rows();
  if (n == 0) return detail::ring_one_like(T());
  T prev;  // previous pivot; zero-initialized means "1" on first step
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m.at(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m.at(p, k))) ++p;
      if (p == n) return T();
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = (k == 0) ? v : detail::ring_exact_div(v, prev);
      }
    prev = m.at(k, k);
  }
  T d = m.at(n - 1, n - 1);
  return sign < 0 ? T() - d : d;
}

/// Rank via fraction-free elimination (Q or Poly entries).
template <class T>
std::size_t bareiss_rank(Matrix<T> m) {
  std::size_t rank = 0;
  T prev;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m.at(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    for (std::size_t i = row + 1; i < m.rows(); ++i)
      for (std::size_t j = col + 1; j < m.cols(); ++j) {
        T v = m.at(i, j) * m.at(row, col) - m.at(i, col) * m.at(row, j);
        m.at(i, j) = (rank == 0) ? v : detail::ring_exact_div(v, prev);
      }
    for (std::size_t i = row + 1; i < m.rows(); ++i) m.at(i, col) = T();
    prev = m.at(row, col);
    ++rank;
    ++row;
  }
  return rank;
}

using QMatrix = Matrix<Q>;

}  // namespace jetcalc

#endif
