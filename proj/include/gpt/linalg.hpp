#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gpt/rational.hpp"

namespace gpt {

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Dense row-major rational matrix. Deliberately minimal: only the exact
/// operations the library needs (products, elimination, rank, solve,
/// nullspace), all with deterministic first-nonzero pivoting.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return a_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Vec row(std::size_t i) const {
    return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  void append_row(const Vec& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec apply(const Vec& x) const {
    Vec y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Mat mul(const Mat& other) const {
    Mat r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& v = (*this)(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j)
          r(i, j) += v * other(k, j);
      }
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

struct Rref {
  Mat reduced;
  std::vector<std::size_t> pivot_cols;  // one per nonzero row, in row order
  std::size_t rank;
};

/// Reduced row echelon form, pivoting on the first nonzero entry in column
/// order (deterministic; the basis-choice rule used throughout).
inline Rref rref(Mat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return Rref{std::move(m), std::move(pivots), r};
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

/// One solution of A x = b with free variables set to zero, or nullopt when
/// the system is inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Mat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref rr = rref(std::move(aug));
  for (std::size_t k = 0; k < rr.rank; ++k)
    if (rr.pivot_cols[k] == a.cols()) return std::nullopt;
  Vec x(a.cols(), Rational(0));
  for (std::size_t k = 0; k < rr.rank; ++k)
    x[rr.pivot_cols[k]] = rr.reduced(k, a.cols());
  return x;
}

/// Basis of the kernel of A in RREF convention: one vector per free column,
/// emitted in column order.
inline std::vector<Vec> nullspace(const Mat& a) {
  Rref rr = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v(a.cols(), Rational(0));
    v[c] = 1;
    for (std::size_t k = 0; k < rr.rank; ++k)
      v[rr.pivot_cols[k]] = -rr.reduced(k, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gpt
