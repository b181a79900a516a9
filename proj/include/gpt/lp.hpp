#pragma once

#include <cstddef>
#include <vector>

#include "gpt/linalg.hpp"

namespace gpt {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;  // when Optimal
  Vec x;               // when Optimal: a basic optimal solution
  Vec farkas;          // when Infeasible: y with yᵀA ≤ 0 and yᵀb > 0
};

/// Exact primal simplex for min cᵀx s.t. Ax = b, x ≥ 0, with Bland's rule
/// (guaranteed termination). Two phases; infeasibility yields a verified
/// Farkas certificate in the row space of the original system.
class Simplex {
 public:
  Simplex(const Mat& a, const Vec& b, const Vec& c)
      : m_(a.rows()), n_(a.cols()), cost_(c), row_sign_(a.rows(), 1) {
    // tableau columns: n structural, m artificial, 1 rhs
    tab_ = Mat(m_, n_ + m_ + 1);
    for (std::size_t i = 0; i < m_; ++i) {
      bool neg = b[i] < 0;
      if (neg) row_sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j)
        tab_(i, j) = neg ? -a(i, j) : a(i, j);
      tab_(i, n_ + i) = 1;
      tab_(i, rhs()) = neg ? -b[i] : b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  LpResult run() {
    // Phase 1: minimize the sum of artificials.
    Vec phase1(n_ + m_, Rational(0));
    for (std::size_t j = n_; j < n_ + m_; ++j) phase1[j] = 1;
    set_objective(phase1);
    iterate(/*allow_artificial=*/true);
    if (-obj_(rhs()) > 0) {
      LpResult r;
      r.status = LpStatus::Infeasible;
      r.farkas = extract_farkas();
      return r;
    }
    drive_out_artificials();

    // Phase 2: the real objective over structural columns only.
    Vec phase2(n_ + m_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    set_objective(phase2);
    bool bounded = iterate(/*allow_artificial=*/false);
    LpResult r;
    if (!bounded) {
      r.status = LpStatus::Unbounded;
      return r;
    }
    r.status = LpStatus::Optimal;
    r.objective = -obj_(rhs());
    r.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.x[basis_[i]] = tab_(i, rhs());
    return r;
  }

 private:
  std::size_t rhs() const { return n_ + m_; }

  void set_objective(const Vec& c) {
    obj_.assign(n_ + m_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_ + m_; ++j) obj_[j] -= cb * tab_(i, j);
    }
  }

  // Bland: entering = lowest-index column with negative reduced cost; leaving
  // = minimal ratio, ties broken by lowest basic variable index.
  bool iterate(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_ + m_ : n_;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_(i, enter) <= 0) continue;
        Rational ratio = tab_(i, rhs()) / tab_(i, enter);
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = Rational(1) / tab_(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) tab_(r, j) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_(i, c) == 0) continue;
      Rational f = tab_(i, c);
      for (std::size_t j = 0; j <= rhs(); ++j) tab_(i, j) -= f * tab_(r, j);
    }
    if (obj_[c] != 0) {
      Rational f = obj_[c];
      for (std::size_t j = 0; j <= rhs(); ++j) obj_[j] -= f * tab_(r, j);
    }
    basis_[r] = c;
  }

  // After a zero-objective phase 1, pivot basic artificials onto structural
  // columns; rows with no structural entry are redundant and dropped.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t c = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (tab_(i, j) != 0) {
          c = j;
          break;
        }
      }
      if (c < n_) {
        pivot(i, c);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  void remove_row(std::size_t r) {
    Mat next(m_ - 1, tab_.cols());
    std::size_t k = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < tab_.cols(); ++j) next(k, j) = tab_(i, j);
      ++k;
    }
    tab_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    row_sign_.erase(row_sign_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  // Dual vector of the phase-1 optimum, mapped back through the row signs.
  // The final reduced cost of artificial k is 1 − y_k.
  Vec extract_farkas() const {
    Vec y(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      y[i] = row_sign_[i] * (Rational(1) - obj_[n_ + i]);
    return y;
  }

  std::size_t m_, n_;
  Vec cost_;
  std::vector<int> row_sign_;
  Mat tab_;
  Vec obj_;
  std::vector<std::size_t> basis_;
};

inline LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c) {
  LpResult r = Simplex(a, b, c).run();
  if (r.status == LpStatus::Infeasible) {
    // A bad certificate would mean a solver bug; fail loudly.
    Rational yb = dot(r.farkas, b);
    if (yb <= 0) throw Error("internal: invalid Farkas certificate (yᵀb)");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational yaj = 0;
      for (std::size_t i = 0; i < a.rows(); ++i) yaj += r.farkas[i] * a(i, j);
      if (yaj > 0) throw Error("internal: invalid Farkas certificate (yᵀA)");
    }
  }
  return r;
}

struct ConeMembership {
  bool inside = false;
  Vec coeffs;     // inside: t = Σ coeffs[i]·gens[i], coeffs ≥ 0
  Vec separator;  // outside: h with h·g ≤ 0 for all generators, h·t > 0
};

/// Exact test for t ∈ cone(gens), with a separating functional on failure.
inline ConeMembership cone_membership(const std::vector<Vec>& gens,
                                      const Vec& t) {
  std::size_t dim = t.size();
  Mat a(dim, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != dim)
      throw DimensionMismatchError("cone generator dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = gens[j][i];
  }
  Vec c(gens.size(), Rational(0));
  LpResult r = solve_lp(a, t, c);
  ConeMembership out;
  if (r.status == LpStatus::Optimal) {
    out.inside = true;
    out.coeffs = r.x;
  } else {
    out.separator = r.farkas;
  }
  return out;
}

struct HullMembership {
  bool inside = false;
  Vec coeffs;          // inside: convex coefficients
  Vec separator;       // outside: h with h·p + offset ≤ 0 on points,
  Rational offset = 0; //          h·t + offset > 0
};

/// Exact test for t ∈ conv(points), with an affine separator on failure.
inline HullMembership hull_membership(const std::vector<Vec>& points,
                                      const Vec& t) {
  std::size_t dim = t.size();
  Mat a(dim + 1, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != dim)
      throw DimensionMismatchError("hull point dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = points[j][i];
    a(dim, j) = 1;
  }
  Vec b = t;
  b.push_back(Rational(1));
  Vec c(points.size(), Rational(0));
  LpResult r = solve_lp(a, b, c);
  HullMembership out;
  if (r.status == LpStatus::Optimal) {
    out.inside = true;
    out.coeffs = r.x;
  } else {
    out.separator.assign(r.farkas.begin(), r.farkas.begin() + dim);
    out.offset = r.farkas[dim];
  }
  return out;
}

}  // namespace gpt
