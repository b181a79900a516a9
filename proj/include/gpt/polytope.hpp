#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gpt/linalg.hpp"
#include "gpt/lp.hpp"

namespace gpt {

namespace detail {

/// Positive scaling to a primitive integer vector. Rays are only defined up
/// to positive scale, so the sign pattern is preserved.
inline void canonicalize_ray(Vec& v) {
  using boost::multiprecision::mpz_int;
  mpz_int l = 1;
  for (const Rational& q : v) l = lcm(l, mpz_int(denominator(q)));
  mpz_int g = 0;
  for (Rational& q : v) {
    q *= Rational(l);
    g = gcd(g, mpz_int(numerator(q)));
  }
  if (g > 1)
    for (Rational& q : v) q /= Rational(g);
}

}  // namespace detail

/// Extreme rays of the pointed polyhedral cone {w : Mw ≥ 0} by the double
/// description method: seed with a simplicial subcone from d independent
/// rows, then insert the remaining constraints one at a time, combining
/// adjacent rays across each new hyperplane. Output is canonically scaled
/// and sorted. Throws if the cone is not pointed.
inline std::vector<Vec> extreme_rays(const Mat& m) {
  const std::size_t d = m.cols();
  if (rank(m) != d) throw Error("cone is not pointed; extreme rays undefined");

  // Greedily pick the first d linearly independent rows as the seed.
  std::vector<std::size_t> seed;
  Mat picked;
  for (std::size_t i = 0; i < m.rows() && seed.size() < d; ++i) {
    Mat trial = picked;
    trial.append_row(m.row(i));
    if (rank(trial) == trial.rows()) {
      picked = std::move(trial);
      seed.push_back(i);
    }
  }

  // Rays of the seed cone: columns of picked⁻¹.
  std::vector<Vec> rays;
  for (std::size_t j = 0; j < d; ++j) {
    Vec e(d, Rational(0));
    e[j] = 1;
    Vec r = *solve(picked, e);
    detail::canonicalize_ray(r);
    rays.push_back(std::move(r));
  }

  std::vector<std::size_t> processed = seed;
  // tight[k][i]: ray k saturates processed constraint i
  auto tight_row = [&](const Vec& ray) {
    std::vector<bool> t(processed.size());
    for (std::size_t i = 0; i < processed.size(); ++i)
      t[i] = dot(m.row(processed[i]), ray) == 0;
    return t;
  };
  std::vector<std::vector<bool>> tight;
  for (const Vec& r : rays) tight.push_back(tight_row(r));

  std::vector<bool> in_seed(m.rows(), false);
  for (std::size_t i : seed) in_seed[i] = true;

  for (std::size_t row = 0; row < m.rows(); ++row) {
    if (in_seed[row]) continue;
    Vec normal = m.row(row);
    std::vector<Rational> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) val[k] = dot(normal, rays[k]);

    // Fukuda–Prodon adjacency: r, r' adjacent iff no third ray saturates
    // every constraint they both saturate.
    auto adjacent = [&](std::size_t p, std::size_t q) {
      for (std::size_t w = 0; w < rays.size(); ++w) {
        if (w == p || w == q) continue;
        bool covers = true;
        for (std::size_t i = 0; i < processed.size() && covers; ++i)
          if (tight[p][i] && tight[q][i] && !tight[w][i]) covers = false;
        if (covers) return false;
      }
      return true;
    };

    std::vector<Vec> next;
    std::vector<std::vector<bool>> next_tight;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] >= 0) {
        next.push_back(rays[k]);
        auto t = tight[k];
        t.push_back(val[k] == 0);
        next_tight.push_back(std::move(t));
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (val[q] >= 0 || !adjacent(p, q)) continue;
        Vec combo(d);
        for (std::size_t j = 0; j < d; ++j)
          combo[j] = val[p] * rays[q][j] - val[q] * rays[p][j];
        detail::canonicalize_ray(combo);
        auto t = tight_row(combo);
        t.push_back(true);
        next.push_back(std::move(combo));
        next_tight.push_back(std::move(t));
      }
    }
    processed.push_back(row);
    rays = std::move(next);
    tight = std::move(next_tight);
  }

  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

struct VertexEnumBudget {
  std::size_t max_dim = 64;
  std::size_t max_rows = 512;
};

/// Exact vertex enumeration for the bounded polyhedron
///   P = {x : A x ≤ b, C x = d}.
/// The equality subspace is eliminated first, the remainder is homogenized
/// and handed to the double description cone enumerator. Returns an empty
/// list iff P is empty; vertices come back sorted lexicographically.
inline std::vector<Vec> enumerate_vertices(
    const Mat& a, const Vec& b, const Mat& c, const Vec& d,
    const VertexEnumBudget& budget = {}) {
  const std::size_t n = a.cols() ? a.cols() : c.cols();
  if (n > budget.max_dim)
    throw BudgetExceededError("vertex enumeration: dimension exceeds budget");
  if (a.rows() + c.rows() > budget.max_rows)
    throw BudgetExceededError("vertex enumeration: row count exceeds budget");

  // Parameterize the equality subspace: x = x0 + N z.
  Vec x0(n, Rational(0));
  std::vector<Vec> null_basis;
  if (c.rows() > 0) {
    auto sol = solve(c, d);
    if (!sol) return {};
    x0 = *sol;
    null_basis = nullspace(c);
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      Vec e(n, Rational(0));
      e[j] = 1;
      null_basis.push_back(std::move(e));
    }
  }
  const std::size_t zdim = null_basis.size();

  // Reduced system A' z ≤ b'.
  Mat ared(a.rows(), zdim);
  Vec bred(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Vec arow = a.row(i);
    for (std::size_t j = 0; j < zdim; ++j) ared(i, j) = dot(arow, null_basis[j]);
    bred[i] = b[i] - dot(arow, x0);
  }

  if (zdim == 0) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (bred[i] < 0) return {};
    return {x0};
  }

  // Emptiness check by LP: A'z + s = b', z free (split), s ≥ 0.
  {
    Mat feas(a.rows(), 2 * zdim + a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < zdim; ++j) {
        feas(i, j) = ared(i, j);
        feas(i, zdim + j) = -ared(i, j);
      }
      feas(i, 2 * zdim + i) = 1;
    }
    Vec cost(2 * zdim + a.rows(), Rational(0));
    if (solve_lp(feas, bred, cost).status == LpStatus::Infeasible) return {};
  }

  // Homogenize: rays of {(z,t) : A'z ≤ b' t, t ≥ 0} with t > 0 are vertices.
  Mat cone(a.rows() + 1, zdim + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < zdim; ++j) cone(i, j) = -ared(i, j);
    cone(i, zdim) = bred[i];
  }
  cone(a.rows(), zdim) = 1;

  std::vector<Vec> rays = extreme_rays(cone);
  std::vector<Vec> verts;
  for (const Vec& r : rays) {
    const Rational& t = r[zdim];
    if (t == 0)
      throw Error("polyhedron is unbounded; vertex enumeration undefined");
    Vec x = x0;
    for (std::size_t j = 0; j < zdim; ++j) {
      if (r[j] == 0) continue;
      Rational zj = r[j] / t;
      for (std::size_t i = 0; i < n; ++i) x[i] += zj * null_basis[j][i];
    }
    verts.push_back(std::move(x));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace gpt
