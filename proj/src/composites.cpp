#include "gpt/composites.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gpt {

void validate_joint_weight(const JointWeight& w) {
  const TestSpace& sa = w.a->space;
  const TestSpace& sb = w.b->space;
  if (w.table.rows() != sa.outcome_count() ||
      w.table.cols() != sb.outcome_count())
    throw DimensionMismatchError("joint weight table has wrong shape");
  for (std::size_t i = 0; i < w.table.rows(); ++i)
    for (std::size_t j = 0; j < w.table.cols(); ++j)
      if (w.table(i, j) < 0)
        throw NotAWeightError("joint weight has a negative entry");
  for (const OutcomeSet& e : sa.tests())
    for (const OutcomeSet& f : sb.tests()) {
      Rational s = 0;
      for (int x : e)
        for (int y : f) s += w.table(x, y);
      if (s != 1)
        throw NotAWeightError("joint weight not normalized on " +
                              sa.render(e) + "×" + sb.render(f));
    }
}

namespace {

// all two-stage tests ⋃_{x∈E} {x}×F_x, τ ranging over M(B)^E
void forward_tests(const TestSpace& a, const TestSpace& b,
                   const std::map<std::string, int>& pair_index, bool swap,
                   std::uint64_t cap, std::set<OutcomeSet>& out) {
  std::uint64_t total = 0;
  for (const OutcomeSet& e : a.tests()) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < e.size(); ++k) {
      count *= b.test_count();
      if (count > cap) throw BudgetExceededError("two-stage test budget");
    }
    total += count;
    if (total > cap) throw BudgetExceededError("two-stage test budget");
  }
  for (const OutcomeSet& e : a.tests()) {
    std::vector<std::size_t> choice(e.size(), 0);
    for (;;) {
      OutcomeSet test;
      for (std::size_t k = 0; k < e.size(); ++k) {
        const OutcomeSet& f = b.tests()[choice[k]];
        for (int y : f) {
          const std::string& xl = a.label(e[k]);
          const std::string& yl = b.label(y);
          test.push_back(pair_index.at(swap ? pair_label(yl, xl)
                                            : pair_label(xl, yl)));
        }
      }
      std::sort(test.begin(), test.end());
      out.insert(std::move(test));
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == b.test_count()) {
        choice[k] = 0;
        ++k;
      }
      if (k == choice.size()) break;
    }
  }
}

std::map<std::string, int> product_index(const TestSpace& prod) {
  std::map<std::string, int> index;
  for (const Outcome& o : prod.outcomes()) index[o.id] = o.index;
  return index;
}

std::vector<std::string> product_labels(const TestSpace& a,
                                        const TestSpace& b) {
  std::vector<std::string> labels;
  for (const Outcome& x : a.outcomes())
    for (const Outcome& y : b.outcomes())
      labels.push_back(pair_label(x.id, y.id));
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

TestSpace forward_product(const TestSpace& a, const TestSpace& b,
                          const Budget& budget) {
  std::vector<std::string> labels = product_labels(a, b);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = static_cast<int>(i);
  std::set<OutcomeSet> tests;
  forward_tests(a, b, index, /*swap=*/false, budget.event_subsets, tests);
  return TestSpace::from_indexed(
      labels, std::vector<OutcomeSet>(tests.begin(), tests.end()));
}

TestSpace bilateral_product(const TestSpace& a, const TestSpace& b,
                            const Budget& budget) {
  std::vector<std::string> labels = product_labels(a, b);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = static_cast<int>(i);
  std::set<OutcomeSet> tests;
  forward_tests(a, b, index, /*swap=*/false, budget.event_subsets, tests);
  forward_tests(b, a, index, /*swap=*/true, budget.event_subsets, tests);
  return TestSpace::from_indexed(
      labels, std::vector<OutcomeSet>(tests.begin(), tests.end()));
}

Mat forward_product_weight(const Model& a, const Model& b, const Vec& alpha,
                           const Transition& tau) {
  const TestSpace& sa = a.space;
  const TestSpace& sb = b.space;
  if (alpha.size() != sa.outcome_count() || tau.size() != sa.outcome_count())
    throw DimensionMismatchError("initial weight/transition sized wrongly");
  if (!is_weight(sa, alpha) || !state_member(a, alpha))
    throw NotAStateError("initial weight is not a state of A");
  for (std::size_t x = 0; x < tau.size(); ++x) {
    if (alpha[x] > 0 && !tau[x])
      throw MissingTransitionError("transition undefined on " +
                                   sa.label(static_cast<int>(x)) +
                                   " which has positive probability");
    if (tau[x] && (!is_weight(sb, *tau[x]) || !state_member(b, *tau[x])))
      throw NotAStateError("transition value at " +
                           sa.label(static_cast<int>(x)) +
                           " is not a state of B");
  }
  Mat table(sa.outcome_count(), sb.outcome_count());
  for (std::size_t x = 0; x < sa.outcome_count(); ++x) {
    if (alpha[x] == 0) continue;
    for (std::size_t y = 0; y < sb.outcome_count(); ++y)
      table(x, y) = alpha[x] * (*tau[x])[y];
  }
  return table;
}

Vec flatten_table(const TestSpace& prod, const TestSpace& a,
                  const TestSpace& b, const Mat& table) {
  Vec flat(prod.outcome_count());
  for (std::size_t x = 0; x < a.outcome_count(); ++x)
    for (std::size_t y = 0; y < b.outcome_count(); ++y)
      flat[prod.index_of(pair_label(a.label(static_cast<int>(x)),
                                    b.label(static_cast<int>(y))))] =
          table(x, y);
  return flat;
}

Mat unflatten_table(const TestSpace& prod, const TestSpace& a,
                    const TestSpace& b, const Vec& flat) {
  Mat table(a.outcome_count(), b.outcome_count());
  for (std::size_t x = 0; x < a.outcome_count(); ++x)
    for (std::size_t y = 0; y < b.outcome_count(); ++y)
      table(x, y) = flat[prod.index_of(pair_label(
          a.label(static_cast<int>(x)), b.label(static_cast<int>(y))))];
  return table;
}

std::pair<Rational, Rational> interference_witness(
    const Model& a_model, const Model& b_model, const Vec& alpha,
    const Event& a, const Event& b, const Transition& tau, const Event& c) {
  if (!perspective(a, b))
    throw NotPerspectiveError("events " + a_model.space.render(a.members) +
                              " and " + a_model.space.render(b.members) +
                              " are not perspective");
  Mat w = forward_product_weight(a_model, b_model, alpha, tau);
  Rational va = 0, vb = 0;
  for (int x : a.members)
    for (int y : c.members) va += w(x, y);
  for (int x : b.members)
    for (int y : c.members) vb += w(x, y);
  return {va, vb};
}

NsCheck is_nonsignaling(const JointWeight& w) {
  validate_joint_weight(w);
  const TestSpace& sa = w.a->space;
  const TestSpace& sb = w.b->space;
  // marginal of y must not depend on which A-test is summed over
  for (std::size_t y = 0; y < sb.outcome_count(); ++y) {
    Rational ref = 0;
    for (int x : sa.tests().front()) ref += w.table(x, y);
    for (std::size_t t = 1; t < sa.test_count(); ++t) {
      Rational val = 0;
      for (int x : sa.tests()[t]) val += w.table(x, y);
      if (val != ref)
        return {false,
                SignalingWitness{1, static_cast<int>(y), 0,
                                 static_cast<int>(t)}};
    }
  }
  for (std::size_t x = 0; x < sa.outcome_count(); ++x) {
    Rational ref = 0;
    for (int y : sb.tests().front()) ref += w.table(x, y);
    for (std::size_t t = 1; t < sb.test_count(); ++t) {
      Rational val = 0;
      for (int y : sb.tests()[t]) val += w.table(x, y);
      if (val != ref)
        return {false,
                SignalingWitness{2, static_cast<int>(x), 0,
                                 static_cast<int>(t)}};
    }
  }
  return {};
}

std::pair<Vec, Vec> marginals(const JointWeight& w) {
  if (!is_nonsignaling(w).nonsignaling)
    throw NotNonsignalingError("marginals require a non-signaling weight");
  const TestSpace& sa = w.a->space;
  const TestSpace& sb = w.b->space;
  Vec m1(sa.outcome_count()), m2(sb.outcome_count());
  for (std::size_t x = 0; x < sa.outcome_count(); ++x) {
    Rational s = 0;
    for (int y : sb.tests().front()) s += w.table(x, y);
    m1[x] = s;
  }
  for (std::size_t y = 0; y < sb.outcome_count(); ++y) {
    Rational s = 0;
    for (int x : sa.tests().front()) s += w.table(x, y);
    m2[y] = s;
  }
  return {std::move(m1), std::move(m2)};
}

Vec conditional_on_a(const JointWeight& w, int x) {
  auto [m1, m2] = marginals(w);
  if (m1[x] == 0)
    throw ZeroMarginalError("conditioning on an outcome of probability zero");
  Vec c(w.b->space.outcome_count());
  for (std::size_t y = 0; y < c.size(); ++y) c[y] = w.table(x, y) / m1[x];
  return c;
}

Vec conditional_on_b(const JointWeight& w, int y) {
  auto [m1, m2] = marginals(w);
  if (m2[y] == 0)
    throw ZeroMarginalError("conditioning on an outcome of probability zero");
  Vec c(w.a->space.outcome_count());
  for (std::size_t x = 0; x < c.size(); ++x) c[x] = w.table(x, y) / m2[y];
  return c;
}

bool is_joint_state(const JointWeight& w) {
  if (!is_nonsignaling(w).nonsignaling)
    throw NotNonsignalingError("is_joint_state requires non-signaling input");
  auto [m1, m2] = marginals(w);
  for (std::size_t x = 0; x < m1.size(); ++x) {
    if (m1[x] == 0) continue;
    if (!state_member(*w.b, conditional_on_a(w, static_cast<int>(x))))
      return false;
  }
  for (std::size_t y = 0; y < m2.size(); ++y) {
    if (m2[y] == 0) continue;
    if (!state_member(*w.a, conditional_on_b(w, static_cast<int>(y))))
      return false;
  }
  return true;
}

Mat bilinear_extension(const JointWeight& w, const LinearModel& la,
                       const LinearModel& lb) {
  validate_joint_weight(w);
  const std::size_t da = la.dim, db = lb.dim;
  const std::size_t nx = w.a->space.outcome_count();
  const std::size_t ny = w.b->space.outcome_count();
  // unknown G (da×db) with x̂ᵀ G ŷ = ω(x,y) for every outcome pair
  Mat sys(nx * ny, da * db);
  Vec rhs(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    Vec xe = outcome_effect(la, static_cast<int>(x)).covector;
    for (std::size_t y = 0; y < ny; ++y) {
      Vec ye = outcome_effect(lb, static_cast<int>(y)).covector;
      std::size_t row = x * ny + y;
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
          sys(row, i * db + j) = xe[i] * ye[j];
      rhs[row] = w.table(x, y);
    }
  }
  auto sol = solve(sys, rhs);
  if (!sol)
    throw NotNonsignalingError(
        "joint weight admits no bilinear extension on V(A)×V(B)");
  Mat g(da, db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) g(i, j) = (*sol)[i * db + j];
  return g;
}

Mat product_tensor(const Vec& coords_a, const Vec& coords_b) {
  Mat t(coords_a.size(), coords_b.size());
  for (std::size_t i = 0; i < coords_a.size(); ++i)
    for (std::size_t j = 0; j < coords_b.size(); ++j)
      t(i, j) = coords_a[i] * coords_b[j];
  return t;
}

SeparabilityResult min_cone_member(const LinearModel& la,
                                   const LinearModel& lb, const Mat& tensor) {
  const std::size_t da = la.dim, db = lb.dim;
  if (tensor.rows() != da || tensor.cols() != db)
    throw DimensionMismatchError("tensor has wrong shape for V(A)⊗V(B)");
  {
    Rational norm = 0;
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j)
        norm += la.unit[i] * tensor(i, j) * lb.unit[j];
    if (norm != 1)
      throw NotAStateError("tensor is not normalized: (u⊗u)(ω) ≠ 1");
  }
  const std::size_t ka = la.state_coords.size();
  const std::size_t kb = lb.state_coords.size();
  // columns: vertex products, flattened; rows: tensor entries + Σλ = 1
  Mat sys(da * db + 1, ka * kb);
  Vec rhs(da * db + 1);
  for (std::size_t p = 0; p < ka; ++p)
    for (std::size_t q = 0; q < kb; ++q) {
      std::size_t col = p * kb + q;
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
          sys(i * db + j, col) = la.state_coords[p][i] * lb.state_coords[q][j];
      sys(da * db, col) = 1;
    }
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) rhs[i * db + j] = tensor(i, j);
  rhs[da * db] = 1;

  Vec cost(ka * kb, Rational(0));
  LpResult lp = solve_lp(sys, rhs, cost);
  SeparabilityResult out;
  if (lp.status == LpStatus::Optimal) {
    out.separable = true;
    for (std::size_t p = 0; p < ka; ++p)
      for (std::size_t q = 0; q < kb; ++q) {
        const Rational& l = lp.x[p * kb + q];
        if (l != 0)
          out.decomposition.emplace_back(static_cast<int>(p),
                                         static_cast<int>(q), l);
      }
    return out;
  }

  // Farkas dual (h, s): h·(α⊗β) + s ≤ 0 on products, h·ω + s > 0. Fold the
  // offset into the functional via u⊗u and shift so max over products is 0.
  Mat witness(da, db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      witness(i, j) =
          lp.farkas[i * db + j] + lp.farkas[da * db] * la.unit[i] * lb.unit[j];
  Rational worst;
  bool first = true;
  for (std::size_t p = 0; p < ka; ++p)
    for (std::size_t q = 0; q < kb; ++q) {
      Rational v = 0;
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
          v += witness(i, j) * la.state_coords[p][i] * lb.state_coords[q][j];
      if (first || v > worst) worst = v;
      first = false;
    }
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      witness(i, j) -= worst * la.unit[i] * lb.unit[j];
  out.witness = std::move(witness);
  return out;
}

std::vector<Vec> dual_cone_rays(const LinearModel& lm) {
  return extreme_rays(Mat::from_rows(lm.state_coords));
}

bool max_cone_member(const LinearModel& la, const LinearModel& lb,
                     const Mat& tensor) {
  if (tensor.rows() != la.dim || tensor.cols() != lb.dim)
    throw DimensionMismatchError("tensor has wrong shape for V(A)⊗V(B)");
  std::vector<Vec> ra = dual_cone_rays(la);
  std::vector<Vec> rb = dual_cone_rays(lb);
  for (const Vec& f : ra)
    for (const Vec& g : rb) {
      Rational v = 0;
      for (std::size_t i = 0; i < la.dim; ++i)
        for (std::size_t j = 0; j < lb.dim; ++j)
          v += f[i] * tensor(i, j) * g[j];
      if (v < 0) return false;
    }
  return true;
}

namespace {

// rows asserting w ∈ span(verts) ∧ ray·coords(w) ≥ 0, expressed on a block
// of ambient coordinates; `embed` maps block coordinate -> flat variable.
void add_cone_rows(const std::vector<Vec>& verts,
                   const std::vector<int>& embed, std::size_t flat_dim,
                   Mat& ineq, Vec& ineq_rhs, Mat& eq, Vec& eq_rhs) {
  Mat vm = Mat::from_rows(verts);
  std::vector<Vec> ann = nullspace(vm);  // n·v = 0 for every vertex v
  for (const Vec& n : ann) {
    Vec row(flat_dim, Rational(0));
    for (std::size_t k = 0; k < n.size(); ++k) row[embed[k]] = n[k];
    eq.append_row(row);
    eq_rhs.push_back(Rational(0));
  }
  Rref rr = rref(vm);
  std::vector<Vec> rays = extreme_rays(Mat::from_rows([&] {
    std::vector<Vec> coords;
    for (const Vec& v : verts) {
      Vec c(rr.rank);
      for (std::size_t j = 0; j < rr.rank; ++j) c[j] = v[rr.pivot_cols[j]];
      coords.push_back(std::move(c));
    }
    return coords;
  }()));
  // coords(w)_j = w[pivot_j] once the span rows hold, so each dual ray is an
  // ambient covector supported on the pivot coordinates
  for (const Vec& r : rays) {
    Vec row(flat_dim, Rational(0));
    for (std::size_t j = 0; j < rr.rank; ++j)
      row[embed[rr.pivot_cols[j]]] = -r[j];  // -ray·w ≤ 0
    ineq.append_row(row);
    ineq_rhs.push_back(Rational(0));
  }
}

}  // namespace

NsPolytope ns_polytope(const Model& a, const Model& b,
                       const VertexEnumBudget& budget) {
  NsPolytope out;
  out.space = product(a.space, b.space);
  const TestSpace& sa = a.space;
  const TestSpace& sb = b.space;
  const std::size_t nx = sa.outcome_count(), ny = sb.outcome_count();
  const std::size_t n = nx * ny;
  auto flat = [&](std::size_t x, std::size_t y) {
    return out.space.index_of(pair_label(sa.label(static_cast<int>(x)),
                                         sb.label(static_cast<int>(y))));
  };

  out.ineq = Mat(0, n);
  out.eq = Mat(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(n, Rational(0));
    row[i] = -1;
    out.ineq.append_row(row);
    out.ineq_rhs.push_back(Rational(0));
  }
  for (const OutcomeSet& e : sa.tests())
    for (const OutcomeSet& f : sb.tests()) {
      Vec row(n, Rational(0));
      for (int x : e)
        for (int y : f) row[flat(x, y)] = 1;
      out.eq.append_row(row);
      out.eq_rhs.push_back(Rational(1));
    }
  // no signaling: column/row sums agree across the remote test choice
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t t = 1; t < sa.test_count(); ++t) {
      Vec row(n, Rational(0));
      for (int x : sa.tests().front()) row[flat(x, y)] += 1;
      for (int x : sa.tests()[t]) row[flat(x, y)] -= 1;
      out.eq.append_row(row);
      out.eq_rhs.push_back(Rational(0));
    }
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t t = 1; t < sb.test_count(); ++t) {
      Vec row(n, Rational(0));
      for (int y : sb.tests().front()) row[flat(x, y)] += 1;
      for (int y : sb.tests()[t]) row[flat(x, y)] -= 1;
      out.eq.append_row(row);
      out.eq_rhs.push_back(Rational(0));
    }
  // conditional membership for non-full factors: each slice must lie in the
  // factor's state cone (automatic for full models)
  if (!b.full) {
    std::vector<Vec> verts = state_vertices(b, budget);
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<int> embed(ny);
      for (std::size_t y = 0; y < ny; ++y) embed[y] = flat(x, y);
      add_cone_rows(verts, embed, n, out.ineq, out.ineq_rhs, out.eq,
                    out.eq_rhs);
    }
  }
  if (!a.full) {
    std::vector<Vec> verts = state_vertices(a, budget);
    for (std::size_t y = 0; y < ny; ++y) {
      std::vector<int> embed(nx);
      for (std::size_t x = 0; x < nx; ++x) embed[x] = flat(x, y);
      add_cone_rows(verts, embed, n, out.ineq, out.ineq_rhs, out.eq,
                    out.eq_rhs);
    }
  }

  out.vertices = enumerate_vertices(out.ineq, out.ineq_rhs, out.eq, out.eq_rhs,
                                    budget);
  return out;
}

Mat conditioning_map(const Mat& tensor) { return tensor.transpose(); }

Mat co_conditioning_map(const Mat& tensor) { return tensor.transpose(); }

RemoteEvaluation remote_evaluate(const Vec& alpha, const Mat& f,
                                 const Mat& omega, const Vec& e) {
  const std::size_t du = alpha.size();
  const std::size_t dv = omega.rows();
  const std::size_t dw = e.size();
  if (f.rows() != du || f.cols() != dv || omega.cols() != dw)
    throw DimensionMismatchError("remote evaluation shapes do not compose");

  RemoteEvaluation out;
  // direct contraction of (f ⊗ e) against (α ⊗ ω)
  Rational lhs = 0;
  for (std::size_t i = 0; i < du; ++i)
    for (std::size_t j = 0; j < dv; ++j)
      for (std::size_t k = 0; k < dw; ++k)
        lhs += f(i, j) * e[k] * alpha[i] * omega(j, k);
  out.lhs = lhs;

  // composed path: f̂(α) = fᵀα, ω̂(a) = ωᵀa, then pair with e
  Vec fa = f.transpose().apply(alpha);
  Vec wfa = omega.transpose().apply(fa);
  out.rhs = dot(e, wfa);
  out.channel = omega.transpose().mul(f.transpose());
  return out;
}

Model gbit() { return boxworld(1); }

Model boxworld(int n) {
  if (n < 1 || n > 4)
    throw BudgetExceededError("boxworld arity outside supported range");
  const int m = 1 << n;
  auto bits = [&](int v) {
    std::string s;
    for (int k = n - 1; k >= 0; --k) s += char('0' + ((v >> k) & 1));
    return s;
  };
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> tests;
  for (int setting = 0; setting < m; ++setting) {
    std::vector<std::string> test;
    for (int outcome = 0; outcome < m; ++outcome) {
      std::string l = bits(outcome) + "|" + bits(setting);
      labels.push_back(l);
      test.push_back(std::move(l));
    }
    tests.push_back(std::move(test));
  }
  Model model;
  model.space = TestSpace::make(std::move(labels), std::move(tests));
  model.full = true;
  return model;
}

JointWeight pr_box(const Model& gbit_a, const Model& gbit_b) {
  JointWeight w;
  w.a = &gbit_a;
  w.b = &gbit_b;
  const TestSpace& sa = gbit_a.space;
  const TestSpace& sb = gbit_b.space;
  w.table = Mat(sa.outcome_count(), sb.outcome_count());
  for (std::size_t x = 0; x < sa.outcome_count(); ++x)
    for (std::size_t y = 0; y < sb.outcome_count(); ++y) {
      const std::string& lx = sa.label(static_cast<int>(x));  // "i|j"
      const std::string& ly = sb.label(static_cast<int>(y));  // "k|l"
      int i = lx[0] - '0', j = lx[2] - '0';
      int k = ly[0] - '0', l = ly[2] - '0';
      if (((i + k) % 2) == (j * l)) w.table(x, y) = Rational(1, 2);
    }
  return w;
}

CompositeReport verify_composite(const Model& a, const Model& b,
                                 const Model& ab,
                                 const std::vector<std::vector<int>>& pi,
                                 const VertexEnumBudget& budget) {
  CompositeReport report;
  NsPolytope ns = ns_polytope(a, b, budget);
  Model ns_model;
  ns_model.space = ns.space;
  ns_model.full = false;
  ns_model.generators = ns.vertices;

  // π as a map on the product outcome set
  std::vector<int> map(ns.space.outcome_count(), -1);
  for (std::size_t x = 0; x < a.space.outcome_count(); ++x)
    for (std::size_t y = 0; y < b.space.outcome_count(); ++y) {
      int idx = ns.space.index_of(pair_label(a.space.label(static_cast<int>(x)),
                                             b.space.label(static_cast<int>(y))));
      map[idx] = pi[x][y];
    }

  Morphism phi{&ns_model, &ab, map};
  try {
    if (!is_test_preserving(phi)) {
      report.ok = false;
      report.detail = "π is a morphism but not test-preserving";
      return report;
    }
  } catch (const NotAMorphismError& err) {
    report.ok = false;
    report.detail = err.what();
    return report;
  }

  // every product state must be realized through π*
  std::vector<Vec> ab_verts = state_vertices(ab, budget);
  std::vector<Vec> pulled;
  for (const Vec& w : ab_verts) {
    Vec p(ns.space.outcome_count());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = w[map[i]];
    pulled.push_back(std::move(p));
  }
  std::vector<Vec> av = state_vertices(a, budget);
  std::vector<Vec> bv = state_vertices(b, budget);
  for (const Vec& alpha : av)
    for (const Vec& beta : bv) {
      Mat table(alpha.size(), beta.size());
      for (std::size_t x = 0; x < alpha.size(); ++x)
        for (std::size_t y = 0; y < beta.size(); ++y)
          table(x, y) = alpha[x] * beta[y];
      Vec target = flatten_table(ns.space, a.space, b.space, table);
      if (!hull_membership(pulled, target).inside) {
        report.ok = false;
        report.detail = "a product state is not realized by any state of AB";
        return report;
      }
    }

  report.locally_tomographic =
      rank(Mat::from_rows(pulled)) == rank(Mat::from_rows(ab_verts));
  std::set<int> image(map.begin(), map.end());
  report.injective = image.size() == map.size();
  return report;
}

}  // namespace gpt
