#include "gpt/ordvec.hpp"

#include <algorithm>

namespace gpt {

LinearModel linearize(const Model& model, const VertexEnumBudget& budget) {
  LinearModel lm;
  lm.model = model;
  std::vector<Vec> verts = state_vertices(model, budget);
  if (verts.empty())
    throw EmptyStateSpaceError("model admits no states; V(A) is trivial");

  Rref rr = rref(Mat::from_rows(verts));
  lm.dim = rr.rank;
  for (std::size_t k = 0; k < rr.rank; ++k) {
    lm.basis.push_back(rr.reduced.row(k));
    lm.pivots.push_back(rr.pivot_cols[k]);
  }
  for (const Vec& v : verts) lm.state_coords.push_back(to_coords(lm, v));

  // u = extension of the constant 1 on Ω: restrict a test-sum functional
  const OutcomeSet& e0 = model.space.tests().front();
  lm.unit.assign(lm.dim, Rational(0));
  for (std::size_t j = 0; j < lm.dim; ++j)
    for (int x : e0) lm.unit[j] += lm.basis[j][x];

  // Σ_{x∈E} x̂ = u must hold for every test, and u = 1 on vertices.
  for (const OutcomeSet& e : model.space.tests())
    for (std::size_t j = 0; j < lm.dim; ++j) {
      Rational s = 0;
      for (int x : e) s += lm.basis[j][x];
      if (s != lm.unit[j])
        throw Error("internal: test-sum functionals disagree on V(A)");
    }
  for (const Vec& c : lm.state_coords)
    if (dot(lm.unit, c) != 1)
      throw Error("internal: unit functional is not 1 on a state vertex");
  return lm;
}

Vec to_coords(const LinearModel& lm, const Vec& ambient) {
  if (ambient.size() != lm.model.space.outcome_count())
    throw DimensionMismatchError("vector has wrong ambient dimension");
  // RREF basis: coordinates can be read off the pivot columns
  Vec coords(lm.dim);
  for (std::size_t j = 0; j < lm.dim; ++j) coords[j] = ambient[lm.pivots[j]];
  Vec rebuilt = to_ambient(lm, coords);
  if (rebuilt != ambient)
    throw NotInSpanError("vector lies outside V(A)");
  return coords;
}

Vec to_ambient(const LinearModel& lm, const Vec& coords) {
  if (coords.size() != lm.dim)
    throw DimensionMismatchError("coordinate vector has wrong dimension");
  Vec v(lm.model.space.outcome_count(), Rational(0));
  for (std::size_t j = 0; j < lm.dim; ++j) {
    if (coords[j] == 0) continue;
    for (std::size_t x = 0; x < v.size(); ++x)
      v[x] += coords[j] * lm.basis[j][x];
  }
  return v;
}

Rational pair_effect(const Vec& covector, const Vec& coords) {
  if (covector.size() != coords.size())
    throw DimensionMismatchError("effect/vector dimension mismatch");
  return dot(covector, coords);
}

Effect outcome_effect(const LinearModel& lm, int outcome) {
  Vec f(lm.dim);
  for (std::size_t j = 0; j < lm.dim; ++j) f[j] = lm.basis[j][outcome];
  return Effect{std::move(f)};
}

bool is_effect(const LinearModel& lm, const Vec& covector) {
  for (const Vec& c : lm.state_coords) {
    Rational v = pair_effect(covector, c);
    if (v < 0 || v > 1) return false;
  }
  return true;
}

Rational base_norm_coords(const LinearModel& lm, const Vec& coords) {
  // v = Σ λ_i α_i − Σ μ_i α_i, minimize Σλ + Σμ; u accounts for s and t.
  const std::size_t k = lm.state_coords.size();
  Mat a(lm.dim, 2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < lm.dim; ++j) {
      a(j, i) = lm.state_coords[i][j];
      a(j, k + i) = -lm.state_coords[i][j];
    }
  Vec cost(2 * k, Rational(1));
  LpResult r = solve_lp(a, coords, cost);
  if (r.status != LpStatus::Optimal)
    throw Error("internal: base norm LP failed");
  return r.objective;
}

Rational base_norm(const LinearModel& lm, const Vec& ambient) {
  return base_norm_coords(lm, to_coords(lm, ambient));
}

Rational order_unit_norm(const LinearModel& lm, const Vec& covector) {
  Rational best = 0;
  for (const Vec& c : lm.state_coords) {
    Rational v = pair_effect(covector, c);
    if (v < 0) v = -v;
    if (v > best) best = v;
  }
  return best;
}

ChannelReport verify_channel(const Channel& phi) {
  const LinearModel& src = *phi.source;
  const LinearModel& dst = *phi.target;
  for (std::size_t i = 0; i < src.state_coords.size(); ++i) {
    Vec img = phi.matrix.apply(src.state_coords[i]);
    if (!cone_membership(dst.state_coords, img).inside)
      return {false, "positivity", static_cast<int>(i)};
    if (dot(dst.unit, img) > 1)
      return {false, "normalization", static_cast<int>(i)};
  }
  return {};
}

Rational success_probability(const Channel& phi, const Vec& state_coords) {
  ChannelReport rep = verify_channel(phi);
  if (!rep.ok) throw Error("success_probability on an invalid channel");
  if (!hull_membership(phi.source->state_coords, state_coords).inside)
    throw NotAStateError("input is not a state of the channel's source");
  return dot(phi.target->unit, phi.matrix.apply(state_coords));
}

Model adjoin_failure(const Model& model) {
  std::string star = "*";
  {
    bool taken = true;
    while (taken) {
      taken = false;
      for (const Outcome& o : model.space.outcomes())
        if (o.id == star) {
          star += "*";
          taken = true;
        }
    }
  }
  std::vector<std::string> labels;
  for (const Outcome& o : model.space.outcomes()) labels.push_back(o.id);
  labels.push_back(star);

  std::vector<std::vector<std::string>> tests;
  for (const OutcomeSet& t : model.space.tests()) {
    std::vector<std::string> lt;
    for (int x : t) lt.push_back(model.space.label(x));
    lt.push_back(star);
    tests.push_back(std::move(lt));
  }
  TestSpace space = TestSpace::make(std::move(labels), std::move(tests));

  Model out;
  out.full = model.full;
  if (!model.full) {
    const int star_index = space.index_of(star);
    const std::size_t n1 = space.outcome_count();
    // lift each generator with *(x) = 0, then add δ*
    for (const Vec& g : model.generators) {
      Vec lifted(n1, Rational(0));
      for (std::size_t x = 0; x < model.space.outcome_count(); ++x)
        lifted[space.index_of(model.space.label(static_cast<int>(x)))] = g[x];
      out.generators.push_back(std::move(lifted));
    }
    Vec delta(n1, Rational(0));
    delta[star_index] = 1;
    out.generators.push_back(std::move(delta));
  }
  out.space = std::move(space);
  return out;
}

FailureDecomposition decompose_failure(const Model& star_model,
                                       const Model& base_model,
                                       const Vec& weight) {
  const TestSpace& star_space = star_model.space;
  if (weight.size() != star_space.outcome_count())
    throw DimensionMismatchError("weight has wrong length for A*");
  // the failure outcome is the one absent from the base model
  int star_index = -1;
  for (const Outcome& o : star_space.outcomes()) {
    bool in_base = true;
    try {
      base_model.space.index_of(o.id);
    } catch (const UnknownOutcomeError&) {
      in_base = false;
    }
    if (!in_base) {
      star_index = o.index;
      break;
    }
  }
  if (star_index < 0) throw Error("star model has no failure outcome");

  FailureDecomposition out;
  out.p = Rational(1) - weight[star_index];
  if (out.p == 0) return out;
  Vec beta1(base_model.space.outcome_count());
  for (std::size_t x = 0; x < beta1.size(); ++x)
    beta1[x] =
        weight[star_space.index_of(base_model.space.label(static_cast<int>(x)))] /
        out.p;
  out.beta1 = std::move(beta1);
  return out;
}

}  // namespace gpt
