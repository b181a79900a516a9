#include "gpt/states.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gpt {

bool is_weight(const TestSpace& space, const Vec& v) {
  if (v.size() != space.outcome_count())
    throw DimensionMismatchError("weight vector has wrong length");
  for (const Rational& q : v)
    if (q < 0 || q > 1) return false;
  for (const OutcomeSet& t : space.tests()) {
    Rational s = 0;
    for (int x : t) s += v[x];
    if (s != 1) return false;
  }
  return true;
}

Rational event_probability(const Vec& weight, const Event& a) {
  if (!a.owner || weight.size() != a.owner->outcome_count())
    throw OwnerMismatchError("weight and event live on different spaces");
  Rational s = 0;
  for (int x : a.members) s += weight[x];
  return s;
}

bool is_dispersion_free(const Vec& weight) {
  for (const Rational& q : weight)
    if (q != 0 && q != 1) return false;
  return true;
}

StatePolytope state_polytope(const TestSpace& space) {
  StatePolytope p{space, {}, std::nullopt};
  const std::size_t n = space.outcome_count();
  for (std::size_t x = 0; x < n; ++x) {
    Vec row(n, Rational(0));
    row[x] = -1;  // -v[x] ≤ 0
    p.hrep.push_back({std::move(row), Rational(0), false});
  }
  for (const OutcomeSet& t : space.tests()) {
    Vec row(n, Rational(0));
    for (int x : t) row[x] = 1;
    p.hrep.push_back({std::move(row), Rational(1), true});
  }
  return p;
}

std::vector<Vec> polytope_vertices(const TestSpace& space,
                                   const VertexEnumBudget& budget) {
  StatePolytope p = state_polytope(space);
  Mat a, c;
  Vec b, d;
  const std::size_t n = space.outcome_count();
  a = Mat(0, n);
  c = Mat(0, n);
  for (const LinearConstraint& row : p.hrep) {
    if (row.equality) {
      c.append_row(row.coeffs);
      d.push_back(row.rhs);
    } else {
      a.append_row(row.coeffs);
      b.push_back(row.rhs);
    }
  }
  return enumerate_vertices(a, b, c, d, budget);
}

StatePolytope enumerate(StatePolytope p, const VertexEnumBudget& budget) {
  p.vrep = polytope_vertices(p.space, budget);
  return p;
}

MembershipResult membership(const StatePolytope& p, const Vec& v) {
  if (v.size() != p.space.outcome_count())
    throw DimensionMismatchError("membership: vector has wrong length");
  for (const LinearConstraint& row : p.hrep) {
    Rational val = dot(row.coeffs, v);
    if (row.equality ? val == row.rhs : val <= row.rhs) continue;
    MembershipResult r;
    r.inside = false;
    if (val > row.rhs) {
      r.separator = row.coeffs;
      r.offset = row.rhs;
    } else {  // equality undershot: flip the functional
      r.separator.resize(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) r.separator[i] = -row.coeffs[i];
      r.offset = -row.rhs;
    }
    return r;
  }
  MembershipResult r;
  r.inside = true;
  return r;
}

bool is_pure(const StatePolytope& p, const Vec& alpha) {
  if (!membership(p, alpha).inside)
    throw NotInPolytopeError("is_pure: point is not in the polytope");
  Mat active(0, alpha.size());
  for (const LinearConstraint& row : p.hrep)
    if (row.equality || dot(row.coeffs, alpha) == row.rhs)
      active.append_row(row.coeffs);
  return rank(active) == alpha.size();
}

std::vector<Vec> state_vertices(const Model& model,
                                const VertexEnumBudget& budget) {
  if (model.full) return polytope_vertices(model.space, budget);
  std::vector<Vec> gens = model.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (others.empty() || !hull_membership(others, gens[i]).inside)
      verts.push_back(gens[i]);
  }
  return verts;
}

bool state_member(const Model& model, const Vec& v) {
  if (model.full) return membership(state_polytope(model.space), v).inside;
  return hull_membership(model.generators, v).inside;
}

bool is_positive_model(const Model& model) {
  std::vector<Vec> verts = state_vertices(model);
  for (std::size_t x = 0; x < model.space.outcome_count(); ++x) {
    bool touched = false;
    for (const Vec& v : verts)
      if (v[x] > 0) {
        touched = true;
        break;
      }
    if (!touched) return false;
  }
  return true;
}

Model restrict_positive(const Model& model) {
  std::vector<Vec> verts = state_vertices(model);
  const std::size_t n = model.space.outcome_count();
  std::vector<bool> keep(n, false);
  for (const Vec& v : verts)
    for (std::size_t x = 0; x < n; ++x)
      if (v[x] > 0) keep[x] = true;

  std::vector<int> old_of_new;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x)
    if (keep[x]) {
      old_of_new.push_back(static_cast<int>(x));
      labels.push_back(model.space.label(static_cast<int>(x)));
    }
  if (labels.empty())
    throw EmptyModelError("restrict_positive removed every outcome");

  std::vector<int> new_of_old(n, -1);
  for (std::size_t k = 0; k < old_of_new.size(); ++k)
    new_of_old[old_of_new[k]] = static_cast<int>(k);

  std::set<OutcomeSet> tests;
  for (const OutcomeSet& t : model.space.tests()) {
    OutcomeSet r;
    for (int x : t)
      if (keep[x]) r.push_back(new_of_old[x]);
    std::sort(r.begin(), r.end());
    tests.insert(std::move(r));
  }
  TestSpace restricted = TestSpace::from_indexed(
      labels, std::vector<OutcomeSet>(tests.begin(), tests.end()));

  Model out;
  out.space = std::move(restricted);
  out.full = model.full;
  if (!model.full) {
    for (const Vec& g : model.generators) {
      Vec r;
      for (int x : old_of_new) r.push_back(g[x]);
      out.generators.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

std::string describe_pair(const TestSpace& s, int x, int y) {
  return "(" + s.label(x) + "," + s.label(y) + ")";
}

}  // namespace

MorphismReport verify_morphism(const Morphism& phi, const Budget& budget) {
  const TestSpace& sa = phi.source->space;
  const TestSpace& sb = phi.target->space;
  if (phi.map.size() != sa.outcome_count())
    throw DimensionMismatchError("morphism map is not total");

  // (i) x ⊥ y ⇒ φ(x) ⊥ φ(y)
  for (std::size_t x = 0; x < sa.outcome_count(); ++x)
    for (std::size_t y = x + 1; y < sa.outcome_count(); ++y) {
      Event ex{&sa, {static_cast<int>(x)}, -1};
      Event ey{&sa, {static_cast<int>(y)}, -1};
      if (!orthogonal(ex, ey)) continue;
      int fx = phi.map[x], fy = phi.map[y];
      bool ok = fx != fy;
      if (ok) {
        Event bx{&sb, {std::min(fx, fy)}, -1};
        Event by{&sb, {std::max(fx, fy)}, -1};
        ok = orthogonal(bx, by);
      }
      if (!ok)
        return {false, 1,
                describe_pair(sa, static_cast<int>(x), static_cast<int>(y))};
    }

  auto image = [&](const OutcomeSet& a) {
    OutcomeSet img;
    for (int x : a) img.push_back(phi.map[x]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  };
  auto is_event_of_b = [&](const OutcomeSet& s) {
    for (const OutcomeSet& t : sb.tests())
      if (setops::subset(s, t)) return true;
    return false;
  };

  // (ii) images of events are events
  std::vector<Event> evs = events(sa, budget);
  for (const Event& a : evs)
    if (!is_event_of_b(image(a.members)))
      return {false, 2, sa.render(a.members)};

  // (iii) a ~ b ⇒ φ(a) ~ φ(b)
  for (std::size_t i = 0; i < evs.size(); ++i)
    for (std::size_t j = i + 1; j < evs.size(); ++j) {
      if (!perspective(evs[i], evs[j])) continue;
      Event fa{&sb, image(evs[i].members), -1};
      Event fb{&sb, image(evs[j].members), -1};
      if (!perspective(fa, fb))
        return {false, 3,
                sa.render(evs[i].members) + " ~ " + sa.render(evs[j].members)};
    }

  // (iv) pullbacks of target states lie in the cone over Ω(source); vertices
  // of Ω(target) suffice by convexity.
  std::vector<Vec> source_verts = state_vertices(*phi.source);
  std::vector<Vec> target_verts = state_vertices(*phi.target);
  for (const Vec& beta : target_verts) {
    Vec pullback(sa.outcome_count());
    for (std::size_t x = 0; x < sa.outcome_count(); ++x)
      pullback[x] = beta[phi.map[x]];
    if (!cone_membership(source_verts, pullback).inside) {
      std::ostringstream os;
      os << "pullback of a target vertex leaves the source state cone";
      return {false, 4, os.str()};
    }
  }
  return {};
}

bool is_test_preserving(const Morphism& phi, const Budget& budget) {
  MorphismReport rep = verify_morphism(phi, budget);
  if (!rep.ok)
    throw NotAMorphismError("not a morphism (condition " +
                            std::to_string(rep.violated_condition) +
                            "): " + rep.witness);
  const TestSpace& sb = phi.target->space;
  for (const OutcomeSet& e : phi.source->space.tests()) {
    OutcomeSet img;
    for (int x : e) img.push_back(phi.map[x]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!sb.has_test(img)) return false;
  }
  return true;
}

}  // namespace gpt
