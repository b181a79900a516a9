#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpt/polytope.hpp"
#include "gpt/testspace.hpp"

namespace gpt {

/// A probability weight is a rational vector in canonical outcome order with
/// Σ_{x∈E} v[x] = 1 for every test E and entries in [0,1].
bool is_weight(const TestSpace& space, const Vec& v);

Rational event_probability(const Vec& weight, const Event& a);

bool is_dispersion_free(const Vec& weight);

struct LinearConstraint {
  Vec coeffs;
  Rational rhs;
  bool equality;  // coeffs·v = rhs, else coeffs·v ≤ rhs
};

/// H-representation of Pr(M): non-negativity per outcome plus one
/// normalization equality per test. vrep is attached by enumerate().
struct StatePolytope {
  TestSpace space;
  std::vector<LinearConstraint> hrep;
  std::optional<std::vector<Vec>> vrep;
};

StatePolytope state_polytope(const TestSpace& space);

/// Exact, duplicate-free, lexicographically sorted vertex list of Pr(M);
/// empty iff Pr(M) is empty.
std::vector<Vec> polytope_vertices(const TestSpace& space,
                                   const VertexEnumBudget& budget = {});

StatePolytope enumerate(StatePolytope p, const VertexEnumBudget& budget = {});

struct MembershipResult {
  bool inside = false;
  // outside: separator·v > offset while separator·p ≤ offset on all of P
  Vec separator;
  Rational offset;
};

MembershipResult membership(const StatePolytope& p, const Vec& v);

/// α is a vertex of P: the active constraints at α have full rank.
bool is_pure(const StatePolytope& p, const Vec& alpha);

/// Vertices of the state space Ω: the polytope vertices for full models, the
/// extreme generators otherwise.
std::vector<Vec> state_vertices(const Model& model,
                                const VertexEnumBudget& budget = {});

bool state_member(const Model& model, const Vec& v);

/// Positivity in the sense of a state space touching every outcome.
bool is_positive_model(const Model& model);

/// Drops outcomes that carry probability zero in every state, intersecting
/// tests with the surviving outcome set.
Model restrict_positive(const Model& model);

struct Morphism {
  const Model* source = nullptr;
  const Model* target = nullptr;
  std::vector<int> map;  // outcome index of source -> outcome index of target
};

struct MorphismReport {
  bool ok = true;
  int violated_condition = 0;  // 1..4 when !ok
  std::string witness;
};

/// Checks the four morphism conditions: local orthogonality preservation,
/// event preservation, perspectivity preservation, and pullback of states
/// into the cone over Ω(source). The last is checked on vertices of
/// Ω(target), which suffices by convexity.
MorphismReport verify_morphism(const Morphism& phi, const Budget& budget = {});

bool is_test_preserving(const Morphism& phi, const Budget& budget = {});

}  // namespace gpt
