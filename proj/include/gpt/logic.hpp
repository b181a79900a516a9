#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gpt/testspace.hpp"

namespace gpt {

/// A finite orthoalgebra: the partial structure (⊥, ⊕, 0, 1) with a total
/// orthocomplement. Elements are indices into `names`; oplus[p][q] is -1
/// outside the ⊥ relation.
struct Orthoalgebra {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> perp;
  std::vector<std::vector<int>> oplus;
  int zero = -1;
  int one = -1;
  std::vector<int> ocomp;

  int size() const { return static_cast<int>(names.size()); }
};

/// ~-class of events; representative is the lexicographically least member.
struct EventClass {
  OutcomeSet representative;
  std::vector<OutcomeSet> members;
};

/// Same table shape as an orthoalgebra but checked against the four effect
/// algebra axioms (self-orthogonality is allowed).
struct EffectAlgebraTable {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> perp;
  std::vector<std::vector<int>> oplus;
  int zero = -1;
  int one = -1;
};

struct LogicBuildResult {
  Orthoalgebra logic;
  std::vector<EventClass> classes;  // classes[i] realizes element i
};

/// The logic Π(M) of an algebraic test space: perspectivity classes with
/// [a] ⊕ [b] = [a ∪ b]. Well-definedness of ⊕ on classes is re-verified
/// during the build. Throws NotAlgebraicError when M is not algebraic.
LogicBuildResult build_logic(const TestSpace& space, const Budget& budget = {});

/// p ≤ q iff q = p ⊕ r for some r.
bool leq(const Orthoalgebra& l, int p, int q);

struct JointSum {
  bool defined = false;
  int sum = -1;
};

/// Recursive joint orthogonality: every removal order must stay summable and
/// all orders must agree. Throws NotPairwiseOrthogonalError when the set is
/// not even pairwise orthogonal.
JointSum jointly_orthogonal(const Orthoalgebra& l, const std::vector<int>& set);

struct OrthocoherenceResult {
  bool orthocoherent = true;
  std::optional<std::array<int, 3>> witness;  // pairwise ⊥ triple, not summable
};

OrthocoherenceResult is_orthocoherent(const Orthoalgebra& l);

/// Boolean iff every pair is compatible: a = p⊕q, b = q⊕r for some jointly
/// orthogonal triple (p,q,r).
bool is_boolean(const Orthoalgebra& l);

/// The orthopartition test space D(L) over L∖{0}: tests are jointly
/// orthogonal subsets with sum 1.
TestSpace orthopartitions(const Orthoalgebra& l, const Budget& budget = {});

struct EffectAlgebraReport {
  bool ok = true;
  int axiom = 0;  // 1..4 when violated
  std::string witness;
};

EffectAlgebraReport verify_effect_algebra(const EffectAlgebraTable& t);

EffectAlgebraTable as_effect_table(const Orthoalgebra& l);

/// Unit-preserving ⊥/⊕-respecting bijection search (backtracking).
bool isomorphic(const Orthoalgebra& a, const Orthoalgebra& b);

}  // namespace gpt
