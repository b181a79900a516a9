#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpt/ordvec.hpp"

namespace gpt {

/// Joint probability weight on X(A)×X(B): rows follow A's canonical outcome
/// order, columns B's. Normalization over every product test E×F.
struct JointWeight {
  const Model* a = nullptr;
  const Model* b = nullptr;
  Mat table;
};

void validate_joint_weight(const JointWeight& w);

/// Per-A-outcome transition into Ω(B); entries may be absent off supp(α).
using Transition = std::vector<std::optional<Vec>>;

/// Two-stage test space: perform E, then the τ(x)-chosen test on B.
TestSpace forward_product(const TestSpace& a, const TestSpace& b,
                          const Budget& budget = {});
TestSpace bilateral_product(const TestSpace& a, const TestSpace& b,
                            const Budget& budget = {});

/// The weight (α;τ)(x,y) = α(x)·τ(x)(y). τ must cover supp(α); τ values are
/// validated as states of B.
Mat forward_product_weight(const Model& a, const Model& b, const Vec& alpha,
                           const Transition& tau);

/// Flatten a table on X(A)×X(B) into the canonical outcome order of the
/// product test space (and back).
Vec flatten_table(const TestSpace& prod, const TestSpace& a,
                  const TestSpace& b, const Mat& table);
Mat unflatten_table(const TestSpace& prod, const TestSpace& a,
                    const TestSpace& b, const Vec& flat);

/// ω(a×c) vs ω(b×c) for perspective events a ~ b under the two-stage weight
/// (α;τ); unequal values exhibit interference.
std::pair<Rational, Rational> interference_witness(
    const Model& a_model, const Model& b_model, const Vec& alpha,
    const Event& a, const Event& b, const Transition& tau, const Event& c);

struct SignalingWitness {
  int direction = 0;  // 1: A's test choice influences B, 2: vice versa
  int fixed_outcome = -1;
  int test1 = -1, test2 = -1;
};

struct NsCheck {
  bool nonsignaling = true;
  std::optional<SignalingWitness> witness;
};

NsCheck is_nonsignaling(const JointWeight& w);

std::pair<Vec, Vec> marginals(const JointWeight& w);
Vec conditional_on_a(const JointWeight& w, int x);  // ω₂|x on X(B)
Vec conditional_on_b(const JointWeight& w, int y);  // ω₁|y on X(A)

/// Non-signaling plus conditionals in the factor state spaces.
bool is_joint_state(const JointWeight& w);

/// The bilinear form F with F(x̂,ŷ) = ω(x,y), as a tensor in the basis
/// coordinates of V(A)⊗V(B); solved exactly, NotNonsignalingError when no
/// extension exists (which, for full models, happens iff ω signals).
Mat bilinear_extension(const JointWeight& w, const LinearModel& la,
                       const LinearModel& lb);

Mat product_tensor(const Vec& coords_a, const Vec& coords_b);

struct SeparabilityResult {
  bool separable = false;
  // separable: convex decomposition over vertex products
  std::vector<std::tuple<int, int, Rational>> decomposition;
  // entangled: witness W with W(α_i⊗β_j) ≤ 0 (max 0) and W(ω) > 0
  Mat witness;
};

/// Membership of a normalized tensor in the minimal (separable) cone:
/// feasibility of ω = Σ λ_ij α_i⊗β_j with λ ≥ 0, Σλ = 1. The entanglement
/// witness is the Farkas dual, shifted so its maximum over product states
/// is exactly 0.
SeparabilityResult min_cone_member(const LinearModel& la,
                                   const LinearModel& lb, const Mat& tensor);

/// Extreme rays of the dual cone {f : f(α) ≥ 0 on Ω}, in dual coordinates.
std::vector<Vec> dual_cone_rays(const LinearModel& lm);

/// ω(a⊗b) ≥ 0 for all products of dual extreme rays.
bool max_cone_member(const LinearModel& la, const LinearModel& lb,
                     const Mat& tensor);

struct NsPolytope {
  TestSpace space;  // product(A,B)
  Mat ineq;
  Vec ineq_rhs;
  Mat eq;
  Vec eq_rhs;
  std::vector<Vec> vertices;  // flattened, canonical product order, sorted
};

/// H-representation and exact vertices of the non-signaling state polytope
/// Ω_NS(A,B). Non-full factors contribute conditional-membership rows via
/// the dual extreme rays of their state cones.
NsPolytope ns_polytope(const Model& a, const Model& b,
                       const VertexEnumBudget& budget = {});

/// Conditioning map ω̂ : V(A)* → V(B), ω̂(f) = tensorᵀ·f.
Mat conditioning_map(const Mat& tensor);
/// Co-conditioning map f̂ : V(A) → V(B)*, f̂(α) = tensorᵀ·α.
Mat co_conditioning_map(const Mat& tensor);

struct RemoteEvaluation {
  Rational lhs;  // (f ⊗ e)(α ⊗ ω), contracted directly
  Rational rhs;  // e((ω̂ ∘ f̂)(α)), via the composed maps
  Mat channel;   // ω̂ ∘ f̂ : V(U) → V(W)
};

/// Both sides of the remote evaluation identity, computed independently.
RemoteEvaluation remote_evaluate(const Vec& alpha, const Mat& f, const Mat& omega,
                                 const Vec& e);

/// Two disjoint two-outcome tests with the full square of weights.
Model gbit();

/// The n-fold gbit composite: 2ⁿ tests of 2ⁿ outcomes "bits|settings",
/// all probability weights allowed. Semi-classical by construction.
Model boxworld(int n);

/// The PR-box joint weight on two gbits.
JointWeight pr_box(const Model& gbit_a, const Model& gbit_b);

struct CompositeReport {
  bool ok = true;
  bool locally_tomographic = false;
  bool injective = false;  // diagnostic only; not required by the definition
  std::string detail;
};

/// Verifies that (AB, π) is a non-signaling composite of A and B: π is a
/// test-preserving morphism from A ×_NS B and every product state is
/// realized through π*.
CompositeReport verify_composite(const Model& a, const Model& b,
                                 const Model& ab,
                                 const std::vector<std::vector<int>>& pi,
                                 const VertexEnumBudget& budget = {});

}  // namespace gpt
