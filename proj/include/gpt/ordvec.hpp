#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpt/states.hpp"

namespace gpt {

/// The span V(A) of the state space, with a deterministic rational basis
/// (reduced row echelon form of the vertex matrix), vertex coordinates,
/// cone generators, and the unit functional u (u(α) = 1 on Ω).
struct LinearModel {
  Model model;
  std::vector<Vec> basis;         // RREF rows in R^X
  std::vector<std::size_t> pivots;  // pivot outcome per basis row
  std::size_t dim = 0;
  std::vector<Vec> state_coords;  // Ω-vertices in basis coordinates
  Vec unit;                       // dual coordinates of u
};

struct Effect {
  Vec covector;  // dual coordinates
};

struct Channel {
  Mat matrix;  // V(source) -> V(target) in basis coordinates
  const LinearModel* source = nullptr;
  const LinearModel* target = nullptr;
};

LinearModel linearize(const Model& model, const VertexEnumBudget& budget = {});

/// Coordinates of an ambient vector in the model basis; NotInSpan when the
/// vector does not lie in V(A).
Vec to_coords(const LinearModel& lm, const Vec& ambient);
Vec to_ambient(const LinearModel& lm, const Vec& coords);

/// Effect evaluation against a vector of V(A) in basis coordinates.
Rational pair_effect(const Vec& covector, const Vec& coords);

/// The evaluation effect x̂ with x̂(α) = α(x).
Effect outcome_effect(const LinearModel& lm, int outcome);

/// 0 ≤ f ≤ u on the positive cone; checked on state vertices, which
/// suffices by convexity.
bool is_effect(const LinearModel& lm, const Vec& covector);

/// Minkowski functional of conv(Ω ∪ −Ω): exact LP  min s+t  over
/// v = s·σ − t·τ with σ, τ ∈ conv(Ω).
Rational base_norm(const LinearModel& lm, const Vec& ambient);
Rational base_norm_coords(const LinearModel& lm, const Vec& coords);

/// Minkowski functional of [−u, u] in the dual: max |f(α)| over vertices.
Rational order_unit_norm(const LinearModel& lm, const Vec& covector);

struct ChannelReport {
  bool ok = true;
  std::string kind;  // "positivity" | "normalization"
  int witness = -1;  // index of the offending source vertex
};

ChannelReport verify_channel(const Channel& phi);

Rational success_probability(const Channel& phi, const Vec& state_coords);

/// The model A* with a fresh failure outcome adjoined to every test;
/// Ω(A*) = conv(Ω(A) lifted ∪ {δ*}).
Model adjoin_failure(const Model& model);

struct FailureDecomposition {
  Rational p;                // success probability
  std::optional<Vec> beta1;  // normalized non-failure part; absent when p = 0
};

/// Unique decomposition β = p·β₁ + (1−p)·δ* of a weight on A*.
FailureDecomposition decompose_failure(const Model& star_model,
                                       const Model& base_model,
                                       const Vec& weight);

}  // namespace gpt
