#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpt/errors.hpp"
#include "gpt/linalg.hpp"

namespace gpt {

/// Sorted outcome-index set; the working representation of tests and events.
using OutcomeSet = std::vector<int>;

struct Outcome {
  std::string id;
  int index;  // dense, assigned in lexicographic label order
};

struct Budget {
  std::uint64_t event_subsets = std::uint64_t(1) << 20;
};

/// A finite, irredundant hypergraph of tests over a common outcome set.
/// Immutable after construction; all relational operations are pure.
class TestSpace {
 public:
  static TestSpace make(std::vector<std::string> labels,
                        std::vector<std::vector<std::string>> tests);
  /// Variant used by constructions that already work with indices. Labels
  /// must already be sorted; tests are deduplicated and checked.
  static TestSpace from_indexed(std::vector<std::string> sorted_labels,
                                std::vector<OutcomeSet> tests);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const std::vector<OutcomeSet>& tests() const { return tests_; }
  std::size_t outcome_count() const { return outcomes_.size(); }
  std::size_t test_count() const { return tests_.size(); }

  const std::string& label(int index) const { return outcomes_[index].id; }
  int index_of(const std::string& label) const;
  bool has_test(const OutcomeSet& members) const;
  std::string render(const OutcomeSet& members) const;

  bool operator==(const TestSpace& other) const {
    return labels_equal(other) && tests_ == other.tests_;
  }

 private:
  TestSpace() = default;
  bool labels_equal(const TestSpace& other) const;
  std::vector<Outcome> outcomes_;
  std::vector<OutcomeSet> tests_;
};

/// An event a ⊆ E for some test E, identified by its member set. The witness
/// records one containing test.
struct Event {
  const TestSpace* owner = nullptr;
  OutcomeSet members;
  int witness = -1;

  bool operator==(const Event& other) const { return members == other.members; }
};

Event make_event(const TestSpace& space, const OutcomeSet& members);
Event make_event(const TestSpace& space,
                 const std::vector<std::string>& labels);

/// How the state space is specified: every probability weight, or the convex
/// hull of an explicit generator list.
struct Model {
  TestSpace space;
  bool full = true;
  std::vector<Vec> generators;  // rows indexed by canonical outcome order
};

bool is_semiclassical(const TestSpace& space);

/// Every distinct event (including ∅ and full tests), sorted by member
/// sequence. Throws BudgetExceededError when Σ_E 2^|E| passes the cap.
std::vector<Event> events(const TestSpace& space, const Budget& budget = {});

bool orthogonal(const Event& a, const Event& b);
std::vector<Event> complements(const Event& a);
bool perspective(const Event& a, const Event& b);

struct AlgebraicityResult {
  bool algebraic = true;
  // counterexample: a ~ b, c complements b, but c does not complement a
  std::optional<std::array<Event, 3>> witness;
};
AlgebraicityResult is_algebraic(const TestSpace& space,
                                const Budget& budget = {});

/// Diagnostic: test E (fine) refines test F (coarse) iff every outcome of F
/// is perspective to some event inside E.
bool refines(const TestSpace& space, int fine_test, int coarse_test,
             const Budget& budget = {});

/// The finite coarsening: outcomes are the non-empty events of the input,
/// tests are partitions of input tests into non-empty events.
TestSpace coarsen_finite(const TestSpace& space, const Budget& budget = {});

/// Cartesian product test space {E × F}; outcome labels are "(x,y)".
TestSpace product(const TestSpace& a, const TestSpace& b);
std::string pair_label(const std::string& x, const std::string& y);

/// Hypergraph rendering for external visualization; node names are outcome
/// labels, one anchor node per test.
std::string dot(const TestSpace& space);

namespace setops {
bool disjoint(const OutcomeSet& a, const OutcomeSet& b);
bool subset(const OutcomeSet& a, const OutcomeSet& b);
OutcomeSet unite(const OutcomeSet& a, const OutcomeSet& b);
OutcomeSet intersect(const OutcomeSet& a, const OutcomeSet& b);
OutcomeSet difference(const OutcomeSet& a, const OutcomeSet& b);
}  // namespace setops

}  // namespace gpt
