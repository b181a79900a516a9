#include "gpt/testspace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gpt {

namespace setops {

bool disjoint(const OutcomeSet& a, const OutcomeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return false;
  }
  return true;
}

bool subset(const OutcomeSet& a, const OutcomeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

OutcomeSet unite(const OutcomeSet& a, const OutcomeSet& b) {
  OutcomeSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(r));
  return r;
}

OutcomeSet intersect(const OutcomeSet& a, const OutcomeSet& b) {
  OutcomeSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

OutcomeSet difference(const OutcomeSet& a, const OutcomeSet& b) {
  OutcomeSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

}  // namespace setops

bool TestSpace::labels_equal(const TestSpace& other) const {
  if (outcomes_.size() != other.outcomes_.size()) return false;
  for (std::size_t i = 0; i < outcomes_.size(); ++i)
    if (outcomes_[i].id != other.outcomes_[i].id) return false;
  return true;
}

int TestSpace::index_of(const std::string& label) const {
  auto it = std::lower_bound(
      outcomes_.begin(), outcomes_.end(), label,
      [](const Outcome& o, const std::string& l) { return o.id < l; });
  if (it == outcomes_.end() || it->id != label)
    throw UnknownOutcomeError("unknown outcome label: " + label);
  return it->index;
}

bool TestSpace::has_test(const OutcomeSet& members) const {
  return std::find(tests_.begin(), tests_.end(), members) != tests_.end();
}

std::string TestSpace::render(const OutcomeSet& members) const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out << ',';
    out << label(members[i]);
  }
  out << '}';
  return out.str();
}

TestSpace TestSpace::from_indexed(std::vector<std::string> sorted_labels,
                                  std::vector<OutcomeSet> tests) {
  TestSpace space;
  for (std::size_t i = 0; i + 1 < sorted_labels.size(); ++i)
    if (sorted_labels[i] >= sorted_labels[i + 1])
      throw ParseError("outcome labels not sorted/unique");
  for (std::size_t i = 0; i < sorted_labels.size(); ++i)
    space.outcomes_.push_back({sorted_labels[i], static_cast<int>(i)});

  for (OutcomeSet& t : tests) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (t.empty()) throw ParseError("empty test");
    if (t.front() < 0 || t.back() >= static_cast<int>(sorted_labels.size()))
      throw UnknownOutcomeError("test references outcome out of range");
  }
  // set semantics of M: duplicate tests collapse silently
  std::sort(tests.begin(), tests.end());
  tests.erase(std::unique(tests.begin(), tests.end()), tests.end());

  for (std::size_t i = 0; i < tests.size(); ++i)
    for (std::size_t j = 0; j < tests.size(); ++j) {
      if (i == j) continue;
      if (setops::subset(tests[i], tests[j])) {
        TestSpace tmp = space;
        tmp.tests_ = tests;
        throw IrredundanceError("test " + tmp.render(tests[i]) +
                                " is a proper subset of " +
                                tmp.render(tests[j]));
      }
    }

  std::vector<bool> covered(sorted_labels.size(), false);
  for (const OutcomeSet& t : tests)
    for (int x : t) covered[x] = true;
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i])
      throw ParseError("outcome " + sorted_labels[i] + " appears in no test");

  space.tests_ = std::move(tests);
  return space;
}

TestSpace TestSpace::make(std::vector<std::string> labels,
                          std::vector<std::vector<std::string>> tests) {
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("duplicate outcome label");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    index[sorted[i]] = static_cast<int>(i);

  std::vector<OutcomeSet> indexed;
  for (const auto& t : tests) {
    OutcomeSet s;
    for (const std::string& l : t) {
      auto it = index.find(l);
      if (it == index.end())
        throw UnknownOutcomeError("test references unlisted label: " + l);
      s.push_back(it->second);
    }
    indexed.push_back(std::move(s));
  }
  return from_indexed(std::move(sorted), std::move(indexed));
}

Event make_event(const TestSpace& space, const OutcomeSet& members) {
  OutcomeSet sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const auto& tests = space.tests();
  for (std::size_t i = 0; i < tests.size(); ++i)
    if (setops::subset(sorted, tests[i]))
      return Event{&space, std::move(sorted), static_cast<int>(i)};
  throw ParseError("set " + space.render(sorted) +
                   " is not an event (contained in no test)");
}

Event make_event(const TestSpace& space,
                 const std::vector<std::string>& labels) {
  OutcomeSet members;
  for (const std::string& l : labels) members.push_back(space.index_of(l));
  return make_event(space, members);
}

bool is_semiclassical(const TestSpace& space) {
  const auto& tests = space.tests();
  for (std::size_t i = 0; i < tests.size(); ++i)
    for (std::size_t j = i + 1; j < tests.size(); ++j)
      if (!setops::disjoint(tests[i], tests[j])) return false;
  return true;
}

std::vector<Event> events(const TestSpace& space, const Budget& budget) {
  std::uint64_t total = 0;
  for (const OutcomeSet& t : space.tests()) {
    if (t.size() >= 63) throw BudgetExceededError("test too large to expand");
    total += std::uint64_t(1) << t.size();
    if (total > budget.event_subsets)
      throw BudgetExceededError("event enumeration exceeds subset budget");
  }
  std::map<OutcomeSet, int> seen;  // member set -> witness test
  for (std::size_t ti = 0; ti < space.tests().size(); ++ti) {
    const OutcomeSet& t = space.tests()[ti];
    const std::uint64_t n = std::uint64_t(1) << t.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      OutcomeSet s;
      for (std::size_t k = 0; k < t.size(); ++k)
        if (mask & (std::uint64_t(1) << k)) s.push_back(t[k]);
      seen.emplace(std::move(s), static_cast<int>(ti));
    }
  }
  std::vector<Event> out;
  for (const auto& [members, witness] : seen)
    out.push_back(Event{&space, members, witness});
  return out;
}

static void require_same_owner(const Event& a, const Event& b) {
  if (a.owner == b.owner) return;
  if (a.owner && b.owner && *a.owner == *b.owner) return;
  throw OwnerMismatchError("events belong to different test spaces");
}

bool orthogonal(const Event& a, const Event& b) {
  require_same_owner(a, b);
  if (!setops::disjoint(a.members, b.members)) return false;
  OutcomeSet u = setops::unite(a.members, b.members);
  for (const OutcomeSet& t : a.owner->tests())
    if (setops::subset(u, t)) return true;
  return false;
}

std::vector<Event> complements(const Event& a) {
  std::vector<Event> out;
  const TestSpace& space = *a.owner;
  std::set<OutcomeSet> seen;
  for (std::size_t ti = 0; ti < space.tests().size(); ++ti) {
    const OutcomeSet& t = space.tests()[ti];
    if (!setops::subset(a.members, t)) continue;
    OutcomeSet rest = setops::difference(t, a.members);
    if (seen.insert(rest).second)
      out.push_back(Event{&space, std::move(rest), static_cast<int>(ti)});
  }
  std::sort(out.begin(), out.end(),
            [](const Event& x, const Event& y) { return x.members < y.members; });
  return out;
}

bool perspective(const Event& a, const Event& b) {
  require_same_owner(a, b);
  std::set<OutcomeSet> ca;
  for (const Event& c : complements(a)) ca.insert(c.members);
  for (const Event& c : complements(b))
    if (ca.count(c.members)) return true;
  return false;
}

AlgebraicityResult is_algebraic(const TestSpace& space, const Budget& budget) {
  std::vector<Event> all = events(space, budget);
  std::vector<std::vector<Event>> comps;
  comps.reserve(all.size());
  for (const Event& e : all) comps.push_back(complements(e));
  std::vector<std::set<OutcomeSet>> comp_sets(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const Event& c : comps[i]) comp_sets[i].insert(c.members);

  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      // a ~ b?
      bool persp = false;
      for (const Event& c : comps[j])
        if (comp_sets[i].count(c.members)) {
          persp = true;
          break;
        }
      if (!persp) continue;
      for (const Event& c : comps[j]) {
        if (!comp_sets[i].count(c.members)) {
          return AlgebraicityResult{
              false, std::array<Event, 3>{all[i], all[j], c}};
        }
      }
    }
  return AlgebraicityResult{true, std::nullopt};
}

bool refines(const TestSpace& space, int fine_test, int coarse_test,
             const Budget& budget) {
  const OutcomeSet& e = space.tests()[fine_test];
  const OutcomeSet& f = space.tests()[coarse_test];
  std::vector<Event> all = events(space, budget);
  for (int y : f) {
    Event ye{&space, OutcomeSet{y}, coarse_test};
    bool found = false;
    for (const Event& a : all) {
      if (!setops::subset(a.members, e)) continue;
      if (perspective(a, ye)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

// All partitions of `items` into non-empty blocks (Bell-number many).
void partitions_rec(const OutcomeSet& items, std::size_t at,
                    std::vector<OutcomeSet>& current,
                    std::vector<std::vector<OutcomeSet>>& out) {
  if (at == items.size()) {
    out.push_back(current);
    return;
  }
  for (auto& block : current) {
    block.push_back(items[at]);
    partitions_rec(items, at + 1, current, out);
    block.pop_back();
  }
  current.push_back({items[at]});
  partitions_rec(items, at + 1, current, out);
  current.pop_back();
}

std::uint64_t bell_capped(std::size_t n, std::uint64_t cap) {
  // triangle recurrence, clamped at cap
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) {
      std::uint64_t s = next.back() + v;
      next.push_back(std::min(s, cap));
    }
    row = std::move(next);
    if (row.front() >= cap) return cap;
  }
  return row.front();
}

}  // namespace

TestSpace coarsen_finite(const TestSpace& space, const Budget& budget) {
  std::uint64_t total = 0;
  for (const OutcomeSet& t : space.tests()) {
    total += bell_capped(t.size(), budget.event_subsets);
    if (total > budget.event_subsets)
      throw BudgetExceededError("coarsening exceeds partition budget");
  }

  // Coarse outcomes are non-empty events, labelled by their member sets.
  std::set<OutcomeSet> outcome_sets;
  std::vector<std::set<std::vector<OutcomeSet>>> per_test;
  for (const OutcomeSet& t : space.tests()) {
    std::vector<std::vector<OutcomeSet>> parts;
    std::vector<OutcomeSet> current;
    partitions_rec(t, 0, current, parts);
    std::set<std::vector<OutcomeSet>> canon;
    for (auto& p : parts) {
      for (auto& block : p) std::sort(block.begin(), block.end());
      std::sort(p.begin(), p.end());
      for (const auto& block : p) outcome_sets.insert(block);
      canon.insert(p);
    }
    per_test.push_back(std::move(canon));
  }

  std::vector<std::string> labels;
  std::map<OutcomeSet, std::string> label_of;
  for (const OutcomeSet& s : outcome_sets) {
    std::string l = space.render(s);
    label_of[s] = l;
    labels.push_back(std::move(l));
  }
  std::sort(labels.begin(), labels.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = static_cast<int>(i);

  std::set<OutcomeSet> coarse_tests;
  for (const auto& canon : per_test)
    for (const auto& p : canon) {
      OutcomeSet ct;
      for (const auto& block : p) ct.push_back(index[label_of[block]]);
      std::sort(ct.begin(), ct.end());
      coarse_tests.insert(std::move(ct));
    }

  return TestSpace::from_indexed(
      labels, std::vector<OutcomeSet>(coarse_tests.begin(), coarse_tests.end()));
}

std::string pair_label(const std::string& x, const std::string& y) {
  return "(" + x + "," + y + ")";
}

TestSpace product(const TestSpace& a, const TestSpace& b) {
  std::vector<std::string> labels;
  for (const Outcome& x : a.outcomes())
    for (const Outcome& y : b.outcomes())
      labels.push_back(pair_label(x.id, y.id));
  std::sort(labels.begin(), labels.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = static_cast<int>(i);

  std::vector<OutcomeSet> tests;
  for (const OutcomeSet& e : a.tests())
    for (const OutcomeSet& f : b.tests()) {
      OutcomeSet t;
      for (int x : e)
        for (int y : f) t.push_back(index[pair_label(a.label(x), b.label(y))]);
      std::sort(t.begin(), t.end());
      tests.push_back(std::move(t));
    }
  return TestSpace::from_indexed(std::move(labels), std::move(tests));
}

std::string dot(const TestSpace& space) {
  std::ostringstream out;
  out << "graph testspace {\n";
  out << "  node [shape=circle];\n";
  for (const Outcome& o : space.outcomes()) out << "  \"" << o.id << "\";\n";
  for (std::size_t t = 0; t < space.tests().size(); ++t) {
    out << "  \"__test" << t << "\" [shape=point, label=\"\"];\n";
    for (int x : space.tests()[t])
      out << "  \"__test" << t << "\" -- \"" << space.label(x) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gpt
