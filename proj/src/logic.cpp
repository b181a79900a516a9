#include "gpt/logic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gpt {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void check_orthoalgebra_axioms(const Orthoalgebra& l) {
  const int n = l.size();
  for (int p = 0; p < n; ++p) {
    if (l.perp[p][p] && p != l.zero)
      throw Error("internal: logic has a self-orthogonal nonzero element");
    for (int q = 0; q < n; ++q) {
      if (l.perp[p][q] != l.perp[q][p])
        throw Error("internal: asymmetric orthogonality in logic");
      if (l.perp[p][q] && l.oplus[p][q] != l.oplus[q][p])
        throw Error("internal: non-commutative sum in logic");
    }
  }
  // associativity: q ⊥ r and p ⊥ (q⊕r) force the regrouped sums to exist
  // and agree
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        if (!l.perp[q][r]) continue;
        int qr = l.oplus[q][r];
        if (!l.perp[p][qr]) continue;
        if (!l.perp[p][q])
          throw Error("internal: associativity (perp p,q) fails in logic");
        int pq = l.oplus[p][q];
        if (!l.perp[pq][r])
          throw Error("internal: associativity (perp pq,r) fails in logic");
        if (l.oplus[pq][r] != l.oplus[p][qr])
          throw Error("internal: associativity (sums differ) in logic");
      }
  for (int p = 0; p < n; ++p) {
    int count = 0;
    for (int q = 0; q < n; ++q)
      if (l.perp[p][q] && l.oplus[p][q] == l.one) {
        ++count;
        if (q != l.ocomp[p])
          throw Error("internal: stored orthocomplement mismatch");
      }
    if (count != 1)
      throw Error("internal: orthocomplement not unique in logic");
  }
}

}  // namespace

LogicBuildResult build_logic(const TestSpace& space, const Budget& budget) {
  AlgebraicityResult alg = is_algebraic(space, budget);
  if (!alg.algebraic) {
    const auto& w = *alg.witness;
    throw NotAlgebraicError("test space is not algebraic: " +
                            space.render(w[0].members) + " ~ " +
                            space.render(w[1].members) + " but " +
                            space.render(w[2].members) +
                            " complements only the latter");
  }

  std::vector<Event> evs = events(space, budget);
  const std::size_t m = evs.size();
  std::map<OutcomeSet, int> event_index;
  for (std::size_t i = 0; i < m; ++i) event_index[evs[i].members] = static_cast<int>(i);

  std::vector<std::vector<Event>> comps(m);
  std::vector<std::set<OutcomeSet>> comp_sets(m);
  for (std::size_t i = 0; i < m; ++i) {
    comps[i] = complements(evs[i]);
    for (const Event& c : comps[i]) comp_sets[i].insert(c.members);
  }

  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (const Event& c : comps[j])
        if (comp_sets[i].count(c.members)) {
          uf.unite(static_cast<int>(i), static_cast<int>(j));
          break;
        }

  // property (1): a ~ b and b ⊥ c imply a ⊥ c and a∪c ~ b∪c
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || uf.find(static_cast<int>(a)) != uf.find(static_cast<int>(b)))
        continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (!orthogonal(evs[b], evs[c])) continue;
        if (!orthogonal(evs[a], evs[c]))
          throw NotAlgebraicError("property (1) fails: " +
                                  space.render(evs[a].members) + " ~ " +
                                  space.render(evs[b].members) +
                                  " but only the latter is orthogonal to " +
                                  space.render(evs[c].members));
        int bu = event_index.at(setops::unite(evs[b].members, evs[c].members));
        int au = event_index.at(setops::unite(evs[a].members, evs[c].members));
        if (uf.find(au) != uf.find(bu))
          throw NotAlgebraicError("property (1) fails: unions " +
                                  space.render(evs[au].members) + " and " +
                                  space.render(evs[bu].members) +
                                  " are not perspective");
      }
    }

  // classes in canonical order of their least representative
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < m; ++i)
    groups[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<EventClass> classes;
  for (const auto& [root, members] : groups) {
    EventClass cls;
    for (int e : members) cls.members.push_back(evs[e].members);
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](const EventClass& a, const EventClass& b) {
              return a.representative < b.representative;
            });

  const int n = static_cast<int>(classes.size());
  std::vector<int> class_of(m, -1);
  for (int k = 0; k < n; ++k)
    for (const OutcomeSet& s : classes[k].members)
      class_of[event_index.at(s)] = k;

  Orthoalgebra logic;
  for (const EventClass& c : classes)
    logic.names.push_back(space.render(c.representative));
  logic.perp.assign(n, std::vector<bool>(n, false));
  logic.oplus.assign(n, std::vector<int>(n, -1));
  logic.zero = class_of[event_index.at(OutcomeSet{})];
  logic.one = class_of[event_index.at(space.tests().front())];

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!orthogonal(evs[i], evs[j])) continue;
      int p = class_of[i], q = class_of[j];
      int sum = class_of[event_index.at(
          setops::unite(evs[i].members, evs[j].members))];
      if (logic.oplus[p][q] != -1 && logic.oplus[p][q] != sum)
        throw NotAlgebraicError("⊕ is not well-defined on classes");
      logic.perp[p][q] = true;
      logic.oplus[p][q] = sum;
    }

  logic.ocomp.assign(n, -1);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (logic.perp[p][q] && logic.oplus[p][q] == logic.one) logic.ocomp[p] = q;

  check_orthoalgebra_axioms(logic);
  return {std::move(logic), std::move(classes)};
}

bool leq(const Orthoalgebra& l, int p, int q) {
  for (int r = 0; r < l.size(); ++r)
    if (l.perp[p][r] && l.oplus[p][r] == q) return true;
  return false;
}

namespace {

JointSum joint_sum_rec(const Orthoalgebra& l, const std::vector<int>& set,
                       std::map<std::vector<int>, JointSum>& memo) {
  if (set.empty()) return {true, l.zero};
  if (set.size() == 1) return {true, set[0]};
  auto it = memo.find(set);
  if (it != memo.end()) return it->second;
  JointSum result{true, -1};
  for (std::size_t drop = 0; drop < set.size(); ++drop) {
    std::vector<int> rest;
    for (std::size_t i = 0; i < set.size(); ++i)
      if (i != drop) rest.push_back(set[i]);
    JointSum sub = joint_sum_rec(l, rest, memo);
    if (!sub.defined || !l.perp[sub.sum][set[drop]]) {
      result = {false, -1};
      break;
    }
    int total = l.oplus[sub.sum][set[drop]];
    if (result.sum == -1)
      result.sum = total;
    else if (result.sum != total) {
      result = {false, -1};
      break;
    }
  }
  memo[set] = result;
  return result;
}

}  // namespace

JointSum jointly_orthogonal(const Orthoalgebra& l, const std::vector<int>& set) {
  std::vector<int> s = set;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() != set.size())
    throw NotPairwiseOrthogonalError("repeated element in joint sum");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!l.perp[s[i]][s[j]])
        throw NotPairwiseOrthogonalError("elements " + l.names[s[i]] + " and " +
                                         l.names[s[j]] + " are not orthogonal");
  std::map<std::vector<int>, JointSum> memo;
  return joint_sum_rec(l, s, memo);
}

OrthocoherenceResult is_orthocoherent(const Orthoalgebra& l) {
  const int n = l.size();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (!l.perp[p][q]) continue;
      for (int r = q + 1; r < n; ++r) {
        if (!l.perp[p][r] || !l.perp[q][r]) continue;
        bool ok = l.perp[p][l.oplus[q][r]] && l.perp[q][l.oplus[p][r]] &&
                  l.perp[r][l.oplus[p][q]];
        if (!ok)
          return {false, std::array<int, 3>{p, q, r}};
      }
    }
  return {};
}

bool is_boolean(const Orthoalgebra& l) {
  const int n = l.size();
  auto compatible = [&](int a, int b) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (!l.perp[p][q] || l.oplus[p][q] != a) continue;
        for (int r = 0; r < n; ++r) {
          if (!l.perp[q][r] || l.oplus[q][r] != b) continue;
          if (l.perp[l.oplus[p][q]][r]) return true;
        }
      }
    return false;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (!compatible(a, b)) return false;
  return true;
}

namespace {

void orthopartition_rec(const Orthoalgebra& l, std::vector<int>& current,
                        int next, std::vector<std::vector<int>>& found,
                        std::map<std::vector<int>, JointSum>& memo,
                        std::uint64_t& visited, std::uint64_t cap) {
  if (++visited > cap)
    throw BudgetExceededError("orthopartition enumeration exceeds budget");
  if (!current.empty()) {
    JointSum js = joint_sum_rec(l, current, memo);
    if (!js.defined) return;  // no superset can recover
    if (js.sum == l.one) found.push_back(current);
  }
  for (int p = next; p < l.size(); ++p) {
    if (p == l.zero) continue;
    bool orth = true;
    for (int q : current)
      if (!l.perp[q][p]) {
        orth = false;
        break;
      }
    if (!orth) continue;
    current.push_back(p);
    orthopartition_rec(l, current, p + 1, found, memo, visited, cap);
    current.pop_back();
  }
}

}  // namespace

TestSpace orthopartitions(const Orthoalgebra& l, const Budget& budget) {
  std::vector<std::vector<int>> found;
  std::vector<int> current;
  std::map<std::vector<int>, JointSum> memo;
  std::uint64_t visited = 0;
  orthopartition_rec(l, current, 0, found, memo, visited,
                     budget.event_subsets);

  std::vector<std::string> labels;
  std::map<int, std::string> label_of;
  for (int p = 0; p < l.size(); ++p) {
    if (p == l.zero) continue;
    label_of[p] = l.names[p];
    labels.push_back(l.names[p]);
  }
  std::sort(labels.begin(), labels.end());
  std::map<std::string, int> new_index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    new_index[labels[i]] = static_cast<int>(i);

  std::vector<OutcomeSet> tests;
  for (const auto& part : found) {
    OutcomeSet t;
    for (int p : part) t.push_back(new_index[label_of[p]]);
    std::sort(t.begin(), t.end());
    tests.push_back(std::move(t));
  }
  return TestSpace::from_indexed(std::move(labels), std::move(tests));
}

EffectAlgebraReport verify_effect_algebra(const EffectAlgebraTable& t) {
  const int n = static_cast<int>(t.names.size());
  auto name = [&](int p) { return t.names[p]; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (t.perp[p][q] != t.perp[q][p])
        return {false, 1, name(p) + "," + name(q)};
      if (t.perp[p][q] && t.oplus[p][q] != t.oplus[q][p])
        return {false, 1, name(p) + "," + name(q)};
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (!t.perp[p][q]) continue;
      int pq = t.oplus[p][q];
      for (int r = 0; r < n; ++r) {
        if (!t.perp[pq][r]) continue;
        if (!t.perp[q][r]) return {false, 2, name(p) + "," + name(q) + "," + name(r)};
        int qr = t.oplus[q][r];
        if (!t.perp[p][qr] || t.oplus[p][qr] != t.oplus[pq][r])
          return {false, 2, name(p) + "," + name(q) + "," + name(r)};
      }
    }
  for (int p = 0; p < n; ++p) {
    int count = 0;
    for (int q = 0; q < n; ++q)
      if (t.perp[p][q] && t.oplus[p][q] == t.one) ++count;
    if (count != 1) return {false, 3, name(p)};
  }
  for (int p = 0; p < n; ++p)
    if (t.perp[p][t.one] && p != t.zero) return {false, 4, name(p)};
  return {};
}

EffectAlgebraTable as_effect_table(const Orthoalgebra& l) {
  return {l.names, l.perp, l.oplus, l.zero, l.one};
}

namespace {

bool iso_extend(const Orthoalgebra& a, const Orthoalgebra& b,
                std::vector<int>& map, std::vector<bool>& used, int at) {
  const int n = a.size();
  if (at == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    if ((at == a.zero) != (cand == b.zero)) continue;
    if ((at == a.one) != (cand == b.one)) continue;
    bool ok = true;
    for (int p = 0; p < at && ok; ++p) {
      if (a.perp[at][p] != b.perp[cand][map[p]]) ok = false;
      if (ok && a.perp[at][p]) {
        int sum = a.oplus[at][p];
        if (sum < at && b.oplus[cand][map[p]] != map[sum]) ok = false;
      }
      // sums landing on later elements are checked when those are placed
      for (int q = 0; q <= p && ok; ++q)
        if (a.perp[p][q] && a.oplus[p][q] == at &&
            b.oplus[map[p]][map[q]] != cand)
          ok = false;
    }
    if (ok && a.ocomp[at] < at && map[a.ocomp[at]] != b.ocomp[cand]) ok = false;
    if (!ok) continue;
    map[at] = cand;
    used[cand] = true;
    if (iso_extend(a, b, map, used, at + 1)) return true;
    used[cand] = false;
    map[at] = -1;
  }
  return false;
}

}  // namespace

bool isomorphic(const Orthoalgebra& a, const Orthoalgebra& b) {
  if (a.size() != b.size()) return false;
  auto degrees = [](const Orthoalgebra& l) {
    std::vector<int> d(l.size(), 0);
    for (int p = 0; p < l.size(); ++p)
      for (int q = 0; q < l.size(); ++q)
        if (l.perp[p][q]) ++d[p];
    std::vector<int> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  };
  if (degrees(a) != degrees(b)) return false;
  std::vector<int> map(a.size(), -1);
  std::vector<bool> used(b.size(), false);
  return iso_extend(a, b, map, used, 0);
}

}  // namespace gpt
