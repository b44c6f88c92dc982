#include "polycensus/permgrp/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "polycensus/error.hpp"

namespace polycensus::permgrp {

PermGroup::PermGroup(int degree, std::vector<Permutation> elements, std::vector<Permutation> generators)
    : n_(degree), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  member_.assign(static_cast<std::size_t>(factorial(n_)), false);
  for (const auto& e : elements_) member_[static_cast<std::size_t>(e.rank())] = true;
}

bool PermGroup::contains(const Permutation& p) const {
  return p.degree() == n_ && member_[static_cast<std::size_t>(p.rank())];
}

bool PermGroup::is_even() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Permutation& p) { return p.sign() > 0; });
}

PermGroup generate(const std::vector<Permutation>& gens) {
  if (gens.empty()) throw std::invalid_argument("generate needs at least one generator");
  const int n = gens.front().degree();
  if (n > kMaxDegree) throw DegreeMismatch("generator degree exceeds 7");
  for (const auto& g : gens)
    if (g.degree() != n) throw DegreeMismatch("generators have different degrees");

  std::vector<bool> seen(static_cast<std::size_t>(factorial(n)), false);
  std::vector<Permutation> elements{Permutation::identity(n)};
  seen[static_cast<std::size_t>(elements.front().rank())] = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : gens) {
      Permutation q = g * elements[i];
      auto r = static_cast<std::size_t>(q.rank());
      if (seen[r]) continue;
      seen[r] = true;
      elements.push_back(q);
    }
  }
  return PermGroup(n, std::move(elements), gens);
}

bool is_transitive(const PermGroup& g) {
  const int n = g.degree();
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  for (const auto& e : g.elements()) reached[static_cast<std::size_t>(e(0))] = true;
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

namespace {

int find(std::vector<int>& parent, int a) {
  while (parent[static_cast<std::size_t>(a)] != a) {
    parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    a = parent[static_cast<std::size_t>(a)];
  }
  return a;
}

// Finest block system in which 0 and i share a block; returns the size of the
// block of 0.
int minimal_block_size(const PermGroup& g, int i) {
  const int n = g.degree();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<int, int>> queue{{0, i}};
  parent[static_cast<std::size_t>(i)] = 0;
  while (!queue.empty()) {
    auto [a, b] = queue.back();
    queue.pop_back();
    for (const auto& s : g.generators()) {
      int x = find(parent, s(a)), y = find(parent, s(b));
      if (x == y) continue;
      parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
      queue.emplace_back(x, y);
    }
  }
  int root = find(parent, 0), size = 0;
  for (int k = 0; k < n; ++k)
    if (find(parent, k) == root) ++size;
  return size;
}

}  // namespace

bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) throw NotTransitive();
  for (int i = 1; i < g.degree(); ++i)
    if (minimal_block_size(g, i) < g.degree()) return false;
  return true;
}

Distribution cycle_type_distribution(const PermGroup& g) {
  std::map<CycleType, long> counts;
  for (const auto& e : g.elements()) ++counts[e.cycle_type()];
  Distribution d;
  for (const auto& [t, c] : counts) {
    mpq_class q(c, g.order());
    q.canonicalize();
    d.emplace(t, q);
  }
  return d;
}

std::vector<Permutation> symmetric_group_elements(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::optional<Permutation> conjugating_element(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree() || a.order() != b.order()) return std::nullopt;
  for (const auto& s : symmetric_group_elements(a.degree())) {
    Permutation si = inverse(s);
    bool ok = std::all_of(a.generators().begin(), a.generators().end(),
                          [&](const Permutation& g) { return b.contains(s * g * si); });
    if (ok) return s;
  }
  return std::nullopt;
}

}  // namespace polycensus::permgrp
