// Regenerates the transitive-group catalog by exhaustive subgroup search.
//
//   gen_catalog OUT_FILE
//
// Subgroups of S_n are grown from the trivial group by adjoining one element
// at a time, keeping one representative per conjugacy class. The transitive
// classes are labelled and written with a short generating set.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "polycensus/permgrp/catalog.hpp"

using namespace polycensus::permgrp;

namespace {

using Invariant = std::pair<long, std::map<CycleType, long>>;

Invariant invariant_of(const PermGroup& g) {
  std::map<CycleType, long> counts;
  for (const auto& e : g.elements()) ++counts[e.cycle_type()];
  return {g.order(), counts};
}

// Drops redundant generators, keeping the group unchanged.
std::vector<Permutation> shorten(const PermGroup& g) {
  std::vector<Permutation> gens = g.generators();
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<Permutation> trial = gens;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (generate(trial).order() == g.order()) gens = trial;
  }
  // Prefer two generators when a pair of existing elements suffices.
  if (gens.size() > 2) {
    for (const auto& a : g.elements())
      for (const auto& b : g.elements())
        if (a < b && generate({a, b}).order() == g.order()) return {a, b};
  }
  return gens;
}

std::vector<PermGroup> subgroup_classes(int n) {
  const auto sn = symmetric_group_elements(n);
  std::vector<PermGroup> reps{generate({Permutation::identity(n)})};
  std::map<Invariant, std::vector<std::size_t>> index;
  index[invariant_of(reps.front())].push_back(0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& s : sn) {
      if (reps[i].contains(s)) continue;
      std::vector<Permutation> gens = reps[i].generators();
      if (gens.size() == 1 && gens.front().is_identity()) gens.clear();
      gens.push_back(s);
      PermGroup k = generate(gens);
      auto& bucket = index[invariant_of(k)];
      bool known = std::any_of(bucket.begin(), bucket.end(),
                               [&](std::size_t j) { return conjugating_element(k, reps[j]).has_value(); });
      if (known) continue;
      bucket.push_back(reps.size());
      reps.push_back(std::move(k));
    }
  }
  return reps;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_catalog OUT_FILE\n";
    return 2;
  }
  std::vector<CatalogEntry> entries;
  for (int n = 2; n <= kCatalogMaxDegree; ++n) {
    std::vector<CatalogEntry> level;
    for (const auto& g : subgroup_classes(n)) {
      if (!is_transitive(g)) continue;
      level.push_back(make_catalog_entry(shorten(g)));
    }
    std::sort(level.begin(), level.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
      return a.order() != b.order() ? a.order() < b.order() : a.name < b.name;
    });
    for (std::size_t i = 1; i < level.size(); ++i)
      if (level[i].name == level[i - 1].name) {
        std::cerr << "duplicate label " << level[i].name << " in degree " << n << '\n';
        return 1;
      }
    std::cerr << "degree " << n << ": " << level.size() << " transitive classes\n";
    for (auto& e : level) entries.push_back(std::move(e));
  }
  std::ofstream out(argv[1]);
  out << format_catalog(entries);
  return out ? 0 : 1;
}
