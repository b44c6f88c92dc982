#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "polycensus/error.hpp"
#include "polycensus/permgrp/catalog.hpp"

using namespace polycensus::permgrp;

namespace {

Permutation cyc(int n, std::vector<std::vector<int>> cycles) { return Permutation::from_cycles(n, cycles); }

// Subgroup oracle independent of the library: element sets as sorted image
// vectors, closure by repeated products.
using Img = std::vector<int>;
using ElementSet = std::set<Img>;

Img compose(const Img& a, const Img& b) {
  Img r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

ElementSet closure(const std::vector<Img>& gens) {
  Img id(gens.front().size());
  std::iota(id.begin(), id.end(), 0);
  ElementSet s{id};
  std::vector<Img> frontier{id};
  while (!frontier.empty()) {
    std::vector<Img> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Img y = compose(g, x);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return s;
}

bool transitive(const ElementSet& s) {
  std::set<int> orbit;
  for (const auto& x : s) orbit.insert(x[0]);
  return static_cast<std::size_t>(orbit.size()) == s.begin()->size();
}

ElementSet conjugate(const ElementSet& s, const Img& c) {
  Img ci(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) ci[static_cast<std::size_t>(c[i])] = static_cast<int>(i);
  ElementSet out;
  for (const auto& x : s) out.insert(compose(compose(c, x), ci));
  return out;
}

// Conjugacy classes of transitive subgroups of S_n generated by at most three
// elements.
std::vector<ElementSet> oracle_transitive_classes(int n) {
  std::vector<Img> sn;
  Img v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  do sn.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));

  std::set<ElementSet> two_gen;
  for (std::size_t i = 0; i < sn.size(); ++i)
    for (std::size_t j = i; j < sn.size(); ++j) two_gen.insert(closure({sn[i], sn[j]}));
  std::set<ElementSet> all = two_gen;
  for (const auto& h : two_gen)
    for (const auto& g : sn) {
      if (h.count(g)) continue;
      std::vector<Img> gens(h.begin(), h.end());
      gens.push_back(g);
      all.insert(closure(gens));
    }
  std::vector<ElementSet> classes;
  for (const auto& h : all) {
    if (!transitive(h)) continue;
    bool seen = false;
    for (const auto& k : classes) {
      if (k.size() != h.size()) continue;
      for (const auto& c : sn)
        if (conjugate(h, c) == k) {
          seen = true;
          break;
        }
      if (seen) break;
    }
    if (!seen) classes.push_back(h);
  }
  return classes;
}

}  // namespace

TEST_CASE("generate examples") {
  CHECK(generate({cyc(3, {{0, 1, 2}})}).order() == 3);
  CHECK(generate({cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}).order() == 6);
  PermGroup d4 = generate({cyc(4, {{0, 1, 2, 3}}), cyc(4, {{1, 3}})});
  CHECK(d4.order() == 8);
  std::vector<Img> gens{cyc(4, {{0, 1, 2, 3}}).images(), cyc(4, {{1, 3}}).images()};
  CHECK(static_cast<long>(closure(gens).size()) == d4.order());
  CHECK_THROWS_AS(generate({cyc(3, {{0, 1}}), cyc(4, {{0, 1}})}), polycensus::DegreeMismatch);
  CHECK_THROWS_AS(Permutation(std::vector<int>{1, 0, 2, 3, 4, 5, 6, 7}), std::invalid_argument);
}

TEST_CASE("generate is idempotent and obeys Lagrange") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& e : transitive_catalog(n)) {
      PermGroup again = generate(e.group.elements());
      CHECK(again.elements() == e.group.elements());
      CHECK(factorial(n) % e.order() == 0);
    }
  CHECK(generate({cyc(7, {{0, 1, 2, 3, 4, 5, 6}}), cyc(7, {{0, 1}})}).order() == 5040);
}

TEST_CASE("transitivity") {
  CHECK(is_transitive(generate({cyc(4, {{0, 1, 2, 3}})})));
  CHECK_FALSE(is_transitive(generate({cyc(3, {{0, 1}})})));
  CHECK(is_transitive(generate({cyc(4, {{0, 1, 2}}), cyc(4, {{0, 1}, {2, 3}})})));
}

TEST_CASE("primitivity") {
  CHECK_FALSE(is_primitive(generate({cyc(4, {{0, 1, 2, 3}})})));
  CHECK(is_primitive(generate({cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 1}})})));
  CHECK_THROWS_AS(is_primitive(generate({cyc(3, {{0, 1}})})), polycensus::NotTransitive);
  for (int p : {2, 3, 5})
    for (const auto& e : transitive_catalog(p)) CHECK(is_primitive(e.group));
}

TEST_CASE("cycle type distributions") {
  auto s3 = cycle_type_distribution(generate({cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}));
  CHECK(s3.size() == 3);
  CHECK(s3.at(CycleType::parse("1+1+1")) == mpq_class(1, 6));
  CHECK(s3.at(CycleType::parse("1+2")) == mpq_class(1, 2));
  CHECK(s3.at(CycleType::parse("3")) == mpq_class(1, 3));
  auto c3 = cycle_type_distribution(generate({cyc(3, {{0, 1, 2}})}));
  CHECK(c3.at(CycleType::parse("1+1+1")) == mpq_class(1, 3));
  CHECK(c3.at(CycleType::parse("3")) == mpq_class(2, 3));
  auto c5 = cycle_type_distribution(generate({cyc(5, {{0, 1, 2, 3, 4}})}));
  CHECK(c5.size() == 2);
  CHECK(c5.at(CycleType::parse("5")) == mpq_class(4, 5));
  for (int n = 2; n <= 6; ++n)
    for (const auto& e : transitive_catalog(n)) {
      mpq_class total = 0;
      for (const auto& [t, q] : e.distribution) {
        CHECK(t.degree() == n);
        total += q;
      }
      CHECK(total == 1);
    }
}

TEST_CASE("catalog contents") {
  auto names = [](int n) {
    std::vector<std::string> out;
    for (const auto& e : transitive_catalog(n)) out.push_back(e.name);
    return out;
  };
  CHECK(names(2) == std::vector<std::string>{"C_2"});
  CHECK(names(3) == std::vector<std::string>{"C_3", "S_3"});
  CHECK(names(4) == std::vector<std::string>{"C_4", "V_4", "D_4", "A_4", "S_4"});
  CHECK(names(5) == std::vector<std::string>{"C_5", "D_5", "F_20", "A_5", "S_5"});
  CHECK(transitive_catalog(6).size() == 16);
  for (int n = 2; n <= 6; ++n)
    for (const auto& e : transitive_catalog(n)) {
      CHECK(is_transitive(e.group));
      CHECK(e.primitive == is_primitive(e.group));
    }
  CHECK_THROWS(transitive_catalog(7));
}

TEST_CASE("catalog classes are pairwise non-conjugate") {
  for (int n = 2; n <= 6; ++n) {
    const auto& cat = transitive_catalog(n);
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = i + 1; j < cat.size(); ++j)
        CHECK_FALSE(conjugating_element(cat[i].group, cat[j].group).has_value());
  }
}

TEST_CASE("catalog is complete against exhaustive search") {
  for (int n = 2; n <= 5; ++n) {
    auto classes = oracle_transitive_classes(n);
    const auto& cat = transitive_catalog(n);
    CHECK(classes.size() == cat.size());
    for (const auto& k : classes) {
      std::vector<Permutation> gens;
      for (const auto& x : k) gens.emplace_back(x);
      PermGroup g = generate(gens);
      int matches = 0;
      for (const auto& e : cat) matches += conjugating_element(g, e.group).has_value();
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("catalog text round trip") {
  std::vector<CatalogEntry> all;
  for (int n = 2; n <= 6; ++n)
    for (const auto& e : transitive_catalog(n)) all.push_back(e);
  std::string text = format_catalog(all);
  auto back = parse_catalog(text);
  REQUIRE(back.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(back[i].name == all[i].name);
    CHECK(back[i].group.elements() == all[i].group.elements());
  }
  CHECK_THROWS(parse_catalog("polycensus-transitive-catalog 99\n"));
  std::string tampered = text;
  tampered.replace(tampered.find(" 4 0 1230"), 9, " 5 0 1230");
  CHECK_THROWS(parse_catalog(tampered));
}
