#include "polycensus/galois/galois.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "polycensus/error.hpp"
#include "polycensus/galois/trager.hpp"
#include "polycensus/permgrp/catalog.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/modp.hpp"

namespace polycensus::galois {

using namespace polyalg;
using permgrp::CatalogEntry;
using permgrp::CycleType;

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::kCertified: return "certified";
    case Certainty::kHeuristic: return "heuristic";
    case Certainty::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

constexpr int kMinUnramified = 5;

void require_irreducible(const Polynomial& f) {
  if (!is_irreducible(f)) throw Reducible();
}

GroupLabel certified(const std::string& name, int degree, std::string method, std::vector<std::string> facts) {
  GroupLabel l;
  l.name = name;
  l.degree = degree;
  l.certainty = Certainty::kCertified;
  l.confidence = 1.0;
  l.certificate = {std::move(method), std::move(facts)};
  return l;
}

std::string fact(const std::string& key, const Integer& v) { return key + "=" + v.get_str(); }

CycleType as_cycle_type(const Observation& o) { return CycleType{o.degrees}; }

std::string describe(const Observation& o) {
  return "p=" + std::to_string(o.prime) + " type=" + as_cycle_type(o).to_string();
}

bool splits_over(const Integer& delta, const Integer& disc) {
  return delta == 0 || (delta > 0 && is_perfect_square(delta)) || [&] {
    Integer t = delta * disc;
    return t > 0 && is_perfect_square(t);
  }();
}

// Whether the catalog group has every observed cycle type.
bool admits(const CatalogEntry& e, const std::set<CycleType>& types) {
  return std::all_of(types.begin(), types.end(), [&](const CycleType& t) { return e.distribution.count(t) > 0; });
}

}  // namespace

Observation factor_degrees_mod_p(const Polynomial& f, std::uint32_t p) {
  Observation o;
  o.prime = p;
  auto d = factor_degrees_mod(f, p);
  if (!d) {
    o.ramified = true;
  } else {
    o.degrees = std::move(*d);
  }
  return o;
}

std::vector<Observation> unramified_observations(const Polynomial& f, int count) {
  std::vector<Observation> out;
  for (std::size_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    Observation o = factor_degrees_mod_p(f, nth_prime(i));
    if (!o.ramified) out.push_back(std::move(o));
  }
  return out;
}

GroupLabel galois_group_small_irreducible(const Polynomial& f, const Integer& disc) {
  const int n = f.degree();
  const bool square = is_perfect_square(disc);
  if (n == 2) return certified("C_2", 2, "degree-2", {fact("disc", disc)});
  if (n == 3)
    return certified(square ? "C_3" : "S_3", 3, "cubic-discriminant",
                     {fact("disc", disc), square ? "disc is a square" : "disc is not a square"});
  if (n != 4) throw std::invalid_argument("galois_group_small handles degrees 2 to 4");

  const Integer a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
  Polynomial resolvent(std::vector<Integer>{1, -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)});
  std::vector<Integer> roots = integer_roots(resolvent);
  std::vector<std::string> facts{fact("disc", disc), "resolvent=" + resolvent.to_list()};
  std::string roots_text = "resolvent_roots=";
  for (std::size_t i = 0; i < roots.size(); ++i) roots_text += (i ? "," : "") + roots[i].get_str();
  facts.push_back(roots_text);
  facts.push_back(square ? "disc is a square" : "disc is not a square");
  if (roots.empty()) return certified(square ? "A_4" : "S_4", 4, "cubic-resolvent", facts);
  if (roots.size() >= 2) return certified("V_4", 4, "cubic-resolvent", facts);
  // One rational resolvent root r: C_4 iff x^2 - r x + d and x^2 + a x + (b - r)
  // both split over Q(sqrt(disc)).
  const Integer& r = roots.front();
  Integer d1 = r * r - 4 * d, d2 = a * a - 4 * (b - r);
  bool cyclic = splits_over(d1, disc) && splits_over(d2, disc);
  facts.push_back(fact("kw_delta1", d1));
  facts.push_back(fact("kw_delta2", d2));
  facts.push_back(cyclic ? "both quadratics split over Q(sqrt(disc))" : "a quadratic stays irreducible over Q(sqrt(disc))");
  return certified(cyclic ? "C_4" : "D_4", 4, "cubic-resolvent", facts);
}

GroupLabel galois_group_small(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 2 || f.degree() > 4)
    throw std::invalid_argument("galois_group_small expects a monic polynomial of degree 2 to 4");
  require_irreducible(f);
  return galois_group_small_irreducible(f, discriminant(f));
}

std::optional<GroupLabel> certify_Sn_An_irreducible(const Polynomial& f, const Integer& disc, int prime_budget) {
  const int n = f.degree();
  if (n < 5) throw std::invalid_argument("certify_Sn_An expects degree >= 5");
  const bool square = is_perfect_square(disc);
  std::vector<Observation> obs;
  for (std::size_t i = 0;; ++i) {
    std::uint32_t p = nth_prime(i);
    if (static_cast<int>(p) >= prime_budget && static_cast<int>(obs.size()) >= kMinUnramified) break;
    Observation o = factor_degrees_mod_p(f, p);
    if (!o.ramified) obs.push_back(std::move(o));
  }
  const std::string big = (square ? "A_" : "S_") + std::to_string(n);
  std::vector<std::string> facts{fact("disc", disc), square ? "disc is a square" : "disc is not a square",
                                 "f is irreducible"};

  if (n <= permgrp::kCatalogMaxDegree) {
    // Every observed type is the cycle type of a Frobenius element, so Gal(f)
    // is a catalog group admitting all of them.
    std::set<CycleType> types;
    std::vector<const Observation*> witnesses;
    for (const auto& o : obs)
      if (types.insert(as_cycle_type(o)).second) witnesses.push_back(&o);
    std::vector<std::string> survivors;
    for (const auto& e : permgrp::transitive_catalog(n))
      if (admits(e, types) && (e.group.is_even() == square)) survivors.push_back(e.name);
    if (survivors.size() != 1 || survivors.front() != big) return std::nullopt;
    for (const auto* w : witnesses) facts.push_back(describe(*w));
    GroupLabel l = certified(big, n, "catalog-elimination", facts);
    l.evidence = obs;
    return l;
  }

  const Observation* witness = nullptr;
  int cycle = 0;
  for (const auto& o : obs) {
    for (int part : o.degrees) {
      if (2 * part <= n || part >= n - 2) continue;
      bool prime = part > 1;
      for (int q = 2; q * q <= part; ++q)
        if (part % q == 0) prime = false;
      if (prime) {
        witness = &o;
        cycle = part;
      }
    }
    if (witness) break;
  }
  if (!witness) return std::nullopt;
  facts.push_back(describe(*witness));
  facts.push_back("contains a " + std::to_string(cycle) + "-cycle");
  GroupLabel l = certified(big, n, "jordan", facts);
  l.evidence = obs;
  return l;
}

std::optional<GroupLabel> certify_Sn_An(const Polynomial& f, int prime_budget) {
  if (!f.is_monic() || f.degree() < 5) throw std::invalid_argument("certify_Sn_An expects a monic polynomial of degree >= 5");
  require_irreducible(f);
  return certify_Sn_An_irreducible(f, discriminant(f), prime_budget);
}

GroupLabel heuristic_group_irreducible(const Polynomial& f, const Integer& disc, int sample_primes) {
  const int n = f.degree();
  if (n == 2) return galois_group_small_irreducible(f, disc);
  if (n < 2 || n > permgrp::kCatalogMaxDegree) throw std::invalid_argument("heuristic_group handles degrees 2 to 6");
  const bool square = is_perfect_square(disc);
  std::vector<Observation> obs = unramified_observations(f, sample_primes);
  std::map<CycleType, int> counts;
  for (const auto& o : obs) ++counts[as_cycle_type(o)];

  struct Candidate {
    const CatalogEntry* entry;
    double loglik;
  };
  std::vector<Candidate> survivors;
  for (const auto& e : permgrp::transitive_catalog(n)) {
    if (e.group.is_even() != square) continue;
    double ll = 0.0;
    bool alive = true;
    for (const auto& [t, k] : counts) {
      auto it = e.distribution.find(t);
      if (it == e.distribution.end()) {
        alive = false;
        break;
      }
      ll += k * std::log(it->second.get_d());
    }
    if (alive) survivors.push_back({&e, ll});
  }
  GroupLabel l;
  l.degree = n;
  l.evidence = obs;
  if (survivors.empty()) return l;  // unreachable for a genuine Galois group
  double best = -INFINITY;
  for (const auto& c : survivors) best = std::max(best, c.loglik);
  double z = 0.0;
  for (const auto& c : survivors) z += std::exp(c.loglik - best);
  const Candidate* pick = nullptr;
  for (const auto& c : survivors)
    if (c.loglik == best && (!pick || c.entry->order() < pick->entry->order())) pick = &c;
  l.name = pick->entry->name;
  l.certainty = Certainty::kHeuristic;
  l.confidence = 1.0 / z;
  return l;
}

GroupLabel heuristic_group(const Polynomial& f, int sample_primes) {
  if (!f.is_monic() || f.degree() < 2 || f.degree() > permgrp::kCatalogMaxDegree)
    throw std::invalid_argument("heuristic_group expects a monic polynomial of degree 2 to 6");
  if (sample_primes < 1) throw std::invalid_argument("sample_primes must be positive");
  require_irreducible(f);
  return heuristic_group_irreducible(f, discriminant(f), sample_primes);
}

bool is_galois_field_irreducible(const Polynomial& f) {
  const int n = f.degree();
  if (n <= 2) return true;
  // A normal field is totally real or totally complex, and every unramified
  // prime splits into factors of one common degree.
  int real = count_real_roots(f);
  if (real != 0 && real != n) return false;
  for (const auto& o : unramified_observations(f, 8))
    if (o.degrees.front() != o.degrees.back()) return false;
  return count_roots_in_field(f, f) == n;
}

bool is_galois_field(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("is_galois_field expects a monic polynomial");
  require_irreducible(f);
  return is_galois_field_irreducible(f);
}

long label_order(const GroupLabel& label) {
  const CatalogEntry* e = permgrp::find_catalog_entry(label.name);
  return e ? e->order() : 0;
}

}  // namespace polycensus::galois
