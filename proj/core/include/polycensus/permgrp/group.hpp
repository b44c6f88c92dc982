#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polycensus/permgrp/permutation.hpp"

namespace polycensus::permgrp {

using Distribution = std::map<CycleType, mpq_class>;

/// Explicit permutation group: every element is stored, sorted.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Permutation> elements, std::vector<Permutation> generators);

  int degree() const { return n_; }
  long order() const { return static_cast<long>(elements_.size()); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool contains(const Permutation& p) const;
  bool is_even() const;  // contained in A_n

  const std::optional<std::string>& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  int n_;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
  std::vector<bool> member_;  // indexed by Permutation::rank
  std::optional<std::string> name_;
};

/// Closure of the generators under composition. Throws DegreeMismatch unless
/// all generators share one degree n <= 7.
PermGroup generate(const std::vector<Permutation>& gens);

bool is_transitive(const PermGroup& g);

/// No block system with blocks of size strictly between 1 and n. Throws
/// NotTransitive for intransitive input.
bool is_primitive(const PermGroup& g);

/// Exact fraction of elements with each cycle type.
Distribution cycle_type_distribution(const PermGroup& g);

/// sigma with sigma a sigma^-1 = b, by brute force over S_n.
std::optional<Permutation> conjugating_element(const PermGroup& a, const PermGroup& b);

/// All n! permutations of degree n, in rank order.
std::vector<Permutation> symmetric_group_elements(int n);

}  // namespace polycensus::permgrp
