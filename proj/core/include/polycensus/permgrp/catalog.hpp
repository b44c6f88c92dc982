#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polycensus/permgrp/group.hpp"

namespace polycensus::permgrp {

inline constexpr int kCatalogVersion = 1;
inline constexpr int kCatalogMaxDegree = 6;

struct CatalogEntry {
  PermGroup group;
  std::string name;           // conjugacy-class label, e.g. "D_4", "S_4+(6)"
  std::string abstract_name;  // isomorphism type, e.g. "S4"
  bool primitive = false;
  Distribution distribution;

  int degree() const { return group.degree(); }
  long order() const { return group.order(); }
};

/// One representative per conjugacy class of transitive subgroups of S_n,
/// sorted by order then name. 2 <= n <= 6.
const std::vector<CatalogEntry>& transitive_catalog(int n);

/// Entry with the given name in any degree, or nullptr.
const CatalogEntry* find_catalog_entry(std::string_view name);

/// Conjugacy-class label and abstract name of a transitive group of degree
/// 2..6, read off from its order and a few element statistics.
std::pair<std::string, std::string> transitive_group_label(const PermGroup& g);

/// Catalog file codec. Records are whitespace separated:
///   degree name abstract order primitive generators distribution
/// with generators as comma-joined image words and the distribution as
/// ';'-joined "type=fraction" items.
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::string format_catalog(const std::vector<CatalogEntry>& entries);

/// Builds a catalog entry from generators, computing all derived fields.
CatalogEntry make_catalog_entry(const std::vector<Permutation>& gens);

}  // namespace polycensus::permgrp
