#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polycensus::galois {

enum class Certainty { kCertified, kHeuristic, kUnknown };

std::string to_string(Certainty c);

/// Factor-degree multiset of f modulo one prime; empty when ramified.
struct Observation {
  std::uint32_t prime = 0;
  bool ramified = false;
  std::vector<int> degrees;  // ascending

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// How a certified label was obtained, in a form that can be replayed.
struct Certificate {
  std::string method;  // "degree-2", "cubic-discriminant", "cubic-resolvent", "catalog-elimination", "jordan"
  std::vector<std::string> facts;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct GroupLabel {
  std::string name = "unknown";  // catalog label
  int degree = 0;
  Certainty certainty = Certainty::kUnknown;
  double confidence = 0.0;  // posterior, heuristic labels only
  std::vector<Observation> evidence;
  Certificate certificate;

  bool certified() const { return certainty == Certainty::kCertified; }
};

}  // namespace polycensus::galois
