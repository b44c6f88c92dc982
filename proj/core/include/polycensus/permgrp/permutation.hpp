#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace polycensus::permgrp {

inline constexpr int kMaxDegree = 7;

/// Multiset of cycle lengths, stored ascending.
struct CycleType {
  std::vector<int> parts;

  int degree() const;
  // "1+2", "1+1+1"
  std::string to_string() const;
  static CycleType parse(const std::string& text);

  friend auto operator<=>(const CycleType&, const CycleType&) = default;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// Bijection of {0, ..., n-1}, n <= 7.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(const std::vector<int>& images);

  static Permutation identity(int n);
  // Product of the given cycles, e.g. from_cycles(4, {{0, 1, 2, 3}}).
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  // Image word, one digit per point: "1230".
  static Permutation from_word(const std::string& word);

  int degree() const { return n_; }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  std::vector<int> images() const;
  std::string word() const;

  bool is_identity() const;
  int order() const;
  int sign() const;
  CycleType cycle_type() const;

  // Index in [0, n!) by Lehmer code.
  int rank() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxDegree> img_{};

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend Permutation inverse(const Permutation& p);
};

// (a * b)(i) = a(b(i)): apply b first.
Permutation operator*(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);

long factorial(int n);

}  // namespace polycensus::permgrp
