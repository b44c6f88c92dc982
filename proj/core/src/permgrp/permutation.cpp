#include "polycensus/permgrp/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polycensus::permgrp {

int CycleType::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string CycleType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(parts[i]);
  }
  return out;
}

CycleType CycleType::parse(const std::string& text) {
  CycleType t;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part.empty()) throw std::invalid_argument("bad cycle type: " + text);
    int v = std::stoi(part);
    if (v <= 0) throw std::invalid_argument("bad cycle type: " + text);
    t.parts.push_back(v);
  }
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

Permutation::Permutation(const std::vector<int>& images) {
  if (images.empty() || images.size() > kMaxDegree)
    throw std::invalid_argument("permutation degree must be in [1, 7]");
  n_ = static_cast<std::uint8_t>(images.size());
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("images do not form a bijection");
    seen[static_cast<std::size_t>(v)] = true;
    img_[i] = static_cast<std::uint8_t>(v);
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(v);
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  Permutation result(v);
  for (const auto& c : cycles) {
    std::vector<int> w(v);
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("cycle point out of range");
      w[static_cast<std::size_t>(a)] = b;
    }
    result = Permutation(w) * result;
  }
  return result;
}

Permutation Permutation::from_word(const std::string& word) {
  std::vector<int> v;
  for (char ch : word) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad permutation word: " + word);
    v.push_back(ch - '0');
  }
  return Permutation(v);
}

std::vector<int> Permutation::images() const { return {img_.begin(), img_.begin() + n_}; }

std::string Permutation::word() const {
  std::string s;
  for (int i = 0; i < n_; ++i) s += static_cast<char>('0' + img_[static_cast<std::size_t>(i)]);
  return s;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

CycleType Permutation::cycle_type() const {
  CycleType t;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < n_; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = img_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    t.parts.push_back(len);
  }
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

int Permutation::order() const {
  int o = 1;
  for (int len : cycle_type().parts) o = std::lcm(o, len);
  return o;
}

int Permutation::sign() const {
  int s = 1;
  for (int len : cycle_type().parts)
    if (len % 2 == 0) s = -s;
  return s;
}

int Permutation::rank() const {
  int r = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j)
      if (img_[static_cast<std::size_t>(j)] < img_[static_cast<std::size_t>(i)]) ++smaller;
    r = r * (n_ - i) + smaller;
  }
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("composing permutations of different degree");
  Permutation r;
  r.n_ = a.n_;
  for (int i = 0; i < a.n_; ++i) r.img_[static_cast<std::size_t>(i)] = a.img_[b.img_[static_cast<std::size_t>(i)]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r;
  r.n_ = p.n_;
  for (int i = 0; i < p.n_; ++i) r.img_[p.img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return r;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace polycensus::permgrp
