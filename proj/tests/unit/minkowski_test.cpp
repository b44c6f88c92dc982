#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polycensus/error.hpp"
#include "polycensus/minkowski/minkowski.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/mahler.hpp"

using namespace polycensus;
using namespace polycensus::minkowski;

namespace {

bool near(const Interval& x, double v, double tol = 1e-9) { return x.lo - tol <= v && v <= x.hi + tol; }

// Brute-force count over a box for Z^r1 x Z[i]^r2, in long double.
std::uint64_t box_count(int r1, int r2, double Y, double delta, std::map<Cell, std::uint64_t>& cells) {
  const int dims = r1 + 2 * r2;
  const long b = static_cast<long>(Y) + 1;
  std::vector<long> c(static_cast<std::size_t>(dims), -b);
  std::uint64_t total = 0;
  while (true) {
    long double m = 1;
    Cell cell{0, 0};
    for (int i = 0; i < r1; ++i) {
      long double a = std::abs(static_cast<long double>(c[static_cast<std::size_t>(i)]));
      m *= std::max<long double>(1, a);
      cell.first += a >= delta;
    }
    for (int i = 0; i < r2; ++i) {
      long double re = c[static_cast<std::size_t>(r1 + 2 * i)], im = c[static_cast<std::size_t>(r1 + 2 * i + 1)];
      long double nrm = re * re + im * im;
      m *= std::max<long double>(1, nrm);
      cell.second += std::sqrt(nrm) >= delta;
    }
    if (m <= Y) {
      ++total;
      ++cells[cell];
    }
    int j = 0;
    while (j < dims && c[static_cast<std::size_t>(j)] == b) c[static_cast<std::size_t>(j++)] = -b;
    if (j == dims) break;
    ++c[static_cast<std::size_t>(j)];
  }
  return total;
}

// min over a coordinate box of the largest |sum c_j theta^j|, long double.
long double brute_lambda(const Polynomial& f, long box) {
  auto roots = oracle::numeric_roots(f);
  const int n = f.degree();
  std::vector<long> c(static_cast<std::size_t>(n), -box);
  long double best = 1e300L;
  while (true) {
    bool nonrational = false;
    for (int j = 1; j < n; ++j) nonrational |= c[static_cast<std::size_t>(j)] != 0;
    if (nonrational) {
      long double h = 0;
      for (auto t : roots) {
        oracle::cld acc = 0;
        for (int j = n - 1; j >= 0; --j) acc = acc * t + static_cast<long double>(c[static_cast<std::size_t>(j)]);
        h = std::max(h, std::abs(acc));
      }
      best = std::min(best, h);
    }
    int j = 0;
    while (j < n && c[static_cast<std::size_t>(j)] == box) c[static_cast<std::size_t>(j++)] = -box;
    if (j == n) break;
    ++c[static_cast<std::size_t>(j)];
  }
  return best;
}

}  // namespace

TEST_CASE("embed examples") {
  MinkowskiPoint i = embed(AlgebraicInteger::generator(Polynomial{1, 0, 1}));
  CHECK(i.r1() == 0);
  REQUIRE(i.r2() == 1);
  CHECK(near(i.complexes[0].re, 0.0));
  CHECK(near(i.complexes[0].im, 1.0));
  MinkowskiPoint three = embed(AlgebraicInteger::rational(Polynomial{1, 0, 0, -2}, 3));
  CHECK(three.r1() == 1);
  CHECK(three.r2() == 1);
  CHECK(near(three.reals[0], 3.0));
  CHECK(near(three.complexes[0].re, 3.0));
  CHECK(near(three.complexes[0].im, 0.0));
  MinkowskiPoint p = embed({Polynomial{1, 0, -2}, {1, 1}});
  REQUIRE(p.r1() == 2);
  CHECK(near(p.reals[0], 1 - std::sqrt(2.0)));
  CHECK(near(p.reals[1], 1 + std::sqrt(2.0)));
  for (const auto& x : p.reals) CHECK(x.width() < 1e-12);
}

TEST_CASE("house and point Mahler examples") {
  CHECK(near(house(AlgebraicInteger::generator(Polynomial{1, 0, 1})), 1.0));
  CHECK(near(house(AlgebraicInteger::generator(Polynomial{1, 0, -2})), std::sqrt(2.0)));
  CHECK(near(house({Polynomial{1, 0, -2}, {1, 1}}), 1 + std::sqrt(2.0)));
  CHECK(near(point_mahler(embed(AlgebraicInteger::generator(Polynomial{1, 0, -2}))), 2.0));
  CHECK(near(point_mahler(embed(AlgebraicInteger::rational(Polynomial{1, 0, 1}, 0))), 1.0));
  MinkowskiPoint pt;
  pt.reals.push_back({3.0, 3.0});
  CHECK(near(point_mahler(pt), 3.0, 0));
}

TEST_CASE("point Mahler of a generator equals the Mahler measure") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<int> deg(2, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<polyalg::Integer> c{1};
    int n = deg(rng);
    for (int i = 0; i < n; ++i) c.emplace_back(coef(rng));
    Polynomial f(c);
    if (!polyalg::is_irreducible(f)) continue;
    Interval a = point_mahler(embed(AlgebraicInteger::generator(f)));
    Interval b = polyalg::mahler_measure(f);
    CHECK(a.overlaps(b));
    CHECK(std::abs(a.mid() - static_cast<double>(oracle::numeric_mahler(f))) < 1e-6 * a.mid());
  }
}

TEST_CASE("lambda examples and Kronecker floor") {
  CHECK(near(lambda(Polynomial{1, 0, 1}).value, 1.0));
  CHECK(near(lambda(Polynomial{1, 0, -2}).value, std::sqrt(2.0)));
  CHECK(near(lambda(Polynomial{1, 1, 1}).value, 1.0));
  CHECK(near(lambda(Polynomial{1, 0, -2}).value, static_cast<double>(brute_lambda(Polynomial{1, 0, -2}, 10))));
  for (const Polynomial& f : {Polynomial{1, -1, -2, 1}, Polynomial{1, 0, 0, -2}, Polynomial{1, 0, -3, 1},
                              Polynomial{1, 1, 2, 1}, Polynomial{1, 0, 1, 1}}) {
    LambdaResult l = lambda(f);
    CHECK(l.value.hi >= 1.0);
    CHECK(near(l.value, static_cast<double>(brute_lambda(f, 6)), 1e-9));
    CHECK(near(house(l.argmin), l.value.mid(), 1e-9));
  }
  CHECK_THROWS_AS(lambda(Polynomial{1, 0, -5}), PreconditionViolated);
  CHECK_THROWS_AS(lambda(Polynomial{1, 0, -4}), Reducible);
}

TEST_CASE("omega_count on the standard lattice") {
  CHECK(omega_count({7.5, 0.5, 1, 0}).total == 15);
  CHECK(omega_count({2, 0.5, 2, 0}).total == 21);
  OmegaCount one = omega_count({1, 0.5, 1, 1});
  CHECK(one.total == 3 * 5);
  struct Case {
    int r1, r2;
    double Y, delta;
  };
  for (Case c : {Case{2, 0, 17.5, 1.5}, Case{0, 1, 20, 2.2}, Case{1, 1, 12, 1.0}, Case{3, 0, 9, 2.0},
                 Case{0, 2, 6, 1.2}, Case{2, 0, 30, 0.5}}) {
    std::map<Cell, std::uint64_t> cells;
    std::uint64_t expect = box_count(c.r1, c.r2, c.Y, c.delta, cells);
    OmegaCount got = omega_count({c.Y, c.delta, c.r1, c.r2});
    CHECK(got.total == expect);
    for (const auto& [k, v] : cells) CHECK(got.cells[k] == v);
    std::uint64_t sum = 0;
    for (const auto& [k, v] : got.cells) sum += v;
    CHECK(sum == got.total);
    std::vector<RegionPoint> dump;
    const std::uint64_t dumped_total = omega_count({c.Y, c.delta, c.r1, c.r2}, &dump).total;
    CHECK(dumped_total == dump.size());
  }
  std::uint64_t prev = 0;
  for (double y = 1; y <= 40; y += 0.75) {
    auto n = omega_count({y, 0.5, 1, 1}).total;
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("omega_count on Z[alpha]") {
  // Z[i] with its complex place is the standard lattice Z[i].
  for (double y : {1.0, 2.0, 5.0, 10.5}) CHECK(omega_count(Polynomial{1, 0, 1}, {y, 0.5, 0, 1}).total == omega_count({y, 0.5, 0, 1}).total);
  // Y = 1: roots of unity and zero only.
  CHECK(omega_count(Polynomial{1, 1, 1}, {1, 0.5, 0, 1}).total == 7);
  // m(a + b sqrt 2) for Y = 2.5, long double brute force.
  std::uint64_t expect = 0;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b) {
      long double s = std::sqrt(2.0L);
      long double m = std::max<long double>(1, std::abs(a + b * s)) * std::max<long double>(1, std::abs(a - b * s));
      expect += m <= 2.5L;
    }
  CHECK(omega_count(Polynomial{1, 0, -2}, {2.5, 0.5, 2, 0}).total == expect);
  // The boundary m = 2 is decided exactly.
  CHECK(omega_count(Polynomial{1, 0, -2}, {2, 0.5, 2, 0}).total == omega_count(Polynomial{1, 0, -2}, {2.0000001, 0.5, 2, 0}).total);
  CHECK_THROWS_AS(omega_count(Polynomial{1, 0, 1}, {2, 0.5, 2, 0}), std::invalid_argument);
}

TEST_CASE("the (0,0) cell holds only rational integers") {
  for (const Polynomial& f : {Polynomial{1, -1, -2, 1}, Polynomial{1, 0, -2}, Polynomial{1, 0, 1, 1}}) {
    const int n = f.degree();
    double lam = lambda(f).value.lo;
    int r1 = polyalg::count_real_roots(f);
    RegionSpec spec{12, lam / std::sqrt(static_cast<double>(n)), r1, (n - r1) / 2};
    std::vector<RegionPoint> dump;
    omega_count(f, spec, &dump);
    REQUIRE(!dump.empty());
    for (const auto& p : dump)
      if (p.cell == Cell{0, 0})
        for (int j = 1; j < n; ++j) CHECK(p.coords[static_cast<std::size_t>(j)] == 0);
  }
}

TEST_CASE("omega_volume") {
  auto rel = [](double a, double b) { return std::abs(a - b) / b; };
  for (double y : {1.0, 3.0, 10.0, 1000.0}) {
    CHECK(rel(omega_volume({y, 0.5, 1, 0}).value, 2 * y) < 1e-9);
    CHECK(rel(omega_volume({y, 0.5, 0, 1}).value, std::numbers::pi * y) < 1e-9);
    double ly = std::log(y);
    CHECK(rel(omega_volume({y, 0.5, 2, 0}).value, 4 * (y + y * ly)) < 1e-8);
    // Closed form for k places: Y sum_{j<k} C(k-1, j) (log Y)^j / j!, times
    // 2^r1 pi^r2.
    double v3 = y * (1 + 2 * ly + ly * ly / 2);
    VolumeEstimate e = omega_volume({y, 0.5, 1, 2});
    CHECK(rel(e.value, 2 * std::numbers::pi * std::numbers::pi * v3) < 1e-8);
    CHECK(e.error <= 1e-3 * e.value);
    double v4 = y * (1 + 3 * ly + 1.5 * ly * ly + ly * ly * ly / 6);
    CHECK(rel(omega_volume({y, 0.5, 4, 0}).value, 16 * v4) < 1e-8);
  }
}

TEST_CASE("Davenport count against volume on Z^2") {
  double prev = 1e9;
  for (double y : {1e2, 1e3, 1e4}) {
    double c = static_cast<double>(omega_count({y, 0.5, 2, 0}).total);
    double v = omega_volume({y, 0.5, 2, 0}).value;
    double r = std::abs(c - v) / v;
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev <= 0.1);
}

TEST_CASE("discriminant bound from the house") {
  CHECK(lemma31_check(Polynomial{1, 0, 1}));
  CHECK(near(lemma31_bound(Polynomial{1, 0, 1}), 4.0, 0));
  CHECK(lemma31_check(Polynomial{1, 0, -2}));
  CHECK(near(lemma31_bound(Polynomial{1, 0, -2}), 8.0, 0));
  CHECK(lemma31_check(Polynomial{1, 0, 0, -2}));
  CHECK(near(lemma31_bound(Polynomial{1, 0, 0, -2}), 256.0, 1e-9));
  CHECK(lemma31_bound(Polynomial{1, 0, 1}).width() < 1e-12);
}
