#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polycensus/error.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/mahler.hpp"
#include "polycensus/polyalg/modp.hpp"
#include "polycensus/polyalg/roots.hpp"

using namespace polycensus::polyalg;

namespace {

Polynomial expand(const std::vector<Factor>& fs) {
  Polynomial p{1};
  for (const auto& f : fs)
    for (int k = 0; k < f.multiplicity; ++k) p = p * f.poly;
  return p;
}

}  // namespace

TEST_CASE("height counts the leading coefficient") {
  CHECK(height(Polynomial{1, 0, -5, 2}) == 5);
  CHECK(height(Polynomial{1, 0, 0, 0, 0}) == 1);
  CHECK(height(Polynomial{1, 7, -9}) == 9);
}

TEST_CASE("text forms") {
  Polynomial f{1, 0, -3, -1};
  CHECK(f.to_list() == "1,0,-3,-1");
  CHECK(f.to_expression() == "x^3 - 3*x - 1");
  CHECK(Polynomial{1, -2, 1}.to_expression() == "x^2 - 2*x + 1");
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial{0, 0, 1, 3}.degree() == 1);
}

TEST_CASE("resultant examples") {
  CHECK(resultant(Polynomial{1, -1}, Polynomial{1, 0, 1}) == 2);
  CHECK(resultant(Polynomial{1, 4, 1}, Polynomial{1}) == 1);
  CHECK(resultant(Polynomial{1, 0, 1}, Polynomial{1, 0, -1}) == 4);
}

TEST_CASE("resultant agrees with the numeric root product") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Integer> a{1}, b{1};
    int da = 1 + trial % 3, db = 1 + (trial / 3) % 3;
    for (int i = 0; i < da; ++i) a.emplace_back(coef(rng));
    for (int i = 0; i < db; ++i) b.emplace_back(coef(rng));
    Polynomial f(a), g(b);
    std::complex<long double> prod = 1;
    auto gc = oracle::small_coeffs(g);
    for (auto r : oracle::numeric_roots(f)) {
      std::complex<long double> v = 0;
      for (long c : gc) v = v * r + static_cast<long double>(c);
      prod *= v;
    }
    CHECK(resultant(f, g).get_d() == doctest::Approx(static_cast<double>(std::llround(prod.real()))));
    CHECK(std::abs(prod.real() - std::llround(prod.real())) < 1e-6L);
  }
}

TEST_CASE("discriminant examples and the cubic formula") {
  CHECK(discriminant(Polynomial{1, 0, 1}) == -4);
  CHECK(discriminant(Polynomial{1, 0, -3, -1}) == 81);
  CHECK(discriminant(Polynomial{1, 0, 0, -2}) == -108);
  for (const auto& f : oracle::all_monic(3, 3))
    CHECK(discriminant(f) == oracle::cubic_disc(f.coeff(2), f.coeff(1), f.coeff(0)));
}

TEST_CASE("discriminant equals the product of squared root differences") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& f : oracle::all_monic(n, n == 4 ? 2 : 3)) {
      auto r = oracle::numeric_roots(f);
      std::complex<long double> prod = 1;
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) prod *= (r[i] - r[j]) * (r[i] - r[j]);
      long double d = discriminant(f).get_d();
      CHECK(std::abs(prod.real() - d) <= 1e-6L * (1 + std::abs(d)) + 1e-4L);
    }
  }
}

TEST_CASE("discriminant height inequality over small censuses") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& f : oracle::all_monic(n, n == 4 ? 3 : 6)) {
      Integer bound = 1;
      Integer h = height(f);
      for (int i = 0; i < n; ++i) bound *= n;
      for (int i = 0; i < n - 1; ++i) bound *= (n + 1);
      for (int i = 0; i < 2 * n - 2; ++i) bound *= h;
      CHECK(abs(discriminant(f)) <= bound);
    }
  }
}

TEST_CASE("certified roots") {
  SUBCASE("x^2 + 1") {
    RootSet rs = complex_roots(Polynomial{1, 0, 1}, 1e-12);
    REQUIRE(rs.roots.size() == 2);
    for (const auto& r : rs.roots) {
      CHECK(r.radius_upper() <= 1e-12);
      CHECK(std::abs(r.approx().real()) < 1e-12);
      CHECK(std::abs(std::abs(r.approx().imag()) - 1.0) < 1e-12);
      CHECK_FALSE(r.real);
    }
    CHECK(rs.real_count() == 0);
  }
  SUBCASE("repeated root is a cluster") {
    RootSet rs = complex_roots(Polynomial{1, -2, 1}, 1e-12);
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].multiplicity == 2);
    CHECK(rs.roots[0].is_cluster());
    CHECK(std::abs(rs.roots[0].approx() - std::complex<double>(1, 0)) < 1e-12);
  }
  SUBCASE("x^3 - 2 against radicals") {
    RootSet rs = complex_roots(Polynomial{1, 0, 0, -2}, 1e-12);
    REQUIRE(rs.roots.size() == 3);
    const double c = std::cbrt(2.0);
    std::vector<std::complex<double>> expect{{c, 0}, {-c / 2, c * std::sqrt(3.0) / 2}, {-c / 2, -c * std::sqrt(3.0) / 2}};
    for (const auto& e : expect) {
      bool hit = false;
      for (const auto& r : rs.roots) hit |= std::abs(r.approx() - e) < 1e-12;
      CHECK(hit);
    }
    CHECK(rs.real_count() == 1);
  }
  SUBCASE("radii meet the target and disks are disjoint") {
    for (const auto& f : oracle::all_monic(4, 2)) {
      RootSet rs = complex_roots(f, 1e-10);
      CHECK(rs.total_multiplicity() == 4);
      CHECK(rs.max_radius() <= 1e-10);
      for (std::size_t i = 0; i < rs.roots.size(); ++i)
        for (std::size_t j = i + 1; j < rs.roots.size(); ++j)
          CHECK(std::abs(rs.roots[i].approx() - rs.roots[j].approx()) >
                rs.roots[i].radius_upper() + rs.roots[j].radius_upper());
    }
  }
  SUBCASE("real count matches Sturm") {
    for (const auto& f : oracle::all_monic(3, 3)) {
      if (!is_squarefree(f)) continue;
      CHECK(complex_roots(f, 1e-8).real_count() == count_real_roots(f));
    }
  }
}

TEST_CASE("Mahler measure examples") {
  Interval m = mahler_measure(Polynomial{1, 0, -2});
  CHECK(m.contains(2.0));
  CHECK(m.width() <= 1e-9);
  CHECK(mahler_measure(Polynomial{1, 1, 1}).contains(1.0));
  CHECK(mahler_measure(Polynomial{1, -3}).contains(3.0));
  CHECK(mahler_measure(Polynomial{1, 0, 0, 0}).contains(1.0));
}

TEST_CASE("Mahler measure against a numeric oracle") {
  for (const auto& f : oracle::all_monic(3, 3)) {
    if (!is_squarefree(f)) continue;
    Interval m = mahler_measure(f);
    CHECK(m.lo >= 1.0);
    CHECK(std::abs(static_cast<double>(oracle::numeric_mahler(f)) - m.mid()) < 1e-8);
  }
}

TEST_CASE("Mahler measure is multiplicative") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coef(-5, 5);
  std::uniform_int_distribution<int> deg(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    auto draw = [&] {
      std::vector<Integer> c{1};
      int d = deg(rng);
      for (int i = 0; i < d; ++i) c.emplace_back(coef(rng));
      return Polynomial(c);
    };
    Polynomial f = draw(), g = draw();
    Interval mf = mahler_measure(f), mg = mahler_measure(g), mfg = mahler_measure(f * g);
    Interval prod{mf.lo * mg.lo * (1 - 1e-15), mf.hi * mg.hi * (1 + 1e-15)};
    CHECK(mfg.overlaps(prod));
  }
}

TEST_CASE("Jensen bound examples") {
  CHECK(jensen_bound_holds(Polynomial{1, 0, -2}));
  CHECK(jensen_bound_holds(Polynomial{1, 0, 0, 0, 0, 0}));
  CHECK(jensen_bound_holds(Polynomial{1, 10, -10, 10, -10, 10, -10}));
}

TEST_CASE("factorization examples") {
  auto f1 = factor_over_Z(Polynomial{1, 0, 0, 0, -1});
  REQUIRE(f1.size() == 3);
  CHECK(f1[0].poly == Polynomial{1, -1});
  CHECK(f1[1].poly == Polynomial{1, 1});
  CHECK(f1[2].poly == Polynomial{1, 0, 1});

  auto f2 = factor_over_Z(Polynomial{1, 0, 0, 0, 4});
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].poly == Polynomial{1, -2, 2});
  CHECK(f2[1].poly == Polynomial{1, 2, 2});
  CHECK(expand(f2) == Polynomial{1, 0, 0, 0, 4});

  auto f3 = factor_over_Z(Polynomial{1, 0, 0, 0, -1, -1});
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].multiplicity == 1);
  CHECK_FALSE(oracle::has_small_divisor(Polynomial{1, 0, 0, 0, -1, -1}));

  auto f4 = factor_over_Z(Polynomial{1, -3, 3, -1});
  REQUIRE(f4.size() == 1);
  CHECK(f4[0].multiplicity == 3);
}

TEST_CASE("factorization against brute force") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& f : oracle::all_monic(n, n >= 5 ? 1 : 2)) {
      auto fs = factor_over_Z(f);
      CHECK(expand(fs) == f);
      for (const auto& fac : fs) {
        CHECK(fac.poly.is_monic());
        CHECK_FALSE(oracle::has_small_divisor(fac.poly));
      }
      bool single = fs.size() == 1 && fs[0].multiplicity == 1;
      CHECK(is_irreducible(f) == single);
      CHECK(single == !oracle::has_small_divisor(f));
    }
  }
}

TEST_CASE("factorization of products with large roots") {
  Polynomial a{1, 0, -7, 3}, b{1, 5, 0, 0, -11};
  auto fs = factor_over_Z(a * b * a);
  CHECK(expand(fs) == a * b * a);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].poly == a);
  CHECK(fs[0].multiplicity == 2);
  CHECK(fs[1].poly == b);
}

TEST_CASE("irreducibility examples") {
  CHECK(is_irreducible(Polynomial{1, 0, 1}));
  CHECK_FALSE(is_irreducible(Polynomial{1, 0, -1}));
  CHECK_FALSE(is_irreducible(Polynomial{1, 0, 0, 0, 4}));
}

TEST_CASE("factor degrees mod p") {
  CHECK(factor_degrees_mod(Polynomial{1, 0, 1}, 5) == std::vector<int>{1, 1});
  CHECK(factor_degrees_mod(Polynomial{1, 0, 1}, 3) == std::vector<int>{2});
  CHECK_FALSE(factor_degrees_mod(Polynomial{1, 0, 1}, 2).has_value());
  // Brute-force root counts agree with the number of linear factors.
  for (const auto& f : oracle::all_monic(4, 2)) {
    for (std::uint64_t p : {3u, 7u, 11u}) {
      auto d = factor_degrees_mod(f, p);
      if (!d) continue;
      int roots = 0;
      auto c = oracle::small_coeffs(f);
      for (long x = 0; x < static_cast<long>(p); ++x) {
        long acc = 0;
        for (long v : c) acc = ((acc * x + v) % static_cast<long>(p) + static_cast<long>(p)) % static_cast<long>(p);
        roots += acc == 0;
      }
      CHECK(std::count(d->begin(), d->end(), 1) == roots);
    }
  }
}

TEST_CASE("integer helpers") {
  CHECK(squarefree_kernel(Integer(-4)) == -1);
  CHECK(squarefree_kernel(Integer(8)) == 2);
  CHECK(squarefree_kernel(Integer(-108)) == -3);
  CHECK(squarefree_kernel(Integer(49)) == 1);
  CHECK(squarefree_kernel(Integer("1000000016000000063")) == Integer("1000000016000000063"));  // prime product
  Integer big = Integer(1000003) * 1000003 * 7;
  CHECK(squarefree_kernel(big) == 7);
  CHECK(square_divisor_primes(big) == std::vector<Integer>{1000003});
  CHECK(is_perfect_square(Integer(81)));
  CHECK_FALSE(is_perfect_square(Integer(-81)));
}

TEST_CASE("equation order maximality by Dedekind") {
  CHECK(equation_order_is_maximal(Polynomial{1, 0, 1}));        // Z[i]
  CHECK(equation_order_is_maximal(Polynomial{1, 0, -2}));       // Z[sqrt 2]
  CHECK_FALSE(equation_order_is_maximal(Polynomial{1, 0, -5}));  // (1 + sqrt 5)/2 is integral
  CHECK_FALSE(equation_order_is_maximal(Polynomial{1, 0, 3}));
  CHECK(equation_order_is_maximal(Polynomial{1, -1, -2, 1}));   // disc 49
  CHECK(equation_order_is_maximal(Polynomial{1, 0, -3, 1}));    // disc 81
  CHECK_FALSE(equation_order_is_maximal(Polynomial{1, 0, 0, -8}));
}
