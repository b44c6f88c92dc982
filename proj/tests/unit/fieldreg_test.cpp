#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "polycensus/error.hpp"
#include "polycensus/fieldreg/registry.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/modp.hpp"

using namespace polycensus;
using namespace polycensus::fieldreg;
using polycensus::polyalg::Integer;

namespace {

// Irreducible monic polynomials of the degree and height, by brute-force
// divisor search.
std::vector<Polynomial> irreducible_census(int n, long h) {
  std::vector<Polynomial> out;
  for (const auto& f : oracle::all_monic(n, h))
    if (!oracle::has_small_divisor(f)) out.push_back(f);
  return out;
}

Registry fed(int n, long h) {
  Registry reg;
  for (const auto& f : irreducible_census(n, h)) reg.insert(f);
  reg.record_complete_census(n, h);
  return reg;
}

// Square-free part of an integer by trial division, signed.
long kernel_of(long v) {
  long k = v < 0 ? -1 : 1;
  v = std::abs(v);
  for (long p = 2; p * p <= v; ++p) {
    int e = 0;
    while (v % p == 0) v /= p, ++e;
    if (e % 2) k *= p;
  }
  return k * v;
}

}  // namespace

TEST_CASE("fields_isomorphic examples") {
  CHECK(fields_isomorphic(Polynomial{1, 0, 1}, Polynomial{1, 0, 1}));
  CHECK(fields_isomorphic(Polynomial{1, 0, 1}, Polynomial{1, 2, 2}));
  CHECK_FALSE(fields_isomorphic(Polynomial{1, 0, 1}, Polynomial{1, 0, 2}));
  // cbrt(4) = cbrt(2)^2.
  CHECK(fields_isomorphic(Polynomial{1, 0, 0, -2}, Polynomial{1, 0, 0, -4}));
  CHECK_FALSE(fields_isomorphic(Polynomial{1, 0, 0, -2}, Polynomial{1, 0, 0, -3}));
  CHECK(fields_isomorphic(Polynomial{1, 0, -3, 1}, Polynomial{1, 0, -3, -1}));
  CHECK_FALSE(fields_isomorphic(Polynomial{1, -1, -2, 1}, Polynomial{1, 0, -3, 1}));
  CHECK_THROWS_AS(fields_isomorphic(Polynomial{1, 0, 1}, Polynomial{1, 0, 0, 2}), DegreeMismatch);
  CHECK_THROWS_AS(fields_isomorphic(Polynomial{1, 0, -1}, Polynomial{1, 0, 1}), Reducible);
}

TEST_CASE("insert examples") {
  Registry reg;
  auto a = insert(reg, Polynomial{1, 0, 1});
  auto b = insert(reg, Polynomial{1, 2, 2});
  CHECK(a == b);
  CHECK(reg.at(a).member_count == 2);
  auto c = insert(reg, Polynomial{1, 0, 2});
  CHECK(c != a);
  auto d = insert(reg, Polynomial{1, 0, 2});
  CHECK(d == c);
  CHECK(reg.at(c).member_count == 2);
  CHECK_THROWS_AS(insert(reg, Polynomial{1, 0, -4}), Reducible);
  CHECK(reg.at(a).witness == Polynomial{1, 0, 1});
}

TEST_CASE("multiplicity examples") {
  Registry reg = fed(2, 1);
  auto qi = reg.find(Polynomial{1, 0, 1});
  auto q3 = reg.find(Polynomial{1, 1, 1});
  REQUIRE(qi);
  REQUIRE(q3);
  CHECK(multiplicity(reg, *qi, 1) == 1);
  CHECK(multiplicity(reg, *q3, 1) == 2);
  CHECK(multiplicity(reg, *q3, 0) == 0);
  CHECK_THROWS_AS(multiplicity(reg, *q3, 2), IncompleteCensus);
}

TEST_CASE("quadratic classes match discriminant kernels") {
  auto polys = irreducible_census(2, 6);
  Registry reg;
  std::map<long, std::uint64_t> by_kernel;
  for (const auto& f : polys) {
    reg.insert(f);
    ++by_kernel[kernel_of(polyalg::discriminant(f).get_si())];
  }
  reg.record_complete_census(2, 6);
  CHECK(reg.size() == by_kernel.size());
  for (const auto& c : reg.classes()) {
    long k = kernel_of(c.poly_disc.get_si());
    CHECK(c.member_count == by_kernel[k]);
    REQUIRE(c.field_disc.has_value());
    long expected = ((k % 4) + 4) % 4 == 1 ? k : 4 * k;
    CHECK(*c.field_disc == expected);
  }
}

TEST_CASE("partition, signature and isomorphism properties") {
  auto cubics = irreducible_census(3, 2);
  Registry reg;
  std::vector<std::size_t> ids;
  for (const auto& f : cubics) ids.push_back(reg.insert(f));
  reg.record_complete_census(3, 2);
  std::uint64_t total = 0;
  for (const auto& c : reg.classes()) total += multiplicity(reg, c.id, 2);
  CHECK(total == cubics.size());
  for (std::size_t i = 0; i < cubics.size(); ++i) {
    const auto& c = reg.at(ids[i]);
    int real = 0;
    for (auto r : oracle::numeric_roots(cubics[i])) real += std::abs(r.imag()) < 1e-9L;
    CHECK(c.signature.r1 == real);
    CHECK(2 * c.signature.r2 + c.signature.r1 == 3);
    if (c.field_disc) CHECK(c.poly_disc % *c.field_disc == 0);
  }
  // For cubic fields with |Disc(K)| < 3000 the discriminant determines the
  // field, so maximal members agree on class exactly when the discs do.
  std::vector<std::size_t> maximal;
  for (std::size_t i = 0; i < cubics.size(); ++i) {
    Integer d = polyalg::discriminant(cubics[i]);
    if (abs(d) < 3000 && polyalg::equation_order_is_maximal(cubics[i])) maximal.push_back(i);
  }
  REQUIRE(maximal.size() > 20);
  for (std::size_t a : maximal)
    for (std::size_t b : maximal) {
      bool same_disc = polyalg::discriminant(cubics[a]) == polyalg::discriminant(cubics[b]);
      CHECK((ids[a] == ids[b]) == same_disc);
    }
}

TEST_CASE("empirical field counts") {
  Registry quad = fed(2, 2);
  auto q = empirical_field_count(quad, 4, "C_2");
  CHECK(q.count == 2);
  CHECK(q.complete);
  CHECK(empirical_field_count(quad, 2.5, "C_2").count == 0);
  Registry cub = fed(3, 3);
  CHECK(empirical_field_count(cub, 48, "C_3").count == 0);
  CHECK(empirical_field_count(cub, 80, "C_3").count == 1);
  // Conductors 7 and 9 both lie under 81.
  CHECK(empirical_field_count(cub, 81, "C_3").count == 2);
  auto s3 = empirical_field_count(cub, 23, "S_3");
  CHECK(s3.count == 1);  // disc -23
}

TEST_CASE("finalize orders classes by witness and labels them") {
  Registry reg = fed(3, 1);
  reg.finalize();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    CHECK(reg.at(i).id == i);
    CHECK(reg.at(i).group.name != "unknown");
    if (i) CHECK(polyalg::height(reg.at(i - 1).witness) <= polyalg::height(reg.at(i).witness));
  }
}

TEST_CASE("snapshot round trip and merge") {
  auto cubics = irreducible_census(3, 2);
  Registry whole;
  for (const auto& f : cubics) whole.insert(f);
  whole.record_complete_census(3, 2);
  whole.finalize();

  Registry left, right;
  for (std::size_t i = 0; i < cubics.size(); ++i) (i < cubics.size() / 2 ? left : right).insert(cubics[i]);
  left.merge(right);
  left.record_complete_census(3, 2);
  left.finalize();

  std::ostringstream a, b;
  whole.write_snapshot(a);
  left.write_snapshot(b);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  Registry back = Registry::read_snapshot(in);
  std::ostringstream c;
  back.write_snapshot(c);
  CHECK(c.str() == a.str());
  CHECK(back.covered_height(3) == 2);
  std::istringstream bad("{\"format\":\"polycensus-registry\",\"version\":99}\n");
  CHECK_THROWS(Registry::read_snapshot(bad));
}
