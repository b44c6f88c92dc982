// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails.
//
//   acceptance CENSUS_BINARY SCRATCH_DIR
//
// Criterion 8 drives the census binary; everything else calls the library.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "polycensus/census/census.hpp"
#include "polycensus/galois/galois.hpp"
#include "polycensus/minkowski/minkowski.hpp"
#include "polycensus/permgrp/catalog.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/mahler.hpp"

using namespace polycensus;
using census::CensusConfig;
using census::CountTable;
using polyalg::Integer;
using polyalg::Polynomial;
namespace fs = std::filesystem;

namespace {

// Sampling seed for criterion 1.
constexpr std::uint64_t kJensenSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::string> g_conservation_failures;
int g_censuses = 0;

void note_conservation(const CountTable& t, const std::string& what) {
  ++g_censuses;
  if (!t.conserved()) g_conservation_failures.push_back(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

CensusConfig config(int n, long B) {
  CensusConfig cfg;
  cfg.degree = n;
  cfg.height = B;
  return cfg;
}

std::vector<Polynomial> census_polys(int n, long B) {
  std::vector<Polynomial> out;
  census::CensusStream s(config(n, B));
  Polynomial f;
  while (s.next(f)) out.push_back(f);
  return out;
}

Outcome jensen() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kJensenSeed);
  std::uniform_int_distribution<int> deg(1, 6);
  std::uniform_int_distribution<long> coeff(-10, 10);
  long violations = 0;
  const long samples = 10000;
  for (long i = 0; i < samples; ++i) {
    std::vector<Integer> c{1};
    int n = deg(rng);
    for (int k = 0; k < n; ++k) c.emplace_back(coeff(rng));
    if (!polyalg::jensen_bound_holds(Polynomial(c))) ++violations;
  }
  double t = seconds_since(t0);
  return {violations == 0 && t <= 60,
          fmt("%.0f samples (mt19937_64 seed 20240611), %.0f violations, %.1fs", samples, violations, t)};
}

Outcome disc_height() {
  long violations = 0, checked = 0;
  const Integer n = 3;
  for (const auto& f : census_polys(3, 10)) {
    Integer h = polyalg::height(f);
    Integer bound = 27 * 16 * h * h * h * h;  // n^n (n+1)^(n-1) ht^(2n-2)
    if (abs(polyalg::discriminant(f)) > bound) ++violations;
    ++checked;
  }
  CensusConfig cfg = config(3, 10);
  cfg.track_fields = false;
  note_conservation(census::run_census(cfg).table, "n=3 B=10");
  return {violations == 0 && checked == 9261, fmt("%.0f cubics, %.0f violations", checked, violations)};
}

Outcome lemma31() {
  long violations = 0, checked = 0;
  for (int n : {2, 3}) {
    for (const auto& f : census_polys(n, 10)) {
      if (!polyalg::is_irreducible(f)) continue;
      ++checked;
      if (!minkowski::lemma31_check(f)) ++violations;
    }
    CensusConfig cfg = config(n, 10);
    cfg.track_fields = false;
    note_conservation(census::run_census(cfg).table, "n=" + std::to_string(n) + " B=10");
  }
  bool tight = minkowski::lemma31_bound(Polynomial{1, 0, 1}).contains(4.0) &&
               minkowski::lemma31_bound(Polynomial{1, 0, -2}).contains(8.0);
  return {violations == 0 && tight, fmt("%.0f irreducible polynomials, %.0f violations, equality cases %s", checked,
                                        violations) + (tight ? "hold" : "fail")};
}

Outcome multiplicity() {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<long> Bs{10, 20, 50, 100, 200};
  const std::vector<std::pair<const char*, Polynomial>> fields{{"Q(i)", Polynomial{1, 0, 1}},
                                                               {"Q(sqrt2)", Polynomial{1, 0, -2}},
                                                               {"Q(sqrt-3)", Polynomial{1, 1, 1}},
                                                               {"C3 x^3-x^2-2x+1", Polynomial{1, -1, -2, 1}}};
  CensusConfig cfg;
  cfg.height = 200;
  cfg.shards = 8;
  bool ok = true;
  std::string detail;
  for (const auto& [name, f] : fields) {
    auto rep = census::multiplicity_report(cfg, f);
    double base = 0, worst = 0;
    bool have = true;
    for (long B : Bs) {
      const auto& row = rep.rows[static_cast<std::size_t>(B - 1)];
      if (!row.bound_ratio) {
        have = false;
        break;
      }
      if (B == 10) base = *row.bound_ratio;
      worst = std::max(worst, *row.bound_ratio / base);
    }
    ok = ok && have && base > 0 && worst <= 10;
    detail += std::string(name) + fmt(" max ratio/ratio(10)=%.3f; ", worst);
  }
  // Exact small values, by brute force over the nine quadratics of height 1.
  long qi = 0, q3 = 0;
  for (long b = -1; b <= 1; ++b)
    for (long c = -1; c <= 1; ++c) {
      long d = b * b - 4 * c;
      qi += d == -4;
      q3 += d == -3;
    }
  CensusConfig one;
  one.height = 1;
  auto mi = census::multiplicity_report(one, Polynomial{1, 0, 1}).rows[0].multiplicity;
  auto m3 = census::multiplicity_report(one, Polynomial{1, 1, 1}).rows[0].multiplicity;
  bool exact = qi == 1 && q3 == 2 && mi == 1 && m3 == 2;
  double t = seconds_since(t0);
  ok = ok && exact && t <= 600;
  detail += fmt("M_Q(i)(1)=%.0f M_Q(sqrt-3)(1)=%.0f (brute force agrees: ", static_cast<double>(mi), static_cast<double>(m3)) +
            (qi == 1 && q3 == 2 ? "yes" : "no") + fmt("), %.1fs", t);
  return {ok, detail};
}

Outcome davenport() {
  std::vector<double> errs;
  std::string detail;
  for (double Y : {1e2, 1e3, 1e4}) {
    minkowski::RegionSpec spec{Y, 0.5, 2, 0};
    double count = static_cast<double>(minkowski::omega_count(spec).total);
    double vol = minkowski::omega_volume(spec).value;
    errs.push_back(std::abs(count - vol) / vol);
    detail += fmt("Y=%.0f rel.err=%.4f; ", Y, errs.back());
  }
  long brute = 0;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) brute += std::max(1L, std::labs(a)) * std::max(1L, std::labs(b)) <= 2;
  auto exact = minkowski::omega_count(minkowski::RegionSpec{2, 0.5, 2, 0}).total;
  bool ok = errs[2] <= 0.1 && errs[0] > errs[1] && errs[1] > errs[2] && exact == 21 && brute == 21;
  detail += fmt("omega_count(Y=2)=%.0f, brute force %.0f", static_cast<double>(exact), static_cast<double>(brute));
  return {ok, detail};
}

Outcome c3_exponent() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<long, double>> series;
  for (long B : {25, 50, 100, 200}) {
    CensusConfig cfg = config(3, B);
    cfg.shards = 8;
    cfg.track_fields = false;
    auto r = census::run_census(cfg);
    note_conservation(r.table, "n=3 B=" + std::to_string(B));
    series.emplace_back(B, static_cast<double>(r.table.count("C_3")));
  }
  double t = seconds_since(t0);
  auto fit = census::fit_exponent(series, 2);
  const double limit = 7.0 / 3.0 + 0.3;
  std::string counts;
  for (const auto& [B, c] : series) counts += fmt("%.0f:%.0f ", static_cast<double>(B), c);
  return {fit.slope <= limit && t <= 1800,
          "counts " + counts + fmt("slope %.4f (limit %.4f), residual %.3g", fit.slope, limit, fit.residual) +
              fmt(", %.1fs", t)};
}

bool in_group(const permgrp::CatalogEntry& g, const galois::Observation& o) {
  std::string s;
  for (int d : o.degrees) s += (s.empty() ? "" : "+") + std::to_string(d);
  return g.distribution.count(permgrp::CycleType::parse(s)) > 0;
}

Outcome galois_oracle() {
  long agree = 0, total = 0, dedekind_bad = 0;
  for (int n : {3, 4}) {
    for (const auto& f : census_polys(n, 5)) {
      if (!polyalg::is_irreducible(f)) continue;
      ++total;
      auto cert = galois::galois_group_small(f);
      auto heur = galois::heuristic_group(f, 200);
      agree += cert.name == heur.name;
      const auto* entry = permgrp::find_catalog_entry(cert.name);
      for (const auto& o : galois::unramified_observations(f, 200))
        if (!entry || !in_group(*entry, o)) ++dedekind_bad;
    }
  }
  return {agree == total && dedekind_bad == 0,
          fmt("%.0f/%.0f labels agree, %.0f Dedekind exceptions", agree, total, dedekind_bad)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism(const std::string& cli, const fs::path& dir) {
  fs::create_directories(dir);
  auto run = [&](int shards) {
    fs::path out = dir / ("det_" + std::to_string(shards) + ".csv");
    std::string cmd = "\"" + cli + "\" run --degree 3 --height 20 --shards " + std::to_string(shards) + " --out \"" +
                      out.string() + "\" 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return std::make_pair(rc, out);
  };
  auto [rc1, a] = run(1);
  auto [rc8, b] = run(8);
  if (rc1 != 0 || rc8 != 0) return {false, "census binary failed"};
  std::string ta = slurp(a), tb = slurp(b);
  bool same_csv = !ta.empty() && ta == tb;
  bool same_registry = slurp(a.string() + ".registry.jsonl") == slurp(b.string() + ".registry.jsonl");

  // The CLI table is also a census of this run: check it conserves.
  std::istringstream in(ta);
  std::string line;
  std::uint64_t sum = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() == 5 && cells[2] != "galois") sum += std::stoull(cells[4]);
  }
  ++g_censuses;
  if (sum != 68921) g_conservation_failures.push_back("CLI n=3 B=20");
  return {same_csv && same_registry, std::string("CSV ") + (same_csv ? "identical" : "differs") + ", registry snapshot " +
                                         (same_registry ? "identical" : "differs")};
}

Outcome conservation() {
  std::string detail = std::to_string(g_censuses) + " censuses checked";
  for (const auto& f : g_conservation_failures) detail += "; fails: " + f;
  return {g_censuses > 0 && g_conservation_failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s CENSUS_BINARY SCRATCH_DIR\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path dir = argv[2];
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, jensen},           {2, disc_height},   {3, lemma31},
      {4, multiplicity},     {5, davenport},     {6, c3_exponent},
      {7, galois_oracle},    {8, [&] { return determinism(cli, dir); }},
      {9, conservation}};
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d: %s - %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
