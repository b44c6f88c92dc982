// census: command-line front end.
//
//   census run --degree N --height B --out PATH [--mode M] [--shards K] [--format csv|json] [--resume PATH]
//   census multiplicity --poly TEXT --height B [--out PATH]
//   census lambda --poly TEXT
//   census fit --in CSV [--log-power P] [--group G]
//   census omega --signature r1,r2 --Y Y [--delta D] [--poly TEXT] [--dump PATH]
//
// Exit codes: 0 success, 2 parse or configuration error, 3 feasibility
// refusal, 4 numeric non-convergence, 130 interrupted (checkpoint kept).
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "polycensus/census/census.hpp"
#include "polycensus/census/parse.hpp"
#include "polycensus/error.hpp"
#include "polycensus/minkowski/minkowski.hpp"

using namespace polycensus;
using namespace polycensus::census;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFeasibility = 3;
constexpr int kExitNonConvergence = 4;
constexpr int kExitInterrupted = 130;

extern "C" void on_sigint(int) { request_stop(); }

Polynomial parse_monic(const std::string& text) {
  Polynomial f = parse_poly(text);
  if (!f.is_monic() || f.degree() < 1) throw ConfigError("polynomial must be monic of positive degree: " + text);
  return f;
}

std::string coords_field(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

void print_interval(const char* name, const polyalg::Interval& v) {
  std::printf("%s %.15g [%.17g, %.17g]\n", name, v.mid(), v.lo, v.hi);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive census of monic integer polynomials by Galois group and field"};
  app.require_subcommand(1);

  CensusConfig cfg;
  std::string mode = "with-heuristics", format = "csv", resume;
  bool counts_only = false;
  auto* run = app.add_subcommand("run", "Count polynomials of degree N and height <= B by Galois group");
  run->add_option("--degree", cfg.degree, "Degree, 2..6")->required();
  run->add_option("--height", cfg.height, "Height bound B")->required();
  run->add_option("--mode", mode, "deterministic or with-heuristics")->capture_default_str();
  run->add_option("--shards", cfg.shards, "Worker threads")->capture_default_str();
  run->add_option("--out", cfg.output, "Output table")->required();
  run->add_option("--format", format, "csv or json")->capture_default_str();
  run->add_option("--resume", resume, "Checkpoint log to resume from (created if absent)");
  run->add_option("--prime-budget", cfg.prime_budget, "Primes used for group identification")->capture_default_str();
  run->add_flag("--counts-only", counts_only, "Skip field clustering");

  std::string poly_text, out_path;
  long mult_height = 1;
  int mult_shards = 1;
  auto* mult = app.add_subcommand("multiplicity", "M_K(B) for the field of a polynomial");
  mult->add_option("--poly", poly_text, "Defining polynomial")->required();
  mult->add_option("--height", mult_height, "Largest B")->required();
  mult->add_option("--shards", mult_shards, "Worker threads")->capture_default_str();
  mult->add_option("--out", out_path, "Output CSV (default stdout)");

  auto* lam = app.add_subcommand("lambda", "Smallest house of a non-rational algebraic integer in Z[alpha]");
  lam->add_option("--poly", poly_text, "Defining polynomial")->required();

  std::string in_path, group;
  int log_power = 0;
  auto* fit = app.add_subcommand("fit", "Log-log exponent fit of a count series");
  fit->add_option("--in", in_path, "CSV with B and count columns")->required();
  fit->add_option("--log-power", log_power, "Power of log(B+2) removed before fitting")->capture_default_str();
  fit->add_option("--group", group, "Group to sum over when the CSV is a run table");

  std::string signature, dump_path;
  double Y = 1, delta = 0.5;
  auto* omega = app.add_subcommand("omega", "Lattice points of bounded Mahler measure");
  omega->add_option("--signature", signature, "r1,r2")->required();
  omega->add_option("--Y", Y, "Mahler measure bound")->required();
  omega->add_option("--delta", delta, "Threshold for large places")->capture_default_str();
  omega->add_option("--poly", poly_text, "Use the lattice Z[alpha] instead of the standard one");
  omega->add_option("--dump", dump_path, "Write every counted point as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      cfg.mode = mode_from_string(mode);
      cfg.format = format_from_string(format);
      cfg.track_fields = !counts_only;
      cfg.instance_cap = instance_cap_from_env();
      if (!resume.empty()) cfg.resume = resume;
      cfg.validate();
      std::signal(SIGINT, on_sigint);
      CensusResult r = run_census(cfg);
      if (!r.complete) {
        std::fprintf(stderr, "interrupted after %llu of %llu chunks; resume with --resume %s\n",
                     static_cast<unsigned long long>(r.chunks_done), static_cast<unsigned long long>(r.chunks_total),
                     r.checkpoint.c_str());
        return kExitInterrupted;
      }
      write_outputs(cfg, r);
      std::fprintf(stderr, "n=%d B=%ld: %llu polynomials, %llu irreducible, %llu with normal stem field\n", cfg.degree,
                   cfg.height, static_cast<unsigned long long>(r.table.total()),
                   static_cast<unsigned long long>(r.table.irreducible()),
                   static_cast<unsigned long long>(r.table.galois));
      if (r.registry) std::fprintf(stderr, "%zu field classes\n", r.registry->size());
    } else if (*mult) {
      CensusConfig mc;
      mc.height = mult_height;
      mc.shards = mult_shards;
      mc.instance_cap = instance_cap_from_env();
      MultiplicityReport rep = multiplicity_report(mc, parse_monic(poly_text));
      if (out_path.empty()) {
        write_multiplicity_csv(std::cout, rep);
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_multiplicity_csv(out, rep);
      }
    } else if (*lam) {
      auto r = minkowski::lambda(parse_monic(poly_text));
      print_interval("lambda", r.value);
      std::string coords;
      for (const auto& c : r.argmin.coords) coords += (coords.empty() ? "" : " ") + c.get_str();
      std::printf("argmin %s\n", coords.c_str());
    } else if (*fit) {
      std::ifstream in(in_path);
      if (!in) throw ConfigError("cannot read " + in_path);
      ExponentFit f = fit_exponent(read_series_csv(in, group), log_power);
      std::printf("points %zu\nlog_power %d\nslope %.12g\nintercept %.12g\nresidual %.6g\n", f.series.size(), f.log_power,
                  f.slope, f.intercept, f.residual);
    } else if (*omega) {
      minkowski::RegionSpec spec;
      spec.Y = Y;
      spec.delta = delta;
      if (std::sscanf(signature.c_str(), "%d,%d", &spec.r1, &spec.r2) != 2)
        throw ConfigError("signature must be r1,r2: " + signature);
      spec.validate();
      std::vector<minkowski::RegionPoint> points;
      auto* dump = dump_path.empty() ? nullptr : &points;
      auto count = poly_text.empty() ? minkowski::omega_count(spec, dump)
                                     : minkowski::omega_count(parse_monic(poly_text), spec, dump);
      std::printf("count %llu\n", static_cast<unsigned long long>(count.total));
      for (const auto& [cell, k] : count.cells)
        std::printf("cell %d,%d %llu\n", cell.first, cell.second, static_cast<unsigned long long>(k));
      if (poly_text.empty()) {
        auto vol = minkowski::omega_volume(spec);
        std::printf("volume %.12g +- %.3g\n", vol.value, vol.error);
      }
      if (dump) {
        std::ofstream out(dump_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + dump_path);
        out << "coords,s1,s2,house,mahler\n";
        for (const auto& p : points)
          out << coords_field(p.coords) << ',' << p.cell.first << ',' << p.cell.second << ',' << p.house << ','
              << p.mahler << '\n';
      }
    }
  } catch (const FeasibilityRefusal& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitFeasibility;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    // Reducible input, insufficient data, unmet preconditions.
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
