#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polycensus/fieldreg/registry.hpp"
#include "polycensus/polyalg/ball.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::census {

using polyalg::Integer;
using polyalg::Polynomial;

constexpr int kOutputVersion = 1;
// Default work unit of a run. Chunks, not workers, fix the reduction order,
// so results do not depend on the number of workers.
constexpr std::uint64_t kChunkSize = 1u << 16;
constexpr double kDefaultInstanceCap = 1e9;

enum class Mode { kDeterministic, kWithHeuristics };
enum class Format { kCsv, kJson };

std::string to_string(Mode m);
std::string to_string(Format f);
Mode mode_from_string(const std::string& s);      // throws ConfigError
Format format_from_string(const std::string& s);  // throws ConfigError

/// Instance cap: CENSUS_INSTANCE_CAP if set, else 1e9. Throws ConfigError on
/// an unparsable value.
double instance_cap_from_env();

struct CensusConfig {
  int degree = 3;
  long height = 1;
  Mode mode = Mode::kWithHeuristics;
  int prime_budget = 200;
  int shards = 1;  // worker threads
  std::string output;
  Format format = Format::kCsv;
  std::optional<std::string> resume;  // checkpoint log to continue from
  bool track_fields = true;           // false: counts only, no registry
  double instance_cap = kDefaultInstanceCap;
  std::optional<std::uint64_t> stop_after_chunks;  // stop early, as if interrupted
  std::uint64_t chunk_size = kChunkSize;             // results never depend on it

  /// (2B+1)^n, as a double so that absurd requests do not overflow.
  double instances() const;
  /// Throws ConfigError for invalid parameters and FeasibilityRefusal when
  /// instances() exceeds instance_cap.
  void validate() const;
};

/// Monic polynomials of the configured degree and height in lexicographic
/// order of (a_{n-1}, ..., a_0), each coefficient running from -B to B.
/// Positions index that order.
class CensusStream {
 public:
  CensusStream(int degree, long height, std::uint64_t begin, std::uint64_t end);
  explicit CensusStream(const CensusConfig& cfg);

  /// Coefficients a_{n-1}..a_0 of the next polynomial; false when exhausted.
  bool next(std::vector<long>& tail);
  bool next(Polynomial& f);
  std::uint64_t position() const { return pos_; }

 private:
  int degree_;
  long height_;
  std::uint64_t pos_, end_;
  std::vector<long> digits_;
};

/// Contiguous share k of K of the enumeration order.
std::pair<std::uint64_t, std::uint64_t> shard_range(const CensusConfig& cfg, int k, int K);

Polynomial from_tail(const std::vector<long>& tail);

struct CountTable {
  int degree = 0;
  long height = 0;
  // (group name, certainty tier) -> irreducible polynomials so labeled.
  std::map<std::pair<std::string, std::string>, std::uint64_t> rows;
  std::uint64_t unidentified = 0;  // irreducible, no label in this mode
  std::uint64_t reducible = 0;     // squarefree but reducible
  std::uint64_t degenerate = 0;    // Disc(f) = 0
  std::uint64_t galois = 0;        // irreducible with normal stem field

  void add_row(const std::string& group, const std::string& certainty, std::uint64_t k = 1);
  void merge(const CountTable& other);
  std::uint64_t irreducible() const;
  std::uint64_t total() const;
  /// Irreducible polynomials labeled `group` in any tier.
  std::uint64_t count(const std::string& group) const;
  /// total() == (2B+1)^n.
  bool conserved() const;

  friend bool operator==(const CountTable&, const CountTable&) = default;
};

struct CensusResult {
  CountTable table;
  std::optional<fieldreg::Registry> registry;  // finalized, when tracked
  bool complete = false;
  std::uint64_t chunks_done = 0;
  std::uint64_t chunks_total = 0;
  std::string checkpoint;  // log path, kept when the run is incomplete
};

/// Sets a flag checked between chunks; the run then stops, keeps its
/// checkpoint and returns an incomplete result. Safe from a signal handler.
void request_stop();
void clear_stop();

/// Full census. Work is split into fixed chunks handed to cfg.shards worker
/// threads and folded in chunk order, so the result is independent of the
/// worker count. Progress goes to an append-only checkpoint log
/// (cfg.resume, else cfg.output + ".ckpt", else none) that a later run with
/// the same parameters can resume from.
CensusResult run_census(const CensusConfig& cfg);

/// Counts for one polynomial, the unit of run_census. registry may be null.
void classify(const std::vector<long>& tail, const CensusConfig& cfg, CountTable& table, fieldreg::Registry* registry);

// Output. Rows are sorted by (group, certainty).
void write_csv(std::ostream& out, const CountTable& t);
void write_json(std::ostream& out, const CountTable& t);
/// Writes cfg.output in cfg.format, plus <output>.registry.jsonl and
/// <output>.fields.csv when the registry was tracked.
void write_outputs(const CensusConfig& cfg, const CensusResult& r);

struct FieldRow {
  long B = 0;
  std::uint64_t multiplicity = 0;
  std::optional<double> bound_ratio;  // M_K(B) lambda / (B log(B+2)^{r1+r2-1})
};

struct MultiplicityReport {
  Polynomial field;
  fieldreg::Signature signature;
  std::optional<polyalg::Interval> lambda;  // when Z[alpha] is maximal
  std::vector<FieldRow> rows;               // B = 1..cfg.height
};

/// M_K(B) for the stem field of `field` and every B up to cfg.height, by a
/// census restricted to polynomials whose discriminant kernel, signature and
/// splitting fingerprint agree with K, confirmed by an exact isomorphism
/// test. cfg.degree is taken from the field. Throws Reducible.
MultiplicityReport multiplicity_report(const CensusConfig& cfg, const Polynomial& field);

void write_multiplicity_csv(std::ostream& out, const MultiplicityReport& r, std::size_t field_id = 0);
/// Per-class M_K(B) at the run height, from a finalized registry.
void write_fields_csv(std::ostream& out, const fieldreg::Registry& reg, int degree, long B);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square of the log residuals
  int log_power = 0;
  std::vector<std::pair<long, double>> series;
};

/// Least-squares fit of log(count) - log_power * log(log(B+2)) against
/// log B. Needs at least 4 points with distinct B and positive counts, else
/// throws InsufficientData.
ExponentFit fit_exponent(const std::vector<std::pair<long, double>>& series, int log_power = 0);

/// (B, count) series from a counts CSV: either a two-column B,count file, or
/// a run table summed over certainty tiers for `group`. Throws ConfigError.
std::vector<std::pair<long, double>> read_series_csv(std::istream& in, const std::string& group);

}  // namespace polycensus::census
