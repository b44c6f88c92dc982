#include "polycensus/census/census.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "polycensus/error.hpp"
#include "polycensus/galois/galois.hpp"
#include "polycensus/galois/trager.hpp"
#include "polycensus/minkowski/minkowski.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/modp.hpp"

namespace polycensus::census {

using json = nlohmann::json;
using fieldreg::Registry;
using fieldreg::Signature;
using galois::Certainty;

namespace {

constexpr int kCheckpointVersion = 1;
// Heights up to this use the machine-integer paths for n <= 3.
constexpr long kFastHeight = 10000;

std::atomic<bool> g_stop{false};

long isqrt_floor(long v) {
  long r = static_cast<long>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool is_square_long(long v) {
  if (v < 0) return false;
  long r = isqrt_floor(v);
  return r * r == v;
}

long tail_height(const std::vector<long>& tail) {
  long h = 1;
  for (long a : tail) h = std::max(h, std::labs(a));
  return h;
}

long cubic_disc(long b, long c, long d) {
  return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

std::string certainty_name(Certainty c) { return galois::to_string(c); }

// Positive divisors of 1..B, for rational-root tests of cubics.
class DivisorTable {
 public:
  explicit DivisorTable(long B) : divs_(static_cast<std::size_t>(B) + 1) {
    for (long k = 1; k <= B; ++k)
      for (long m = k; m <= B; m += k) divs_[static_cast<std::size_t>(m)].push_back(k);
  }
  const std::vector<long>& of(long m) const { return divs_[static_cast<std::size_t>(m)]; }

 private:
  std::vector<std::vector<long>> divs_;
};

bool cubic_has_integer_root(long b, long c, long d, const DivisorTable& divs) {
  if (d == 0) return true;
  for (long r : divs.of(std::labs(d))) {
    if (((r + b) * r + c) * r + d == 0) return true;
    if (((-r + b) * -r + c) * -r + d == 0) return true;
  }
  return false;
}

bool prefilter_irreducible(const Polynomial& f) {
  for (std::uint64_t p : {2u, 3u, 5u})
    if (polyalg::is_irreducible_mod(f, p)) return true;
  return false;
}

bool irreducible_generic(const Polynomial& f) { return prefilter_irreducible(f) || polyalg::is_irreducible(f); }

class Classifier {
 public:
  explicit Classifier(const CensusConfig& cfg)
      : cfg_(cfg), fast_(cfg.degree <= 3 && cfg.height <= kFastHeight), divs_(fast_ && cfg.degree == 3 ? cfg.height : 0) {}

  void operator()(const std::vector<long>& tail, CountTable& t, Registry* reg) const {
    if (fast_ && cfg_.degree == 2) return quadratic(tail, t, reg);
    if (fast_ && cfg_.degree == 3) return cubic(tail, t, reg);
    generic(tail, t, reg);
  }

 private:
  void quadratic(const std::vector<long>& tail, CountTable& t, Registry* reg) const {
    long disc = tail[0] * tail[0] - 4 * tail[1];
    if (disc == 0) return void(++t.degenerate);
    if (is_square_long(disc)) return void(++t.reducible);
    t.add_row("C_2", "certified");
    ++t.galois;
    if (reg) reg->insert_irreducible(from_tail(tail), Integer(disc), disc > 0 ? Signature{2, 0} : Signature{0, 1});
  }

  void cubic(const std::vector<long>& tail, CountTable& t, Registry* reg) const {
    const long b = tail[0], c = tail[1], d = tail[2];
    long disc = cubic_disc(b, c, d);
    if (disc == 0) return void(++t.degenerate);
    if (cubic_has_integer_root(b, c, d, divs_)) return void(++t.reducible);
    if (is_square_long(disc)) {
      t.add_row("C_3", "certified");
      ++t.galois;
    } else {
      t.add_row("S_3", "certified");
    }
    if (reg) reg->insert_irreducible(from_tail(tail), Integer(disc), disc > 0 ? Signature{3, 0} : Signature{1, 1});
  }

  void generic(const std::vector<long>& tail, CountTable& t, Registry* reg) const {
    const int n = cfg_.degree;
    Polynomial f = from_tail(tail);
    Integer disc = polyalg::discriminant(f);
    if (disc == 0) return void(++t.degenerate);
    if (!irreducible_generic(f)) return void(++t.reducible);
    if (n <= 4) {
      auto label = galois::galois_group_small_irreducible(f, disc);
      t.add_row(label.name, certainty_name(label.certainty));
      if (galois::label_order(label) == n) ++t.galois;
    } else if (auto cert = galois::certify_Sn_An_irreducible(f, disc, cfg_.prime_budget)) {
      t.add_row(cert->name, certainty_name(cert->certainty));
    } else {
      if (cfg_.mode == Mode::kWithHeuristics) {
        auto label = galois::heuristic_group_irreducible(f, disc, cfg_.prime_budget);
        t.add_row(label.name, certainty_name(label.certainty));
      } else {
        ++t.unidentified;
      }
      if (galois::is_galois_field_irreducible(f)) ++t.galois;
    }
    if (reg) reg->insert_irreducible(f, disc, fieldreg::signature_of(f));
  }

  const CensusConfig& cfg_;
  bool fast_;
  DivisorTable divs_;
};

std::uint64_t exact_instances(int n, long B) {
  std::uint64_t N = 1;
  for (int i = 0; i < n; ++i) N *= static_cast<std::uint64_t>(2 * B + 1);
  return N;
}

// Runs work(k) for chunks k in [first, last) on `threads` workers and hands
// the results to reduce(k, result) in increasing k on the calling thread.
// reduce returns false to stop early. Stops between chunks when the global
// stop flag is raised. Returns the number of chunks reduced.
template <class Work, class Reduce>
std::uint64_t run_chunks(std::uint64_t first, std::uint64_t last, int threads, Work work, Reduce reduce) {
  using Result = decltype(work(first));
  const std::uint64_t window = 4 * static_cast<std::uint64_t>(threads) + 4;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::uint64_t, Result> ready;
  std::uint64_t next = first, reduced = first;
  int active = threads;
  bool halt = false;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      std::uint64_t k;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return halt || next >= last || next < reduced + window; });
        if (halt || next >= last || g_stop.load()) break;
        k = next++;
      }
      try {
        Result r = work(k);
        std::lock_guard lock(mu);
        ready.emplace(k, std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        halt = true;
      }
      cv.notify_all();
    }
    std::lock_guard lock(mu);
    --active;
    cv.notify_all();
  };

  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  std::uint64_t count = 0;
  while (reduced < last) {
    Result r;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return halt || ready.count(reduced) || active == 0; });
      auto it = ready.find(reduced);
      if (halt || it == ready.end()) break;
      r = std::move(it->second);
      ready.erase(it);
    }
    bool more = reduce(reduced, std::move(r));
    ++count;
    {
      std::lock_guard lock(mu);
      ++reduced;
      if (!more) halt = true;
    }
    cv.notify_all();
    if (!more) break;
  }
  {
    std::lock_guard lock(mu);
    halt = true;
  }
  cv.notify_all();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return count;
}

json table_to_json(const CountTable& t) {
  json rows = json::array();
  for (const auto& [key, k] : t.rows) rows.push_back({key.first, key.second, k});
  return {{"n", t.degree},           {"B", t.height},           {"rows", rows},
          {"unidentified", t.unidentified}, {"reducible", t.reducible}, {"degenerate", t.degenerate},
          {"galois", t.galois}};
}

CountTable table_from_json(const json& j) {
  CountTable t;
  t.degree = j.at("n").get<int>();
  t.height = j.at("B").get<long>();
  for (const auto& r : j.at("rows")) t.rows[{r.at(0).get<std::string>(), r.at(1).get<std::string>()}] = r.at(2).get<std::uint64_t>();
  t.unidentified = j.at("unidentified").get<std::uint64_t>();
  t.reducible = j.at("reducible").get<std::uint64_t>();
  t.degenerate = j.at("degenerate").get<std::uint64_t>();
  t.galois = j.at("galois").get<std::uint64_t>();
  return t;
}

std::string snapshot_string(const Registry& reg) {
  std::ostringstream s;
  reg.write_snapshot(s);
  return s.str();
}

Registry snapshot_from_string(const std::string& text) {
  std::istringstream s(text);
  return Registry::read_snapshot(s);
}

json checkpoint_header(const CensusConfig& cfg) {
  return {{"format", "polycensus-checkpoint"}, {"version", kCheckpointVersion},
          {"degree", cfg.degree},              {"height", cfg.height},
          {"mode", to_string(cfg.mode)},       {"prime_budget", cfg.prime_budget},
          {"track_fields", cfg.track_fields},  {"chunk_size", cfg.chunk_size}};
}

struct Progress {
  CountTable table;
  std::optional<Registry> registry;
  std::uint64_t chunks = 0;
};

// Replays a checkpoint log. A torn final line from an interrupted write is
// ignored.
Progress load_checkpoint(const std::string& path, const CensusConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open checkpoint " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("checkpoint " + path + " is empty");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception&) {
    throw ConfigError("checkpoint " + path + " has no valid header");
  }
  if (header != checkpoint_header(cfg))
    throw ConfigError("checkpoint " + path + " was written for a different configuration");
  Progress p;
  p.table.degree = cfg.degree;
  p.table.height = cfg.height;
  if (cfg.track_fields) p.registry.emplace(Registry::Labeler{});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception&) {
      if (in.peek() == EOF) break;
      throw ConfigError("checkpoint " + path + " is corrupt");
    }
    std::uint64_t at = rec.at("start").get<std::uint64_t>();
    if (at != p.chunks) throw ConfigError("checkpoint " + path + " has a gap at chunk " + std::to_string(p.chunks));
    if (rec.at("kind") == "state") {
      p.table = table_from_json(rec.at("table"));
      if (p.registry) p.registry = snapshot_from_string(rec.at("registry").get<std::string>());
    } else {
      p.table.merge(table_from_json(rec.at("table")));
      if (p.registry) p.registry->merge(snapshot_from_string(rec.at("registry").get<std::string>()));
    }
    p.chunks = rec.at("end").get<std::uint64_t>();
  }
  return p;
}

json progress_record(const char* kind, std::uint64_t start, std::uint64_t end, const CountTable& t, const Registry* reg) {
  json rec{{"kind", kind}, {"start", start}, {"end", end}, {"table", table_to_json(t)}};
  if (reg) rec["registry"] = snapshot_string(*reg);
  return rec;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string witness_field(const Polynomial& f) {
  std::string s;
  for (const auto& c : f.coeffs()) {
    if (!s.empty()) s += ' ';
    s += c.get_str();
  }
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

double log_correction(long B, int power) { return std::pow(std::log(static_cast<double>(B) + 2.0), power); }

}  // namespace

std::string to_string(Mode m) { return m == Mode::kDeterministic ? "deterministic" : "with-heuristics"; }
std::string to_string(Format f) { return f == Format::kCsv ? "csv" : "json"; }

Mode mode_from_string(const std::string& s) {
  if (s == "deterministic" || s == "deterministic-only") return Mode::kDeterministic;
  if (s == "with-heuristics" || s == "heuristic") return Mode::kWithHeuristics;
  throw ConfigError("unknown mode '" + s + "' (deterministic or with-heuristics)");
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw ConfigError("unknown format '" + s + "' (csv or json)");
}

double instance_cap_from_env() {
  const char* v = std::getenv("CENSUS_INSTANCE_CAP");
  if (!v || !*v) return kDefaultInstanceCap;
  char* end = nullptr;
  double cap = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(cap > 0)) throw ConfigError(std::string("CENSUS_INSTANCE_CAP is not a positive number: ") + v);
  return cap;
}

double CensusConfig::instances() const { return std::pow(2.0 * static_cast<double>(height) + 1.0, degree); }

void CensusConfig::validate() const {
  if (degree < 2 || degree > 6) throw ConfigError("degree must lie in [2, 6]");
  if (height < 1) throw ConfigError("height must be at least 1");
  if (shards < 1 || shards > 1024) throw ConfigError("shards must lie in [1, 1024]");
  if (prime_budget < 1) throw ConfigError("prime budget must be positive");
  if (chunk_size < 1) throw ConfigError("chunk size must be positive");
  if (mode == Mode::kDeterministic && degree > 5)
    throw ConfigError("deterministic mode supports degree at most 5; use with-heuristics");
  double N = instances();
  if (N > instance_cap) {
    std::ostringstream msg;
    msg << "census of " << N << " polynomials exceeds the instance cap of " << instance_cap
        << " (set CENSUS_INSTANCE_CAP to raise it)";
    throw FeasibilityRefusal(msg.str(), N);
  }
}

CensusStream::CensusStream(int degree, long height, std::uint64_t begin, std::uint64_t end)
    : degree_(degree), height_(height), pos_(begin), end_(end), digits_(static_cast<std::size_t>(degree)) {
  const std::uint64_t R = static_cast<std::uint64_t>(2 * height + 1);
  std::uint64_t rest = begin;
  for (int i = degree - 1; i >= 0; --i) {
    digits_[static_cast<std::size_t>(i)] = static_cast<long>(rest % R) - height;
    rest /= R;
  }
}

CensusStream::CensusStream(const CensusConfig& cfg)
    : CensusStream(cfg.degree, cfg.height, 0, exact_instances(cfg.degree, cfg.height)) {}

bool CensusStream::next(std::vector<long>& tail) {
  if (pos_ >= end_) return false;
  tail = digits_;
  ++pos_;
  for (int i = degree_ - 1; i >= 0; --i) {
    long& d = digits_[static_cast<std::size_t>(i)];
    if (d < height_) {
      ++d;
      break;
    }
    d = -height_;
  }
  return true;
}

bool CensusStream::next(Polynomial& f) {
  std::vector<long> tail;
  if (!next(tail)) return false;
  f = from_tail(tail);
  return true;
}

std::pair<std::uint64_t, std::uint64_t> shard_range(const CensusConfig& cfg, int k, int K) {
  if (K < 1 || k < 0 || k >= K) throw std::invalid_argument("shard index out of range");
  unsigned __int128 N = exact_instances(cfg.degree, cfg.height);
  return {static_cast<std::uint64_t>(N * static_cast<unsigned>(k) / static_cast<unsigned>(K)),
          static_cast<std::uint64_t>(N * static_cast<unsigned>(k + 1) / static_cast<unsigned>(K))};
}

Polynomial from_tail(const std::vector<long>& tail) {
  std::vector<Integer> c;
  c.reserve(tail.size() + 1);
  c.emplace_back(1);
  for (long a : tail) c.emplace_back(a);
  return Polynomial(c);
}

void CountTable::add_row(const std::string& group, const std::string& certainty, std::uint64_t k) {
  rows[{group, certainty}] += k;
}

void CountTable::merge(const CountTable& o) {
  for (const auto& [key, k] : o.rows) rows[key] += k;
  unidentified += o.unidentified;
  reducible += o.reducible;
  degenerate += o.degenerate;
  galois += o.galois;
}

std::uint64_t CountTable::irreducible() const {
  std::uint64_t s = unidentified;
  for (const auto& [key, k] : rows) s += k;
  return s;
}

std::uint64_t CountTable::total() const { return irreducible() + reducible + degenerate; }

std::uint64_t CountTable::count(const std::string& group) const {
  std::uint64_t s = 0;
  for (const auto& [key, k] : rows)
    if (key.first == group) s += k;
  return s;
}

bool CountTable::conserved() const { return total() == exact_instances(degree, height); }

void request_stop() { g_stop.store(true); }
void clear_stop() { g_stop.store(false); }

void classify(const std::vector<long>& tail, const CensusConfig& cfg, CountTable& table, Registry* registry) {
  Classifier{cfg}(tail, table, registry);
}

CensusResult run_census(const CensusConfig& cfg) {
  cfg.validate();
  const std::uint64_t N = exact_instances(cfg.degree, cfg.height);
  const std::uint64_t chunks = (N + cfg.chunk_size - 1) / cfg.chunk_size;
  std::string log_path = cfg.resume ? *cfg.resume : cfg.output.empty() ? std::string() : cfg.output + ".ckpt";

  Progress p;
  p.table.degree = cfg.degree;
  p.table.height = cfg.height;
  if (cfg.track_fields) p.registry.emplace(Registry::Labeler{});
  if (cfg.resume && std::filesystem::exists(*cfg.resume)) p = load_checkpoint(*cfg.resume, cfg);

  std::ofstream log;
  if (!log_path.empty()) {
    // Rewrite as header plus one state record, then append chunk records.
    std::string tmp = log_path + ".tmp";
    {
      std::ofstream out = open_out(tmp);
      out << checkpoint_header(cfg).dump() << '\n';
      if (p.chunks) out << progress_record("state", 0, p.chunks, p.table, p.registry ? &*p.registry : nullptr).dump() << '\n';
    }
    std::filesystem::rename(tmp, log_path);
    log.open(log_path, std::ios::app | std::ios::binary);
    if (!log) throw std::runtime_error("cannot append to " + log_path);
  }

  const Classifier classify_one(cfg);
  struct ChunkResult {
    CountTable table;
    std::optional<Registry> registry;
  };
  auto work = [&](std::uint64_t k) {
    ChunkResult r;
    r.table.degree = cfg.degree;
    r.table.height = cfg.height;
    if (cfg.track_fields) r.registry.emplace(Registry::Labeler{});
    CensusStream s(cfg.degree, cfg.height, k * cfg.chunk_size, std::min(N, (k + 1) * cfg.chunk_size));
    std::vector<long> tail;
    while (s.next(tail)) classify_one(tail, r.table, r.registry ? &*r.registry : nullptr);
    return r;
  };
  std::uint64_t budget = cfg.stop_after_chunks.value_or(chunks);
  std::uint64_t this_run = 0;
  auto reduce = [&](std::uint64_t k, ChunkResult r) {
    p.table.merge(r.table);
    if (p.registry) p.registry->merge(*r.registry);
    if (log) {
      log << progress_record("chunk", k, k + 1, r.table, r.registry ? &*r.registry : nullptr).dump() << '\n';
      log.flush();
    }
    p.chunks = k + 1;
    return ++this_run < budget;
  };
  if (p.chunks < chunks && budget > 0) run_chunks(p.chunks, chunks, cfg.shards, work, reduce);
  log.close();

  CensusResult res;
  res.chunks_done = p.chunks;
  res.chunks_total = chunks;
  res.complete = p.chunks == chunks;
  res.table = std::move(p.table);
  if (p.registry) {
    if (res.complete) {
      p.registry->set_labeler(fieldreg::default_label);
      p.registry->record_complete_census(cfg.degree, cfg.height);
      p.registry->finalize();
      res.registry = std::move(p.registry);
    } else {
      res.registry = std::move(p.registry);
    }
  }
  if (res.complete) {
    if (!log_path.empty()) std::filesystem::remove(log_path);
  } else {
    res.checkpoint = log_path;
  }
  return res;
}

void write_csv(std::ostream& out, const CountTable& t) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> rows = t.rows;
  rows[{"unknown", "unidentified"}] += t.unidentified;
  rows[{"reducible", "exact"}] += t.reducible;
  rows[{"degenerate", "exact"}] += t.degenerate;
  rows[{"galois", "exact"}] += t.galois;
  out << "# polycensus counts v" << kOutputVersion << '\n';
  out << "n,B,group,certainty,count\n";
  for (const auto& [key, k] : rows) out << t.degree << ',' << t.height << ',' << key.first << ',' << key.second << ',' << k << '\n';
}

void write_json(std::ostream& out, const CountTable& t) {
  json j{{"format", "polycensus-counts"}, {"version", kOutputVersion}};
  j.update(table_to_json(t));
  j["total"] = t.total();
  out << j.dump(2) << '\n';
}

void write_fields_csv(std::ostream& out, const Registry& reg, int degree, long B) {
  out << "# polycensus fields v" << kOutputVersion << '\n';
  out << "n,B,field_id,witness,lambda,multiplicity,bound_ratio\n";
  for (const auto& c : reg.classes())
    out << degree << ',' << B << ',' << c.id << ',' << witness_field(c.witness) << ",," << fieldreg::multiplicity(reg, c.id, B)
        << ",\n";
}

void write_outputs(const CensusConfig& cfg, const CensusResult& r) {
  if (cfg.output.empty()) throw ConfigError("no output path");
  {
    std::ofstream out = open_out(cfg.output);
    if (cfg.format == Format::kCsv)
      write_csv(out, r.table);
    else
      write_json(out, r.table);
  }
  if (r.registry && r.complete) {
    std::ofstream snap = open_out(cfg.output + ".registry.jsonl");
    r.registry->write_snapshot(snap);
    std::ofstream fields = open_out(cfg.output + ".fields.csv");
    write_fields_csv(fields, *r.registry, cfg.degree, cfg.height);
  }
}

MultiplicityReport multiplicity_report(const CensusConfig& base, const Polynomial& field) {
  if (!field.is_monic() || field.degree() < 2) throw std::invalid_argument("expected a monic polynomial of degree >= 2");
  if (!polyalg::is_irreducible(field)) throw Reducible();
  CensusConfig cfg = base;
  cfg.degree = field.degree();
  cfg.track_fields = false;
  cfg.validate();

  const int n = cfg.degree;
  const Integer fdisc = polyalg::discriminant(field);
  const Integer kernel = polyalg::squarefree_kernel(fdisc);
  const Signature sig = fieldreg::signature_of(field);
  const fieldreg::Fingerprint fp = fieldreg::fingerprint_of(field);
  const bool small_kernel = kernel.fits_slong_p() && n <= 3 && cfg.height <= kFastHeight;
  const long k = small_kernel ? kernel.get_si() : 0;
  const DivisorTable divs(small_kernel && n == 3 ? cfg.height : 0);

  // Same discriminant class modulo squares, i.e. disc / kernel a positive square.
  auto kernel_matches_long = [&](long disc) { return disc % k == 0 && disc / k > 0 && is_square_long(disc / k); };
  auto kernel_matches = [&](const Integer& disc) {
    if (disc % kernel != 0) return false;
    Integer q = disc / kernel;
    return q > 0 && polyalg::is_perfect_square(q);
  };

  const std::uint64_t N = exact_instances(n, cfg.height);
  const std::uint64_t chunks = (N + cfg.chunk_size - 1) / cfg.chunk_size;
  using Histogram = std::map<long, std::uint64_t>;
  auto work = [&](std::uint64_t c) {
    Histogram h;
    std::unordered_map<std::string, bool> verdicts;
    auto same_field = [&](const Polynomial& f) {
      std::string nf = fieldreg::normal_form(f);
      if (auto it = verdicts.find(nf); it != verdicts.end()) return it->second;
      bool v = fieldreg::fingerprints_compatible(fp, fieldreg::fingerprint_of(f)) && galois::has_root_in_field(field, f);
      verdicts.emplace(std::move(nf), v);
      return v;
    };
    CensusStream s(n, cfg.height, c * cfg.chunk_size, std::min(N, (c + 1) * cfg.chunk_size));
    std::vector<long> tail;
    while (s.next(tail)) {
      bool member = false;
      if (small_kernel && n == 2) {
        long disc = tail[0] * tail[0] - 4 * tail[1];
        member = disc != 0 && kernel_matches_long(disc);
      } else if (small_kernel && n == 3) {
        long disc = cubic_disc(tail[0], tail[1], tail[2]);
        member = disc != 0 && kernel_matches_long(disc) && !cubic_has_integer_root(tail[0], tail[1], tail[2], divs) &&
                 same_field(from_tail(tail));
      } else {
        Polynomial f = from_tail(tail);
        Integer disc = polyalg::discriminant(f);
        member = disc != 0 && kernel_matches(disc) && irreducible_generic(f) && fieldreg::signature_of(f) == sig &&
                 (n == 2 || same_field(f));
      }
      if (member) ++h[tail_height(tail)];
    }
    return h;
  };
  Histogram total;
  auto reduce = [&](std::uint64_t, Histogram h) {
    for (const auto& [ht, m] : h) total[ht] += m;
    return true;
  };
  std::uint64_t done = run_chunks(0, chunks, cfg.shards, work, reduce);
  if (done != chunks) throw std::runtime_error("multiplicity scan interrupted");

  MultiplicityReport r;
  r.field = field;
  r.signature = sig;
  if (polyalg::equation_order_is_maximal(field)) r.lambda = minkowski::lambda(field).value;
  std::uint64_t running = 0;
  auto it = total.begin();
  for (long B = 1; B <= cfg.height; ++B) {
    for (; it != total.end() && it->first <= B; ++it) running += it->second;
    FieldRow row{B, running, std::nullopt};
    if (r.lambda)
      row.bound_ratio = static_cast<double>(running) * r.lambda->mid() /
                        (static_cast<double>(B) * log_correction(B, sig.r1 + sig.r2 - 1));
    r.rows.push_back(row);
  }
  return r;
}

void write_multiplicity_csv(std::ostream& out, const MultiplicityReport& r, std::size_t field_id) {
  out << "# polycensus multiplicity v" << kOutputVersion << '\n';
  out << "n,B,field_id,witness,lambda,multiplicity,bound_ratio\n";
  const std::string lam = r.lambda ? format_double(r.lambda->mid()) : std::string();
  for (const auto& row : r.rows)
    out << r.field.degree() << ',' << row.B << ',' << field_id << ',' << witness_field(r.field) << ',' << lam << ','
        << row.multiplicity << ',' << (row.bound_ratio ? format_double(*row.bound_ratio) : std::string()) << '\n';
}

ExponentFit fit_exponent(const std::vector<std::pair<long, double>>& series, int log_power) {
  if (log_power < 0) throw std::invalid_argument("log_power must be non-negative");
  if (series.size() < 4) throw InsufficientData("exponent fit needs at least 4 points, got " + std::to_string(series.size()));
  std::vector<double> xs, ys;
  for (const auto& [B, count] : series) {
    if (B < 1 || !(count > 0)) throw InsufficientData("exponent fit needs B >= 1 and positive counts");
    xs.push_back(std::log(static_cast<double>(B)));
    ys.push_back(std::log(count) - static_cast<double>(log_power) * std::log(std::log(static_cast<double>(B) + 2.0)));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw InsufficientData("exponent fit needs at least two distinct B");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  fit.log_power = log_power;
  fit.series = series;
  return fit;
}

std::vector<std::pair<long, double>> read_series_csv(std::istream& in, const std::string& group) {
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  std::map<long, double> sums;
  int col_b = -1, col_count = -1, col_group = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "B") col_b = static_cast<int>(i);
        if (header[i] == "count") col_count = static_cast<int>(i);
        if (header[i] == "group") col_group = static_cast<int>(i);
      }
      if (col_b < 0 || col_count < 0) throw ConfigError("series CSV needs B and count columns");
      if (col_group >= 0 && group.empty()) throw ConfigError("series CSV has a group column; choose a group");
      continue;
    }
    if (cells.size() != header.size()) throw ConfigError("malformed series CSV row: " + line);
    if (col_group >= 0 && cells[static_cast<std::size_t>(col_group)] != group) continue;
    try {
      sums[std::stol(cells[static_cast<std::size_t>(col_b)])] += std::stod(cells[static_cast<std::size_t>(col_count)]);
    } catch (const std::exception&) {
      throw ConfigError("malformed series CSV row: " + line);
    }
  }
  if (header.empty()) throw ConfigError("series CSV is empty");
  return {sums.begin(), sums.end()};
}

}  // namespace polycensus::census
