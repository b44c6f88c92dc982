#include "polycensus/fieldreg/registry.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "polycensus/error.hpp"
#include "polycensus/galois/galois.hpp"
#include "polycensus/galois/trager.hpp"
#include "polycensus/permgrp/catalog.hpp"
#include "polycensus/polyalg/factor.hpp"
#include "polycensus/polyalg/modp.hpp"

namespace polycensus::fieldreg {

using namespace polyalg;
using nlohmann::json;

namespace {

constexpr int kLabelPrimes = 200;

bool witness_less(const Polynomial& a, const Polynomial& b) {
  Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return lex_compare(a, b) == std::strong_ordering::less;
}

std::uint32_t encode_degrees(const std::vector<int>& degrees) {
  std::uint32_t code = 0;
  for (int d : degrees) code = code * 8 + static_cast<std::uint32_t>(d);
  return code;
}

void fill_fingerprint(Fingerprint& into, const Fingerprint& from) {
  for (std::size_t i = 0; i < kFingerprintPrimes; ++i)
    if (into[i] == 0) into[i] = from[i];
}

void require_irreducible(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("expected a monic polynomial of positive degree");
  if (!is_irreducible(f)) throw Reducible();
}

json label_to_json(const GroupLabel& l) {
  return {{"name", l.name}, {"certainty", galois::to_string(l.certainty)}, {"confidence", l.confidence}};
}

GroupLabel label_from_json(const json& j, int degree) {
  GroupLabel l;
  l.name = j.at("name").get<std::string>();
  l.degree = degree;
  std::string c = j.at("certainty").get<std::string>();
  l.certainty = c == "certified" ? galois::Certainty::kCertified
                : c == "heuristic" ? galois::Certainty::kHeuristic
                                   : galois::Certainty::kUnknown;
  l.confidence = j.value("confidence", 0.0);
  return l;
}

}  // namespace

std::string normal_form(const Polynomial& f) {
  const int n = f.degree();
  auto reduce = [n](const Polynomial& g) {
    Integer a = g.coeff(n - 1), k;
    mpz_fdiv_q_ui(k.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
    return k == 0 ? g : taylor_shift(g, -k);
  };
  Polynomial a = reduce(f);
  Polynomial reflected = scale_argument(f, -1);
  if (n % 2) reflected = -reflected;
  Polynomial b = reduce(reflected);
  return (lex_compare(b, a) == std::strong_ordering::less ? b : a).to_list();
}

Signature signature_of(const Polynomial& f) {
  int r1 = count_real_roots(f);
  return {r1, (f.degree() - r1) / 2};
}

Fingerprint fingerprint_of(const Polynomial& f) {
  Fingerprint fp{};
  for (std::size_t i = 0; i < kFingerprintPrimes; ++i) {
    auto d = factor_degrees_mod(f, nth_prime(i));
    fp[i] = d ? encode_degrees(*d) : 0;
  }
  return fp;
}

bool fingerprints_compatible(const Fingerprint& a, const Fingerprint& b) {
  for (std::size_t i = 0; i < kFingerprintPrimes; ++i)
    if (a[i] && b[i] && a[i] != b[i]) return false;
  return true;
}

std::size_t FieldKeyHash::operator()(const FieldKey& k) const {
  std::size_t h = std::hash<int>()(k.degree * 16 + k.r1);
  return h ^ (std::hash<std::string>()(k.kernel.get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::optional<Integer> field_discriminant_from(const Polynomial& f, const Integer& disc) {
  if (f.degree() == 2) {
    Integer d = squarefree_kernel(disc);
    Integer r = d % 4;
    if (r < 0) r += 4;
    return r == 1 ? d : Integer(4 * d);
  }
  if (equation_order_is_maximal(f)) return disc;
  return std::nullopt;
}

GroupLabel default_label(const Polynomial& f, const Integer& disc) {
  const int n = f.degree();
  if (n <= 4) return galois::galois_group_small_irreducible(f, disc);
  if (auto l = galois::certify_Sn_An_irreducible(f, disc, kLabelPrimes)) return *l;
  if (n <= permgrp::kCatalogMaxDegree) return galois::heuristic_group_irreducible(f, disc, kLabelPrimes);
  GroupLabel l;
  l.degree = n;
  return l;
}

bool fields_isomorphic(const Polynomial& f, const Polynomial& g) {
  if (f.degree() != g.degree()) throw DegreeMismatch("fields_isomorphic expects polynomials of equal degree");
  require_irreducible(f);
  require_irreducible(g);
  if (f == g || f.degree() == 1) return true;
  if (signature_of(f) != signature_of(g)) return false;
  if (squarefree_kernel(discriminant(f)) != squarefree_kernel(discriminant(g))) return false;
  // Quadratic fields are determined by the kernel.
  if (f.degree() == 2) return true;
  if (!fingerprints_compatible(fingerprint_of(f), fingerprint_of(g))) return false;
  return galois::has_root_in_field(f, g);
}

Registry::Registry() : Registry(default_label) {}

Registry::Registry(Labeler labeler) : labeler_(std::move(labeler)) {}

std::uint64_t Registry::total_members() const {
  std::uint64_t t = 0;
  for (const auto& c : classes_) t += c.member_count;
  return t;
}

std::optional<std::size_t> Registry::match(const Polynomial& f, const FieldKey& key, const Fingerprint& fp) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  for (std::size_t id : it->second) {
    const FieldClass& c = classes_[id];
    if (!fingerprints_compatible(fp, c.fingerprint)) continue;
    if (key.degree <= 2 || f == c.witness || galois::has_root_in_field(c.witness, f)) return id;
  }
  return std::nullopt;
}

void Registry::absorb_member(FieldClass& c, const Polynomial& f, const Integer& disc, std::uint64_t count) {
  c.member_count += count;
  c.members_by_height[height(f).get_si()] += count;
  if (witness_less(f, c.witness)) {
    c.witness = f;
    c.poly_disc = disc;
    stale_label_[c.id] = true;
  }
}

std::size_t Registry::insert(const Polynomial& f) {
  require_irreducible(f);
  return insert_irreducible(f, discriminant(f), signature_of(f));
}

std::size_t Registry::insert_irreducible(const Polynomial& f, const Integer& disc, Signature sig) {
  std::string nf = normal_form(f);
  if (auto hit = normal_forms_.find(nf); hit != normal_forms_.end()) {
    // A translate or reflection of an earlier member: same disc, same order.
    absorb_member(classes_[hit->second], f, disc, 1);
    return hit->second;
  }
  FieldKey key{f.degree(), sig.r1, squarefree_kernel(disc)};
  Fingerprint fp = fingerprint_of(f);
  std::size_t id;
  if (auto m = match(f, key, fp)) {
    id = *m;
    FieldClass& c = classes_[id];
    fill_fingerprint(c.fingerprint, fp);
    if (!c.field_disc) c.field_disc = field_discriminant_from(f, disc);
    absorb_member(c, f, disc, 1);
  } else {
    id = classes_.size();
    FieldClass c;
    c.id = id;
    c.degree = f.degree();
    c.signature = sig;
    c.witness = f;
    c.poly_disc = disc;
    c.kernel = key.kernel;
    c.field_disc = field_discriminant_from(f, disc);
    c.group.degree = c.degree;
    c.member_count = 1;
    c.members_by_height[height(f).get_si()] = 1;
    c.fingerprint = fp;
    classes_.push_back(std::move(c));
    stale_label_.push_back(true);
    index_[key].push_back(id);
  }
  normal_forms_.emplace(std::move(nf), id);
  return id;
}

std::optional<std::size_t> Registry::find(const Polynomial& f) const {
  if (auto hit = normal_forms_.find(normal_form(f)); hit != normal_forms_.end()) return hit->second;
  Integer disc = discriminant(f);
  return match(f, FieldKey{f.degree(), signature_of(f).r1, squarefree_kernel(disc)}, fingerprint_of(f));
}

void Registry::record_complete_census(int degree, long height) {
  long& h = coverage_[degree];
  h = std::max(h, height);
}

std::optional<long> Registry::covered_height(int degree) const {
  auto it = coverage_.find(degree);
  if (it == coverage_.end()) return std::nullopt;
  return it->second;
}

void Registry::merge(const Registry& other) {
  std::vector<std::size_t> mapped(other.classes_.size());
  for (const FieldClass& oc : other.classes_) {
    FieldKey key{oc.degree, oc.signature.r1, oc.kernel};
    if (auto m = match(oc.witness, key, oc.fingerprint)) {
      FieldClass& c = classes_[*m];
      c.member_count += oc.member_count;
      for (const auto& [h, k] : oc.members_by_height) c.members_by_height[h] += k;
      fill_fingerprint(c.fingerprint, oc.fingerprint);
      if (!c.field_disc) c.field_disc = oc.field_disc;
      if (witness_less(oc.witness, c.witness)) {
        c.witness = oc.witness;
        c.poly_disc = oc.poly_disc;
        c.group = oc.group;
        stale_label_[c.id] = other.stale_label_[oc.id];
      }
      mapped[oc.id] = *m;
    } else {
      std::size_t id = classes_.size();
      FieldClass c = oc;
      c.id = id;
      classes_.push_back(std::move(c));
      stale_label_.push_back(other.stale_label_[oc.id]);
      index_[key].push_back(id);
      mapped[oc.id] = id;
    }
  }
  for (const auto& [nf, oid] : other.normal_forms_) normal_forms_.emplace(nf, mapped[oid]);
}

void Registry::reindex() {
  index_.clear();
  for (const auto& c : classes_) index_[FieldKey{c.degree, c.signature.r1, c.kernel}].push_back(c.id);
}

void Registry::finalize() {
  std::vector<std::size_t> order(classes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return witness_less(classes_[a].witness, classes_[b].witness); });
  std::vector<std::size_t> new_id(classes_.size());
  std::vector<FieldClass> sorted;
  std::vector<bool> stale;
  sorted.reserve(classes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = i;
    sorted.push_back(std::move(classes_[order[i]]));
    sorted.back().id = i;
    stale.push_back(stale_label_[order[i]]);
  }
  classes_ = std::move(sorted);
  stale_label_ = std::move(stale);
  for (auto& [nf, id] : normal_forms_) id = new_id[id];
  reindex();
  if (!labeler_) return;
  for (auto& c : classes_)
    if (stale_label_[c.id]) {
      c.group = labeler_(c.witness, c.poly_disc);
      stale_label_[c.id] = false;
    }
}

void Registry::write_snapshot(std::ostream& out) const {
  json header{{"format", "polycensus-registry"}, {"version", kSnapshotVersion}, {"classes", classes_.size()}};
  json cov = json::object();
  for (const auto& [d, h] : coverage_) cov[std::to_string(d)] = h;
  header["coverage"] = cov;
  out << header.dump() << '\n';
  for (const auto& c : classes_) {
    json w = json::array();
    for (const auto& v : c.witness.coeffs()) w.push_back(v.get_str());
    json heights = json::object();
    for (const auto& [h, k] : c.members_by_height) heights[std::to_string(h)] = k;
    json rec{{"id", c.id},
             {"degree", c.degree},
             {"signature", {c.signature.r1, c.signature.r2}},
             {"witness", w},
             {"poly_disc", c.poly_disc.get_str()},
             {"field_disc", c.field_disc ? json(c.field_disc->get_str()) : json(nullptr)},
             {"group", label_to_json(c.group)},
             {"member_count", c.member_count},
             {"members_by_height", heights}};
    out << rec.dump() << '\n';
  }
}

Registry Registry::read_snapshot(std::istream& in, Labeler labeler) {
  Registry reg(labeler ? std::move(labeler) : Labeler(default_label));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("registry snapshot: missing header");
  json header = json::parse(line);
  if (header.value("format", "") != "polycensus-registry" || header.value("version", 0) != kSnapshotVersion)
    throw std::runtime_error("registry snapshot: unsupported header");
  for (const auto& [d, h] : header.at("coverage").items()) reg.coverage_[std::stoi(d)] = h.get<long>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    FieldClass c;
    c.id = reg.classes_.size();
    c.degree = rec.at("degree").get<int>();
    c.signature = {rec.at("signature").at(0).get<int>(), rec.at("signature").at(1).get<int>()};
    std::vector<Integer> w;
    for (const auto& v : rec.at("witness")) w.emplace_back(v.get<std::string>());
    c.witness = Polynomial(w);
    c.poly_disc = Integer(rec.at("poly_disc").get<std::string>());
    c.kernel = squarefree_kernel(c.poly_disc);
    if (!rec.at("field_disc").is_null()) c.field_disc = Integer(rec.at("field_disc").get<std::string>());
    c.group = label_from_json(rec.at("group"), c.degree);
    c.member_count = rec.at("member_count").get<std::uint64_t>();
    for (const auto& [h, k] : rec.at("members_by_height").items()) c.members_by_height[std::stol(h)] = k.get<std::uint64_t>();
    c.fingerprint = fingerprint_of(c.witness);
    reg.index_[FieldKey{c.degree, c.signature.r1, c.kernel}].push_back(c.id);
    reg.normal_forms_.emplace(normal_form(c.witness), c.id);
    // Unlabeled classes (e.g. from an unfinalized partial registry) get
    // labeled at the next finalize.
    bool stale = c.group.name == "unknown";
    reg.classes_.push_back(std::move(c));
    reg.stale_label_.push_back(stale);
  }
  return reg;
}

std::size_t insert(Registry& reg, const Polynomial& f) { return reg.insert(f); }

std::uint64_t multiplicity(const Registry& reg, std::size_t class_id, long B) {
  if (B < 0) throw std::invalid_argument("multiplicity expects B >= 0");
  const FieldClass& c = reg.at(class_id);
  auto cov = reg.covered_height(c.degree);
  if (!cov || *cov < B)
    throw IncompleteCensus("registry covers degree " + std::to_string(c.degree) + " only up to height " +
                           (cov ? std::to_string(*cov) : std::string("none")) + ", asked for " + std::to_string(B));
  std::uint64_t m = 0;
  for (auto it = c.members_by_height.begin(); it != c.members_by_height.end() && it->first <= B; ++it) m += it->second;
  return m;
}

FieldCount empirical_field_count(Registry& reg, double X, const std::string& group) {
  reg.finalize();
  FieldCount out;
  out.complete = true;
  for (const auto& c : reg.classes()) {
    if (c.group.name != group) continue;
    if (c.field_disc) {
      if (Integer(abs(*c.field_disc)).get_d() <= X) ++out.count;
    } else if (Integer(abs(c.kernel)).get_d() <= X) {
      out.complete = false;
    }
  }
  return out;
}

}  // namespace polycensus::fieldreg
