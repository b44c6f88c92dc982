#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polycensus/galois/label.hpp"
#include "polycensus/polyalg/polynomial.hpp"

namespace polycensus::fieldreg {

using galois::GroupLabel;
using polyalg::Integer;
using polyalg::Polynomial;

inline constexpr int kSnapshotVersion = 1;
inline constexpr std::size_t kFingerprintPrimes = 12;

struct Signature {
  int r1 = 0;
  int r2 = 0;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

Signature signature_of(const Polynomial& f);

/// Splitting pattern of f at each of the first kFingerprintPrimes primes, 0
/// where p divides Disc(f). At an unramified p the pattern is the splitting
/// type of p in the field, so members of one class agree wherever both are
/// unramified.
using Fingerprint = std::array<std::uint32_t, kFingerprintPrimes>;

Fingerprint fingerprint_of(const Polynomial& f);
bool fingerprints_compatible(const Fingerprint& a, const Fingerprint& b);

/// (degree, r1, squarefree kernel of the polynomial discriminant). The kernel
/// is a field invariant because Disc(f) = Disc(K) * index^2.
struct FieldKey {
  int degree = 0;
  int r1 = 0;
  Integer kernel;

  friend bool operator==(const FieldKey& a, const FieldKey& b) {
    return a.degree == b.degree && a.r1 == b.r1 && a.kernel == b.kernel;
  }
};

struct FieldKeyHash {
  std::size_t operator()(const FieldKey& k) const;
};

struct FieldClass {
  std::size_t id = 0;
  int degree = 0;
  Signature signature;
  Polynomial witness;  // minimal height, then lexicographically least
  Integer poly_disc;   // Disc(witness)
  Integer kernel;      // squarefree kernel of poly_disc
  std::optional<Integer> field_disc;
  GroupLabel group;
  std::uint64_t member_count = 0;
  std::map<long, std::uint64_t> members_by_height;
  Fingerprint fingerprint{};
};

/// Representative of f under x -> x + k and x -> -x: the subleading
/// coefficient is brought into [0, n), and the smaller of f and its
/// reflection is kept. Equal normal forms mean equal stem fields.
std::string normal_form(const Polynomial& f);

/// Exact isomorphism test for irreducible monic f, g of equal degree: true iff
/// g has a root in Q[x]/(f). Cheap invariants reject first. Throws Reducible
/// and DegreeMismatch.
bool fields_isomorphic(const Polynomial& f, const Polynomial& g);

/// Number-field isomorphism classes of the polynomials fed to it.
class Registry {
 public:
  // Label for a class witness; disc is Disc(witness).
  using Labeler = std::function<GroupLabel(const Polynomial&, const Integer&)>;

  Registry();
  explicit Registry(Labeler labeler);

  void set_labeler(Labeler labeler) { labeler_ = std::move(labeler); }

  /// Id of the class of Q[x]/(f), creating it if absent. Throws Reducible.
  std::size_t insert(const Polynomial& f);
  /// Same without the irreducibility check; disc = Disc(f).
  std::size_t insert_irreducible(const Polynomial& f, const Integer& disc, Signature sig);

  // Class of Q[x]/(f) if present; f irreducible.
  std::optional<std::size_t> find(const Polynomial& f) const;

  const FieldClass& at(std::size_t id) const { return classes_.at(id); }
  const std::vector<FieldClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::uint64_t total_members() const;

  /// Records that every irreducible polynomial of the given degree and height
  /// at most `height` has been inserted.
  void record_complete_census(int degree, long height);
  std::optional<long> covered_height(int degree) const;
  const std::map<int, long>& coverage() const { return coverage_; }

  /// Folds another registry in, resolving isomorphic classes. Coverage is
  /// not merged; the caller records it once the union is complete.
  void merge(const Registry& other);

  /// Sorts classes by witness (height, then coefficients), renumbers ids and
  /// recomputes group labels from the witnesses.
  void finalize();

  void write_snapshot(std::ostream& out) const;
  static Registry read_snapshot(std::istream& in, Labeler labeler = {});

 private:
  std::optional<std::size_t> match(const Polynomial& f, const FieldKey& key, const Fingerprint& fp) const;
  void absorb_member(FieldClass& c, const Polynomial& f, const Integer& disc, std::uint64_t count);
  void reindex();

  Labeler labeler_;
  std::vector<FieldClass> classes_;
  std::unordered_map<FieldKey, std::vector<std::size_t>, FieldKeyHash> index_;
  // Members equal up to x -> +-x + k share a field; keyed by a normal form.
  std::unordered_map<std::string, std::size_t> normal_forms_;
  std::map<int, long> coverage_;
  std::vector<bool> stale_label_;
};

// Default labeler: certified for degree <= 4, S_n/A_n certification then the
// Frobenius heuristic above.
GroupLabel default_label(const Polynomial& f, const Integer& disc);

std::size_t insert(Registry& reg, const Polynomial& f);

/// M_K(B): members of the class with height at most B. Throws IncompleteCensus
/// when the registry's recorded coverage for the class degree is below B.
std::uint64_t multiplicity(const Registry& reg, std::size_t class_id, long B);

struct FieldCount {
  long count = 0;
  bool complete = false;  // false: a lower bound
};

/// Classes labeled G with known |Disc(K)| <= X. Complete only when no class
/// labeled G with unknown field discriminant could have |Disc(K)| <= X, i.e.
/// every such class has |kernel| > X.
FieldCount empirical_field_count(Registry& reg, double X, const std::string& group);

/// Field discriminant when it follows from one member: the classical rule for
/// quadratics, Disc(f) when Z[alpha] is maximal (Dedekind), else nullopt.
std::optional<Integer> field_discriminant_from(const Polynomial& f, const Integer& disc);

}  // namespace polycensus::fieldreg
