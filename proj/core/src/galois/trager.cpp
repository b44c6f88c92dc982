#include "polycensus/galois/trager.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "polycensus/error.hpp"
#include "polycensus/polyalg/roots.hpp"

namespace polycensus::galois {

using namespace polyalg;

namespace {

constexpr long kMaxShift = 64;
constexpr int kRefinements = 6;

// Roots of f and g with disks tight enough that products of up to deg f *
// deg g shifted roots beta + lambda*theta round decisively.
class ShiftedRoots {
 public:
  ShiftedRoots(const Polynomial& f, const Polynomial& g, long lambda) : f_(f), g_(g), lambda_(lambda) {
    RootSet cf = complex_roots(f, 1e-3), cg = complex_roots(g, 1e-3);
    double log2p = 0.0;
    for (const auto& a : cf.roots)
      for (const auto& b : cg.roots)
        log2p += std::log2(1.0 + std::abs(b.approx()) + lambda * std::abs(a.approx()) + 1e-2);
    double cells = static_cast<double>(cf.roots.size() * cg.roots.size());
    target_ = std::exp2(-(log2p + std::log2(cells + 1) + 16)) / (1.0 + lambda);
    target_ = std::max(target_, 1e-300);
    compute();
  }

  void refine() {
    target_ = std::max(target_ * 1e-12, 1e-300);
    compute();
  }

  std::size_t size() const { return theta_.roots.size(); }
  std::size_t cols() const { return beta_.roots.size(); }
  mpfr_prec_t precision() const { return prec_; }
  const ComplexBall& gamma(std::size_t i, std::size_t j) const { return gamma_[i * cols() + j]; }
  double trace_part(std::size_t i, std::size_t j) const { return approx_[i * cols() + j]; }
  double radius(std::size_t i, std::size_t j) const { return radius_[i * cols() + j]; }

 private:
  void compute() {
    theta_ = complex_roots(f_, target_);
    beta_ = complex_roots(g_, target_);
    prec_ = std::max(theta_.precision, beta_.precision);
    const std::size_t n = theta_.roots.size();
    gamma_.clear();
    approx_.clear();
    radius_.clear();
    ComplexBall lam = ComplexBall::exact(Integer(lambda_), prec_);
    for (std::size_t i = 0; i < n; ++i) {
      ComplexBall t = mul(lam, theta_.roots[i].ball(), prec_);
      for (std::size_t j = 0; j < beta_.roots.size(); ++j) {
        gamma_.push_back(add(beta_.roots[j].ball(), t, prec_));
        approx_.push_back(beta_.roots[j].approx().real() + lambda_ * theta_.roots[i].approx().real());
        radius_.push_back(beta_.roots[j].radius_upper() + lambda_ * theta_.roots[i].radius_upper());
      }
    }
  }

  Polynomial f_, g_;
  long lambda_;
  double target_ = 1e-3;
  RootSet theta_, beta_;
  mpfr_prec_t prec_ = kStartPrecision;
  std::vector<ComplexBall> gamma_;
  std::vector<double> approx_, radius_;
};

Polynomial norm_from(ShiftedRoots& sr) {
  for (int attempt = 0; attempt <= kRefinements; ++attempt) {
    std::vector<ComplexBall> all;
    for (std::size_t i = 0; i < sr.size(); ++i)
      for (std::size_t j = 0; j < sr.cols(); ++j) all.push_back(sr.gamma(i, j));
    RoundedProduct prod = product_of_linear_factors(all, sr.precision());
    if (prod.status == Rounding::kInteger) return prod.poly;
    if (prod.status == Rounding::kNotInteger) throw std::logic_error("norm enclosure excludes every integer polynomial");
    sr.refine();
  }
  throw NonConvergence("norm coefficients could not be resolved");
}

void check_inputs(const Polynomial& f, const Polynomial& g) {
  if (!f.is_monic() || !g.is_monic()) throw std::invalid_argument("field membership test expects monic polynomials");
  if (f.degree() != g.degree()) throw DegreeMismatch("polynomials have different degrees");
}

// Distinct degree-n factors of the norm found among permutation candidates.
int count_factors(const Polynomial& f, const Polynomial& g, bool stop_at_first) {
  check_inputs(f, g);
  const int n = f.degree();
  if (n == 1) return 1;
  for (long lambda = 1; lambda <= kMaxShift; ++lambda) {
    ShiftedRoots sr(f, g, lambda);
    Polynomial norm = norm_from(sr);
    if (!is_squarefree(norm)) continue;
    for (int attempt = 0; attempt <= kRefinements; ++attempt) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::set<std::vector<Integer>> found;
      bool ambiguous = false;
      do {
        double t = 0.0, slack = 0.0;
        for (int i = 0; i < n; ++i) {
          auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(perm[ui]);
          t += sr.trace_part(ui, uj);
          slack += sr.radius(ui, uj);
        }
        if (std::abs(t - std::nearbyint(t)) > slack + 1e-9 * (1.0 + std::abs(t))) continue;
        std::vector<ComplexBall> zs;
        for (int i = 0; i < n; ++i) zs.push_back(sr.gamma(static_cast<std::size_t>(i), static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])));
        RoundedProduct prod = product_of_linear_factors(zs, sr.precision());
        if (prod.status == Rounding::kAmbiguous) ambiguous = true;
        if (prod.status != Rounding::kInteger) continue;
        if (!divide_exact(norm, prod.poly)) continue;
        found.insert(prod.poly.coeffs());
        if (stop_at_first) return 1;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!ambiguous) return static_cast<int>(found.size());
      sr.refine();
    }
    throw NonConvergence("norm factor candidates could not be resolved");
  }
  throw NonConvergence("no shift gives a square-free norm");
}

}  // namespace

Polynomial trager_norm(const Polynomial& f, const Polynomial& g, long lambda) {
  if (!f.is_monic() || !g.is_monic()) throw std::invalid_argument("trager_norm expects monic polynomials");
  ShiftedRoots sr(f, g, lambda);
  return norm_from(sr);
}

int count_roots_in_field(const Polynomial& f, const Polynomial& g) { return count_factors(f, g, false); }

bool has_root_in_field(const Polynomial& f, const Polynomial& g) { return count_factors(f, g, true) > 0; }

}  // namespace polycensus::galois
