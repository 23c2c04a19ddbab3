#pragma once

#include <functional>
#include <vector>

#include "sigrig/common.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/series.hpp"

namespace sigrig {

// Transformation data of a theta function: theta(z + lambda) =
// c(lambda) * exp(gamma(lambda) * (z + lambda/2)) * theta(z) for lambda in
// the character lattice.  gamma is additive in (j, k); c takes values +-1
// and satisfies the compatibility quotient
//   c(l+l') / (c(l) c(l')) = exp((gamma(l) l' - l gamma(l')) / 2),
// which forces gamma(l) l' - l gamma(l') into 2*pi*i*Z.
struct ThetaCharacter {
  cplx gamma1{};
  cplx gamma2{};
  std::function<int(long, long)> c_of;
  int level = 1;

  cplx gamma(long j, long k) const {
    return static_cast<double>(j) * gamma1 + static_cast<double>(k) * gamma2;
  }
};

ThetaCharacter sigma_character();
ThetaCharacter ochanine_character();

struct CharacterCheck {
  double max_period_deviation = 0.0;  // distance of pairings from 2*pi*i*Z
  double max_quotient_error = 0.0;
  bool pass = false;
};

CharacterCheck verify_character(const ThetaCharacter& ch, const Lattice& L,
                                int range = 3, double tol = 1e-10);

class ThetaFunction {
 public:
  enum class Kind { sigma, ochanine, custom };

  ThetaFunction(Kind kind, Lattice char_lattice, ThetaCharacter character,
                int q_terms);
  // Custom instances supply their own evaluators.
  ThetaFunction(Lattice char_lattice, ThetaCharacter character,
                std::function<cplx(cplx)> eval,
                std::function<Jet<cplx>(cplx, int)> jet);

  Kind kind() const { return kind_; }
  const Lattice& lattice() const { return lattice_; }
  const ThetaCharacter& character() const { return character_; }
  int q_terms() const { return q_terms_; }

  cplx eval(cplx z) const;
  // Taylor coefficients around w, up to and including x^order.
  Jet<cplx> jet(cplx w, int order) const;

  // c(l lambda) * exp(gamma(lambda) * (l z + l^2 lambda / 2)), the factor
  // relating theta(z + l*lambda) to theta(z).
  cplx iterated_translation_factor(long j, long k, long l, cplx z) const;

 private:
  Kind kind_;
  Lattice lattice_;
  ThetaCharacter character_;
  int q_terms_;
  std::function<cplx(cplx)> eval_fn_;
  std::function<Jet<cplx>(cplx, int)> jet_fn_;
};

// Odd normalized theta function of the lattice: simple zeros exactly on the
// lattice, theta'(0) = 1.  Uses the effective nome of L.
cplx sigma_eval(cplx z, const Lattice& L, int q_terms = kDefaultQTerms);
Jet<cplx> sigma_jet(cplx w, const Lattice& L, int order,
                    int q_terms = kDefaultQTerms);
ThetaFunction sigma_theta(const Lattice& L, int q_terms = kDefaultQTerms);

// Level-2 odd theta function with trivial exponential part: antiperiodic
// under the half period 2*pi*i*tau, periodic under 2*pi*i and 4*pi*i*tau.
// The character lattice is spanned by 2*pi*i and 2*pi*i*tau.
cplx ochanine_eval(cplx z, cplx tau, int q_terms = kDefaultQTerms);
Jet<cplx> ochanine_jet(cplx w, cplx tau, int order,
                       int q_terms = kDefaultQTerms);
ThetaFunction ochanine_theta(cplx tau, int q_terms = kDefaultQTerms);
// Same function built from sigma on the doubled lattice via its order-2
// divisor data; used as an independent cross-check of the product form.
cplx ochanine_eval_quotient(cplx z, cplx tau, int q_terms = kDefaultQTerms);

struct TranslationReport {
  double max_residual = 0.0;
  int used = 0;
  int skipped = 0;
};

// Residuals of the translation law at lambda = j*g1 + k*g2 over samples.
TranslationReport verify_translation(const ThetaFunction& th, long j, long k,
                                     const std::vector<cplx>& samples,
                                     double skip_threshold = 1e-8);

// Winding number of f around a circle, by phase tracking.
double winding_number(const std::function<cplx(cplx)>& f, cplx center,
                      double radius, int samples = 2048);
// Winding of f around the boundary of the fundamental cell translated by
// offset_s*g1 + offset_t*g2.
double cell_winding(const std::function<cplx(cplx)>& f, const Lattice& L,
                    double offset_s, double offset_t, int samples_per_edge = 1024);

}  // namespace sigrig
