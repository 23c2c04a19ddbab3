#pragma once

#include <map>
#include <string>

#include "sigrig/common.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/series.hpp"

namespace sigrig {

// Virtual complex representation of the circle, stored as the Laurent
// polynomial f = Σ d_m z^m of its character.  The m = 0 entry carries rank
// only and never enters divisors or trivializations.
struct VirtualRep {
  std::map<long, long> coefficients;

  long coeff(long m) const;
  // Σ d_m over m ≠ 0: the vanishing order of the trivialization at 0 and
  // the sign governing its behavior under z → −z.
  long sigma_exponent_sum() const;
  long weight_sum() const;  // Σ d_m · m

  VirtualRep operator+(const VirtualRep& o) const;
  VirtualRep operator-() const;
};

// Accepts integer-coefficient Laurent terms like "z^3 - 9z", "4 + z^-2".
VirtualRep parse_virtual_rep(const std::string& text);
std::string to_string(const VirtualRep& f);

Divisor divisor_of(const VirtualRep& f, const Lattice& L);
long degree_of(const VirtualRep& f);
long p1_equivariant(const VirtualRep& f);
int w2_equivariant(const VirtualRep& f);
bool is_trivial(const VirtualRep& f, const Lattice& L);

cplx trivialization_eval(const VirtualRep& f, cplx z, const Lattice& L,
                         int q_terms = kDefaultQTerms);
// z lies within tol of a zero or pole of the trivialization.
bool near_divisor_point(const VirtualRep& f, cplx z, const Lattice& L,
                        double tol = 1e-6);

// g(z) = (unit of jet) · z^order near 0; coeff is the unit's value at 0.
struct LeadingBehavior {
  long order = 0;
  cplx coeff{};
  Jet<cplx> unit;  // g(z)/z^order as a jet
};
LeadingBehavior trivialization_leading(const VirtualRep& f, const Lattice& L,
                                       int jet_order = 6,
                                       int q_terms = kDefaultQTerms);

// Max over samples and both lattice generators of
// |g(z+λ) − g(z)| / (1 + |g(z)|).
double check_double_periodicity(const VirtualRep& f, const Lattice& L,
                                int samples = 24,
                                int q_terms = kDefaultQTerms);

struct ParityReport {
  int sign = 1;           // best-fitting s in g(−z) ≈ s·g(z)
  double residual = 0.0;  // residual of that fit
  int expected = 1;       // (−1)^{Σ d_m}, m ≠ 0
};
ParityReport check_parity(const VirtualRep& f, const Lattice& L,
                          int samples = 24, int q_terms = kDefaultQTerms);

}  // namespace sigrig
