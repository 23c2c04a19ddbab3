#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace sigrig {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Two lifts are identified when their difference, written in lattice
// coordinates, is within this distance of an integer pair.
inline constexpr double kTolLattice = 1e-9;

// Tolerance tiers.
inline constexpr double kTolAnalytic = 1e-12;  // closed-form identities
inline constexpr double kTolEval = 1e-9;       // single evaluations
inline constexpr double kTolCompound = 1e-8;   // compound expressions

inline constexpr int kDefaultQTerms = 60;
inline constexpr int kDefaultJetCap = 8;

inline bool nearly_integer(double x, double tol = kTolLattice) {
  return std::abs(x - std::round(x)) <= tol;
}

inline bool nearly_equal(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol;
}

// Radical-inverse (van der Corput) value of `index` in the given base.
double halton(unsigned long long index, unsigned base);

// Deterministic low-discrepancy samples in an open disc.  `seed` offsets the
// Halton index so distinct sample sets can be drawn reproducibly.
std::vector<cplx> halton_disc(std::size_t count, cplx center, double radius,
                              unsigned long long seed = 0);

}  // namespace sigrig
