#pragma once

#include <string>
#include <vector>

#include "sigrig/common.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/poly.hpp"
#include "sigrig/rational.hpp"
#include "sigrig/theta.hpp"

namespace sigrig {

// One rotation-isotypic summand T(m) or V(m): rotation number m ≠ 0,
// complex rank d, and d Chern roots, each an integer combination of the
// component's nilpotent ring generators.
struct BundleSummand {
  long m = 0;
  long d = 1;
  std::vector<std::vector<long>> roots;
};

// Fixed-point data of one component F: the moving summands of T and V, the
// Chern/Pontryagin roots of the fixed parts T(0), V(0), and the orientation
// discrepancy bits.
struct FixedComponent {
  PolyRing ring;
  std::vector<BundleSummand> T, V;
  std::vector<std::vector<long>> T0_roots, V0_roots;
  int delta = 0, delta_prime = 0;
  std::string name;
};

// A chosen lift a of a point of exact order n, with lambda = n*a recorded in
// lattice coordinates for evaluating the character at its multiples.
struct SpecialPoint {
  cplx a{};
  int n = 1;
  long lam_j = 0, lam_k = 0;

  bool even_order() const { return n % 2 == 0; }
  cplx lambda(const Lattice& L) const { return L.vec(lam_j, lam_k); }
};

// Validates n*a ∈ Λ and that no smaller multiple of a lies in Λ.
SpecialPoint make_special_point(const Lattice& L, cplx a, int n);
SpecialPoint make_special_point_coords(const Lattice& L, double s, double t,
                                       int n);

// gamma(lambda) and c(k*lambda) for the multiples of the special lattice
// point; c on a ray is multiplicative, c(k*lambda) = c(lambda)^k.
cplx gamma_lambda(const ThetaCharacter& ch, const SpecialPoint& sp);
int c_lambda_power(const ThetaCharacter& ch, const SpecialPoint& sp, long k);

struct RotationDecomposition {
  long l = 0;
  long r = 0;
  bool flipped = false;
};

// Writes m (after an optional sign flip) as n*l + r with 0 <= r <= n/2.
RotationDecomposition decompose(long m, int n);

// The summand data after applying the decomposition's sign flips.
BundleSummand effective_summand(const BundleSummand& s, int n);

enum class CcrMode { strict, weak };

struct CcrReport {
  bool z1 = true;       // Σ mⱼ Σᵢ xⱼ,ᵢ matches between T and V
  bool z2 = true;       // Σ dⱼmⱼ² matches
  bool z3 = true;       // Σ dⱼmⱼ matches mod 2
  bool zn = true;       // Σ_{0<r<h} r(c₁Tᵣ − c₁Vᵣ) ≡ 0 mod n (odd) / mod h (even)
  bool w2_even = true;  // even n only: the quotient matches w₂(V_h − T_h) mod 2
  bool pass = false;
  std::vector<std::string> failures;
};

CcrReport ccr_validate(const FixedComponent& F, int n,
                       CcrMode mode = CcrMode::strict);

// ε, α, G, H of one component at a special point, exact.  H and the
// Σ r·c₁ class are stored as integer z-coefficient plus integer generator
// coefficients.
struct SpecialQuantities {
  int eps = 1;
  Rational alpha{0};
  Rational G{0};
  long H_z = 0;
  std::vector<long> H_gen;
  long rc1_z = 0;  // Σ_{0<r<h} r(c₁Tᵣ − c₁Vᵣ), equivariant
  std::vector<long> rc1_gen;
  long ch_z = 0;  // c₁(V_h − T_h), populated for even order only
  std::vector<long> ch_gen;
};

SpecialQuantities quantities(const FixedComponent& F, const SpecialPoint& sp,
                             const ThetaCharacter& ch);

// c₁ of the ⊗ det(Vᵣ)^{−r}det(Tᵣ)^{r} bundle equals n·H on the nose for odd
// order, and n·H + h·c₁(V_h − T_h) for even order.
bool c1_equals_nH(const SpecialQuantities& q, int n);

// ∏ θ(x′ + m′z) / ∏ θ(x + mz) over the moving summands, as given.
Poly<cplx> euler_cocycle_e0b(const FixedComponent& F, cplx z,
                             const ThetaFunction& th);

// z sits too close to a zero of some denominator factor.
bool e0b_singular(const FixedComponent& F, cplx z, const ThetaFunction& th,
                  double tol = 1e-6);

// Max coefficient residual of e(0,b)(z + lam) vs e(0,b)(z) over samples.
double ellipticity_check(const FixedComponent& F, const ThetaFunction& th,
                         cplx lam, const std::vector<cplx>& zs);

// The r ≡ 0 block of the transfer decomposition: for odd n this is e(a,b)
// itself; for even n the two differ by (−1)^{δ′−δ}, which is included here.
Poly<cplx> e_ab(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                const ThetaFunction& th);

// Same block without the even-order orientation sign of e_ab.
Poly<cplx> e_ab_chart(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                      const ThetaFunction& th);

// Cocycle consistency e(a,b)e(b,c) = e(a,c) with ordinary middle charts:
// the residue-0 block may not depend on the route, so reversing the
// orientation of every residue-0 summand must flip it by exactly (−1)^d.
double cocycle_check(const FixedComponent& F, const SpecialPoint& sp,
                     const std::vector<cplx>& zs, const ThetaFunction& th);

// τ_a* of the Euler cocycle, evaluated in sign-reduced data.
Poly<cplx> tau_a_e0b(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                     const ThetaFunction& th);

// The candidate section Θ_a restricted to F (odd and even order cases).
Poly<cplx> theta_section(const FixedComponent& F, const SpecialPoint& sp,
                         cplx z, const ThetaFunction& th);

struct TransferReport {
  double max_residual = 0.0;
  int used = 0;
  int skipped = 0;
};

// e(a,b)^{-1} · τ_a*e(0,b) against Θ_a, coefficientwise over samples.
TransferReport transfer_check(const FixedComponent& F, const SpecialPoint& sp,
                              const std::vector<cplx>& zs,
                              const ThetaFunction& th);

// Default sample set: Halton points in a disc around a non-special point.
std::vector<cplx> default_samples(const Lattice& L, int count = 20,
                                  double radius = 0.3);

struct FixedPointModel {
  std::vector<FixedComponent> components;
};

// The divisor of E(V − T), which every component must induce identically
// (otherwise the data would not glue to a bundle); throws on disagreement.
Divisor model_divisor(const FixedPointModel& model, const Lattice& L);

struct RigidityReport {
  std::vector<cplx> samples;
  std::vector<cplx> values;     // localized sums, compensated when noted
  bool divisor_trivial = true;  // E(W) is a trivial line bundle
  bool compensated = false;     // values were multiplied by the trivializer
  double spread = 0.0;          // max |value − value₀| over samples
  double max_abs = 0.0;
  int skipped = 0;
};

// Fixed-point localization of the twisted genus on a fundamental-cell grid.
// When E(W) is trivial the values are rescaled by its explicit trivializing
// section, making constancy the expected outcome; otherwise raw values are
// reported and genuine z-dependence is the expected outcome.
RigidityReport rigidity_localized(const FixedPointModel& model,
                                  const Lattice& L, const ThetaFunction& th,
                                  int grid = 5);

}  // namespace sigrig
