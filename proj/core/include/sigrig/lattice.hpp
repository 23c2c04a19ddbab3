#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sigrig/common.hpp"

namespace sigrig {

// Period normalization.  Both scales use 2*pi*i as the first generator; the
// second is 2*pi*i*tau or 4*pi*i*tau.
enum class LatticeScale { witten, ochanine };

class Lattice {
 public:
  Lattice(cplx tau, LatticeScale scale = LatticeScale::witten);

  cplx tau() const { return tau_; }
  LatticeScale scale() const { return scale_; }
  // Effective modulus: tau for witten scale, 2*tau for ochanine.
  cplx tau_eff() const { return tau_eff_; }
  cplx g1() const { return g1_; }
  cplx g2() const { return g2_; }
  // exp(2*pi*i*tau_eff)
  cplx nome() const { return nome_; }

  cplx vec(long j, long k) const {
    return static_cast<double>(j) * g1_ + static_cast<double>(k) * g2_;
  }

  // Coordinates (s, t) with z = s*g1 + t*g2.
  std::pair<double, double> coords(cplx z) const;

  // Lagrange-reduced basis; first entry is a shortest nonzero vector.
  std::pair<cplx, cplx> reduced_basis() const { return {b1_, b2_}; }
  double min_length() const { return std::abs(b1_); }

  // Distance between images on the quotient torus.
  double quotient_distance(cplx a, cplx b) const;

 private:
  cplx tau_;
  LatticeScale scale_;
  cplx tau_eff_, g1_, g2_, nome_, b1_, b2_;
};

// A point of the quotient curve, stored with its canonical lift
// s*g1 + t*g2, 0 <= s, t < 1.
struct CurvePoint {
  cplx lift{};
  double s = 0.0;
  double t = 0.0;
};

CurvePoint reduce(cplx z, const Lattice& L);
bool same_point(const CurvePoint& a, const CurvePoint& b, const Lattice& L);

// The n^2 points killed by multiplication by n, ordered by (j, k).
std::vector<CurvePoint> torsion_points(const Lattice& L, int n);

// Exact order of a point expected to be n-torsion; throws if it is not
// n-torsion within the lattice tolerance.
int torsion_order(const CurvePoint& p, int n, const Lattice& L);

class Divisor {
 public:
  void add(const CurvePoint& p, long mult, const Lattice& L);
  long degree() const;
  cplx lift_sum() const;
  long multiplicity_at(const CurvePoint& p, const Lattice& L) const;
  const std::vector<std::pair<CurvePoint, long>>& entries() const {
    return entries_;
  }
  Divisor& operator+=(const Divisor& o);  // requires same lattice context
  void add_all(const Divisor& o, const Lattice& L);

 private:
  std::vector<std::pair<CurvePoint, long>> entries_;
};

struct DivisorInvariants {
  long degree = 0;
  CurvePoint group_sum;  // reduce of the multiplicity-weighted lift sum
};

DivisorInvariants divisor_invariants(const Divisor& d, const Lattice& L);
// Degree zero and group sum zero: the two Abel conditions together.
bool line_bundle_trivial(const Divisor& d, const Lattice& L);

struct OpenDisc {
  CurvePoint center;
  double radius = 0.0;
};

// A disc is small when it embeds in the quotient: radius < half the length
// of the shortest nonzero lattice vector.
bool disc_small(const OpenDisc& d, const Lattice& L);

// Finite presentation of an indexed cover of the curve: one stored disc per
// special point, plus a single radius for the generic member.  The generic
// member at an ordinary point b is the disc of that radius around b with
// the special points removed, which keeps special points out of every
// member except their own.
struct AdaptedCover {
  std::vector<CurvePoint> special;
  std::vector<OpenDisc> special_discs;  // parallel to `special`
  double ordinary_radius = 0.0;
};

// Torsion points that see nontrivial isotropy at level N: every a with
// m*N*a = 0 for some listed rotation number m, and every a for which N*a
// has exact order in `isotropy_orders`.
std::vector<CurvePoint> special_points(const std::vector<int>& rotation_numbers,
                                       const std::vector<int>& isotropy_orders,
                                       int level, const Lattice& L);

AdaptedCover build_adapted_cover(const std::vector<CurvePoint>& special,
                                 const Lattice& L);

struct CoverReport {
  bool centers_in_members = false;
  bool special_isolated = false;
  bool special_discs_disjoint = false;
  bool ordinary_meets_at_most_one = false;
  bool all_small = false;
  std::string note;
  bool pass() const {
    return centers_in_members && special_isolated && special_discs_disjoint &&
           ordinary_meets_at_most_one && all_small;
  }
};

CoverReport verify_adapted(const AdaptedCover& cover, const Lattice& L);

}  // namespace sigrig
