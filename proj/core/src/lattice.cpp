#include "sigrig/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sigrig {

namespace {

double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Lagrange reduction of a rank-2 basis: afterwards |b1| <= |b2| and the
// projection coefficient of b2 on b1 is at most 1/2.
void lagrange_reduce(cplx& b1, cplx& b2) {
  if (std::abs(b1) > std::abs(b2)) std::swap(b1, b2);
  for (int iter = 0; iter < 64; ++iter) {
    double mu = std::round(dot(b2, b1) / dot(b1, b1));
    if (mu != 0.0) b2 -= mu * b1;
    if (std::abs(b2) >= std::abs(b1)) break;
    std::swap(b1, b2);
  }
}

}  // namespace

Lattice::Lattice(cplx tau, LatticeScale scale) : tau_(tau), scale_(scale) {
  if (!(tau.imag() > 0.0))
    throw std::invalid_argument("lattice: Im tau must be positive");
  tau_eff_ = scale == LatticeScale::witten ? tau : 2.0 * tau;
  g1_ = cplx(0.0, 2.0 * kPi);
  g2_ = g1_ * tau_eff_;
  nome_ = std::exp(g2_);
  b1_ = g1_;
  b2_ = g2_;
  lagrange_reduce(b1_, b2_);
}

std::pair<double, double> Lattice::coords(cplx z) const {
  // Solve [Re g1  Re g2; Im g1  Im g2] (s, t) = (Re z, Im z).
  double det = g1_.real() * g2_.imag() - g2_.real() * g1_.imag();
  double s = (z.real() * g2_.imag() - g2_.real() * z.imag()) / det;
  double t = (g1_.real() * z.imag() - z.real() * g1_.imag()) / det;
  return {s, t};
}

double Lattice::quotient_distance(cplx a, cplx b) const {
  cplx w = a - b;
  // Babai rounding in the reduced basis, then a local search.
  double det = b1_.real() * b2_.imag() - b2_.real() * b1_.imag();
  double x = (w.real() * b2_.imag() - b2_.real() * w.imag()) / det;
  double y = (b1_.real() * w.imag() - w.real() * b1_.imag()) / det;
  double x0 = std::round(x), y0 = std::round(y);
  double best = std::abs(w);
  for (int dj = -2; dj <= 2; ++dj)
    for (int dk = -2; dk <= 2; ++dk) {
      cplx lam = (x0 + dj) * b1_ + (y0 + dk) * b2_;
      best = std::min(best, std::abs(w - lam));
    }
  return best;
}

CurvePoint reduce(cplx z, const Lattice& L) {
  auto [s, t] = L.coords(z);
  double fs = s - std::floor(s);
  double ft = t - std::floor(t);
  if (fs >= 1.0 - kTolLattice) fs = 0.0;
  if (ft >= 1.0 - kTolLattice) ft = 0.0;
  if (std::abs(fs) <= kTolLattice) fs = 0.0;
  if (std::abs(ft) <= kTolLattice) ft = 0.0;
  CurvePoint p;
  p.s = fs;
  p.t = ft;
  p.lift = fs * L.g1() + ft * L.g2();
  return p;
}

bool same_point(const CurvePoint& a, const CurvePoint& b, const Lattice&) {
  double ds = a.s - b.s;
  double dt = a.t - b.t;
  return nearly_integer(ds) && nearly_integer(dt);
}

std::vector<CurvePoint> torsion_points(const Lattice& L, int n) {
  if (n < 1) throw std::invalid_argument("torsion_points: n must be >= 1");
  std::vector<CurvePoint> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      pts.push_back(reduce(L.vec(j, k) / static_cast<double>(n), L));
  return pts;
}

int torsion_order(const CurvePoint& p, int n, const Lattice& L) {
  double js = p.s * n, kt = p.t * n;
  if (!nearly_integer(js, kTolLattice * n) ||
      !nearly_integer(kt, kTolLattice * n))
    throw std::invalid_argument("torsion_order: point is not n-torsion");
  long j = std::lround(js) % n, k = std::lround(kt) % n;
  if (j < 0) j += n;
  if (k < 0) k += n;
  long g = std::gcd(std::gcd(j, k), static_cast<long>(n));
  (void)L;
  return n / static_cast<int>(g);
}

void Divisor::add(const CurvePoint& p, long mult, const Lattice& L) {
  if (mult == 0) return;
  for (auto& e : entries_) {
    if (same_point(e.first, p, L)) {
      e.second += mult;
      if (e.second == 0) {
        e.first = entries_.back().first;
        e.second = entries_.back().second;
        entries_.pop_back();
      }
      return;
    }
  }
  entries_.push_back({p, mult});
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

cplx Divisor::lift_sum() const {
  cplx acc = 0.0;
  for (const auto& e : entries_)
    acc += static_cast<double>(e.second) * e.first.lift;
  return acc;
}

long Divisor::multiplicity_at(const CurvePoint& p, const Lattice& L) const {
  for (const auto& e : entries_)
    if (same_point(e.first, p, L)) return e.second;
  return 0;
}

void Divisor::add_all(const Divisor& o, const Lattice& L) {
  for (const auto& e : o.entries_) add(e.first, e.second, L);
}

DivisorInvariants divisor_invariants(const Divisor& d, const Lattice& L) {
  DivisorInvariants inv;
  inv.degree = d.degree();
  inv.group_sum = reduce(d.lift_sum(), L);
  return inv;
}

bool line_bundle_trivial(const Divisor& d, const Lattice& L) {
  DivisorInvariants inv = divisor_invariants(d, L);
  CurvePoint zero = reduce(0.0, L);
  return inv.degree == 0 && same_point(inv.group_sum, zero, L);
}

bool disc_small(const OpenDisc& d, const Lattice& L) {
  return d.radius > 0.0 && d.radius < 0.5 * L.min_length();
}

std::vector<CurvePoint> special_points(const std::vector<int>& rotation_numbers,
                                       const std::vector<int>& isotropy_orders,
                                       int level, const Lattice& L) {
  if (level < 1) throw std::invalid_argument("special_points: level must be >= 1");
  std::vector<CurvePoint> out;
  auto push_unique = [&](const CurvePoint& p) {
    for (const auto& q : out)
      if (same_point(q, p, L)) return;
    out.push_back(p);
  };
  for (int m : rotation_numbers) {
    if (m == 0) continue;
    for (const auto& p : torsion_points(L, std::abs(m) * level)) push_unique(p);
  }
  for (int ord : isotropy_orders) {
    if (ord < 1) throw std::invalid_argument("special_points: bad isotropy order");
    for (const auto& p : torsion_points(L, ord * level)) {
      // keep a iff level*a has exact order `ord`
      CurvePoint q = reduce(static_cast<double>(level) * p.lift, L);
      if (torsion_order(q, ord, L) == ord) push_unique(p);
    }
  }
  return out;
}

AdaptedCover build_adapted_cover(const std::vector<CurvePoint>& special,
                                 const Lattice& L) {
  AdaptedCover cover;
  for (const auto& p : special) {
    for (const auto& q : cover.special)
      if (same_point(q, p, L))
        throw std::invalid_argument(
            "build_adapted_cover: special points coincide on the quotient");
    cover.special.push_back(p);
  }
  double lmin = L.min_length();
  if (cover.special.empty()) {
    cover.ordinary_radius = 0.25 * lmin;
    return cover;
  }
  double dmin = lmin;  // single special point: only the lattice scale matters
  for (std::size_t i = 0; i < cover.special.size(); ++i)
    for (std::size_t j = i + 1; j < cover.special.size(); ++j)
      dmin = std::min(dmin, L.quotient_distance(cover.special[i].lift,
                                                cover.special[j].lift));
  double rho = 0.25 * dmin;
  cover.ordinary_radius = 0.125 * dmin;
  for (const auto& p : cover.special) cover.special_discs.push_back({p, rho});
  return cover;
}

CoverReport verify_adapted(const AdaptedCover& cover, const Lattice& L) {
  CoverReport rep;
  if (cover.special.size() != cover.special_discs.size()) {
    rep.note = "special point and disc lists differ in length";
    return rep;
  }
  rep.centers_in_members = cover.ordinary_radius > 0.0;
  for (const auto& d : cover.special_discs)
    rep.centers_in_members = rep.centers_in_members && d.radius > 0.0;

  rep.special_isolated = true;
  for (std::size_t i = 0; i < cover.special.size(); ++i)
    for (std::size_t j = 0; j < cover.special.size(); ++j) {
      if (i == j) continue;
      double dist = L.quotient_distance(cover.special[i].lift,
                                        cover.special_discs[j].center.lift);
      if (dist < cover.special_discs[j].radius) rep.special_isolated = false;
    }

  rep.special_discs_disjoint = true;
  rep.ordinary_meets_at_most_one = true;
  for (std::size_t i = 0; i < cover.special_discs.size(); ++i)
    for (std::size_t j = i + 1; j < cover.special_discs.size(); ++j) {
      double dist = L.quotient_distance(cover.special_discs[i].center.lift,
                                        cover.special_discs[j].center.lift);
      double gap = dist - cover.special_discs[i].radius -
                   cover.special_discs[j].radius;
      if (gap < 0.0) rep.special_discs_disjoint = false;
      // An ordinary disc bridging two special discs needs diameter > gap.
      if (gap < 2.0 * cover.ordinary_radius) rep.ordinary_meets_at_most_one = false;
    }

  rep.all_small = cover.ordinary_radius < 0.5 * L.min_length();
  for (const auto& d : cover.special_discs)
    rep.all_small = rep.all_small && disc_small(d, L);
  return rep;
}

}  // namespace sigrig
