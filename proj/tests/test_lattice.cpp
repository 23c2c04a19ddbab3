#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "sigrig/common.hpp"
#include "sigrig/lattice.hpp"

using namespace sigrig;

namespace {
const cplx kTauSquare{0.0, 1.0};
const cplx kTauSkew{0.3, 0.9};
}  // namespace

TEST_CASE("generators at the two scales") {
  Lattice w(kTauSquare);
  CHECK(std::abs(w.g1() - cplx(0, 2 * M_PI)) < 1e-14);
  CHECK(std::abs(w.g2() - cplx(0, 2 * M_PI) * kTauSquare) < 1e-14);

  Lattice o(kTauSquare, LatticeScale::ochanine);
  CHECK(std::abs(o.g1() - w.g1()) < 1e-14);
  CHECK(std::abs(o.g2() - 2.0 * w.g2()) < 1e-14);
  CHECK(std::abs(o.tau_eff() - 2.0 * kTauSquare) < 1e-14);
}

TEST_CASE("rejects tau outside the upper half plane") {
  CHECK_THROWS_AS(Lattice(cplx(0.5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Lattice(cplx(0.5, -1.0)), std::invalid_argument);
}

TEST_CASE("coords and vec invert each other") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau);
    for (auto [j, k] : std::vector<std::pair<long, long>>{
             {0, 0}, {1, 0}, {0, 1}, {3, -2}, {-5, 4}}) {
      auto [s, t] = L.coords(L.vec(j, k));
      CHECK(std::abs(s - j) < 1e-9);
      CHECK(std::abs(t - k) < 1e-9);
    }
  }
}

TEST_CASE("reduce lands in the fundamental cell and respects the quotient") {
  Lattice L(kTauSkew);
  auto zs = halton_disc(40, cplx(0.1, 0.2), 8.0, 5);
  for (cplx z : zs) {
    CurvePoint p = reduce(z, L);
    CHECK(p.s >= -1e-12);
    CHECK(p.s < 1.0 + 1e-12);
    CHECK(p.t >= -1e-12);
    CHECK(p.t < 1.0 + 1e-12);
    // shifting by lattice vectors does not move the point
    CHECK(same_point(p, reduce(z + L.vec(2, -3), L), L));
    CHECK(same_point(p, reduce(z - L.vec(1, 7), L), L));
  }
  CHECK_FALSE(same_point(reduce(0.3 * L.g1(), L), reduce(0.4 * L.g1(), L), L));
}

TEST_CASE("torsion points have the advertised orders") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau);
    for (int n = 1; n <= 6; ++n) {
      auto pts = torsion_points(L, n);
      CHECK(pts.size() == static_cast<std::size_t>(n) * n);
      std::set<std::pair<long, long>> seen;
      for (const auto& p : pts) {
        // n*p is a lattice vector
        auto [s, t] = L.coords(p.lift * static_cast<double>(n));
        CHECK(nearly_integer(s, 1e-8));
        CHECK(nearly_integer(t, 1e-8));
        seen.insert({std::lround(p.s * n), std::lround(p.t * n)});
        int ord = torsion_order(p, n, L);
        CHECK(n % ord == 0);
      }
      CHECK(seen.size() == pts.size());
    }
  }
}

TEST_CASE("torsion_order identifies exact order") {
  Lattice L(kTauSquare);
  CurvePoint half = reduce(0.5 * L.g1(), L);
  CHECK(torsion_order(half, 2, L) == 2);
  CHECK(torsion_order(half, 4, L) == 2);
  CurvePoint third = reduce(L.g2() / 3.0, L);
  CHECK(torsion_order(third, 3, L) == 3);
  CHECK_THROWS_AS(torsion_order(reduce(cplx(0.123, 0.456), L), 5, L),
                  std::invalid_argument);
}

TEST_CASE("divisor bookkeeping") {
  Lattice L(kTauSquare);
  Divisor d;
  CurvePoint a = reduce(0.25 * L.g1(), L);
  CurvePoint b = reduce(0.5 * L.g2(), L);
  d.add(a, 3, L);
  d.add(b, -1, L);
  d.add(a, 2, L);
  CHECK(d.degree() == 4);
  CHECK(d.multiplicity_at(a, L) == 5);
  CHECK(d.multiplicity_at(b, L) == -1);
  CHECK(d.multiplicity_at(reduce(cplx(1.0, 1.0), L), L) == 0);
  CHECK(d.entries().size() == 2);

  // cancelling an entry removes it
  Divisor e;
  e.add(a, -5, L);
  d.add_all(e, L);
  CHECK(d.multiplicity_at(a, L) == 0);
  CHECK(d.entries().size() == 1);
}

TEST_CASE("divisor invariants detect principal divisors") {
  Lattice L(kTauSkew);
  Divisor good;  // degree 0 with lattice group sum: trivial bundle
  CurvePoint p = reduce(0.2 * L.g1() + 0.3 * L.g2(), L);
  CurvePoint q = reduce(-0.2 * L.g1() - 0.3 * L.g2(), L);
  good.add(p, 1, L);
  good.add(q, 1, L);
  good.add(reduce(cplx(0, 0), L), -2, L);
  auto inv = divisor_invariants(good, L);
  CHECK(inv.degree == 0);
  CHECK(line_bundle_trivial(good, L));

  // degree 0 but group sum not a lattice point
  Divisor bad;
  bad.add(p, 1, L);
  bad.add(reduce(cplx(0, 0), L), -1, L);
  CHECK(bad.degree() == 0);
  CHECK_FALSE(line_bundle_trivial(bad, L));

  // nonzero degree
  Divisor deg;
  deg.add(p, 2, L);
  CHECK_FALSE(line_bundle_trivial(deg, L));
}

TEST_CASE("full torsion divisor of a multiplication map is principal") {
  Lattice L(kTauSquare);
  // divisor of s(3z)/s(z)^9: +1 at each 3-torsion point, -9 at zero
  Divisor d;
  for (const auto& p : torsion_points(L, 3)) d.add(p, 1, L);
  d.add(reduce(cplx(0, 0), L), -9, L);
  CHECK(d.degree() == 0);
  CHECK(line_bundle_trivial(d, L));
}

TEST_CASE("disc_small compares against the injectivity radius") {
  Lattice L(kTauSquare);
  OpenDisc tiny{reduce(cplx(0.3, 0.4), L), 0.1};
  CHECK(disc_small(tiny, L));
  OpenDisc huge{reduce(cplx(0.3, 0.4), L), 0.9 * L.min_length()};
  CHECK_FALSE(disc_small(huge, L));
}

TEST_CASE("quotient distance sees the nearest translate") {
  Lattice L(kTauSquare);
  cplx a = 0.05 * L.g1();
  cplx b = 0.95 * L.g1();
  CHECK(L.quotient_distance(a, b) < 0.11 * std::abs(L.g1()));
  CHECK(L.quotient_distance(a, a + L.vec(4, -2)) < 1e-10);
}

TEST_CASE("adapted covers for torsion data verify cleanly") {
  for (cplx tau : {kTauSquare, kTauSkew, cplx(-0.4, 1.3)}) {
    Lattice L(tau);
    for (int n = 2; n <= 6; ++n) {
      auto special = torsion_points(L, n);
      auto cover = build_adapted_cover(special, L);
      auto report = verify_adapted(cover, L);
      INFO("n=", n, " tau=", tau.real(), "+", tau.imag(), "i  ", report.note);
      CHECK(report.pass());
      CHECK(cover.special_discs.size() == special.size());
    }
  }
}

TEST_CASE("special_points places rotation data at torsion points") {
  Lattice L(kTauSquare);
  // rotation number 2 at level 1: all of C[2]
  auto rot = special_points({2}, {}, 1, L);
  CHECK(rot.size() == 4);
  for (const auto& p : rot) {
    auto [s, t] = L.coords(p.lift * 2.0);
    CHECK(nearly_integer(s, 1e-8));
    CHECK(nearly_integer(t, 1e-8));
  }
  // isotropy order 2 at level 1: only the points of exact order 2
  auto iso = special_points({}, {2}, 1, L);
  CHECK(iso.size() == 3);
  for (const auto& p : iso) CHECK(torsion_order(p, 2, L) == 2);
}

TEST_CASE("a cover with oversized discs fails verification") {
  Lattice L(kTauSquare);
  auto special = torsion_points(L, 2);
  auto cover = build_adapted_cover(special, L);
  cover.special_discs[0].radius = 0.9 * L.min_length();
  auto report = verify_adapted(cover, L);
  CHECK_FALSE(report.pass());
}

TEST_CASE("halton sequence is low discrepancy enough to be distinct") {
  std::set<double> seen;
  for (int i = 1; i <= 200; ++i) {
    double v = halton(static_cast<unsigned long long>(i), 2);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    seen.insert(v);
  }
  CHECK(seen.size() == 200);
  auto pts = halton_disc(50, cplx(1, 1), 0.5, 3);
  for (cplx z : pts) CHECK(std::abs(z - cplx(1, 1)) <= 0.5 + 1e-12);
}
