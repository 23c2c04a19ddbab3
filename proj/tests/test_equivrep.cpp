#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>

#include "sigrig/equivrep.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/theta.hpp"

using namespace sigrig;

namespace {
const cplx kTauSquare{0.0, 1.0};
}

TEST_CASE("parser handles the usual shapes") {
  auto f = parse_virtual_rep("z^3 - 9z");
  CHECK(f.coeff(3) == 1);
  CHECK(f.coeff(1) == -9);
  CHECK(f.coeff(2) == 0);

  auto g = parse_virtual_rep("2z^-2 + z - 3");
  CHECK(g.coeff(-2) == 2);
  CHECK(g.coeff(1) == 1);
  CHECK(g.coeff(0) == -3);

  // like terms merge, cancellations drop out
  auto h = parse_virtual_rep("z + z - 2z + z^4");
  CHECK(h.coeff(1) == 0);
  CHECK(h.coeff(4) == 1);

  CHECK_THROWS_AS(parse_virtual_rep("z^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_virtual_rep("3y + z"), std::invalid_argument);
}

TEST_CASE("to_string round-trips through the parser") {
  for (std::string text : {"z^3 - 9z", "2z^-2 + z - 3", "-z + 4", "z^2"}) {
    auto f = parse_virtual_rep(text);
    auto g = parse_virtual_rep(to_string(f));
    CHECK(f.coefficients == g.coefficients);
  }
}

TEST_CASE("virtual rep arithmetic and invariants") {
  auto f = parse_virtual_rep("z^3 - 9z");
  CHECK(f.sigma_exponent_sum() == -8);  // 1 - 9
  CHECK(f.weight_sum() == 3 - 9);
  CHECK(p1_equivariant(f) == 0);  // 9 - 9
  CHECK(w2_equivariant(f) == 0);

  auto g = parse_virtual_rep("z^2");
  CHECK(p1_equivariant(g) == 4);
  CHECK(w2_equivariant(g) == 0);
  CHECK(w2_equivariant(parse_virtual_rep("z")) == 1);

  auto sum = f + (-g);
  CHECK(sum.coeff(2) == -1);
  CHECK(sum.coeff(3) == 1);
}

TEST_CASE("degree matches minus the squared weights") {
  CHECK(degree_of(parse_virtual_rep("z^3 - 9z")) == 0);
  for (int n = 1; n <= 4; ++n) {
    auto f = parse_virtual_rep("z^" + std::to_string(n));
    CHECK(degree_of(f) == -n * n);
  }
  CHECK(degree_of(parse_virtual_rep("z^2 - 4z")) == 0);
  CHECK(degree_of(parse_virtual_rep("z^2 - 2z")) == -2);
}

TEST_CASE("divisor structure of single and mixed weights") {
  Lattice L(kTauSquare);
  // bundle divisor carries -d at each |m|-torsion point
  auto d3 = divisor_of(parse_virtual_rep("z^3"), L);
  CHECK(d3.degree() == -9);
  for (const auto& p : torsion_points(L, 3))
    CHECK(d3.multiplicity_at(p, L) == -1);

  auto d = divisor_of(parse_virtual_rep("z^3 - 9z"), L);
  CHECK(d.degree() == 0);
  CHECK(d.multiplicity_at(reduce(cplx(0, 0), L), L) == 8);
  for (const auto& p : torsion_points(L, 3)) {
    if (same_point(p, reduce(cplx(0, 0), L), L)) continue;
    CHECK(d.multiplicity_at(p, L) == -1);
  }
}

TEST_CASE("winding of the trivialization counts divisor orders") {
  Lattice L(kTauSquare);
  for (int n = 1; n <= 4; ++n) {
    auto f = parse_virtual_rep("z^" + std::to_string(n));
    auto d = divisor_of(f, L);
    auto eval = [&](cplx z) { return trivialization_eval(f, z, L); };
    for (const auto& [p, mult] : d.entries()) {
      double w = winding_number(eval, p.lift, 0.18);
      // section vanishing order is minus the bundle multiplicity
      CHECK(std::lround(w) == -mult);
    }
  }
  // mixed example with a pole of order 8 at the origin
  auto f = parse_virtual_rep("z^3 - 9z");
  auto d = divisor_of(f, L);
  auto eval = [&](cplx z) { return trivialization_eval(f, z, L); };
  for (const auto& [p, mult] : d.entries()) {
    double w = winding_number(eval, p.lift, 0.18);
    CHECK(std::lround(w) == -mult);
  }
}

TEST_CASE("leading behavior near zero") {
  Lattice L(kTauSquare);
  auto lead = trivialization_leading(parse_virtual_rep("z^3 - 9z"), L);
  CHECK(lead.order == -8);
  CHECK(std::abs(lead.coeff - cplx(3, 0)) < 1e-9);

  auto l2 = trivialization_leading(parse_virtual_rep("z^2"), L);
  CHECK(l2.order == 1);
  CHECK(std::abs(l2.coeff - cplx(2, 0)) < 1e-9);
}

TEST_CASE("double periodicity detects trivial bundles") {
  Lattice L(kTauSquare);
  CHECK(check_double_periodicity(parse_virtual_rep("z^3 - 9z"), L) < 1e-8);
  CHECK(is_trivial(parse_virtual_rep("z^3 - 9z"), L));

  for (int n = 1; n <= 4; ++n) {
    auto f = parse_virtual_rep("z^" + std::to_string(n));
    CHECK(check_double_periodicity(f, L) > 1e-2);
    CHECK_FALSE(is_trivial(f, L));
  }

  // degree zero alone is not enough; the group sum matters
  CHECK(is_trivial(parse_virtual_rep("z^2 - 4z"), L));
  CHECK_FALSE(is_trivial(parse_virtual_rep("z^2 - 2z"), L));
}

TEST_CASE("parity of the trivializing section") {
  Lattice L(kTauSquare);
  auto even = check_parity(parse_virtual_rep("z^3 - 9z"), L);
  CHECK(even.expected == 1);
  CHECK(even.sign == 1);
  CHECK(even.residual < 1e-8);

  auto odd = check_parity(parse_virtual_rep("z"), L);
  CHECK(odd.expected == -1);
  CHECK(odd.sign == -1);
  CHECK(odd.residual < 1e-8);
}

TEST_CASE("near_divisor_point flags only divisor support") {
  Lattice L(kTauSquare);
  auto f = parse_virtual_rep("z^3 - 9z");
  CHECK(near_divisor_point(f, cplx(0, 0), L, 1e-3));
  CHECK(near_divisor_point(f, L.g1() / 3.0 + cplx(1e-9, 0), L, 1e-3));
  CHECK_FALSE(near_divisor_point(f, 0.21 * L.g1() + 0.37 * L.g2(), L, 1e-3));
}

TEST_CASE("trivialization is multiplicative in the rep") {
  Lattice L(kTauSquare);
  auto f = parse_virtual_rep("z^2");
  auto g = parse_virtual_rep("z^3 - 9z");
  auto sum = f + g;
  for (cplx z : halton_disc(10, 0.2 * L.g1() + 0.3 * L.g2(), 0.2, 8)) {
    cplx lhs = trivialization_eval(sum, z, L);
    cplx rhs = trivialization_eval(f, z, L) * trivialization_eval(g, z, L);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(rhs)));
  }
}
