#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "sigrig/common.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/theta.hpp"

using namespace sigrig;

namespace {

const cplx kTauSquare{0.0, 1.0};
const cplx kTauSkew{0.3, 0.9};

// Independent reference built from the classical sum formula rather than the
// product: theta1(v|tau) as an exponential sum, rescaled so the derivative at
// zero is one.  Terms are accumulated smallest-first.
cplx sum_form_reference(cplx z, cplx tau) {
  const cplx ipi(0, M_PI);
  cplx v = z / (2.0 * ipi);
  const int N = 14;
  std::vector<cplx> terms;
  for (int n = -N; n <= N; ++n) {
    double half = n + 0.5;
    cplx e = std::exp(ipi * tau * (half * half)) *
             std::exp((2.0 * n + 1.0) * ipi * v);
    terms.push_back(((n % 2 + 2) % 2 ? -1.0 : 1.0) * e);
  }
  cplx num = 0;
  for (std::size_t i = terms.size(); i-- > 0;) num += terms[i];
  num *= cplx(0, -1);

  cplx den = 0;
  for (int n = N; n >= 0; --n) {
    double half = n + 0.5;
    double sign = n % 2 ? -1.0 : 1.0;
    den += sign * (2.0 * n + 1.0) * std::exp(ipi * tau * (half * half));
  }
  den *= 2.0 * M_PI;  // the n < 0 half of the derivative sum mirrors n >= 0
  return 2.0 * ipi * num / den;
}

std::vector<cplx> samples(const Lattice& L, std::size_t count, unsigned seed) {
  return halton_disc(count, 0.23 * L.g1() + 0.31 * L.g2(), 0.3, seed);
}

}  // namespace

TEST_CASE("sigma matches the sum-form reference") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau);
    for (cplx z : samples(L, 20, 1)) {
      cplx got = sigma_eval(z, L);
      cplx want = sum_form_reference(z, tau);
      CHECK(std::abs(got - want) < 1e-11 * (1 + std::abs(want)));
    }
  }
}

TEST_CASE("sigma on the doubled lattice is sigma at doubled tau") {
  Lattice o(kTauSkew, LatticeScale::ochanine);
  Lattice w(2.0 * kTauSkew);
  for (cplx z : samples(w, 10, 2)) {
    CHECK(std::abs(sigma_eval(z, o) - sigma_eval(z, w)) < 1e-12);
  }
}

TEST_CASE("sigma is odd and vanishes only on the lattice") {
  Lattice L(kTauSquare);
  for (cplx z : samples(L, 25, 3)) {
    CHECK(std::abs(sigma_eval(z, L) + sigma_eval(-z, L)) < 1e-12);
    CHECK(std::abs(sigma_eval(z, L)) > 1e-6);
  }
  CHECK(std::abs(sigma_eval(cplx(0, 0), L)) < 1e-14);
  CHECK(std::abs(sigma_eval(L.vec(2, -1), L)) < 1e-9);
}

TEST_CASE("sigma jet starts z + O(z^2) and matches finite differences") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau);
    auto j0 = sigma_jet(cplx(0, 0), L, 5);
    CHECK(std::abs(j0.coeff(0)) < 1e-13);
    CHECK(std::abs(j0.coeff(1) - 1.0) < 1e-12);
    CHECK(std::abs(j0.coeff(2)) < 1e-12);  // odd function

    cplx w(0.31, 0.17);
    auto j = sigma_jet(w, L, 4);
    double h = 1e-4;
    cplx fp = sigma_eval(w + h, L), fm = sigma_eval(w - h, L);
    cplx d1 = (fp - fm) / (2 * h);
    cplx d2 = (fp - 2.0 * sigma_eval(w, L) + fm) / (h * h);
    CHECK(std::abs(j.coeff(1) - d1) < 1e-7);
    CHECK(std::abs(2.0 * j.coeff(2) - d2) < 1e-5);
    // the jet reproduces nearby values
    CHECK(std::abs(j.eval(cplx(h, h)) - sigma_eval(w + cplx(h, h), L)) < 1e-12);
  }
}

TEST_CASE("sigma translation law on generators and iterates") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau);
    auto th = sigma_theta(L);
    for (auto [j, k] : std::vector<std::pair<long, long>>{
             {1, 0}, {0, 1}, {1, 1}, {2, 0}, {-1, 2}, {3, -2}}) {
      auto rep = verify_translation(th, j, k, samples(L, 15, 4));
      INFO("lambda = ", j, ",", k);
      CHECK(rep.max_residual < 1e-9);
      CHECK(rep.used > 0);
    }
  }
}

TEST_CASE("sigma character data") {
  auto ch = sigma_character();
  CHECK(std::abs(ch.gamma(1, 0)) < 1e-15);
  CHECK(std::abs(ch.gamma(0, 1) - cplx(-1, 0)) < 1e-15);
  // c is +1 exactly when both indices are even
  CHECK(ch.c_of(0, 0) == 1);
  CHECK(ch.c_of(2, 4) == 1);
  CHECK(ch.c_of(1, 0) == -1);
  CHECK(ch.c_of(0, 3) == -1);
  CHECK(ch.c_of(1, 1) == -1);
  // multiplicative along rays
  for (long k = -5; k <= 5; ++k) {
    int base = ch.c_of(1, 1);
    int expect = (k % 2 + 2) % 2 ? base : 1;
    CHECK(ch.c_of(k, k) == expect);
  }
}

TEST_CASE("character consistency equations hold for both kinds") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    auto cs = verify_character(sigma_character(), Lattice(tau));
    CHECK(cs.pass);
    CHECK(cs.max_period_deviation < 1e-10);
    CHECK(cs.max_quotient_error < 1e-10);

    auto co = verify_character(ochanine_character(),
                               Lattice(tau, LatticeScale::ochanine));
    CHECK(co.pass);
  }
}

TEST_CASE("ochanine product and quotient forms agree") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau, LatticeScale::ochanine);
    for (cplx z : samples(L, 30, 5)) {
      cplx prod = ochanine_eval(z, tau);
      cplx quot = ochanine_eval_quotient(z, tau);
      CHECK(std::abs(prod - quot) < 1e-7 * (1 + std::abs(prod)));
    }
  }
}

TEST_CASE("ochanine is anti-periodic in the half period") {
  for (cplx tau : {kTauSquare, kTauSkew}) {
    Lattice L(tau, LatticeScale::ochanine);
    cplx half = L.g2() / 2.0;  // the order-2 point defining the square root
    for (cplx z : samples(L, 12, 6)) {
      CHECK(std::abs(ochanine_eval(z + half, tau) + ochanine_eval(z, tau)) <
            1e-8 * (1 + std::abs(ochanine_eval(z, tau))));
    }
  }
}

TEST_CASE("ochanine translation character has no exponential part") {
  auto ch = ochanine_character();
  CHECK(std::abs(ch.gamma1) < 1e-15);
  CHECK(std::abs(ch.gamma2) < 1e-15);
  CHECK(ch.c_of(1, 0) == 1);
  CHECK(ch.c_of(0, 1) == -1);
  CHECK(ch.c_of(0, 2) == 1);
  CHECK(ch.c_of(3, 5) == -1);
}

TEST_CASE("ochanine degenerates to 2tanh(z/2) as q vanishes") {
  cplx tau(0, 6);  // q astronomically small
  for (cplx z : {cplx(0.4, 0.1), cplx(-0.7, 0.3), cplx(1.1, -0.2)}) {
    cplx want = 2.0 * std::tanh(z / 2.0);
    CHECK(std::abs(ochanine_eval(z, tau) - want) < 1e-12);
  }
}

TEST_CASE("theta wrapper exposes consistent eval and jet") {
  Lattice L(kTauSkew);
  auto th = sigma_theta(L);
  cplx z(0.3, 0.25);
  CHECK(std::abs(th.eval(z) - sigma_eval(z, L)) < 1e-15);
  CHECK(std::abs(th.jet(z, 3).coeff(0) - sigma_eval(z, L)) < 1e-13);

  // iterated factor composes the one-step factors
  cplx f11 = th.iterated_translation_factor(1, 1, 1, z);
  cplx direct = th.eval(z + L.vec(1, 1)) / th.eval(z);
  CHECK(std::abs(f11 - direct) < 1e-10 * (1 + std::abs(direct)));

  cplx f2 = th.iterated_translation_factor(0, 1, 2, z);
  cplx direct2 = th.eval(z + 2.0 * L.g2()) / th.eval(z);
  CHECK(std::abs(f2 - direct2) < 1e-9 * (1 + std::abs(direct2)));
}

TEST_CASE("winding counts zeros inside the contour") {
  Lattice L(kTauSquare);
  auto f = [&](cplx z) { return sigma_eval(z, L); };
  // simple zero at the origin
  CHECK(std::lround(winding_number(f, cplx(0, 0), 0.4)) == 1);
  // no zero away from the lattice
  CHECK(std::lround(winding_number(f, 0.5 * L.g1() + 0.5 * L.g2(), 0.4)) == 0);
  // cube of sigma has a triple zero
  auto f3 = [&](cplx z) { cplx v = sigma_eval(z, L); return v * v * v; };
  CHECK(std::lround(winding_number(f3, cplx(0, 0), 0.4)) == 3);
}
