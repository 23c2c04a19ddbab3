#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "sigrig/poly.hpp"
#include "sigrig/rational.hpp"
#include "sigrig/series.hpp"

using namespace sigrig;

namespace {

// Small deterministic generator so coefficient choices are reproducible.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

QSeries<Rational> random_series(Lcg& g, int cap, bool unit) {
  std::vector<Rational> c(static_cast<std::size_t>(cap) + 1);
  for (auto& v : c) v = rational(g.next(-4, 4), g.next(1, 3));
  if (unit && c[0] == 0) c[0] = rational(1);
  return QSeries<Rational>(std::move(c), cap);
}

bool poly_equal(const Poly<Rational>& a, const Poly<Rational>& b) {
  for (std::size_t i = 0; i < a.ring().size(); ++i)
    if (a.coeff(static_cast<int>(i)) != b.coeff(static_cast<int>(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("constants and the variable behave") {
  auto one = QSeries<Rational>::one();
  auto x = QSeries<Rational>::variable(5);
  CHECK(one.coeff(0) == Rational(1));
  CHECK(one.exact());
  CHECK(x.coeff(1) == Rational(1));
  CHECK(x.cap() == 5);
  CHECK((x * x).coeff(2) == Rational(1));
  CHECK(QSeries<Rational>().is_exact_zero());
}

TEST_CASE("multiplication truncates to the coarser cap") {
  auto a = QSeries<Rational>::variable(8);
  auto b = QSeries<Rational>::variable(3);
  auto p = a * b;
  CHECK(p.cap() == 3);
  // x^2 retained, everything above the cap discarded
  CHECK(p.coeff(2) == Rational(1));
  auto q = (a * a * a * a).truncated(3);
  CHECK(q.coeff(4) == Rational(0));
}

TEST_CASE("product against a hand convolution") {
  Lcg g(11);
  for (int trial = 0; trial < 20; ++trial) {
    int cap = 6;
    auto a = random_series(g, cap, false);
    auto b = random_series(g, cap, false);
    auto p = a * b;
    for (int k = 0; k <= cap; ++k) {
      Rational want = 0;
      for (int i = 0; i <= k; ++i) want += a.coeff(i) * b.coeff(k - i);
      CHECK(p.coeff(k) == want);
    }
  }
}

TEST_CASE("ring identities on random series") {
  Lcg g(7);
  for (int trial = 0; trial < 12; ++trial) {
    auto a = random_series(g, 7, false);
    auto b = random_series(g, 7, false);
    auto c = random_series(g, 7, false);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a - a == QSeries<Rational>().truncated(7));
  }
}

TEST_CASE("recip is a genuine inverse up to the cap") {
  Lcg g(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_series(g, 9, true);
    auto p = u * u.recip();
    for (int k = 0; k <= 9; ++k)
      CHECK(p.coeff(k) == (k == 0 ? Rational(1) : Rational(0)));
  }
  CHECK_THROWS_AS(QSeries<Rational>::variable(4).recip(), std::domain_error);
}

TEST_CASE("log and exp invert each other") {
  Lcg g(19);
  for (int trial = 0; trial < 8; ++trial) {
    auto u = random_series(g, 8, true);
    // force constant term 1 so log_unit applies
    std::vector<Rational> c;
    for (int k = 0; k <= 8; ++k) c.push_back(k == 0 ? Rational(1) : u.coeff(k));
    auto v = QSeries<Rational>(c, 8);
    CHECK(v.log_unit().exp_nilpotent() == v);
  }
}

TEST_CASE("exp turns sums into products") {
  Lcg g(23);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = random_series(g, 7, false);
    auto b = random_series(g, 7, false);
    // drop constant terms to stay nilpotent
    auto strip = [](const QSeries<Rational>& s) {
      std::vector<Rational> c{Rational(0)};
      for (int k = 1; k <= s.cap(); ++k) c.push_back(s.coeff(k));
      return QSeries<Rational>(c, s.cap());
    };
    auto na = strip(a), nb = strip(b);
    CHECK((na + nb).exp_nilpotent() == na.exp_nilpotent() * nb.exp_nilpotent());
  }
}

TEST_CASE("derivative and shifts") {
  auto x = QSeries<Rational>::variable(6);
  auto s = (x * x * x).scaled(rational(5)) + x.scaled(rational(2));
  auto d = s.derivative();
  CHECK(d.coeff(0) == Rational(2));
  CHECK(d.coeff(2) == Rational(15));
  CHECK(d.cap() == 5);

  auto up = s.shifted_up(2);
  CHECK(up.coeff(3) == Rational(2));
  CHECK(up.coeff(5) == Rational(5));
  auto down = up.shifted_down(2);
  CHECK(down.coeff(1) == Rational(2));
  CHECK(down.cap() == 4);
  CHECK_THROWS_AS(s.shifted_down(2), std::domain_error);
}

TEST_CASE("compose_linear rescales the variable") {
  auto x = QSeries<Rational>::variable(5);
  auto s = QSeries<Rational>::one().truncated(5) + x + x * x;
  auto t = s.compose_linear(rational(3));
  CHECK(t.coeff(0) == Rational(1));
  CHECK(t.coeff(1) == Rational(3));
  CHECK(t.coeff(2) == Rational(9));
}

TEST_CASE("jet of exp matches finite differences") {
  // independent numeric check of the Jet mechanics over doubles
  auto build_exp_jet = [](double x0, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double fact = 1;
    for (int k = 0; k <= order; ++k) {
      if (k) fact *= k;
      c[static_cast<std::size_t>(k)] = std::exp(x0) / fact;
    }
    return Jet<double>(c, order);
  };
  double x0 = 0.4;
  auto jet = build_exp_jet(x0, 4);
  double h = 1e-2;
  for (double t : {-2 * h, -h, h, 2 * h}) {
    double approx = jet.eval(t);
    CHECK(std::abs(approx - std::exp(x0 + t)) < 1e-9);
  }
  // second derivative via central differences vs 2! * coeff(2)
  double fd2 = (std::exp(x0 + h) - 2 * std::exp(x0) + std::exp(x0 - h)) / (h * h);
  CHECK(std::abs(fd2 - 2 * jet.coeff(2)) < 1e-3);
}

TEST_CASE("polynomial ring enumerates monomials by degree") {
  auto ring = PolyRing::make({"p1", "p2"}, {4, 8}, 12);
  // 1, p1, p2, p1^2, p1 p2, p1^3
  CHECK(ring.size() == 6);
  CHECK(ring.degree_of({2, 0}) == 8);
  CHECK(ring.find({1, 1}) >= 0);
  CHECK(ring.find({4, 0}) == -1);
  CHECK(ring.gen_index("p2") == 1);
  CHECK_THROWS_AS(ring.gen_index("p9"), std::invalid_argument);
}

TEST_CASE("poly arithmetic and units") {
  auto ring = PolyRing::make({"a", "b"}, {1, 1}, 3);
  auto a = Poly<Rational>::generator(ring, 0);
  auto b = Poly<Rational>::generator(ring, 1);
  auto one = Poly<Rational>::constant(ring, rational(1));

  auto p = (one + a) * (one + b);
  CHECK(p.coeff(ring.find({0, 0})) == Rational(1));
  CHECK(p.coeff(ring.find({1, 1})) == Rational(1));

  auto u = one + a.scaled(rational(2)) + b;
  CHECK(poly_equal(u * u.recip(), one));

  // cap truncation: a^4 vanishes in a cap-3 ring
  CHECK((a * a * a * a).is_exact_zero());
}

TEST_CASE("poly exp turns sums into products") {
  auto ring = PolyRing::make({"a", "b"}, {1, 1}, 3);
  auto a = Poly<double>::generator(ring, 0).scaled(0.7);
  auto b = Poly<double>::generator(ring, 1).scaled(-1.3);
  auto lhs = a.exp() * b.exp();
  auto rhs = (a + b).exp();
  for (std::size_t i = 0; i < ring.size(); ++i)
    CHECK(lhs.coeff(static_cast<int>(i)) ==
          doctest::Approx(rhs.coeff(static_cast<int>(i))).epsilon(1e-12));
}

TEST_CASE("apply_jet substitutes a nilpotent argument") {
  auto ring = PolyRing::make({"x"}, {1}, 3);
  auto x = Poly<Rational>::generator(ring, 0);
  // jet of (1+t)^2 = 1 + 2t + t^2 around t=0
  Jet<Rational> j(std::vector<Rational>{rational(1), rational(2), rational(1)}, 4);
  auto applied = Poly<Rational>::apply_jet(j, x.scaled(rational(3)));
  auto direct = (Poly<Rational>::constant(ring, rational(1)) + x.scaled(rational(3)));
  CHECK(poly_equal(applied, direct * direct));
  CHECK_THROWS_AS(
      Poly<Rational>::apply_jet(j, Poly<Rational>::constant(ring, rational(1))),
      std::domain_error);
}

TEST_CASE("integrate reads the designated monomial") {
  auto ring = PolyRing::make({"y1", "y2"}, {2, 2}, 4);
  ring.set_integral({1, 1});
  auto y1 = Poly<Rational>::generator(ring, 0);
  auto y2 = Poly<Rational>::generator(ring, 1);
  auto p = y1 * y2.scaled(rational(7)) + y1 * y1;
  CHECK(p.integrate() == Rational(7));

  auto no_integral = PolyRing::make({"z"}, {2}, 2);
  CHECK_THROWS_AS(Poly<Rational>::generator(no_integral, 0).integrate(),
                  std::domain_error);
}

TEST_CASE("eval_at substitutes numeric values") {
  auto ring = PolyRing::make({"u", "v"}, {1, 1}, 2);
  auto u = Poly<double>::generator(ring, 0);
  auto v = Poly<double>::generator(ring, 1);
  auto p = u * v.scaled(3.0) + u.scaled(2.0) + Poly<double>::constant(ring, 1.0);
  CHECK(p.eval_at({2.0, 5.0}) == doctest::Approx(1 + 4 + 30));
}
