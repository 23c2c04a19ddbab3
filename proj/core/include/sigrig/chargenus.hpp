#pragma once

#include <map>
#include <string>
#include <vector>

#include "sigrig/poly.hpp"
#include "sigrig/rational.hpp"
#include "sigrig/series.hpp"
#include "sigrig/theta.hpp"

namespace sigrig {

// Pontryagin numbers of a closed oriented manifold.  Partitions are stored
// as descending part lists; parts index the classes p_i, and only partitions
// of dimension/4 contribute.
struct ManifoldData {
  int dimension = 0;
  std::map<std::vector<int>, Rational> pontryagin;
  std::string name;

  int weight() const { return dimension / 4; }
  Rational number(const std::vector<int>& partition) const;
};

std::vector<std::vector<int>> partitions_of(int n);

// ℚ[p_1..p_k] truncated above total weight k, p_i of weight i; the top
// monomial is not designated (pairing sums over all weight-k partitions).
PolyRing pontryagin_ring(int k);
std::vector<int> partition_to_exponents(const std::vector<int>& partition,
                                        int k);

// An odd normalized characteristic series theta_hat(x) = x + ..., kept as a
// numeric jet together with a provenance label ("ahat", "sigma", ...).
struct CharacteristicSeries {
  Jet<cplx> jet;
  std::string provenance;

  static CharacteristicSeries ahat(int order);
  static CharacteristicSeries from_theta(const ThetaFunction& th, int order,
                                         std::string label);
};

// Exact jets of the preset series (coefficients in ℚ, or in ℚ⟦q⟧ truncated
// at q_order for the lattice-valued ones).
Jet<Rational> ahat_jet_exact(int order);
Jet<QSeries<Rational>> sigma_jet_exact(int order, int q_order);
Jet<QSeries<Rational>> ochanine_jet_exact(int order, int q_order);

// Genus pipeline pieces, generic over the coefficient field:
//   log(x/theta_hat(x)) as a series in y = x²  →  Σ_l a_l · (l-th power sum
//   of the y_j)  →  exp in the truncated partition ring  →  pairing.

// Coefficients a_1..a_k of log(x/theta_hat(x)) as a series in y = x².
// theta_hat must be odd with leading coefficient 1 and cap ≥ 2k+1.
template <class T>
std::vector<T> log_x_over_series(const Jet<T>& theta_hat, int k) {
  Jet<T> unit = theta_hat.shifted_down(1);
  if (unit.cap() < 2 * k)
    throw std::domain_error("log_x_over_series: jet order below 2k+1");
  unit = unit.truncated(2 * k);
  for (std::size_t i = 1; i < unit.stored(); i += 2)
    if (!is_zero(unit.coeff(i)))
      throw std::domain_error("log_x_over_series: series is not odd");
  Jet<T> lg = unit.log_unit();
  std::vector<T> a(static_cast<std::size_t>(k) + 1);
  for (int l = 1; l <= k; ++l) a[l] = T{} - lg.coeff(2 * l);
  return a;
}

// Power sums s_1..s_k of the y_j written in the p_i via Newton's identities:
// s_l = p_1 s_{l-1} − p_2 s_{l-2} + ... + (−1)^{l-1} l p_l.
template <class T>
std::vector<Poly<T>> power_sum_polys(const PolyRing& pring, int k) {
  std::vector<Poly<T>> s(static_cast<std::size_t>(k) + 1, Poly<T>(pring));
  for (int l = 1; l <= k; ++l) {
    Poly<T> acc(pring);
    long long sign = 1;
    for (int i = 1; i < l; ++i) {
      acc = acc + (Poly<T>::generator(pring, i - 1) * s[l - i])
                      .scaled(RingTraits<T>::from_int(sign));
      sign = -sign;
    }
    acc = acc + Poly<T>::generator(pring, l - 1)
                    .scaled(RingTraits<T>::from_int(sign * l));
    s[l] = acc;
  }
  return s;
}

// exp(Σ a_l s_l) in the truncated partition ring: the total characteristic
// class ∏_j x_j/theta_hat(x_j) expressed in Pontryagin classes.
template <class T>
Poly<T> total_genus_class(const std::vector<T>& log_coeffs,
                          const PolyRing& pring) {
  int k = pring.cap;
  auto s = power_sum_polys<T>(pring, k);
  Poly<T> arg(pring);
  for (int l = 1; l <= k; ++l) arg = arg + s[l].scaled(log_coeffs[l]);
  // arg is nilpotent (weight ≥ 1), so the exponential series terminates.
  Poly<T> r = Poly<T>::constant(pring, RingTraits<T>::one());
  Poly<T> term = r;
  for (int j = 1; j <= pring.max_exponent_sum(); ++j) {
    term = (term * arg).scaled(inv(RingTraits<T>::from_int(j)));
    if (term.is_exact_zero()) break;
    r = r + term;
  }
  return r;
}

// Pair a partition-ring class against the manifold's Pontryagin numbers.
template <class T, class LiftFn>
T pair_with_pontryagin(const Poly<T>& cls, const ManifoldData& M,
                       LiftFn lift) {
  int k = M.weight();
  T acc{};
  for (const auto& part : partitions_of(k)) {
    int idx = cls.ring().find(partition_to_exponents(part, k));
    if (idx < 0) continue;
    acc = acc + cls.coeff(idx) * lift(M.number(part));
  }
  return acc;
}

Rational ahat_genus(const ManifoldData& M);
cplx genus_eval(const CharacteristicSeries& series, const ManifoldData& M);
QSeries<Rational> witten_genus_q(const ManifoldData& M, int q_order);
QSeries<Rational> ochanine_genus_q(const ManifoldData& M, int q_order);

// Chern-character factor of Sym_{qⁿ} of the rank-reduced complexification of
// a line bundle with root x:   (1−qⁿ)² / ((1−qⁿe^x)(1−qⁿe^{−x})).
Poly<QSeries<Rational>> sym_qn_factor(const Poly<QSeries<Rational>>& root,
                                      int n, int q_order);

// Independent evaluation of the q-expanded twisted genus
// Â(M; ⊗_{n≥1} Sym_{qⁿ}(T_ℂM − rank)): multivariate expansion over formal
// roots plus an exact linear solve in the elementary-symmetric basis.
QSeries<Rational> twisted_a_hat(const ManifoldData& M, int q_order);

// Equivariant Euler class ∏_j theta(x_j + m_j z) with nilpotent roots.
Poly<cplx> euler_class(const ThetaFunction& th, const PolyRing& ring,
                       const std::vector<std::pair<Poly<cplx>, long>>& roots,
                       cplx z, int jet_order);

}  // namespace sigrig
