#include "sigrig/chargenus.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigrig {

Rational ManifoldData::number(const std::vector<int>& partition) const {
  auto it = pontryagin.find(partition);
  return it == pontryagin.end() ? Rational(0) : it->second;
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // descending parts
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

PolyRing pontryagin_ring(int k) {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (int i = 1; i <= k; ++i) {
    names.push_back("p" + std::to_string(i));
    degrees.push_back(i);
  }
  return PolyRing::make(std::move(names), std::move(degrees), k);
}

std::vector<int> partition_to_exponents(const std::vector<int>& partition,
                                        int k) {
  std::vector<int> expo(k, 0);
  for (int part : partition) {
    if (part < 1 || part > k)
      throw std::invalid_argument("partition part out of range");
    ++expo[part - 1];
  }
  return expo;
}

Jet<Rational> ahat_jet_exact(int order) {
  // e^{x/2} − e^{−x/2}
  auto half = Jet<Rational>::variable(order).divided_by_int(2);
  return half.exp_nilpotent() - (-half).exp_nilpotent();
}

namespace {

// e^{s·x} as a jet whose coefficients are exact q-series constants.
Jet<QSeries<Rational>> exp_jet_q(Rational s, int order) {
  using QR = QSeries<Rational>;
  Jet<QR> x = Jet<QR>::variable(order);
  return x.scaled(QR::constant(s)).exp_nilpotent();
}

}  // namespace

Jet<QSeries<Rational>> sigma_jet_exact(int order, int q_order) {
  using QR = QSeries<Rational>;
  // (u^{1/2} − u^{−1/2}) ∏_{n≥1} (1−qⁿu)(1−qⁿu⁻¹)/(1−qⁿ)², u = e^x.
  // Factors with n > q_order are ≡ 1 at this truncation.
  Jet<QR> acc = exp_jet_q(rational(1, 2), order) -
                exp_jet_q(rational(-1, 2), order);
  Jet<QR> u = exp_jet_q(Rational(1), order);
  Jet<QR> uinv = exp_jet_q(Rational(-1), order);
  Jet<QR> one = RingTraits<Jet<QR>>::one().truncated(order);
  QR q = QR::variable(q_order);
  QR qn = QR::one().truncated(q_order);
  for (int n = 1; n <= q_order; ++n) {
    qn = qn * q;
    QR denom = (QR::one().truncated(q_order) - qn);
    QR denom_sq_inv = (denom * denom).recip();
    Jet<QR> f = (one - u.scaled(qn)) * (one - uinv.scaled(qn));
    acc = acc * f.scaled(denom_sq_inv);
  }
  return acc;
}

Jet<QSeries<Rational>> ochanine_jet_exact(int order, int q_order) {
  using QR = QSeries<Rational>;
  // −2(1−u)/(1+u) ∏_{n≥1} (1−qⁿu)(1−qⁿu⁻¹)(1+qⁿ)² /
  //                        ((1+qⁿu)(1+qⁿu⁻¹)(1−qⁿ)²),  u = e^z.
  Jet<QR> u = exp_jet_q(Rational(1), order);
  Jet<QR> uinv = exp_jet_q(Rational(-1), order);
  Jet<QR> one = RingTraits<Jet<QR>>::one().truncated(order);
  Jet<QR> acc = ((one - u) * (one + u).recip())
                    .scaled(QR::constant(Rational(-2)));
  QR q = QR::variable(q_order);
  QR qone = QR::one().truncated(q_order);
  QR qn = qone;
  for (int n = 1; n <= q_order; ++n) {
    qn = qn * q;
    QR ratio = ((qone + qn) * (qone + qn)) * ((qone - qn) * (qone - qn)).recip();
    Jet<QR> num = (one - u.scaled(qn)) * (one - uinv.scaled(qn));
    Jet<QR> den = (one + u.scaled(qn)) * (one + uinv.scaled(qn));
    acc = acc * num * den.recip();
    acc = acc.scaled(ratio);
  }
  return acc;
}

CharacteristicSeries CharacteristicSeries::ahat(int order) {
  Jet<Rational> e = ahat_jet_exact(order);
  Jet<cplx> j = Jet<cplx>().truncated(order);
  for (std::size_t i = 0; i < e.stored(); ++i)
    j.at(i) = cplx(to_double(e.coeff(i)), 0.0);
  return {j, "ahat"};
}

CharacteristicSeries CharacteristicSeries::from_theta(const ThetaFunction& th,
                                                      int order,
                                                      std::string label) {
  Jet<cplx> j = th.jet(0.0, order);
  cplx lead = j.coeff(1);
  if (std::abs(lead) < 1e-14)
    throw std::domain_error("characteristic series: theta'(0) vanishes");
  j = j.scaled(1.0 / lead);
  // Numeric jets of an odd theta carry roundoff dust in the even slots, which
  // would later trip the exact parity gate.  Clamp dust, keep real violations.
  std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    cplx v = j.coeff(static_cast<std::size_t>(k));
    c[static_cast<std::size_t>(k)] = (k % 2 == 0 && std::abs(v) < 1e-12) ? cplx(0) : v;
  }
  return {Jet<cplx>(std::move(c), order), std::move(label)};
}

cplx genus_eval(const CharacteristicSeries& series, const ManifoldData& M) {
  if (M.dimension % 4 != 0) return 0.0;  // odd series kill these
  int k = M.weight();
  if (k == 0) return 0.0;
  auto a = log_x_over_series<cplx>(series.jet, k);
  PolyRing pring = pontryagin_ring(k);
  auto cls = total_genus_class<cplx>(a, pring);
  return pair_with_pontryagin(cls, M,
                              [](const Rational& r) { return cplx(to_double(r), 0.0); });
}

Rational ahat_genus(const ManifoldData& M) {
  if (M.dimension % 4 != 0) return Rational(0);
  int k = M.weight();
  if (k == 0) return Rational(0);
  auto a = log_x_over_series<Rational>(ahat_jet_exact(2 * k + 1), k);
  PolyRing pring = pontryagin_ring(k);
  auto cls = total_genus_class<Rational>(a, pring);
  return pair_with_pontryagin(cls, M, [](const Rational& r) { return r; });
}

namespace {

QSeries<Rational> genus_q_from_jet(const Jet<QSeries<Rational>>& theta_hat,
                                   const ManifoldData& M, int q_order) {
  using QR = QSeries<Rational>;
  if (M.dimension % 4 != 0) return QR().truncated(q_order);
  int k = M.weight();
  if (k == 0) return QR().truncated(q_order);
  auto a = log_x_over_series<QR>(theta_hat, k);
  PolyRing pring = pontryagin_ring(k);
  auto cls = total_genus_class<QR>(a, pring);
  QR r = pair_with_pontryagin(cls, M, [q_order](const Rational& v) {
    return QR::constant(v).truncated(q_order);
  });
  return r.truncated(q_order);
}

}  // namespace

QSeries<Rational> witten_genus_q(const ManifoldData& M, int q_order) {
  return genus_q_from_jet(sigma_jet_exact(2 * M.weight() + 1, q_order), M,
                          q_order);
}

QSeries<Rational> ochanine_genus_q(const ManifoldData& M, int q_order) {
  return genus_q_from_jet(ochanine_jet_exact(2 * M.weight() + 1, q_order), M,
                          q_order);
}

Poly<QSeries<Rational>> sym_qn_factor(const Poly<QSeries<Rational>>& root,
                                      int n, int q_order) {
  using QR = QSeries<Rational>;
  const PolyRing& ring = root.ring();
  QR qone = QR::one().truncated(q_order);
  QR qn = qone;
  QR q = QR::variable(q_order);
  for (int i = 0; i < n; ++i) qn = qn * q;
  auto ex = root.exp();
  auto exm = (-root).exp();
  auto one = Poly<QR>::constant(ring, qone);
  QR num = (qone - qn) * (qone - qn);
  auto den = (one - ex.scaled(qn)) * (one - exm.scaled(qn));
  return den.recip().scaled(num);
}

namespace {

using QR = QSeries<Rational>;

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& v) {
  // coefficients of ∏(1 + v_j t)
  std::vector<Rational> e(v.size() + 1, Rational(0));
  e[0] = 1;
  for (const auto& x : v)
    for (std::size_t i = e.size() - 1; i >= 1; --i) e[i] = e[i] + x * e[i - 1];
  return e;
}

}  // namespace

QSeries<Rational> twisted_a_hat(const ManifoldData& M, int q_order) {
  if (M.dimension % 4 != 0) return QR().truncated(q_order);
  int k = M.weight();
  if (k == 0) return QR().truncated(q_order);

  // Formal tangent model with k roots ±x_j; every per-root factor is even in
  // x_j, so work directly in y_j = x_j².  Build the per-variable series
  // g(y) = [x/2sinh(x/2)] · ∏_{n=1}^{q_order} symfactor_n(x) as a jet in x,
  // then apply it to the nilpotent generators of ℚ[y_1..y_k].
  int xorder = 2 * k;
  using JQR = Jet<QR>;
  JQR x = JQR::variable(xorder);
  auto lift_jet = [&](const Jet<Rational>& j) {
    JQR r = JQR().truncated(xorder);
    for (std::size_t i = 0; i < j.stored(); ++i)
      r.at(i) = QR::constant(j.coeff(i)).truncated(q_order);
    return r.truncated(xorder);
  };
  JQR ahat_unit = lift_jet(ahat_jet_exact(xorder + 1).shifted_down(1));
  JQR g_x = ahat_unit.recip();  // x/(e^{x/2}−e^{−x/2})
  JQR ex = lift_jet(Jet<Rational>::variable(xorder + 1).exp_nilpotent()
                        .truncated(xorder));
  JQR exm = lift_jet((-Jet<Rational>::variable(xorder + 1)).exp_nilpotent()
                         .truncated(xorder));
  JQR one = RingTraits<JQR>::one().truncated(xorder);
  QR qone = QR::one().truncated(q_order);
  QR q = QR::variable(q_order);
  QR qn = qone;
  for (int n = 1; n <= q_order; ++n) {
    qn = qn * q;
    QR num = (qone - qn) * (qone - qn);
    JQR den = (one - ex.scaled(qn)) * (one - exm.scaled(qn));
    g_x = g_x * den.recip().scaled(num);
  }
  // compress the even jet into a jet in y
  Jet<QR> g_y = Jet<QR>().truncated(k);
  for (int l = 0; l <= k; ++l) g_y.at(l) = g_x.coeff(2 * l);
  for (std::size_t i = 1; i < g_x.stored(); i += 2)
    if (!is_zero(g_x.coeff(i)))
      throw std::domain_error("twisted_a_hat: integrand not even");

  // Multivariate expansion of the product over the k roots, degree-k part.
  std::vector<std::string> names;
  std::vector<int> degs;
  for (int j = 1; j <= k; ++j) {
    names.push_back("y" + std::to_string(j));
    degs.push_back(1);
  }
  PolyRing yring = PolyRing::make(names, degs, k);
  Poly<QR> total = Poly<QR>::constant(yring, qone);
  for (int j = 0; j < k; ++j) {
    auto yj = Poly<QR>::generator(yring, j);
    total = total * Poly<QR>::apply_jet(g_y, yj);
  }

  // Express the degree-k part in the elementary-symmetric basis by exact
  // interpolation: unknown c_mu over partitions mu of k, equations
  // Σ c_mu e_mu(v) = S_k(v) at rational sample points v.
  auto parts = partitions_of(k);
  std::size_t nuk = parts.size();
  // per-q-coefficient solve shares one rational matrix
  std::vector<std::vector<Rational>> rows;
  std::vector<std::vector<Rational>> rhs_rows;  // rhs per q power
  std::size_t qn_count = static_cast<std::size_t>(q_order) + 1;
  unsigned long long pt = 1;
  int rank = 0;
  std::vector<std::vector<Rational>> reduced;  // row-echelon scratch of rows
  while (rows.size() < nuk * 3 && rank < static_cast<int>(nuk)) {
    std::vector<Rational> v(k);
    for (int j = 0; j < k; ++j) {
      // deterministic distinct rationals
      v[j] = rational(static_cast<long long>((pt * (j + 2) * 7919) % 97 + 1),
                      static_cast<long long>((pt + j) % 11 + 2));
    }
    ++pt;
    auto e = elementary_symmetric(v);
    std::vector<Rational> row(nuk);
    for (std::size_t mi = 0; mi < nuk; ++mi) {
      Rational prod(1);
      for (int part : parts[mi]) prod = prod * e[part];
      row[mi] = prod;
    }
    // right-hand sides: the degree-k part of `total` at v, one per q power
    std::vector<Rational> rhs(qn_count, Rational(0));
    {
      const PolyRing& ring = total.ring();
      for (std::size_t i = 0; i < ring.size(); ++i) {
        if (ring.degree_of(ring.monomials[i]) != k) continue;
        const QR& cq = total.coeff(i);
        Rational mono(1);
        for (std::size_t gidx = 0; gidx < ring.monomials[i].size(); ++gidx)
          for (int eexp = 0; eexp < ring.monomials[i][gidx]; ++eexp)
            mono = mono * v[gidx];
        for (std::size_t qi = 0; qi < qn_count; ++qi)
          rhs[qi] = rhs[qi] + cq.coeff(qi) * mono;
      }
    }
    rows.push_back(row);
    rhs_rows.push_back(rhs);
    // rank update by fresh elimination (small systems)
    reduced = rows;
    rank = 0;
    std::size_t cols = nuk;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(reduced.size());
         ++c) {
      std::size_t piv = reduced.size();
      for (std::size_t r2 = static_cast<std::size_t>(rank);
           r2 < reduced.size(); ++r2)
        if (!is_zero(reduced[r2][c])) {
          piv = r2;
          break;
        }
      if (piv == reduced.size()) continue;
      std::swap(reduced[piv], reduced[static_cast<std::size_t>(rank)]);
      auto& prow = reduced[static_cast<std::size_t>(rank)];
      for (std::size_t r2 = 0; r2 < reduced.size(); ++r2) {
        if (r2 == static_cast<std::size_t>(rank)) continue;
        if (is_zero(reduced[r2][c])) continue;
        Rational f = reduced[r2][c] / prow[c];
        for (std::size_t c2 = c; c2 < cols; ++c2)
          reduced[r2][c2] = reduced[r2][c2] - f * prow[c2];
      }
      ++rank;
    }
  }
  if (rank < static_cast<int>(nuk))
    throw std::runtime_error("twisted_a_hat: interpolation points degenerate");

  // Solve the square-ified system: full Gaussian elimination with the
  // q-series right-hand sides carried along.
  std::size_t m = rows.size();
  std::vector<std::vector<Rational>> A = rows;
  std::vector<std::vector<Rational>> B = rhs_rows;
  std::vector<int> where(nuk, -1);
  std::size_t rrow = 0;
  for (std::size_t c = 0; c < nuk && rrow < m; ++c) {
    std::size_t piv = m;
    for (std::size_t r2 = rrow; r2 < m; ++r2)
      if (!is_zero(A[r2][c])) {
        piv = r2;
        break;
      }
    if (piv == m) continue;
    std::swap(A[piv], A[rrow]);
    std::swap(B[piv], B[rrow]);
    Rational pv = A[rrow][c];
    for (std::size_t c2 = 0; c2 < nuk; ++c2) A[rrow][c2] = A[rrow][c2] / pv;
    for (std::size_t qi = 0; qi < qn_count; ++qi)
      B[rrow][qi] = B[rrow][qi] / pv;
    for (std::size_t r2 = 0; r2 < m; ++r2) {
      if (r2 == rrow) continue;
      Rational f = A[r2][c];
      if (is_zero(f)) continue;
      for (std::size_t c2 = 0; c2 < nuk; ++c2)
        A[r2][c2] = A[r2][c2] - f * A[rrow][c2];
      for (std::size_t qi = 0; qi < qn_count; ++qi)
        B[r2][qi] = B[r2][qi] - f * B[rrow][qi];
    }
    where[c] = static_cast<int>(rrow);
    ++rrow;
  }

  // With tangent roots ±x_j and y_j = x_j², the Pontryagin classes are the
  // elementary symmetric functions p_i = e_i(y), so the coefficient of e_mu
  // pairs directly against the p_mu characteristic number.
  QSeries<Rational> out = QR().truncated(q_order);
  for (std::size_t mi = 0; mi < nuk; ++mi) {
    if (where[mi] < 0)
      throw std::runtime_error("twisted_a_hat: underdetermined system");
    Rational pnum = M.number(parts[mi]);
    if (is_zero(pnum)) continue;
    for (std::size_t qi = 0; qi < qn_count; ++qi)
      out.at(qi) = out.coeff(qi) +
                   B[static_cast<std::size_t>(where[mi])][qi] * pnum;
  }
  return out.truncated(q_order);
}

Poly<cplx> euler_class(const ThetaFunction& th, const PolyRing& ring,
                       const std::vector<std::pair<Poly<cplx>, long>>& roots,
                       cplx z, int jet_order) {
  Poly<cplx> acc = Poly<cplx>::constant(ring, 1.0);
  for (const auto& [root, m] : roots) {
    Jet<cplx> j = th.jet(static_cast<double>(m) * z, jet_order);
    acc = acc * Poly<cplx>::apply_jet(j, root);
  }
  return acc;
}

}  // namespace sigrig
