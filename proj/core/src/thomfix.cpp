#include "sigrig/thomfix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sigrig {

namespace {

long llround_checked(double v, const char* what) {
  double r = std::round(v);
  if (std::abs(v - r) > 1e-6)
    throw std::invalid_argument(std::string(what) + ": not an integer within tolerance");
  return static_cast<long>(r);
}

}  // namespace

SpecialPoint make_special_point(const Lattice& L, cplx a, int n) {
  if (n < 1) throw std::invalid_argument("special point: order must be positive");
  SpecialPoint sp;
  sp.a = a;
  sp.n = n;
  cplx lam = static_cast<double>(n) * a;
  auto [s, t] = L.coords(lam);
  sp.lam_j = llround_checked(s, "special point: n*a");
  sp.lam_k = llround_checked(t, "special point: n*a");
  if (std::abs(lam - L.vec(sp.lam_j, sp.lam_k)) > kTolLattice * (1.0 + std::abs(lam)))
    throw std::invalid_argument("special point: n*a is not a lattice vector");
  for (int m = 1; m < n; ++m) {
    auto [ms, mt] = L.coords(static_cast<double>(m) * a);
    if (std::abs(ms - std::round(ms)) < kTolLattice &&
        std::abs(mt - std::round(mt)) < kTolLattice)
      throw std::invalid_argument("special point: order is smaller than n");
  }
  return sp;
}

SpecialPoint make_special_point_coords(const Lattice& L, double s, double t,
                                       int n) {
  return make_special_point(L, s * L.g1() + t * L.g2(), n);
}

cplx gamma_lambda(const ThetaCharacter& ch, const SpecialPoint& sp) {
  return ch.gamma(sp.lam_j, sp.lam_k);
}

int c_lambda_power(const ThetaCharacter& ch, const SpecialPoint& sp, long k) {
  int c = ch.c_of(sp.lam_j, sp.lam_k);
  return (c == -1 && (k % 2 != 0)) ? -1 : 1;
}

RotationDecomposition decompose(long m, int n) {
  RotationDecomposition d;
  long r0 = ((m % n) + n) % n;
  if (2 * r0 > n) {
    d.flipped = true;
    d.r = n - r0;
    d.l = (-m - d.r) / n;
  } else {
    d.r = r0;
    d.l = (m - r0) / n;
  }
  return d;
}

BundleSummand effective_summand(const BundleSummand& s, int n) {
  if (!decompose(s.m, n).flipped) return s;
  BundleSummand e = s;
  e.m = -s.m;
  for (auto& root : e.roots)
    for (auto& c : root) c = -c;
  return e;
}

namespace {

// z-coefficient plus generator coefficients of an integral degree-2 class.
struct IntClass {
  long z = 0;
  std::vector<long> gen;

  explicit IntClass(std::size_t gens = 0) : gen(gens, 0) {}
  void accumulate(long scale, const BundleSummand& s) {
    z += scale * s.d * s.m;
    for (const auto& root : s.roots)
      for (std::size_t g = 0; g < gen.size(); ++g) gen[g] += scale * root[g];
  }
  bool divisible_by(long k) const {
    if (z % k != 0) return false;
    for (long c : gen)
      if (c % k != 0) return false;
    return true;
  }
};

IntClass scaled_diff(const IntClass& a, const IntClass& b) {
  IntClass r(a.gen.size());
  r.z = a.z - b.z;
  for (std::size_t g = 0; g < a.gen.size(); ++g) r.gen[g] = a.gen[g] - b.gen[g];
  return r;
}

}  // namespace

CcrReport ccr_validate(const FixedComponent& F, int n, CcrMode mode) {
  CcrReport rep;
  std::size_t gens = F.ring.names.size();

  long t_dm = 0, v_dm = 0, t_dm2 = 0, v_dm2 = 0;
  std::vector<long> t_mx(gens, 0), v_mx(gens, 0);
  for (const auto& s : F.T) {
    t_dm += s.d * s.m;
    t_dm2 += s.d * s.m * s.m;
    for (const auto& root : s.roots)
      for (std::size_t g = 0; g < gens; ++g) t_mx[g] += s.m * root[g];
  }
  for (const auto& s : F.V) {
    v_dm += s.d * s.m;
    v_dm2 += s.d * s.m * s.m;
    for (const auto& root : s.roots)
      for (std::size_t g = 0; g < gens; ++g) v_mx[g] += s.m * root[g];
  }
  rep.z1 = t_mx == v_mx;
  rep.z2 = t_dm2 == v_dm2;
  rep.z3 = (t_dm - v_dm) % 2 == 0;
  if (!rep.z1) rep.failures.push_back("weighted root sums differ (z-1)");
  if (!rep.z2) rep.failures.push_back("sum of d*m^2 differs (z-2)");
  if (!rep.z3) rep.failures.push_back("sum of d*m parity differs (z-3)");

  long h2 = n / 2;  // floor(n/2); equals h exactly when n is even
  IntClass rc1_t(gens), rc1_v(gens), ch_t(gens), ch_v(gens);
  for (const auto& s : F.T) {
    auto dec = decompose(s.m, n);
    BundleSummand e = effective_summand(s, n);
    if (dec.r > 0 && 2 * dec.r < n) rc1_t.accumulate(dec.r, e);
    if (n % 2 == 0 && dec.r == h2) ch_t.accumulate(1, e);
  }
  for (const auto& s : F.V) {
    auto dec = decompose(s.m, n);
    BundleSummand e = effective_summand(s, n);
    if (dec.r > 0 && 2 * dec.r < n) rc1_v.accumulate(dec.r, e);
    if (n % 2 == 0 && dec.r == h2) ch_v.accumulate(1, e);
  }
  IntClass rc1 = scaled_diff(rc1_t, rc1_v);
  if (n % 2 != 0) {
    rep.zn = rc1.divisible_by(n);
    if (!rep.zn)
      rep.failures.push_back("sum r(c1 T_r - c1 V_r) not divisible by n");
  } else {
    rep.zn = h2 == 0 || rc1.divisible_by(h2);
    if (!rep.zn)
      rep.failures.push_back("sum r(c1 T_r - c1 V_r) not divisible by n/2");
    if (rep.zn) {
      IntClass w2 = scaled_diff(ch_v, ch_t);
      bool ok = ((h2 ? rc1.z / h2 : 0) - w2.z) % 2 == 0;
      for (std::size_t g = 0; g < gens && ok; ++g)
        ok = ((h2 ? rc1.gen[g] / h2 : 0) - w2.gen[g]) % 2 == 0;
      rep.w2_even = ok;
      if (!ok)
        rep.failures.push_back(
            "quotient class does not match w2(V_h - T_h) mod 2");
    } else {
      rep.w2_even = false;
    }
  }

  rep.pass = rep.z1 && rep.z2 && rep.z3;
  if (mode == CcrMode::strict) {
    rep.pass = rep.pass && rep.zn;
    if (n % 2 == 0) rep.pass = rep.pass && rep.w2_even;
  }
  return rep;
}

SpecialQuantities quantities(const FixedComponent& F, const SpecialPoint& sp,
                             const ThetaCharacter& ch) {
  int n = sp.n;
  std::size_t gens = F.ring.names.size();
  SpecialQuantities q;
  q.H_gen.assign(gens, 0);
  q.rc1_gen.assign(gens, 0);
  q.ch_gen.assign(gens, 0);

  long sum_dl_t = 0, sum_dl_v = 0;
  Rational G(0);
  Rational half_n = rational(n, 2);
  long h2 = n / 2;
  std::vector<long> e_t(static_cast<std::size_t>(h2) + 1, 0);
  std::vector<long> e_v(static_cast<std::size_t>(h2) + 1, 0);
  IntClass rc1_t(gens), rc1_v(gens);

  auto fold = [&](const BundleSummand& s, bool is_v) {
    auto dec = decompose(s.m, n);
    BundleSummand e = effective_summand(s, n);
    long sgn = is_v ? 1 : -1;
    (is_v ? sum_dl_v : sum_dl_t) += s.d * dec.l;
    G = G + Rational(sgn) *
                (half_n * Rational(s.d * dec.l * dec.l) +
                 Rational(s.d * dec.l * dec.r));
    q.H_z += sgn * dec.l * e.d * e.m;
    for (const auto& root : e.roots)
      for (std::size_t g = 0; g < gens; ++g)
        q.H_gen[g] += sgn * dec.l * root[g];
    if (dec.r > 0 && dec.r <= h2 && !(n % 2 != 0 && 2 * dec.r == n))
      (is_v ? e_v : e_t)[static_cast<std::size_t>(dec.r)] += s.d;
    if (dec.r > 0 && 2 * dec.r < n) (is_v ? rc1_v : rc1_t).accumulate(dec.r, e);
    if (n % 2 == 0 && dec.r == h2) {
      q.ch_z += sgn * e.d * e.m;
      for (const auto& root : e.roots)
        for (std::size_t g = 0; g < gens; ++g) q.ch_gen[g] += sgn * root[g];
    }
  };
  for (const auto& s : F.T) fold(s, false);
  for (const auto& s : F.V) fold(s, true);

  q.G = G;
  Rational alpha(0);
  for (long r = 1; r <= h2; ++r)
    alpha = alpha + Rational((e_v[static_cast<std::size_t>(r)] -
                              e_t[static_cast<std::size_t>(r)]) *
                             r * r);
  q.alpha = -alpha / rational(2 * n, 1);
  q.eps = c_lambda_power(
      ch, sp, F.delta_prime + sum_dl_v - F.delta - sum_dl_t);
  IntClass rc1 = scaled_diff(rc1_t, rc1_v);
  q.rc1_z = rc1.z;
  q.rc1_gen = rc1.gen;
  return q;
}

bool c1_equals_nH(const SpecialQuantities& q, int n) {
  long h = n % 2 == 0 ? n / 2 : 0;
  if (q.rc1_z != n * q.H_z + h * q.ch_z) return false;
  for (std::size_t g = 0; g < q.H_gen.size(); ++g)
    if (q.rc1_gen[g] != n * q.H_gen[g] + h * q.ch_gen[g]) return false;
  return true;
}

namespace {

Poly<cplx> root_factor(const PolyRing& ring, const ThetaFunction& th,
                       const std::vector<long>& root, cplx center) {
  Jet<cplx> j = th.jet(center, ring.max_exponent_sum());
  return Poly<cplx>::apply_jet(j, Poly<cplx>::linear(ring, root));
}

}  // namespace

Poly<cplx> euler_cocycle_e0b(const FixedComponent& F, cplx z,
                             const ThetaFunction& th) {
  Poly<cplx> num = Poly<cplx>::constant(F.ring, 1.0);
  Poly<cplx> den = num;
  for (const auto& s : F.V)
    for (const auto& root : s.roots)
      num = num * root_factor(F.ring, th, root, static_cast<double>(s.m) * z);
  for (const auto& s : F.T)
    for (const auto& root : s.roots)
      den = den * root_factor(F.ring, th, root, static_cast<double>(s.m) * z);
  return num * den.recip();
}

bool e0b_singular(const FixedComponent& F, cplx z, const ThetaFunction& th,
                  double tol) {
  for (const auto& s : F.T)
    if (std::abs(th.eval(static_cast<double>(s.m) * z)) < tol) return true;
  return false;
}

double ellipticity_check(const FixedComponent& F, const ThetaFunction& th,
                         cplx lam, const std::vector<cplx>& zs) {
  double worst = 0.0;
  for (cplx z : zs) {
    if (e0b_singular(F, z, th) || e0b_singular(F, z + lam, th)) continue;
    Poly<cplx> a = euler_cocycle_e0b(F, z, th);
    Poly<cplx> b = euler_cocycle_e0b(F, z + lam, th);
    for (std::size_t i = 0; i < F.ring.size(); ++i)
      worst = std::max(worst, std::abs(b.coeff(static_cast<int>(i)) -
                                       a.coeff(static_cast<int>(i))) /
                                  (1.0 + std::abs(a.coeff(static_cast<int>(i)))));
  }
  return worst;
}

namespace {

// Product over the residue-0 block: the e(a,b) realization.
Poly<cplx> r0_block(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                    const ThetaFunction& th, bool effective) {
  Poly<cplx> num = Poly<cplx>::constant(F.ring, 1.0);
  Poly<cplx> den = num;
  auto piece = [&](const BundleSummand& s, Poly<cplx>& target) {
    if (decompose(s.m, sp.n).r != 0) return;
    BundleSummand e = effective ? effective_summand(s, sp.n) : s;
    for (const auto& root : e.roots)
      target = target *
               root_factor(F.ring, th, root, static_cast<double>(e.m) * z);
  };
  for (const auto& s : F.V) piece(s, num);
  for (const auto& s : F.T) piece(s, den);
  return num * den.recip();
}

}  // namespace

Poly<cplx> e_ab(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                const ThetaFunction& th) {
  Poly<cplx> p = r0_block(F, sp, z, th, true);
  if (sp.even_order() && (F.delta_prime - F.delta) % 2 != 0) p = -p;
  return p;
}

Poly<cplx> e_ab_chart(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                      const ThetaFunction& th) {
  return r0_block(F, sp, z, th, false);
}

double cocycle_check(const FixedComponent& F, const SpecialPoint& sp,
                     const std::vector<cplx>& zs, const ThetaFunction& th) {
  FixedComponent G = F;
  long sign_flips = 0;
  auto reverse = [&](std::vector<BundleSummand>& list) {
    for (auto& s : list) {
      if (decompose(s.m, sp.n).r != 0) continue;
      s.m = -s.m;
      for (auto& root : s.roots)
        for (auto& c : root) c = -c;
      sign_flips += s.d;
    }
  };
  reverse(G.T);
  reverse(G.V);
  double sgn = (sign_flips % 2 != 0) ? -1.0 : 1.0;
  double worst = 0.0;
  for (cplx z : zs) {
    bool singular = false;
    for (const auto& list : {F.T, F.V})
      for (const auto& s : list)
        if (decompose(s.m, sp.n).r == 0 &&
            std::abs(th.eval(static_cast<double>(s.m) * z)) < 1e-6)
          singular = true;
    if (singular) continue;
    Poly<cplx> lhs = e_ab_chart(F, sp, z, th);
    Poly<cplx> rhs = e_ab_chart(G, sp, z, th).scaled(sgn);
    for (std::size_t i = 0; i < F.ring.size(); ++i) {
      cplx l = lhs.coeff(static_cast<int>(i));
      cplx r = rhs.coeff(static_cast<int>(i));
      worst = std::max(worst, std::abs(l - r) / (1.0 + std::abs(r)));
    }
  }
  return worst;
}

Poly<cplx> tau_a_e0b(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                     const ThetaFunction& th) {
  Poly<cplx> num = Poly<cplx>::constant(F.ring, 1.0);
  Poly<cplx> den = num;
  for (const auto& s : F.V) {
    BundleSummand e = effective_summand(s, sp.n);
    for (const auto& root : e.roots)
      num = num * root_factor(F.ring, th, root,
                              static_cast<double>(e.m) * (z + sp.a));
  }
  for (const auto& s : F.T) {
    BundleSummand e = effective_summand(s, sp.n);
    for (const auto& root : e.roots)
      den = den * root_factor(F.ring, th, root,
                              static_cast<double>(e.m) * (z + sp.a));
  }
  return num * den.recip();
}

Poly<cplx> theta_section(const FixedComponent& F, const SpecialPoint& sp,
                         cplx z, const ThetaFunction& th) {
  const ThetaCharacter& ch = th.character();
  int n = sp.n;
  SpecialQuantities q = quantities(F, sp, ch);
  cplx gl = gamma_lambda(ch, sp);
  cplx lam = sp.lambda(th.lattice());

  // S(a·alpha)·S(class), the class being H for odd n and
  // H + c1(V_h − T_h)/2 for even n.
  Poly<cplx> s_arg = Poly<cplx>::constant(
      F.ring, static_cast<double>(q.H_z) * z + to_double(q.alpha) * sp.a);
  {
    std::vector<long> hg = q.H_gen;
    s_arg = s_arg + Poly<cplx>::linear(F.ring, hg);
  }
  if (sp.even_order()) {
    s_arg = s_arg + Poly<cplx>::constant(
                        F.ring, 0.5 * static_cast<double>(q.ch_z) * z) +
            Poly<cplx>::linear(F.ring, q.ch_gen).scaled(0.5);
  }
  Poly<cplx> result = s_arg.scaled(gl).exp().scaled(static_cast<double>(q.eps));

  auto q_r_factor = [&](const BundleSummand& e, long r) {
    Poly<cplx> f = Poly<cplx>::constant(F.ring, 1.0);
    cplx offset = static_cast<double>(r) * sp.a;
    for (const auto& root : e.roots)
      f = f * root_factor(F.ring, th, root,
                          static_cast<double>(e.m) * z + offset);
    return f;
  };
  auto q_h_factor = [&](const BundleSummand& e) {
    // Q_h(x) = S(−x/2)·θ(x + λ/2) over the equivariant roots x + m z
    Poly<cplx> f = Poly<cplx>::constant(F.ring, 1.0);
    for (const auto& root : e.roots) {
      Poly<cplx> x = Poly<cplx>::linear(F.ring, root) +
                     Poly<cplx>::constant(F.ring, static_cast<double>(e.m) * z);
      f = f * x.scaled(-0.5 * gl).exp() *
          root_factor(F.ring, th, root,
                      static_cast<double>(e.m) * z + 0.5 * lam);
    }
    return f;
  };

  Poly<cplx> den = Poly<cplx>::constant(F.ring, 1.0);
  for (const auto& s : F.V) {
    auto dec = decompose(s.m, n);
    BundleSummand e = effective_summand(s, n);
    if (dec.r > 0 && 2 * dec.r < n) result = result * q_r_factor(e, dec.r);
    else if (sp.even_order() && dec.r == n / 2) result = result * q_h_factor(e);
  }
  for (const auto& s : F.T) {
    auto dec = decompose(s.m, n);
    BundleSummand e = effective_summand(s, n);
    if (dec.r > 0 && 2 * dec.r < n) den = den * q_r_factor(e, dec.r);
    else if (sp.even_order() && dec.r == n / 2) den = den * q_h_factor(e);
  }
  return result * den.recip();
}

namespace {

bool transfer_singular(const FixedComponent& F, const SpecialPoint& sp, cplx z,
                       const ThetaFunction& th, double tol) {
  auto bad = [&](cplx w) { return std::abs(th.eval(w)) < tol; };
  cplx lam = sp.lambda(th.lattice());
  for (const auto& list : {F.T, F.V})
    for (const auto& s : list) {
      auto dec = decompose(s.m, sp.n);
      BundleSummand e = effective_summand(s, sp.n);
      cplx mz = static_cast<double>(e.m) * z;
      if (bad(static_cast<double>(e.m) * (z + sp.a))) return true;
      if (dec.r == 0 && bad(mz)) return true;
      if (dec.r > 0 && 2 * dec.r < sp.n &&
          bad(mz + static_cast<double>(dec.r) * sp.a))
        return true;
      if (sp.even_order() && dec.r == sp.n / 2 && bad(mz + 0.5 * lam))
        return true;
    }
  return false;
}

}  // namespace

TransferReport transfer_check(const FixedComponent& F, const SpecialPoint& sp,
                              const std::vector<cplx>& zs,
                              const ThetaFunction& th) {
  TransferReport rep;
  for (cplx z : zs) {
    if (transfer_singular(F, sp, z, th, 1e-6)) {
      ++rep.skipped;
      continue;
    }
    Poly<cplx> lhs = e_ab(F, sp, z, th).recip() * tau_a_e0b(F, sp, z, th);
    Poly<cplx> rhs = theta_section(F, sp, z, th);
    for (std::size_t i = 0; i < F.ring.size(); ++i) {
      cplx l = lhs.coeff(static_cast<int>(i));
      cplx r = rhs.coeff(static_cast<int>(i));
      rep.max_residual =
          std::max(rep.max_residual, std::abs(l - r) / (1.0 + std::abs(r)));
    }
    ++rep.used;
  }
  return rep;
}

std::vector<cplx> default_samples(const Lattice& L, int count, double radius) {
  cplx center = 0.23 * L.g1() + 0.31 * L.g2();
  return halton_disc(static_cast<std::size_t>(count), center, radius);
}

Divisor model_divisor(const FixedPointModel& model, const Lattice& L) {
  if (model.components.empty()) return Divisor{};
  auto weight_divisor = [&](const FixedComponent& F) {
    Divisor D;
    std::map<long, long> net;
    for (const auto& s : F.V) net[std::labs(s.m)] += s.d;
    for (const auto& s : F.T) net[std::labs(s.m)] -= s.d;
    for (const auto& [m, w] : net) {
      if (m == 0 || w == 0) continue;
      for (const auto& p : torsion_points(L, static_cast<int>(m)))
        D.add(p, -w, L);
    }
    return D;
  };
  Divisor D0 = weight_divisor(model.components[0]);
  for (std::size_t i = 1; i < model.components.size(); ++i) {
    Divisor Di = weight_divisor(model.components[i]);
    bool same = Di.degree() == D0.degree() &&
                Di.entries().size() == D0.entries().size();
    if (same)
      for (const auto& [p, mult] : D0.entries())
        if (Di.multiplicity_at(p, L) != mult) {
          same = false;
          break;
        }
    if (!same)
      throw std::invalid_argument(
          "rigidity model: components induce different divisors");
  }
  return D0;
}

namespace {

cplx cpow(cplx b, long e) {
  if (e < 0) return 1.0 / cpow(b, -e);
  cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Localized integrand over one component: fixed-part genus factor times the
// Euler factors of the moving summands.
cplx component_value(const FixedComponent& F, cplx z, const ThetaFunction& th) {
  int ord = F.ring.max_exponent_sum();
  Poly<cplx> acc = Poly<cplx>::constant(F.ring, 1.0);
  Jet<cplx> unit = th.jet(0.0, ord + 1).shifted_down(1);
  for (const auto& root : F.T0_roots) {
    auto w = Poly<cplx>::linear(F.ring, root);
    acc = acc * Poly<cplx>::apply_jet(unit, w).recip();  // w / theta(w)
  }
  for (const auto& root : F.V0_roots) {
    auto w = Poly<cplx>::linear(F.ring, root);
    acc = acc * Poly<cplx>::apply_jet(th.jet(0.0, ord), w);
  }
  acc = acc * euler_cocycle_e0b(F, z, th);
  return acc.integrate();
}

}  // namespace

RigidityReport rigidity_localized(const FixedPointModel& model,
                                  const Lattice& L, const ThetaFunction& th,
                                  int grid) {
  RigidityReport rep;
  Divisor D = model_divisor(model, L);
  rep.divisor_trivial = line_bundle_trivial(D, L);
  rep.compensated = rep.divisor_trivial && !D.entries().empty();

  long beta = 0;
  if (rep.compensated) {
    auto [s1, s2] = L.coords(D.lift_sum());
    (void)s1;
    beta = -llround_checked(s2, "rigidity trivializer");
  }
  auto compensator = [&](cplx z) {
    cplx h = std::exp(static_cast<double>(beta) * z);
    for (const auto& [p, mult] : D.entries())
      h *= cpow(th.eval(z - p.lift), mult);
    return h;
  };

  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      double s = (2.0 * i + 1.0) / (2.0 * grid);
      double t = (2.0 * j + 1.0) / (2.0 * grid);
      cplx z = s * L.g1() + t * L.g2();
      bool singular = false;
      for (const auto& F : model.components)
        singular = singular || e0b_singular(F, z, th, 1e-8);
      if (rep.compensated)
        for (const auto& [p, mult] : D.entries())
          if (mult < 0 && std::abs(th.eval(z - p.lift)) < 1e-8) singular = true;
      if (singular) {
        ++rep.skipped;
        continue;
      }
      cplx v = 0.0;
      for (const auto& F : model.components) v += component_value(F, z, th);
      if (rep.compensated) v *= compensator(z);
      rep.samples.push_back(z);
      rep.values.push_back(v);
    }

  for (const cplx& v : rep.values) {
    rep.spread = std::max(rep.spread, std::abs(v - rep.values.front()));
    rep.max_abs = std::max(rep.max_abs, std::abs(v));
  }
  return rep;
}

}  // namespace sigrig
