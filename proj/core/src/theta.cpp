#include "sigrig/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace sigrig {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// exp(a + b*x) as a jet.
Jet<cplx> jet_exp_affine(cplx a, cplx b, int order) {
  Jet<cplx> lin = Jet<cplx>::variable(order).scaled(b);
  return lin.exp_nilpotent().scaled(std::exp(a));
}

}  // namespace

ThetaCharacter sigma_character() {
  ThetaCharacter ch;
  ch.gamma1 = 0.0;
  ch.gamma2 = -1.0;
  ch.c_of = [](long j, long k) {
    return (j % 2 == 0 && k % 2 == 0) ? 1 : -1;
  };
  ch.level = 1;
  return ch;
}

ThetaCharacter ochanine_character() {
  ThetaCharacter ch;
  ch.gamma1 = 0.0;
  ch.gamma2 = 0.0;
  ch.c_of = [](long, long k) { return k % 2 == 0 ? 1 : -1; };
  ch.level = 2;
  return ch;
}

CharacterCheck verify_character(const ThetaCharacter& ch, const Lattice& L,
                                int range, double tol) {
  CharacterCheck out;
  const cplx two_pi_i(0.0, 2.0 * kPi);
  for (long j = -range; j <= range; ++j)
    for (long k = -range; k <= range; ++k)
      for (long j2 = -range; j2 <= range; ++j2)
        for (long k2 = -range; k2 <= range; ++k2) {
          cplx lam = L.vec(j, k), lam2 = L.vec(j2, k2);
          cplx pairing = ch.gamma(j, k) * lam2 - lam * ch.gamma(j2, k2);
          cplx ratio = pairing / two_pi_i;
          double dev = std::max(
              std::abs(ratio.real() - std::round(ratio.real())),
              std::abs(ratio.imag()));
          out.max_period_deviation = std::max(out.max_period_deviation, dev);
          double lhs = static_cast<double>(ch.c_of(j + j2, k + k2)) /
                       (ch.c_of(j, k) * ch.c_of(j2, k2));
          cplx rhs = std::exp(0.5 * pairing);
          out.max_quotient_error =
              std::max(out.max_quotient_error, std::abs(lhs - rhs));
        }
  out.pass = out.max_period_deviation <= tol && out.max_quotient_error <= tol;
  return out;
}

ThetaFunction::ThetaFunction(Kind kind, Lattice char_lattice,
                             ThetaCharacter character, int q_terms)
    : kind_(kind),
      lattice_(char_lattice),
      character_(std::move(character)),
      q_terms_(q_terms) {
  if (q_terms < 0) throw std::invalid_argument("theta: q_terms must be >= 0");
}

ThetaFunction::ThetaFunction(Lattice char_lattice, ThetaCharacter character,
                             std::function<cplx(cplx)> eval,
                             std::function<Jet<cplx>(cplx, int)> jet)
    : kind_(Kind::custom),
      lattice_(char_lattice),
      character_(std::move(character)),
      q_terms_(kDefaultQTerms),
      eval_fn_(std::move(eval)),
      jet_fn_(std::move(jet)) {}

cplx ThetaFunction::eval(cplx z) const {
  switch (kind_) {
    case Kind::sigma:
      return sigma_eval(z, lattice_, q_terms_);
    case Kind::ochanine:
      return ochanine_eval(z, lattice_.tau(), q_terms_);
    case Kind::custom:
      return eval_fn_(z);
  }
  throw std::logic_error("theta eval: bad kind");
}

Jet<cplx> ThetaFunction::jet(cplx w, int order) const {
  switch (kind_) {
    case Kind::sigma:
      return sigma_jet(w, lattice_, order, q_terms_);
    case Kind::ochanine:
      return ochanine_jet(w, lattice_.tau(), order, q_terms_);
    case Kind::custom:
      return jet_fn_(w, order);
  }
  throw std::logic_error("theta jet: bad kind");
}

cplx ThetaFunction::iterated_translation_factor(long j, long k, long l,
                                                cplx z) const {
  cplx lam = lattice_.vec(j, k);
  cplx gl = character_.gamma(j, k);
  double ld = static_cast<double>(l);
  cplx expo = gl * (ld * z + 0.5 * ld * ld * lam);
  return static_cast<double>(character_.c_of(l * j, l * k)) * std::exp(expo);
}

cplx sigma_eval(cplx z, const Lattice& L, int q_terms) {
  cplx u_half = std::exp(0.5 * z);
  cplx u = u_half * u_half;
  cplx q = L.nome();
  cplx acc = u_half - 1.0 / u_half;
  cplx qn = 1.0;
  for (int n = 1; n <= q_terms; ++n) {
    qn *= q;
    cplx den = 1.0 - qn;
    acc *= (1.0 - qn * u) * (1.0 - qn / u) / (den * den);
  }
  // Truncation error is O(|q|^(q_terms+1) * (|u| + 1/|u|)), negligible on
  // compact sets once q_terms is moderately large.
  return acc;
}

Jet<cplx> sigma_jet(cplx w, const Lattice& L, int order, int q_terms) {
  Jet<cplx> e_half = jet_exp_affine(0.5 * w, 0.5, order);
  Jet<cplx> u = e_half * e_half;
  Jet<cplx> u_inv = u.recip();
  cplx q = L.nome();
  Jet<cplx> acc = e_half - e_half.recip();
  Jet<cplx> one = Jet<cplx>::one().truncated(order);
  cplx qn = 1.0;
  for (int n = 1; n <= q_terms; ++n) {
    qn *= q;
    cplx den = (1.0 - qn) * (1.0 - qn);
    acc = acc * (one - u.scaled(qn)) * (one - u_inv.scaled(qn));
    acc = acc.scaled(1.0 / den);
  }
  return acc;
}

ThetaFunction sigma_theta(const Lattice& L, int q_terms) {
  return ThetaFunction(ThetaFunction::Kind::sigma, L, sigma_character(),
                       q_terms);
}

cplx ochanine_eval(cplx z, cplx tau, int q_terms) {
  cplx u = std::exp(z);
  cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  if (std::abs(1.0 + u) < 1e-13)
    throw std::domain_error("ochanine_eval: pole at odd half period");
  cplx acc = -2.0 * (1.0 - u) / (1.0 + u);
  cplx qn = 1.0;
  for (int n = 1; n <= q_terms; ++n) {
    qn *= q;
    cplx num = (1.0 - qn * u) * (1.0 - qn / u) * (1.0 + qn) * (1.0 + qn);
    cplx den = (1.0 + qn * u) * (1.0 + qn / u) * (1.0 - qn) * (1.0 - qn);
    if (std::abs(den) == 0.0)
      throw std::domain_error("ochanine_eval: pole in product");
    acc *= num / den;
  }
  return acc;
}

Jet<cplx> ochanine_jet(cplx w, cplx tau, int order, int q_terms) {
  Jet<cplx> u = jet_exp_affine(w, 1.0, order);
  Jet<cplx> one = Jet<cplx>::one().truncated(order);
  cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  Jet<cplx> acc = (one - u).scaled(-2.0) * (one + u).recip();
  Jet<cplx> u_inv = u.recip();
  cplx qn = 1.0;
  for (int n = 1; n <= q_terms; ++n) {
    qn *= q;
    cplx scal = ((1.0 + qn) * (1.0 + qn)) / ((1.0 - qn) * (1.0 - qn));
    acc = acc * (one - u.scaled(qn)) * (one - u_inv.scaled(qn));
    acc = acc * ((one + u.scaled(qn)) * (one + u_inv.scaled(qn))).recip();
    acc = acc.scaled(scal);
  }
  return acc;
}

ThetaFunction ochanine_theta(cplx tau, int q_terms) {
  return ThetaFunction(ThetaFunction::Kind::ochanine,
                       Lattice(tau, LatticeScale::witten), ochanine_character(),
                       q_terms);
}

cplx ochanine_eval_quotient(cplx z, cplx tau, int q_terms) {
  Lattice L2(tau, LatticeScale::ochanine);
  const cplx pi_i(0.0, kPi);
  cplx P = 2.0 * pi_i * tau;
  cplx R1 = pi_i + P;
  cplx R2 = -pi_i;
  auto sg = [&](cplx v) { return sigma_eval(v, L2, q_terms); };
  return sg(z) * sg(-R1) * sg(-R2) * sg(z - P) /
         (sg(z - R1) * sg(z - R2) * sg(-P));
}

TranslationReport verify_translation(const ThetaFunction& th, long j, long k,
                                     const std::vector<cplx>& samples,
                                     double skip_threshold) {
  TranslationReport rep;
  const Lattice& L = th.lattice();
  cplx lam = L.vec(j, k);
  cplx gl = th.character().gamma(j, k);
  double c = static_cast<double>(th.character().c_of(j, k));
  for (cplx z : samples) {
    cplx lhs, base;
    try {
      base = th.eval(z);
      lhs = th.eval(z + lam);
    } catch (const std::domain_error&) {
      ++rep.skipped;
      continue;
    }
    if (!finite(base) || !finite(lhs) || std::abs(base) < skip_threshold) {
      ++rep.skipped;
      continue;
    }
    cplx rhs = c * std::exp(gl * (z + 0.5 * lam)) * base;
    double res = std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
    rep.max_residual = std::max(rep.max_residual, res);
    ++rep.used;
  }
  return rep;
}

namespace {

double path_winding(const std::function<cplx(cplx)>& f,
                    const std::vector<cplx>& path) {
  double total = 0.0;
  double prev = std::arg(f(path[0]));
  for (std::size_t i = 1; i < path.size(); ++i) {
    double cur = std::arg(f(path[i]));
    double d = cur - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    total += d;
    prev = cur;
  }
  return total / (2.0 * kPi);
}

}  // namespace

double winding_number(const std::function<cplx(cplx)>& f, cplx center,
                      double radius, int samples) {
  std::vector<cplx> path;
  path.reserve(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    double phi = 2.0 * kPi * i / samples;
    path.push_back(center + radius * cplx(std::cos(phi), std::sin(phi)));
  }
  return path_winding(f, path);
}

double cell_winding(const std::function<cplx(cplx)>& f, const Lattice& L,
                    double offset_s, double offset_t, int samples_per_edge) {
  cplx o = offset_s * L.g1() + offset_t * L.g2();
  std::vector<cplx> corners = {o, o + L.g1(), o + L.g1() + L.g2(), o + L.g2(), o};
  std::vector<cplx> path;
  path.reserve(4 * samples_per_edge + 1);
  for (int e = 0; e < 4; ++e)
    for (int i = 0; i < samples_per_edge; ++i) {
      double t = static_cast<double>(i) / samples_per_edge;
      path.push_back(corners[e] + t * (corners[e + 1] - corners[e]));
    }
  path.push_back(corners[0]);
  return path_winding(f, path);
}

}  // namespace sigrig
