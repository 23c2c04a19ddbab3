#include "sigrig/equivrep.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "sigrig/theta.hpp"

namespace sigrig {

long VirtualRep::coeff(long m) const {
  auto it = coefficients.find(m);
  return it == coefficients.end() ? 0 : it->second;
}

long VirtualRep::sigma_exponent_sum() const {
  long s = 0;
  for (const auto& [m, d] : coefficients)
    if (m != 0) s += d;
  return s;
}

long VirtualRep::weight_sum() const {
  long s = 0;
  for (const auto& [m, d] : coefficients) s += d * m;
  return s;
}

VirtualRep VirtualRep::operator+(const VirtualRep& o) const {
  VirtualRep r = *this;
  for (const auto& [m, d] : o.coefficients) {
    r.coefficients[m] += d;
    if (r.coefficients[m] == 0) r.coefficients.erase(m);
  }
  return r;
}

VirtualRep VirtualRep::operator-() const {
  VirtualRep r;
  for (const auto& [m, d] : coefficients) r.coefficients[m] = -d;
  return r;
}

VirtualRep parse_virtual_rep(const std::string& text) {
  VirtualRep f;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto parse_int = [&]() -> long {
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("virtual rep: expected integer at position " +
                                  std::to_string(i));
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      v = v * 10 + (text[i++] - '0');
    return neg ? -v : v;
  };

  skip_ws();
  if (i >= text.size())
    throw std::invalid_argument("virtual rep: empty expression");
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("virtual rep: expected + or - at position " +
                                  std::to_string(i));
    }
    first = false;
    long c = 1;
    bool saw_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = parse_int();
      saw_coeff = true;
    }
    skip_ws();
    long m = 0;
    if (i < text.size() && text[i] == 'z') {
      ++i;
      m = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        m = parse_int();
      }
    } else if (!saw_coeff) {
      throw std::invalid_argument(
          "virtual rep: expected term at position " + std::to_string(i));
    }
    f.coefficients[m] += sign * c;
    if (f.coefficients[m] == 0) f.coefficients.erase(m);
  }
  return f;
}

std::string to_string(const VirtualRep& f) {
  if (f.coefficients.empty()) return "0";
  std::string out;
  // descending exponents read the way the inputs are usually written
  for (auto it = f.coefficients.rbegin(); it != f.coefficients.rend(); ++it) {
    long m = it->first, d = it->second;
    if (!out.empty()) out += d < 0 ? " - " : " + ";
    else if (d < 0) out += "-";
    long a = std::abs(d);
    if (a != 1 || m == 0) out += std::to_string(a);
    if (m == 1) out += "z";
    else if (m != 0) out += "z^" + std::to_string(m);
  }
  return out;
}

Divisor divisor_of(const VirtualRep& f, const Lattice& L) {
  Divisor D;
  for (const auto& [m, d] : f.coefficients) {
    if (m == 0 || d == 0) continue;
    int n = static_cast<int>(std::labs(m));
    for (const auto& p : torsion_points(L, n)) D.add(p, -d, L);
  }
  return D;
}

long degree_of(const VirtualRep& f) {
  long s = 0;
  for (const auto& [m, d] : f.coefficients) s += d * m * m;
  return -s;
}

long p1_equivariant(const VirtualRep& f) { return -degree_of(f); }

int w2_equivariant(const VirtualRep& f) {
  return static_cast<int>(((f.weight_sum() % 2) + 2) % 2);
}

bool is_trivial(const VirtualRep& f, const Lattice& L) {
  bool by_degree = degree_of(f) == 0;
  bool by_bundle = line_bundle_trivial(divisor_of(f, L), L);
  if (by_degree != by_bundle)
    throw std::logic_error("virtual rep triviality: degree and divisor tests disagree");
  return by_degree;
}

namespace {

cplx ipow(cplx b, long e) {
  if (e < 0) return 1.0 / ipow(b, -e);
  cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

cplx trivialization_eval(const VirtualRep& f, cplx z, const Lattice& L,
                         int q_terms) {
  cplx g = 1.0;
  for (const auto& [m, d] : f.coefficients) {
    if (m == 0 || d == 0) continue;
    g *= ipow(sigma_eval(static_cast<double>(m) * z, L, q_terms), d);
  }
  return g;
}

bool near_divisor_point(const VirtualRep& f, cplx z, const Lattice& L,
                        double tol) {
  for (const auto& [m, d] : f.coefficients) {
    if (m == 0 || d == 0) continue;
    if (std::abs(sigma_eval(static_cast<double>(m) * z, L)) < tol) return true;
  }
  return false;
}

LeadingBehavior trivialization_leading(const VirtualRep& f, const Lattice& L,
                                       int jet_order, int q_terms) {
  LeadingBehavior out;
  Jet<cplx> unit = Jet<cplx>::one().truncated(jet_order);
  for (const auto& [m, d] : f.coefficients) {
    if (m == 0 || d == 0) continue;
    Jet<cplx> s = sigma_jet(0.0, L, jet_order + 1, q_terms);
    for (std::size_t k = 0; k < s.stored(); ++k)
      s.at(k) *= ipow(cplx(static_cast<double>(m), 0.0), static_cast<long>(k));
    Jet<cplx> u = s.shifted_down(1);  // σ(mz)/z, a unit with value m at 0
    if (d > 0)
      for (long i = 0; i < d; ++i) unit = unit * u;
    else {
      Jet<cplx> ui = u.recip();
      for (long i = 0; i < -d; ++i) unit = unit * ui;
    }
    out.order += d;
  }
  out.coeff = unit.coeff(0);
  out.unit = unit;
  return out;
}

namespace {

std::vector<cplx> sample_points(const VirtualRep& f, const Lattice& L,
                                int samples) {
  std::vector<cplx> pts;
  int tries = 0;
  for (int k = 2; static_cast<int>(pts.size()) < samples && tries < samples * 20;
       ++k, ++tries) {
    double s = halton(k, 2), t = halton(k, 3);
    cplx z = s * L.g1() + t * L.g2();
    if (near_divisor_point(f, z, L, 1e-4)) continue;
    pts.push_back(z);
  }
  return pts;
}

}  // namespace

double check_double_periodicity(const VirtualRep& f, const Lattice& L,
                                int samples, int q_terms) {
  double worst = 0.0;
  for (cplx z : sample_points(f, L, samples)) {
    cplx g = trivialization_eval(f, z, L, q_terms);
    for (cplx lam : {L.g1(), L.g2()}) {
      if (near_divisor_point(f, z + lam, L, 1e-4)) continue;
      cplx gs = trivialization_eval(f, z + lam, L, q_terms);
      worst = std::max(worst, std::abs(gs - g) / (1.0 + std::abs(g)));
    }
  }
  return worst;
}

ParityReport check_parity(const VirtualRep& f, const Lattice& L, int samples,
                          int q_terms) {
  double plus = 0.0, minus = 0.0;
  for (cplx z : sample_points(f, L, samples)) {
    cplx g = trivialization_eval(f, z, L, q_terms);
    cplx gm = trivialization_eval(f, -z, L, q_terms);
    double den = 1.0 + std::abs(g);
    plus = std::max(plus, std::abs(gm - g) / den);
    minus = std::max(minus, std::abs(gm + g) / den);
  }
  ParityReport r;
  r.sign = plus <= minus ? 1 : -1;
  r.residual = std::min(plus, minus);
  r.expected = f.sigma_exponent_sum() % 2 == 0 ? 1 : -1;
  return r;
}

}  // namespace sigrig
