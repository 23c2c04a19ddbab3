#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigrig/common.hpp"
#include "sigrig/series.hpp"

namespace sigrig {

// Descriptor for a truncated graded-commutative polynomial ring
// R[y_1..y_g] / (total degree > cap).  Generators carry even cohomological
// degrees; monomials above the cap are identically zero.
struct PolyRing {
  std::vector<std::string> names;
  std::vector<int> degrees;
  int cap = 0;
  std::vector<std::vector<int>> monomials;  // exponent vectors, degree-sorted
  std::map<std::vector<int>, int> index;
  int integral_index = -1;  // monomial whose coefficient `integrate` reads

  static PolyRing make(std::vector<std::string> names, std::vector<int> degrees,
                       int cap);

  std::size_t size() const { return monomials.size(); }
  int gen_count() const { return static_cast<int>(names.size()); }
  int degree_of(const std::vector<int>& expo) const;
  // Index of a monomial, or -1 when it lies above the cap.
  int find(const std::vector<int>& expo) const;
  int gen_index(const std::string& name) const;
  void set_integral(const std::vector<int>& expo);
  // Largest exponent sum over retained monomials; jets composed with
  // nilpotents never need more terms than this.
  int max_exponent_sum() const;
};

inline cplx exp_scalar(cplx v) { return std::exp(v); }
inline double exp_scalar(double v) { return std::exp(v); }
template <class T, class Tag>
TruncatedSeries<T, Tag> exp_scalar(const TruncatedSeries<T, Tag>& v) {
  return v.exp_nilpotent();
}

template <class T>
class Poly {
 public:
  Poly() : ring_(nullptr) {}
  explicit Poly(const PolyRing& ring) : ring_(&ring), c_(ring.size()) {}

  static Poly constant(const PolyRing& ring, T v) {
    Poly p(ring);
    p.c_[0] = std::move(v);
    return p;
  }
  static Poly generator(const PolyRing& ring, int gi) {
    Poly p(ring);
    std::vector<int> expo(ring.gen_count(), 0);
    expo[gi] = 1;
    int idx = ring.find(expo);
    if (idx < 0) throw std::domain_error("poly: generator above cap");
    p.c_[idx] = RingTraits<T>::one();
    return p;
  }
  // Integer linear combination of the generators.
  static Poly linear(const PolyRing& ring, const std::vector<long>& coeffs) {
    Poly p(ring);
    for (int g = 0; g < ring.gen_count(); ++g) {
      if (coeffs[g] == 0) continue;
      std::vector<int> expo(ring.gen_count(), 0);
      expo[g] = 1;
      int idx = ring.find(expo);
      if (idx < 0) throw std::domain_error("poly: generator above cap");
      p.c_[idx] = p.c_[idx] + RingTraits<T>::from_int(coeffs[g]);
    }
    return p;
  }

  const PolyRing& ring() const { return *ring_; }
  T coeff(int idx) const { return c_[idx]; }
  T& at(int idx) { return c_[idx]; }
  T scalar_part() const { return c_.empty() ? T{} : c_[0]; }

  bool is_exact_zero() const {
    for (const auto& v : c_)
      if (!is_zero(v)) return false;
    return true;
  }
  bool is_unit() const { return !c_.empty() && !is_zero(c_[0]); }

  Poly operator+(const Poly& o) const {
    Poly r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] - o.c_[i];
    return r;
  }
  Poly operator-() const {
    Poly r(*this);
    for (auto& v : r.c_) v = T{} - v;
    return r;
  }
  Poly scaled(const T& s) const {
    Poly r(*this);
    for (auto& v : r.c_) v = v * s;
    return r;
  }

  Poly operator*(const Poly& o) const {
    Poly r(*ring_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (is_zero(o.c_[j])) continue;
        std::vector<int> expo = ring_->monomials[i];
        const auto& ej = ring_->monomials[j];
        for (std::size_t g = 0; g < expo.size(); ++g) expo[g] += ej[g];
        int idx = ring_->find(expo);
        if (idx >= 0) r.c_[idx] = r.c_[idx] + c_[i] * o.c_[j];
      }
    }
    return r;
  }

  Poly nilpotent_part() const {
    Poly r(*this);
    if (!r.c_.empty()) r.c_[0] = T{};
    return r;
  }

  Poly recip() const {
    if (!is_unit()) throw std::domain_error("poly reciprocal: not a unit");
    T inv0 = inv(c_[0]);
    Poly n = nilpotent_part().scaled(inv0);
    // 1/(c0 (1 + n)) = (1/c0) sum (-n)^k
    Poly r = constant(*ring_, inv0);
    Poly term = constant(*ring_, inv0);
    for (int k = 0; k < ring_->max_exponent_sum(); ++k) {
      term = -(term * n);
      if (term.is_exact_zero()) break;
      r = r + term;
    }
    return r;
  }

  // exp for elements whose scalar part the coefficient ring can exponentiate
  // (complex); nilpotent part is exponentiated by its finite series.
  Poly exp() const {
    T s = scalar_part();
    Poly n = nilpotent_part();
    Poly r = constant(*ring_, RingTraits<T>::one());
    Poly term = r;
    for (long long k = 1; k <= ring_->max_exponent_sum(); ++k) {
      term = (term * n).scaled(inv(RingTraits<T>::from_int(k)));
      if (term.is_exact_zero()) break;
      r = r + term;
    }
    return r.scaled(exp_scalar(s));
  }

  // Evaluate a one-variable jet at `this`, which must be nilpotent.
  static Poly apply_jet(const TruncatedSeries<T, JetVarTag>& jet,
                        const Poly& nilp) {
    if (!is_zero(nilp.scalar_part()))
      throw std::domain_error("apply_jet: argument must be nilpotent");
    const PolyRing& ring = nilp.ring();
    Poly r = constant(ring, jet.coeff(0));
    Poly p = constant(ring, RingTraits<T>::one());
    int kmax = ring.max_exponent_sum();
    for (int k = 1; k <= kmax && k < static_cast<int>(jet.stored()); ++k) {
      p = p * nilp;
      if (p.is_exact_zero()) break;
      r = r + p.scaled(jet.coeff(k));
    }
    return r;
  }

  // Coefficient of the ring's designated top monomial.
  T integrate() const {
    if (ring_->integral_index < 0)
      throw std::domain_error("integrate: ring has no designated monomial");
    return c_[ring_->integral_index];
  }

  // Substitute numeric values for the generators.
  T eval_at(const std::vector<T>& values) const {
    T acc{};
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero(c_[i])) continue;
      T term = c_[i];
      const auto& expo = ring_->monomials[i];
      for (std::size_t g = 0; g < expo.size(); ++g)
        for (int e = 0; e < expo[g]; ++e) term = term * values[g];
      acc = acc + term;
    }
    return acc;
  }

 private:
  const PolyRing* ring_;
  std::vector<T> c_;
};

}  // namespace sigrig
