#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sigrig/rational.hpp"

namespace sigrig {

// Coefficient-ring helpers.  Overloads must be visible before the series
// template so unqualified calls inside it resolve for plain scalars.
inline double inv(double x) { return 1.0 / x; }
inline std::complex<double> inv(const std::complex<double>& x) {
  return 1.0 / x;
}
inline Rational inv(const Rational& x) { return Rational(1) / x; }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const std::complex<double>& x) {
  return x == std::complex<double>(0.0);
}
inline bool is_zero(const Rational& x) { return x == 0; }

template <class T, class Tag>
class TruncatedSeries;

template <class T>
struct RingTraits {
  static T one() { return T(1); }
  static T from_int(long long k) { return T(k); }
};
template <class U, class Tg>
struct RingTraits<TruncatedSeries<U, Tg>> {
  static TruncatedSeries<U, Tg> one() {
    return TruncatedSeries<U, Tg>::constant(RingTraits<U>::one());
  }
  static TruncatedSeries<U, Tg> from_int(long long k) {
    return TruncatedSeries<U, Tg>::constant(RingTraits<U>::from_int(k));
  }
};

// Truncated power series in one formal variable over coefficient ring T.
// `cap` is the highest retained exponent; kExactCap marks a polynomial that
// has not been truncated (the default-constructed series is the exact zero).
// Binary operations truncate to the smaller cap.  The Tag parameter keeps
// series in different variables from mixing (jets in x vs. expansions in q).
template <class T, class Tag>
class TruncatedSeries {
 public:
  static constexpr int kExactCap = std::numeric_limits<int>::max() / 4;

  TruncatedSeries() : cap_(kExactCap) {}
  explicit TruncatedSeries(std::vector<T> coeffs, int cap = kExactCap)
      : c_(std::move(coeffs)), cap_(cap) {
    clamp();
  }

  static TruncatedSeries constant(T v) {
    return TruncatedSeries(std::vector<T>{std::move(v)});
  }
  static TruncatedSeries one() { return constant(RingTraits<T>::one()); }
  static TruncatedSeries variable(int cap = kExactCap) {
    std::vector<T> c(2);
    c[1] = RingTraits<T>::one();
    return TruncatedSeries(std::move(c), cap);
  }

  int cap() const { return cap_; }
  bool exact() const { return cap_ == kExactCap; }
  std::size_t stored() const { return c_.size(); }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }
  T& at(std::size_t k) {
    if (k >= c_.size()) c_.resize(k + 1);
    return c_[k];
  }

  bool is_exact_zero() const {
    for (const auto& v : c_)
      if (!is_zero(v)) return false;
    return true;
  }

  TruncatedSeries truncated(int cap) const {
    TruncatedSeries r(*this);
    r.cap_ = std::min(r.cap_, cap);
    r.clamp();
    return r;
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    TruncatedSeries r;
    r.cap_ = std::min(cap_, o.cap_);
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k)
      r.c_[k] = coeff(k) + o.coeff(k);
    r.clamp();
    return r;
  }
  TruncatedSeries operator-(const TruncatedSeries& o) const {
    TruncatedSeries r;
    r.cap_ = std::min(cap_, o.cap_);
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k)
      r.c_[k] = coeff(k) - o.coeff(k);
    r.clamp();
    return r;
  }
  TruncatedSeries operator-() const {
    TruncatedSeries r(*this);
    for (auto& v : r.c_) v = T{} - v;
    return r;
  }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    TruncatedSeries r;
    r.cap_ = std::min(cap_, o.cap_);
    if (c_.empty() || o.c_.empty()) return r;
    std::size_t n = c_.size() + o.c_.size() - 1;
    if (r.cap_ != kExactCap)
      n = std::min<std::size_t>(n, static_cast<std::size_t>(r.cap_) + 1);
    r.c_.resize(n);
    for (std::size_t i = 0; i < c_.size() && i < n; ++i) {
      if (is_zero(c_[i])) continue;
      std::size_t jmax = std::min(o.c_.size(), n - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        if (is_zero(o.c_[j])) continue;
        r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
      }
    }
    return r;
  }

  TruncatedSeries scaled(const T& s) const {
    TruncatedSeries r(*this);
    for (auto& v : r.c_) v = v * s;
    return r;
  }
  TruncatedSeries divided_by_int(long long k) const {
    TruncatedSeries r(*this);
    T d = RingTraits<T>::from_int(k);
    for (auto& v : r.c_) v = v * inv(d);
    return r;
  }

  // Multiplicative inverse; the constant coefficient must be invertible.
  // Exact polynomials other than constants have no polynomial inverse, so a
  // finite cap is required there.
  TruncatedSeries recip() const {
    if (c_.empty() || is_zero(c_[0]))
      throw std::domain_error("series reciprocal: constant term is not a unit");
    if (exact() && c_.size() > 1)
      throw std::domain_error("series reciprocal: needs a finite cap");
    TruncatedSeries r;
    r.cap_ = cap_;
    std::size_t n = exact() ? 1 : static_cast<std::size_t>(cap_) + 1;
    r.c_.resize(n);
    T b0 = inv(c_[0]);
    r.c_[0] = b0;
    for (std::size_t k = 1; k < n; ++k) {
      T acc{};
      std::size_t jmax = std::min(k, c_.size() - 1);
      for (std::size_t j = 1; j <= jmax; ++j) acc = acc + c_[j] * r.c_[k - j];
      r.c_[k] = T{} - b0 * acc;
    }
    return r;
  }

  TruncatedSeries operator/(const TruncatedSeries& o) const {
    return *this * o.recip();
  }

  // exp of a series with zero constant term.
  TruncatedSeries exp_nilpotent() const {
    if (!c_.empty() && !is_zero(c_[0]))
      throw std::domain_error("exp_nilpotent: constant term must vanish");
    if (exact()) {
      if (!is_exact_zero())
        throw std::domain_error("exp_nilpotent: needs a finite cap");
      return one();
    }
    TruncatedSeries r = one().truncated(cap_);
    TruncatedSeries term = r;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(cap_); ++k) {
      term = (term * *this).divided_by_int(static_cast<long long>(k));
      if (term.is_exact_zero()) break;
      r = r + term;
    }
    return r;
  }

  // log of a series with constant term 1.
  TruncatedSeries log_unit() const {
    if (c_.empty() || !is_zero(c_[0] - RingTraits<T>::one()))
      throw std::domain_error("log_unit: constant term must be 1");
    if (exact()) {
      if (c_.size() > 1)
        throw std::domain_error("log_unit: needs a finite cap");
      return TruncatedSeries();
    }
    TruncatedSeries u = *this - one();
    TruncatedSeries r;
    r.cap_ = cap_;
    TruncatedSeries term = one().truncated(cap_);
    long long sign = 1;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(cap_); ++k) {
      term = term * u;
      if (term.is_exact_zero()) break;
      r = r + term.divided_by_int(sign * static_cast<long long>(k));
      sign = -sign;
    }
    return r;
  }

  TruncatedSeries derivative() const {
    TruncatedSeries r;
    r.cap_ = cap_ == kExactCap ? kExactCap : std::max(0, cap_ - 1);
    if (c_.size() > 1) {
      r.c_.resize(c_.size() - 1);
      for (std::size_t k = 1; k < c_.size(); ++k)
        r.c_[k - 1] = c_[k] * RingTraits<T>::from_int(static_cast<long long>(k));
    }
    r.clamp();
    return r;
  }

  // Substitute s*x for the variable.
  TruncatedSeries compose_linear(const T& s) const {
    TruncatedSeries r(*this);
    T p = RingTraits<T>::one();
    for (std::size_t k = 1; k < r.c_.size(); ++k) {
      p = p * s;
      r.c_[k] = r.c_[k] * p;
    }
    return r;
  }

  // Multiply by x^k (cap unchanged, so high coefficients may drop off).
  TruncatedSeries shifted_up(int k) const {
    TruncatedSeries r;
    r.cap_ = cap_;
    r.c_.assign(c_.size() + static_cast<std::size_t>(k), T{});
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    r.clamp();
    return r;
  }

  // Divide by x^k; the k lowest coefficients must vanish.  The cap drops by
  // k, matching the precision actually known about the quotient.
  TruncatedSeries shifted_down(int k) const {
    for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
      if (!is_zero(c_[i]))
        throw std::domain_error("shifted_down: low coefficient nonzero");
    TruncatedSeries r;
    r.cap_ = cap_ == kExactCap ? kExactCap : cap_ - k;
    if (c_.size() > static_cast<std::size_t>(k))
      r.c_.assign(c_.begin() + k, c_.end());
    return r;
  }

  // Horner evaluation at a point of the coefficient ring.
  T eval(const T& x) const {
    T acc{};
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  bool operator==(const TruncatedSeries& o) const {
    if (cap_ != o.cap_) return false;
    std::size_t n = std::max(c_.size(), o.c_.size());
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(coeff(k) - o.coeff(k))) return false;
    return true;
  }

 private:
  void clamp() {
    if (cap_ != kExactCap && c_.size() > static_cast<std::size_t>(cap_) + 1)
      c_.resize(static_cast<std::size_t>(cap_) + 1);
  }

  std::vector<T> c_;
  int cap_;
};

struct JetVarTag {};
struct QVarTag {};

// Jets: truncated Taylor expansions around a base point carried by the user.
template <class T>
using Jet = TruncatedSeries<T, JetVarTag>;
// Power series in the nome q.
template <class T>
using QSeries = TruncatedSeries<T, QVarTag>;

template <class T, class Tag>
TruncatedSeries<T, Tag> inv(const TruncatedSeries<T, Tag>& s) {
  return s.recip();
}
template <class T, class Tag>
bool is_zero(const TruncatedSeries<T, Tag>& s) {
  return s.is_exact_zero();
}

}  // namespace sigrig
