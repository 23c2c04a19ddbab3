#include "sigrig/poly.hpp"

#include <algorithm>

namespace sigrig {

PolyRing PolyRing::make(std::vector<std::string> names,
                        std::vector<int> degrees, int cap) {
  if (names.size() != degrees.size())
    throw std::invalid_argument("poly ring: names/degrees mismatch");
  for (int d : degrees)
    if (d <= 0) throw std::invalid_argument("poly ring: degrees must be positive");
  PolyRing r;
  r.names = std::move(names);
  r.degrees = std::move(degrees);
  r.cap = cap;

  std::vector<int> expo(r.names.size(), 0);
  auto rec = [&](auto&& self, std::size_t g, int used) -> void {
    if (g == expo.size()) {
      r.monomials.push_back(expo);
      return;
    }
    for (int e = 0; used + e * r.degrees[g] <= cap; ++e) {
      expo[g] = e;
      self(self, g + 1, used + e * r.degrees[g]);
    }
    expo[g] = 0;
  };
  rec(rec, 0, 0);

  std::sort(r.monomials.begin(), r.monomials.end(),
            [&r](const std::vector<int>& a, const std::vector<int>& b) {
              int da = r.degree_of(a), db = r.degree_of(b);
              if (da != db) return da < db;
              return a < b;
            });
  for (std::size_t i = 0; i < r.monomials.size(); ++i)
    r.index[r.monomials[i]] = static_cast<int>(i);
  return r;
}

int PolyRing::degree_of(const std::vector<int>& expo) const {
  int d = 0;
  for (std::size_t g = 0; g < expo.size(); ++g) d += expo[g] * degrees[g];
  return d;
}

int PolyRing::find(const std::vector<int>& expo) const {
  auto it = index.find(expo);
  return it == index.end() ? -1 : it->second;
}

int PolyRing::gen_index(const std::string& name) const {
  for (std::size_t g = 0; g < names.size(); ++g)
    if (names[g] == name) return static_cast<int>(g);
  throw std::invalid_argument("poly ring: unknown generator " + name);
}

void PolyRing::set_integral(const std::vector<int>& expo) {
  int idx = find(expo);
  if (idx < 0) throw std::invalid_argument("poly ring: integral monomial above cap");
  integral_index = idx;
}

int PolyRing::max_exponent_sum() const {
  int m = 0;
  for (const auto& e : monomials) {
    int s = 0;
    for (int v : e) s += v;
    m = std::max(m, s);
  }
  return m;
}

}  // namespace sigrig
