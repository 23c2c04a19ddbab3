#include "sigrig/common.hpp"

namespace sigrig {

double halton(unsigned long long index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<cplx> halton_disc(std::size_t count, cplx center, double radius,
                              unsigned long long seed) {
  std::vector<cplx> out;
  out.reserve(count);
  // Index 0 maps to the exact center; skip it.
  for (std::size_t i = 0; i < count; ++i) {
    unsigned long long idx = seed + i + 1;
    double u = halton(idx, 2);
    double v = halton(idx, 3);
    double r = radius * std::sqrt(u);
    double phi = 2.0 * kPi * v;
    out.push_back(center + cplx(r * std::cos(phi), r * std::sin(phi)));
  }
  return out;
}

}  // namespace sigrig
