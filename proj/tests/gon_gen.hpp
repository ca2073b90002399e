#pragma once

// Random valid gon labellings: refine the standard basis cyclically, then
// apply a random unimodular change of coordinates.

#include <random>

#include "twsusp/orbitgon.hpp"

namespace gongen {

using twsusp::GonLabelling;
using twsusp::IntVector;

inline IntVector add(const IntVector& a, const IntVector& b, long s) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + s * b[i];
  return c;
}

inline GonLabelling random_valid(std::mt19937& rng, long max_n = 8, std::size_t max_m = 12) {
  const long n = 4 + static_cast<long>(rng() % static_cast<unsigned>(max_n - 3));
  const std::size_t d = static_cast<std::size_t>(n - 2);
  GonLabelling g{n, {}};
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    g.labels.push_back(e);
  }
  const std::size_t target = d + rng() % (max_m - d + 1);
  while (g.labels.size() < target) {
    const std::size_t i = rng() % g.labels.size();
    const std::size_t j = (i + 1) % g.labels.size();
    const IntVector& a = g.labels[i];
    const IntVector& b = g.labels[j];
    // both (a, a+sb) and (a+sb, b) extend to a basis whenever (a, b) does
    IntVector c;
    switch (rng() % 3) {
      case 0: c = add(a, b, 1); break;
      case 1: c = add(b, a, -1); break;
      default: c = add(a, b, -1); break;
    }
    const auto at = g.labels.begin() + static_cast<long>(i + 1);
    g.labels.insert(at, c);
  }
  // random elementary change of basis
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int step = 0; step < 12; ++step) {
    const std::size_t r = rng() % d, s = rng() % d;
    if (r == s) continue;
    const long f = coef(rng);
    for (auto& v : g.labels) v[r] += f * v[s];
  }
  if (rng() % 2) g.labels.front() = add(IntVector(d, 0), g.labels.front(), -1);
  return g;
}

}  // namespace gongen
