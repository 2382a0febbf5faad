#include "combfrac/special.hpp"

#include <array>
#include <cmath>

namespace combfrac {

namespace {

// Weideman's rational expansion in Z = (L + iz)/(L - iz), valid for Im z >= 0.
constexpr int kTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kTerms + 1> a{};

  WeidemanTable() {
    const int M = 2 * kTerms;
    L = std::sqrt(kTerms / std::sqrt(2.0));
    for (int n = 1; n <= kTerms; ++n) {
      double acc = 0.0;
      for (int k = -M + 1; k <= M - 1; ++k) {
        const double theta = k * pi / M;
        const double t = L * std::tan(0.5 * theta);
        const double f = std::exp(-t * t) * (L * L + t * t);
        acc += f * std::cos(pi * k * n / M);
      }
      a[n] = acc / (2.0 * M);
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable tab;
  return tab;
}

cplx faddeeva_upper(cplx z) {
  const auto& tab = table();
  const cplx den = tab.L - I * z;
  const cplx Z = (tab.L + I * z) / den;
  cplx p = 0.0;
  for (int n = kTerms; n >= 1; --n) p = p * Z + tab.a[n];
  return 2.0 * p / (den * den) + (1.0 / std::sqrt(pi)) / den;
}

}  // namespace

cplx faddeeva(cplx z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

cplx erfc_scaled_neg(cplx z) { return faddeeva(-I * z); }

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

}  // namespace combfrac
