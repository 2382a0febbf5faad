#include "convolution.hpp"

#include <algorithm>
#include <cmath>

#include "combfrac/fft.hpp"

namespace combfrac::detail {

double pow_diff1(double k, double e) {
  if (k == 0.0) return 1.0;
  return std::pow(k, e) * std::expm1(e * std::log1p(1.0 / k));
}

double pow_diff2(double m, double b) {
  if (m < 64.0) return std::pow(m + 1.0, b) - 2.0 * std::pow(m, b) + std::pow(m - 1.0, b);
  // m^b * sum over even k >= 2 of 2 C(b, k) m^{-k}.
  const double x = 1.0 / (m * m);
  double coef = b * (b - 1.0) / 2.0, term = x, sum = 0.0;
  for (int k = 2; k <= 14; k += 2) {
    sum += 2.0 * coef * term;
    coef *= (b - k) * (b - k - 1.0) / ((k + 1.0) * (k + 2.0));
    term *= x;
  }
  return std::pow(m, b) * sum;
}

std::vector<cplx> causal_convolve(const std::vector<double>& w, const std::vector<cplx>& u) {
  const std::size_t n = u.size();
  std::vector<cplx> out(n, cplx(0.0));
  if (n == 0) return out;
  const std::size_t nw = std::min(w.size(), n);
  if (n <= 512) {
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j <= std::min(k, nw - 1); ++j) acc += w[j] * u[k - j];
      out[k] = acc;
    }
    return out;
  }
  std::size_t len = 1;
  while (len < 2 * n) len <<= 1;
  std::vector<cplx> a(len, cplx(0.0)), b(len, cplx(0.0));
  for (std::size_t j = 0; j < nw; ++j) a[j] = w[j];
  std::copy(u.begin(), u.end(), b.begin());
  FftBatch fft(static_cast<int>(len), 1);
  fft.forward(a.data());
  fft.forward(b.data());
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t j = 0; j < len; ++j) a[j] *= b[j] * scale;
  fft.backward(a.data());
  std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), out.begin());
  return out;
}

}  // namespace combfrac::detail
