#include "combfrac/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace combfrac {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftBatch::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

FftBatch::FftBatch(int n, int howmany) : n_(n), howmany_(howmany), plans_(std::make_unique<Plans>()) {
  if (n < 1 || howmany < 1) throw Error(ErrorKind::invalid_input, "fft: empty transform");
  std::vector<cplx> scratch(static_cast<std::size_t>(n) * howmany);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->fwd = fftw_plan_many_dft(1, &n_, howmany_, buf, nullptr, 1, n_, buf, nullptr, 1, n_, FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_many_dft(1, &n_, howmany_, buf, nullptr, 1, n_, buf, nullptr, 1, n_, FFTW_BACKWARD, flags);
}

FftBatch::~FftBatch() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->fwd);
  fftw_destroy_plan(plans_->bwd);
}

void FftBatch::forward(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->fwd, p, p);
}

void FftBatch::backward(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->bwd, p, p);
}

Eigen::VectorXd fft_wavenumbers(int n, double h) {
  Eigen::VectorXd k(n);
  const double dk = 2.0 * pi / (n * h);
  for (int j = 0; j < n; ++j) k[j] = dk * (j < (n + 1) / 2 ? j : j - n);
  return k;
}

}  // namespace combfrac
