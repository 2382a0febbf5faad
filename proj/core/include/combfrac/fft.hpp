#pragma once

#include <memory>

#include "combfrac/common.hpp"

namespace combfrac {

// Batched in-place complex FFT over `howmany` contiguous blocks of length n.
// Unnormalized in both directions.
class FftBatch {
 public:
  FftBatch(int n, int howmany);
  ~FftBatch();
  FftBatch(const FftBatch&) = delete;
  FftBatch& operator=(const FftBatch&) = delete;

  void forward(cplx* data) const;
  void backward(cplx* data) const;
  int length() const { return n_; }

 private:
  struct Plans;
  int n_;
  int howmany_;
  std::unique_ptr<Plans> plans_;
};

// Angular wavenumbers 2*pi*j/(n*h) in FFT order.
Eigen::VectorXd fft_wavenumbers(int n, double h);

}  // namespace combfrac
