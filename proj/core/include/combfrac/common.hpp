#pragma once

#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace combfrac {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  invalid_input,
  unsupported_order,
  precision_loss,
  boundary_leakage,
  solver,
  pole_proximity,
  out_of_regime,
  io
};

const char* to_string(ErrorKind kind);

// Library error. `measure` carries the achieved error estimate, leakage value
// or residual when the kind has one, NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double measure = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), kind_(kind), measure_(measure) {}
  ErrorKind kind() const noexcept { return kind_; }
  double measure() const noexcept { return measure_; }

 private:
  ErrorKind kind_;
  double measure_;
};

// Uniform 1D grid descriptor: x_k = start + k*step, k = 0..n-1.
struct Grid1D {
  double start = 0.0;
  double step = 1.0;
  int n = 0;

  double at(int k) const { return start + step * k; }
  double length() const { return step * n; }
};

// Principal-branch complex power, cut along the negative real axis.
inline cplx cpow(cplx z, double a) {
  if (z == cplx(0.0)) return a == 0.0 ? cplx(1.0) : cplx(0.0);
  return std::exp(a * std::log(z));
}

double l2_norm(const CVector& v, double h);
double relative_l2(const CVector& a, const CVector& ref);

}  // namespace combfrac
