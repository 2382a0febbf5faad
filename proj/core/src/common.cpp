#include "combfrac/common.hpp"

namespace combfrac {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::precision_loss: return "precision-loss";
    case ErrorKind::boundary_leakage: return "boundary-leakage";
    case ErrorKind::solver: return "solver";
    case ErrorKind::pole_proximity: return "pole-proximity";
    case ErrorKind::out_of_regime: return "out-of-regime";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

double l2_norm(const CVector& v, double h) { return std::sqrt(h) * v.norm(); }

double relative_l2(const CVector& a, const CVector& ref) {
  const double d = ref.norm();
  const double e = (a - ref).norm();
  if (d == 0.0) return e;
  return e / d;
}

}  // namespace combfrac
