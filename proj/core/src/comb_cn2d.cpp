#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>

#include "combfrac/comb.hpp"

namespace combfrac {

struct CrankNicolson2DPropagator::Impl {
  CombGrid grid;
  Eigen::SparseMatrix<cplx> rhs_op;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  Eigen::VectorXd damping;
  bool damp = false;
};

CrankNicolson2DPropagator::CrankNicolson2DPropagator(const CombGrid& grid, const Hamiltonian& H, double dt,
                                                     const CombOptions& opt)
    : impl_(std::make_unique<Impl>()), dt_(dt) {
  grid.validate();
  if (H.size() != grid.nx) throw Error(ErrorKind::invalid_input, "comb: Hamiltonian size does not match nx");
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "comb: dt must be positive", dt);
  impl_->grid = grid;
  const int nx = grid.nx, ny = grid.ny;
  const double hbar = H.hbar();
  const double ky = -0.5 * hbar * hbar / (grid.dy * grid.dy);
  auto id = [ny](int ix, int iy) { return static_cast<int>(static_cast<long>(ix) * ny + iy); };

  // A = -(hbar^2/2) D_yy + (1/dy) delta_row0 H(x), y periodic.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(nx) * ny * 3 + 3 * nx);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      trip.emplace_back(id(ix, iy), id(ix, iy), -2.0 * ky);
      trip.emplace_back(id(ix, iy), id(ix, (iy + 1) % ny), ky);
      trip.emplace_back(id(ix, iy), id(ix, (iy + ny - 1) % ny), ky);
    }
  }
  const Eigen::MatrixXd hd = H.dense();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      if (hd(i, j) != 0.0) trip.emplace_back(id(i, 0), id(j, 0), hd(i, j) / grid.dy);
  Eigen::SparseMatrix<double> A(nx * ny, nx * ny);
  A.setFromTriplets(trip.begin(), trip.end());

  Eigen::SparseMatrix<cplx> eye(nx * ny, nx * ny);
  eye.setIdentity();
  const cplx b = I * dt / (2.0 * hbar);
  Eigen::SparseMatrix<cplx> Ac = A.cast<cplx>();
  Eigen::SparseMatrix<cplx> lhs = eye + b * Ac;
  impl_->rhs_op = eye - b * Ac;
  lhs.makeCompressed();
  impl_->lu.compute(lhs);
  if (impl_->lu.info() != Eigen::Success) throw Error(ErrorKind::solver, "crank-nicolson 2d: factorization failed");

  impl_->damp = opt.layer.enabled;
  impl_->damping = Eigen::VectorXd::Ones(ny);
  if (opt.layer.enabled) {
    const double half = 0.5 * grid.ly();
    const double edge = half * (1.0 - opt.layer.fraction);
    for (int iy = 0; iy < ny; ++iy) {
      const double ay = std::abs(grid.y(iy));
      if (ay <= edge) continue;
      const double z = std::min(1.0, (ay - edge) / (half - edge));
      impl_->damping[iy] = std::exp(-opt.layer.gamma_max * z * z * dt);
    }
  }
}

CrankNicolson2DPropagator::~CrankNicolson2DPropagator() = default;

void CrankNicolson2DPropagator::step(CombField& field) {
  CVector rhs = impl_->rhs_op * field.values;
  field.values = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw Error(ErrorKind::solver, "crank-nicolson 2d: solve failed");
  if (impl_->damp) {
    const int ny = impl_->grid.ny;
    for (int ix = 0; ix < impl_->grid.nx; ++ix)
      for (int iy = 0; iy < ny; ++iy) field.values[static_cast<Eigen::Index>(ix) * ny + iy] *= impl_->damping[iy];
  }
}

}  // namespace combfrac
