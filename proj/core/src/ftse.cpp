#include "combfrac/ftse.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace combfrac {

FtseState FtseState::initial(const CVector& psi0, FracOrder alpha, double dt) {
  alpha.require_derivative_range();
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "ftse: dt must be positive", dt);
  FtseState s;
  s.psi = psi0;
  s.alpha = alpha;
  s.dt = dt;
  return s;
}

FtseStepper::FtseStepper(ScaledHamiltonian h_eff, FracOrder alpha, double dt, double hbar, const FtseOptions& opt)
    : h_(h_eff), alpha_(alpha.alpha), dt_(dt), hbar_(hbar), opt_(opt) {
  alpha.require_derivative_range();
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "ftse: dt must be positive", dt);
  if (!(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "ftse: hbar must be positive", hbar);
  if (h_.H == nullptr) throw Error(ErrorKind::invalid_input, "ftse: missing Hamiltonian");
  theta_ = alpha_ == 1.0 ? 0.5 : 1.0;
  kappa_ = cpow(cplx(0.0, hbar_), alpha_) * std::pow(dt_, -alpha_) / std::tgamma(2.0 - alpha_);
  b_.push_back(1.0);
  if (opt_.starting_correction && alpha_ < 1.0) {
    for (int k = 1; k * alpha_ < 1.0 - 1e-12 && static_cast<int>(sigma_.size()) < opt_.max_correction_terms; ++k)
      sigma_.push_back(k * alpha_);
  }
}

const std::vector<double>& FtseStepper::correction(int n) {
  // Weights w_{n,j}, j = 1..q, on u_j - u_0 that make the corrected L1
  // operator exact on t^sigma at t_n for every sigma in sigma_.
  const int q = static_cast<int>(sigma_.size());
  while (static_cast<int>(w_.size()) < n) {
    const int m = static_cast<int>(w_.size()) + 1;
    while (static_cast<int>(b_.size()) <= m) {
      const double k = static_cast<double>(b_.size());
      b_.push_back(std::pow(k + 1.0, 1.0 - alpha_) - std::pow(k, 1.0 - alpha_));
    }
    if (q == 0) {
      w_.emplace_back();
      continue;
    }
    Eigen::MatrixXd A(q, q);
    Eigen::VectorXd rhs(q);
    for (int i = 0; i < q; ++i) {
      const double sg = sigma_[i];
      double acc = 0.0;
      for (int j = 0; j < m; ++j) {
        const double k = m - j;
        acc += weight(j) * (std::pow(k, sg) - std::pow(k - 1.0, sg));
      }
      rhs[i] = std::tgamma(sg + 1.0) * std::tgamma(2.0 - alpha_) / std::tgamma(sg + 1.0 - alpha_) *
                   std::pow(static_cast<double>(m), sg - alpha_) -
               acc;
      for (int j = 0; j < q; ++j) A(i, j) = std::pow(j + 1.0, sg);
    }
    const Eigen::VectorXd w = A.fullPivLu().solve(rhs);
    w_.emplace_back(w.data(), w.data() + q);
  }
  return w_[n - 1];
}

void FtseStepper::solve_start(const CVector& u0) {
  // Steps 1..q reference each other through the correction, so they are
  // solved together: kappa * sum_m c_{N,m} u_m = H_eff u_N, N = 1..q.
  const int q = static_cast<int>(sigma_.size());
  const int nx = h_.size();
  const Hamiltonian& H = *h_.H;
  correction(q);
  std::vector<Eigen::Triplet<cplx>> trip;
  CVector rhs = CVector::Zero(static_cast<Eigen::Index>(q) * nx);
  for (int N = 1; N <= q; ++N) {
    std::vector<double> c(q + 1, 0.0);
    for (int j = 0; j < N; ++j) {
      c[N - j] += b_[j];
      c[N - j - 1] -= b_[j];
    }
    for (int i = 0; i < q; ++i) {
      c[i + 1] += w_[N - 1][i];
      c[0] -= w_[N - 1][i];
    }
    const int r0 = (N - 1) * nx;
    for (int m = 1; m <= q; ++m)
      if (c[m] != 0.0)
        for (int k = 0; k < nx; ++k) trip.emplace_back(r0 + k, (m - 1) * nx + k, kappa_ * c[m]);
    rhs.segment(r0, nx) = -kappa_ * c[0] * u0;
    const cplx hs = -h_.scale;
    const double d = -2.0 * H.offdiag();
    for (int k = 0; k < nx; ++k) {
      trip.emplace_back(r0 + k, r0 + k, hs * (d + H.potential()[k]));
      if (k > 0) trip.emplace_back(r0 + k, r0 + k - 1, hs * H.offdiag());
      if (k + 1 < nx) trip.emplace_back(r0 + k, r0 + k + 1, hs * H.offdiag());
    }
    if (H.periodic()) {
      trip.emplace_back(r0, r0 + nx - 1, hs * H.offdiag());
      trip.emplace_back(r0 + nx - 1, r0, hs * H.offdiag());
    }
  }
  Eigen::SparseMatrix<cplx> M(static_cast<Eigen::Index>(q) * nx, static_cast<Eigen::Index>(q) * nx);
  M.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu(M);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::solver, "ftse: starting system is singular");
  const CVector u = lu.solve(rhs);
  start_.clear();
  for (int N = 0; N < q; ++N) start_.push_back(u.segment(static_cast<Eigen::Index>(N) * nx, nx));
}

void FtseStepper::step(FtseState& s) {
  if (s.psi.size() != h_.size()) throw Error(ErrorKind::invalid_input, "ftse: state and Hamiltonian sizes differ");
  if (static_cast<int>(s.history.size()) != s.step_index)
    throw Error(ErrorKind::invalid_input, "ftse: history length does not match the step index");
  const int n = s.step_index;
  const int q = static_cast<int>(sigma_.size());
  correction(n + 1);

  if (n < q) {
    if (n == 0 || start_.empty()) {
      CVector u0 = s.psi;
      for (const auto& inc : s.history) u0 -= inc;
      solve_start(u0);
    }
    s.history.push_back(start_[n] - s.psi);
    s.psi = start_[n];
    ++s.step_index;
    return;
  }

  // kappa [ (u_{n+1} - u_n) + sum_{j>=1} b_j inc_{n-j} + sum_j w_j (u_j - u_0) ]
  //   = theta H_eff u_{n+1} + (1 - theta) H_eff u_n
  const auto& w = w_[n];
  CVector memory = CVector::Zero(s.psi.size());
  for (int j = 1; j <= n; ++j) memory += b_[j] * s.history[n - j];
  CVector from0 = CVector::Zero(s.psi.size());  // u_j - u_0
  for (int j = 0; j < q; ++j) {
    from0 += s.history[j];
    memory += w[j] * from0;
  }
  CVector rhs = kappa_ * (s.psi - memory);
  if (theta_ != 1.0) rhs += (1.0 - theta_) * h_.apply(s.psi);
  CVector next = h_.H->solve_shifted(kappa_, -theta_ * h_.scale, rhs);
  s.history.push_back(next - s.psi);
  s.psi = std::move(next);
  ++s.step_index;
}

void ftse_step(FtseState& state, const ScaledHamiltonian& h_eff, double hbar, const FtseOptions& opt) {
  FtseStepper stepper(h_eff, state.alpha, state.dt, hbar, opt);
  stepper.step(state);
}

FtseTrajectory ftse_solve(const CVector& psi0, const ScaledHamiltonian& h_eff, FracOrder alpha, double dt,
                          int n_steps, double hbar, int save_stride, const FtseOptions& opt) {
  if (n_steps < 1) throw Error(ErrorKind::invalid_input, "ftse_solve: n_steps must be at least 1", n_steps);
  if (save_stride < 1) throw Error(ErrorKind::invalid_input, "ftse_solve: save_stride must be positive");
  FtseStepper stepper(h_eff, alpha, dt, hbar, opt);
  FtseState s = FtseState::initial(psi0, alpha, dt);
  FtseTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);
  for (int n = 1; n <= n_steps; ++n) {
    stepper.step(s);
    if (n % save_stride == 0) {
      traj.times.push_back(n * dt);
      traj.states.push_back(s.psi);
    }
  }
  return traj;
}

cplx effective_eigenvalue(double lambda, FracOrder alpha, double hbar, cplx hamiltonian_scaling) {
  return hamiltonian_scaling * lambda / cpow(cplx(0.0, hbar), alpha.alpha);
}

CVector ftse_spectral_solution(const std::vector<EigenPair>& pairs, const std::vector<cplx>& coeffs, FracOrder alpha,
                               double hbar, double t, cplx hamiltonian_scaling) {
  if (pairs.size() != coeffs.size()) throw Error(ErrorKind::invalid_input, "spectral solution: coefficient count mismatch");
  if (pairs.empty()) throw Error(ErrorKind::invalid_input, "spectral solution: no eigenpairs");
  alpha.require_derivative_range();
  CVector out = CVector::Zero(pairs.front().psi.size());
  const double ta = std::pow(t, alpha.alpha);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const cplx z = effective_eigenvalue(pairs[k].lambda, alpha, hbar, hamiltonian_scaling) * ta;
    out += coeffs[k] * mittag_leffler(alpha, z) * pairs[k].psi;
  }
  return out;
}

}  // namespace combfrac
