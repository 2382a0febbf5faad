#include "combfrac/hamiltonians.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <sstream>

namespace combfrac {

void HamiltonianSpec::validate() const {
  if (!(hbar > 0.0)) throw Error(ErrorKind::invalid_input, "hamiltonian: hbar must be positive", hbar);
  if (x_grid.n < 16) throw Error(ErrorKind::invalid_input, "hamiltonian: grid needs at least 16 points", x_grid.n);
  if (!(x_grid.step > 0.0)) throw Error(ErrorKind::invalid_input, "hamiltonian: grid step must be positive");
  if (kind == PotentialKind::tabulated) {
    if (static_cast<int>(potential.size()) != x_grid.n)
      throw Error(ErrorKind::invalid_input, "hamiltonian: tabulated potential size does not match the grid");
    const double tol = 1e-9 * x_grid.step;
    if (std::abs(potential.start - x_grid.start) > tol || std::abs(potential.step - x_grid.step) > tol)
      throw Error(ErrorKind::invalid_input, "hamiltonian: tabulated potential grid does not match");
    for (const auto& v : potential.values)
      if (v.imag() != 0.0 || !std::isfinite(v.real()))
        throw Error(ErrorKind::invalid_input, "hamiltonian: potential must be real and finite");
  }
}

Hamiltonian::Hamiltonian(const HamiltonianSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n = spec_.x_grid.n;
  v_ = Eigen::VectorXd::Zero(n);
  if (spec_.kind == PotentialKind::harmonic) {
    for (int k = 0; k < n; ++k) {
      const double x = spec_.x_grid.at(k);
      v_[k] = 0.5 * spec_.omega * spec_.omega * x * x;
    }
  } else if (spec_.kind == PotentialKind::tabulated) {
    for (int k = 0; k < n; ++k) v_[k] = spec_.potential.values[k].real();
  }
  off_ = -0.5 * spec_.hbar * spec_.hbar / (spec_.x_grid.step * spec_.x_grid.step);
}

void Hamiltonian::apply_into(const cplx* psi, cplx* out) const {
  const int n = size();
  const double d = -2.0 * off_;
  for (int k = 1; k < n - 1; ++k) out[k] = (d + v_[k]) * psi[k] + off_ * (psi[k - 1] + psi[k + 1]);
  const cplx left = periodic() ? psi[n - 1] : cplx(0.0);
  const cplx right = periodic() ? psi[0] : cplx(0.0);
  out[0] = (d + v_[0]) * psi[0] + off_ * (left + psi[1]);
  out[n - 1] = (d + v_[n - 1]) * psi[n - 1] + off_ * (psi[n - 2] + right);
}

CVector Hamiltonian::apply(const CVector& psi) const {
  if (psi.size() != size()) throw Error(ErrorKind::invalid_input, "hamiltonian: dimension mismatch");
  CVector out(size());
  apply_into(psi.data(), out.data());
  return out;
}

Eigen::MatrixXd Hamiltonian::dense() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, k) = -2.0 * off_ + v_[k];
    if (k > 0) m(k, k - 1) = off_;
    if (k + 1 < n) m(k, k + 1) = off_;
  }
  if (periodic()) {
    m(0, n - 1) += off_;
    m(n - 1, 0) += off_;
  }
  return m;
}

namespace {

// Thomas algorithm for constant off-diagonals.
void thomas(const std::vector<cplx>& diag, cplx off, std::vector<cplx>& x) {
  const std::size_t n = diag.size();
  std::vector<cplx> c(n);
  cplx m = diag[0];
  if (std::abs(m) == 0.0) throw Error(ErrorKind::solver, "tridiagonal solve: zero pivot", 0.0);
  c[0] = off / m;
  x[0] /= m;
  for (std::size_t k = 1; k < n; ++k) {
    m = diag[k] - off * c[k - 1];
    if (std::abs(m) == 0.0) throw Error(ErrorKind::solver, "tridiagonal solve: zero pivot", 0.0);
    c[k] = off / m;
    x[k] = (x[k] - off * x[k - 1]) / m;
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= c[k] * x[k + 1];
}

}  // namespace

CVector Hamiltonian::solve_shifted(cplx a, cplx b, const CVector& rhs) const {
  const int n = size();
  if (rhs.size() != n) throw Error(ErrorKind::invalid_input, "hamiltonian: dimension mismatch");
  std::vector<cplx> diag(n);
  for (int k = 0; k < n; ++k) diag[k] = a + b * (-2.0 * off_ + v_[k]);
  const cplx off = b * off_;
  std::vector<cplx> x(rhs.data(), rhs.data() + n);
  if (!periodic() || off == cplx(0.0)) {
    thomas(diag, off, x);
  } else {
    // Sherman-Morrison for the corner entries.
    const cplx gamma = -diag[0];
    std::vector<cplx> d2(diag);
    d2[0] -= gamma;
    d2[n - 1] -= off * off / gamma;
    std::vector<cplx> u(n, cplx(0.0));
    u[0] = gamma;
    u[n - 1] = off;
    thomas(d2, off, x);
    thomas(d2, off, u);
    const cplx vx = x[0] + off / gamma * x[n - 1];
    const cplx vu = u[0] + off / gamma * u[n - 1];
    const cplx f = vx / (1.0 + vu);
    for (int k = 0; k < n; ++k) x[k] -= f * u[k];
  }
  CVector out(n);
  for (int k = 0; k < n; ++k) out[k] = x[k];
  // One step of residual refinement guards the cyclic update.
  CVector hx(n);
  apply_into(out.data(), hx.data());
  const CVector r = rhs - (a * out + b * hx);
  const double rel = r.norm() / std::max(rhs.norm(), 1e-300);
  if (!(rel < 1e-8)) throw Error(ErrorKind::solver, "shifted solve: residual too large", rel);
  return out;
}

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec) { return Hamiltonian(spec); }

CVector apply_hamiltonian(const Hamiltonian& H, const CVector& psi) { return H.apply(psi); }

std::vector<EigenPair> eigenpairs(const HamiltonianSpec& spec, int count) {
  spec.validate();
  if (count < 1 || count > spec.x_grid.n)
    throw Error(ErrorKind::invalid_input, "eigenpairs: count must lie in [1, grid size]", count);
  const Hamiltonian H(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.dense());
  if (es.info() != Eigen::Success) throw Error(ErrorKind::solver, "eigenpairs: dense eigensolver failed");
  std::vector<EigenPair> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    EigenPair p;
    p.lambda = es.eigenvalues()[j];
    p.psi = es.eigenvectors().col(j).cast<cplx>();
    p.psi /= p.psi.norm();
    out.push_back(std::move(p));
  }
  return out;
}

SampledFunction load_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open potential file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    double x, v;
    if (!(ss >> x >> v)) {
      if (xs.empty()) continue;  // header
      throw Error(ErrorKind::invalid_input, path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    std::string rest;
    if (ss >> rest) throw Error(ErrorKind::invalid_input, path + ":" + std::to_string(lineno) + ": extra column");
    if (!xs.empty() && !(x > xs.back()))
      throw Error(ErrorKind::invalid_input, path + ":" + std::to_string(lineno) + ": x must increase strictly");
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw Error(ErrorKind::invalid_input, path + ": need at least two rows");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (std::abs(xs[k] - xs[k - 1] - h) > 1e-6 * h)
      throw Error(ErrorKind::invalid_input, path + ": x spacing is not uniform");
  SampledFunction f{xs.front(), h, {}};
  for (double v : vs) f.values.emplace_back(v, 0.0);
  return f;
}

}  // namespace combfrac
