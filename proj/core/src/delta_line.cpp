#include <algorithm>
#include <cmath>

#include "combfrac/comb.hpp"

namespace combfrac {

DeltaLineResult delta_line_evolve(const DeltaLineConfig& cfg, const std::vector<double>& ys,
                                  const std::vector<double>& times) {
  if (!(cfg.dy > 0.0) || !(cfg.ly > 0.0) || !(cfg.hbar > 0.0))
    throw Error(ErrorKind::invalid_input, "delta line: spacing, length and hbar must be positive");
  const int ny = 2 * static_cast<int>(std::lround(0.5 * cfg.ly / cfg.dy));
  const double dy = cfg.dy;
  const double hbar = cfg.hbar;
  const double dt_nominal = cfg.dt_factor * dy * dy / hbar;
  CombGrid g{32, ny, 1.0, dy, 0.0};  // only the y helpers are used

  std::vector<cplx> psi(ny, cplx(0.0));
  if (cfg.source_width <= 0.0) {
    psi[0] = 1.0 / dy;
  } else {
    double mass = 0.0;
    for (int k = 0; k < ny; ++k) {
      const double y = g.y(k);
      psi[k] = std::exp(-y * y / (2.0 * cfg.source_width * cfg.source_width));
      mass += psi[k].real();
    }
    for (auto& v : psi) v /= dy * mass;
  }

  FftBatch fft(ny, 1);
  const auto l = fft_wavenumbers(ny, dy);
  std::vector<int> rows;
  for (double y : ys) {
    const long k = std::lround(y / dy);
    if (std::abs(y - k * dy) > 1e-9 * dy || std::abs(k) >= ny / 2)
      throw Error(ErrorKind::invalid_input, "delta line: requested y is not a grid row", y);
    rows.push_back(static_cast<int>(k >= 0 ? k : k + ny));
  }

  DeltaLineResult out;
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw Error(ErrorKind::invalid_input, "delta line: times must increase");
    const int steps = std::max(1, static_cast<int>(std::ceil((target - t) / dt_nominal - 1e-9)));
    const double dt = (target - t) / steps;
    std::vector<cplx> half(ny);
    for (int j = 0; j < ny; ++j) half[j] = std::exp(-I * (0.25 * hbar * l[j] * l[j] * dt)) / static_cast<double>(ny);
    AbsorbingLayer layer = cfg.layer;
    std::vector<double> damp(ny, 1.0);
    if (layer.enabled) {
      const double halfL = 0.5 * ny * dy, edge = halfL * (1.0 - layer.fraction);
      for (int k = 0; k < ny; ++k) {
        const double ay = std::abs(g.y(k));
        if (ay > edge) {
          const double z = std::min(1.0, (ay - edge) / (halfL - edge));
          damp[k] = std::exp(-layer.gamma_max * z * z * dt);
        }
      }
    }
    const cplx a = I * dt * cfg.lambda / (2.0 * hbar * dy);
    const cplx cn = (1.0 - a) / (1.0 + a);
    for (int n = 0; n < steps; ++n) {
      fft.forward(psi.data());
      for (int j = 0; j < ny; ++j) psi[j] *= half[j];
      fft.backward(psi.data());
      psi[0] *= cn;
      fft.forward(psi.data());
      for (int j = 0; j < ny; ++j) psi[j] *= half[j];
      fft.backward(psi.data());
      for (int k = 0; k < ny; ++k) psi[k] *= damp[k];
    }
    t = target;
    out.times.push_back(t);
    std::vector<cplx> row;
    for (int r : rows) row.push_back(psi[r]);
    out.values.push_back(std::move(row));
  }
  return out;
}

DeltaLineResult delta_line_extrapolated(DeltaLineConfig cfg, const std::vector<double>& ys,
                                        const std::vector<double>& times) {
  std::vector<DeltaLineResult> levels;
  const double dy0 = cfg.dy;
  for (int k = 0; k < 3; ++k) {
    cfg.dy = dy0 / (1 << k);
    cfg.source_width = 2.0 * cfg.dy;
    levels.push_back(delta_line_evolve(cfg, ys, times));
  }
  DeltaLineResult out = levels[2];
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const cplx a = levels[0].values[i][j], b = levels[1].values[i][j], c = levels[2].values[i][j];
      out.values[i][j] = (8.0 * c - 6.0 * b + a) / 3.0;
    }
  return out;
}

}  // namespace combfrac
