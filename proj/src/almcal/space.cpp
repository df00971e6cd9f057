// Copyright 2026 The almcal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "almcal/space.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "almcal/detail/herm_small.hpp"
#include "almcal/parallel.hpp"

namespace almcal {

bool BackgroundData::hypercritical() const {
  const double lo = (n() - 1) * kPi / 2.0;
  const double hi = n() * kPi / 2.0;
  return theta_hat > lo && theta_hat < hi;
}

Form11Field alpha_phi(const BackgroundData& bg, const ScalarField& phi) {
  Form11Field out = complex_hessian(phi);
  const int n = bg.n();
  const std::size_t P = static_cast<std::size_t>(bg.grid.point_count());
  for (std::size_t p = 0; p < P; ++p) {
    for (int j = 0; j < n; ++j) out.diag[p * n + j] += bg.alpha.diag[p * n + j];
    if (n == 2) out.off[p] += bg.alpha.off[p];
  }
  return out;
}

namespace {

bool is_identity(const Matrix& m) {
  return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
}

// Reduced pencil entries of a pointwise Hermitian A against the constant
// omega: Linv * A * Linv^adj, specialized for n in {1,2}.
struct Reducer {
  bool trivial;
  int n;
  cplx l00, l10, l11;  // entries of Linv (lower triangular)

  explicit Reducer(const BackgroundData& bg) {
    n = bg.n();
    trivial = is_identity(bg.omega);
    if (!trivial) {
      l00 = bg.omega_linv(0, 0);
      if (n == 2) {
        l10 = bg.omega_linv(1, 0);
        l11 = bg.omega_linv(1, 1);
      }
    }
  }

  void reduce(double a00, cplx a01, double a11, double& r00, cplx& r01, double& r11) const {
    if (trivial) {
      r00 = a00;
      r01 = a01;
      r11 = a11;
      return;
    }
    if (n == 1) {
      r00 = a00 * std::norm(l00);
      r01 = cplx(0, 0);
      r11 = 0.0;
      return;
    }
    // rows of Linv * A
    const cplx m00 = l00 * a00;
    const cplx m01 = l00 * a01;
    const cplx m10 = l10 * a00 + l11 * std::conj(a01);
    const cplx m11 = l10 * a01 + l11 * a11;
    r00 = (m00 * std::conj(l00)).real();
    r01 = m00 * std::conj(l10) + m01 * std::conj(l11);
    r11 = (m10 * std::conj(l10) + m11 * std::conj(l11)).real();
  }
};

}  // namespace

SliceData compute_slice(const BackgroundData& bg, const ScalarField& phi, bool need_frames) {
  const int n = bg.n();
  const std::size_t P = static_cast<std::size_t>(bg.grid.point_count());
  Form11Field aphi = alpha_phi(bg, phi);
  SliceData out;
  out.lambdas.resize(P * n);
  out.theta.resize(P);
  out.weight.resize(P);
  out.im_weight.resize(P);
  if (need_frames) {
    out.frames.resize(P * n * n);
    out.has_frames = true;
  }
  const Reducer red(bg);
  const double cth = std::cos(bg.theta_hat), sth = std::sin(bg.theta_hat);
  parallel_for(P, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      double a00, a11 = 0.0;
      cplx a01(0, 0);
      if (n == 1) {
        red.reduce(aphi.diag[p], cplx(0, 0), 0.0, a00, a01, a11);
        out.lambdas[p] = a00;
        out.theta[p] = std::atan(a00);
        const cplx z = cplx(1.0, a00) * cplx(cth, -sth);
        out.weight[p] = z.real();
        out.im_weight[p] = z.imag();
        if (need_frames) out.frames[p] = red.trivial ? cplx(1, 0) : std::conj(red.l00);
      } else {
        red.reduce(aphi.diag[2 * p], aphi.off[p], aphi.diag[2 * p + 1], a00, a01, a11);
        const auto e = detail::herm2_eig(a00, a01, a11);
        out.lambdas[2 * p] = e.lam[0];
        out.lambdas[2 * p + 1] = e.lam[1];
        out.theta[p] = std::atan(e.lam[0]) + std::atan(e.lam[1]);
        const cplx z = detail::det_i_plus_ia2(a00, a01, a11) * cplx(cth, -sth);
        out.weight[p] = z.real();
        out.im_weight[p] = z.imag();
        if (need_frames) {
          // Y = Linv^adj * V so that Y^* omega Y = I, Y^* alpha_phi Y = diag.
          for (int j = 0; j < 2; ++j) {
            cplx y0 = e.vec[2 * j], y1 = e.vec[2 * j + 1];
            if (!red.trivial) {
              const cplx t0 = std::conj(red.l00) * y0 + std::conj(red.l10) * y1;
              const cplx t1 = std::conj(red.l11) * y1;
              y0 = t0;
              y1 = t1;
            }
            out.frames[p * 4 + 2 * j] = y0;
            out.frames[p * 4 + 2 * j + 1] = y1;
          }
        }
      }
    }
  });
  return out;
}

double topological_angle(const TorusGrid& grid, const Matrix& omega, const Matrix& alpha_const,
                         const std::optional<ScalarField>& alpha_potential) {
  grid.validate();
  BackgroundData tmp;
  tmp.grid = grid;
  tmp.omega = omega;
  tmp.alpha_const = alpha_const;
  tmp.alpha = Form11Field(grid);
  const int n = grid.complex_dim;
  {
    Form11Field base(grid);
    const std::size_t P = static_cast<std::size_t>(grid.point_count());
    for (std::size_t p = 0; p < P; ++p) {
      for (int j = 0; j < n; ++j) base.diag[p * n + j] = alpha_const(j, j).real();
      if (n == 2) base.off[p] = alpha_const(0, 1);
    }
    if (alpha_potential) {
      auto H = complex_hessian(*alpha_potential);
      for (std::size_t i = 0; i < base.diag.size(); ++i) base.diag[i] += H.diag[i];
      for (std::size_t i = 0; i < base.off.size(); ++i) base.off[i] += H.off[i];
    }
    tmp.alpha = std::move(base);
  }
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success)
    throw DomainError("topological_angle: omega is not positive definite");
  tmp.omega_linv = llt.matrixL().solve(Matrix::Identity(n, n));
  tmp.theta_hat = 0.0;

  const Reducer red(tmp);
  const std::size_t P = static_cast<std::size_t>(grid.point_count());
  cplx z(0, 0);
  for (std::size_t p = 0; p < P; ++p) {
    double a00, a11;
    cplx a01;
    if (n == 1) {
      red.reduce(tmp.alpha.diag[p], cplx(0, 0), 0.0, a00, a01, a11);
      z += cplx(1.0, a00);
    } else {
      red.reduce(tmp.alpha.diag[2 * p], tmp.alpha.off[p], tmp.alpha.diag[2 * p + 1], a00, a01, a11);
      z += detail::det_i_plus_ia2(a00, a01, a11);
    }
  }
  z *= grid.cell_volume();
  double vol = 1.0;
  for (int a = 0; a < grid.real_dims(); ++a) vol *= grid.period;
  if (std::abs(z) <= 1e-8 * vol)
    throw DomainError(
        "topological_angle: the complex volume integral vanishes; the standing "
        "assumption int (omega + i alpha)^n != 0 fails");
  return std::arg(z);
}

double lift_phase(const BackgroundData& bg, const ScalarField& phi) {
  const SliceData s = compute_slice(bg, phi);
  double theta_min = s.theta[0], theta_max = s.theta[0];
  for (double t : s.theta) {
    theta_min = std::min(theta_min, t);
    theta_max = std::max(theta_max, t);
  }
  const int n = bg.n();
  const double half = n * kPi / 2.0;
  double found = 0.0;
  int count = 0;
  for (int k = -2; k <= 2; ++k) {
    const double beta = bg.theta_arg + kTwoPi * k;
    if (beta <= -half || beta >= half) continue;
    if (theta_max - beta < kPi / 2.0 && beta - theta_min < kPi / 2.0) {
      found = beta;
      ++count;
    }
  }
  if (count == 0)
    throw DomainError("lift_phase: no admissible branch on the grid; phi is not in H");
  if (count > 1)
    throw NumericalError("lift_phase: ambiguous branch (phase oscillation >= pi)");
  return found;
}

BackgroundData make_background(const TorusGrid& grid, const Matrix& omega,
                               const Matrix& alpha_const,
                               const std::optional<ScalarField>& alpha_potential) {
  grid.validate();
  const int n = grid.complex_dim;
  if (omega.rows() != n || alpha_const.rows() != n)
    throw DomainError("make_background: matrix dimension does not match the grid");
  if (hermitian_defect(omega) > 1e-12 || hermitian_defect(alpha_const) > 1e-12)
    throw DomainError("make_background: omega and alpha must be Hermitian");
  BackgroundData bg;
  bg.grid = grid;
  bg.omega = omega;
  bg.alpha_const = alpha_const;
  bg.alpha_potential = alpha_potential;
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(omega, Eigen::EigenvaluesOnly);
    std::ostringstream msg;
    msg << "make_background: omega not positive definite (smallest eigenvalue "
        << es.eigenvalues().minCoeff() << ")";
    throw DomainError(msg.str());
  }
  bg.omega_linv = llt.matrixL().solve(Matrix::Identity(n, n));

  Form11Field base(grid);
  const std::size_t P = static_cast<std::size_t>(grid.point_count());
  for (std::size_t p = 0; p < P; ++p) {
    for (int j = 0; j < n; ++j) base.diag[p * n + j] = alpha_const(j, j).real();
    if (n == 2) base.off[p] = alpha_const(0, 1);
  }
  if (alpha_potential) {
    if (!(alpha_potential->grid == grid))
      throw DomainError("make_background: alpha potential lives on a different grid");
    auto H = complex_hessian(*alpha_potential);
    for (std::size_t i = 0; i < base.diag.size(); ++i) base.diag[i] += H.diag[i];
    for (std::size_t i = 0; i < base.off.size(); ++i) base.off[i] += H.off[i];
  }
  bg.alpha = std::move(base);

  bg.theta_arg = topological_angle(grid, omega, alpha_const, alpha_potential);
  bg.theta_hat = 0.0;
  bg.theta_hat = lift_phase(bg, ScalarField(grid));
  return bg;
}

MembershipResult is_member(const BackgroundData& bg, const ScalarField& phi) {
  const SliceData s = compute_slice(bg, phi);
  MembershipResult r;
  r.margin = kPi;
  for (std::size_t p = 0; p < s.theta.size(); ++p) {
    const double m = kPi / 2.0 - std::fabs(s.theta[p] - bg.theta_hat);
    if (m < r.margin) {
      r.margin = m;
      r.worst_point = static_cast<std::int64_t>(p);
    }
  }
  r.member = r.margin > 0.0;
  return r;
}

double metric_inner(const BackgroundData& bg, const ScalarField& phi, const ScalarField& psi1,
                    const ScalarField& psi2) {
  auto m = is_member(bg, phi);
  if (!m.member) {
    std::ostringstream msg;
    msg << "metric_inner: phi is not in H (margin " << m.margin << " at point " << m.worst_point
        << ")";
    throw DomainError(msg.str());
  }
  const SliceData s = compute_slice(bg, phi);
  return integrate3(psi1, psi2, s.weight);
}

std::vector<double> path_energy_profile(const BackgroundData& bg, const PathField& path) {
  const int m = path.time_steps;
  std::vector<double> energy(m, 0.0);
  for (int k = 0; k < m; ++k) {
    ScalarField slice = path.slice_field(k);
    const SliceData s = compute_slice(bg, slice);
    double min_margin = kPi;
    for (double t : s.theta) min_margin = std::min(min_margin, kPi / 2 - std::fabs(t - bg.theta_hat));
    if (min_margin <= 0.0) {
      std::ostringstream msg;
      msg << "path_energy_profile: slice " << k << " is not in H (margin " << min_margin << ")";
      throw DomainError(msg.str());
    }
    ScalarField dphi = path_time_derivative(path, k);
    energy[k] = integrate3(dphi, dphi, s.weight);
  }
  return energy;
}

double path_length_from_energy(const std::vector<double>& energy, double dt) {
  double len = 0.0;
  for (std::size_t k = 0; k + 1 < energy.size(); ++k)
    len += 0.5 * dt * (std::sqrt(std::max(0.0, energy[k])) + std::sqrt(std::max(0.0, energy[k + 1])));
  return len;
}

double path_length(const BackgroundData& bg, const PathField& path) {
  return path_length_from_energy(path_energy_profile(bg, path), path.dt());
}

double j_functional_delta(const BackgroundData& bg, const ScalarField& phi,
                          const ScalarField& psi) {
  const SliceData s = compute_slice(bg, phi);
  return -integrate(psi, s.im_weight);
}

std::vector<double> j_functional_along(const BackgroundData& bg, const PathField& path) {
  const int m = path.time_steps;
  const double dt = path.dt();
  std::vector<double> deltas(m, 0.0);
  for (int k = 0; k < m; ++k) {
    ScalarField slice = path.slice_field(k);
    ScalarField dphi = path_time_derivative(path, k);
    deltas[k] = j_functional_delta(bg, slice, dphi);
  }
  std::vector<double> j(m, 0.0);
  for (int k = 1; k < m; ++k) j[k] = j[k - 1] + 0.5 * dt * (deltas[k - 1] + deltas[k]);
  return j;
}

PathField linear_path(const ScalarField& phi0, const ScalarField& phi1, int time_steps) {
  if (!(phi0.grid == phi1.grid)) throw DomainError("linear_path: endpoint grids differ");
  if (time_steps < 2) throw DomainError("linear_path: need at least two time steps");
  PathField path(phi0.grid, time_steps);
  const std::int64_t P = phi0.grid.point_count();
  for (int k = 0; k < time_steps; ++k) {
    const double t = static_cast<double>(k) / (time_steps - 1);
    double* s = path.slice(k);
    if (k == 0) {
      std::memcpy(s, phi0.values.data(), sizeof(double) * P);
    } else if (k == time_steps - 1) {
      std::memcpy(s, phi1.values.data(), sizeof(double) * P);
    } else {
      for (std::int64_t p = 0; p < P; ++p)
        s[p] = (1.0 - t) * phi0.values[p] + t * phi1.values[p];
    }
  }
  return path;
}

}  // namespace almcal
