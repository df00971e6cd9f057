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

#include "almcal/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace almcal {

double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

Eigen::LLT<Matrix> checked_cholesky(const Matrix& omega) {
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(omega, Eigen::EigenvaluesOnly);
    std::ostringstream msg;
    msg << "pencil: omega is not positive definite (smallest eigenvalue "
        << es.eigenvalues().minCoeff() << ")";
    throw DomainError(msg.str());
  }
  return llt;
}

}  // namespace

std::vector<double> pencil_eigenvalues(const Matrix& alpha, const Matrix& omega) {
  if (alpha.rows() != omega.rows()) throw DomainError("pencil: dimension mismatch");
  auto llt = checked_cholesky(omega);
  const Matrix linv = llt.matrixL().solve(Matrix::Identity(omega.rows(), omega.cols()));
  const Matrix reduced = linv * alpha * linv.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(reduced, Eigen::EigenvaluesOnly);
  std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + omega.rows());
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return lam;
}

PencilFrame pencil_frame(const Matrix& alpha, const Matrix& omega) {
  auto llt = checked_cholesky(omega);
  const Matrix linv = llt.matrixL().solve(Matrix::Identity(omega.rows(), omega.cols()));
  const Matrix reduced = linv * alpha * linv.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(reduced);
  const auto n = omega.rows();
  PencilFrame out;
  out.lambdas.resize(n);
  Matrix v(n, n);
  // Eigen sorts ascending; flip to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.lambdas[static_cast<std::size_t>(i)] = es.eigenvalues()(n - 1 - i);
    v.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  out.frame = linv.adjoint() * v;  // Y with Y^* omega Y = I
  return out;
}

double phase(const std::vector<double>& lambdas) {
  double s = 0.0;
  for (double l : lambdas) s += std::atan(l);
  return s;
}

PhasePointData phase_point(const std::vector<double>& lambdas_any_order) {
  PhasePointData d;
  d.lambdas = lambdas_any_order;
  std::sort(d.lambdas.begin(), d.lambdas.end(), std::greater<double>());
  d.theta = phase(d.lambdas);
  d.radius = 1.0;
  for (double l : d.lambdas) d.radius *= std::sqrt(1.0 + l * l);
  return d;
}

CalibrationData calibrated_volume(const std::vector<double>& lambdas, double theta_hat) {
  cplx z(1.0, 0.0);
  for (double l : lambdas) z *= cplx(1.0, l);
  const cplx w = std::polar(1.0, -theta_hat) * z;
  CalibrationData c;
  c.theta_hat = theta_hat;
  c.real_part = w.real();
  c.imag_part = w.imag();
  c.tangent_valid = c.real_part > 0.0;
  c.tangent = c.tangent_valid ? c.imag_part / c.real_part : 0.0;
  return c;
}

namespace {

double calibrated_tangent(const std::vector<double>& lambdas, double theta_hat) {
  const CalibrationData c = calibrated_volume(lambdas, theta_hat);
  if (!c.tangent_valid)
    throw DomainError("q_integrand: calibration violated, Re(e^{-i theta}Omega^n) <= 0");
  return c.tangent;
}

}  // namespace

double q_integrand(const std::vector<double>& lambdas, double theta_hat,
                   const CVector& grad_psi, const CVector& grad_eta) {
  const double t = calibrated_tangent(lambdas, theta_hat);
  double q = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double li = lambdas[i];
    const auto idx = static_cast<Eigen::Index>(i);
    q += (t - li) * (grad_psi(idx) * std::conj(grad_eta(idx))).real() / (1.0 + li * li);
  }
  return q;
}

double curvature_square_root_term(const std::vector<double>& lambdas, double theta_hat,
                                  const CVector& grad_psi, const CVector& grad_eta) {
  const double t = calibrated_tangent(lambdas, theta_hat);
  double s = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double li = lambdas[i];
    const auto idx = static_cast<Eigen::Index>(i);
    s += (t - li) * (grad_psi(idx) * std::conj(grad_eta(idx))).imag() / (1.0 + li * li);
  }
  return s;
}

double curvature_integrand(const std::vector<double>& lambdas, double theta_hat,
                           const CVector& grad_psi, const CVector& grad_eta) {
  const double t = calibrated_tangent(lambdas, theta_hat);
  // With w_i = d_i psi conj(d_i eta):
  //   -(1+t^2)(A B - |W|^2) - S^2,
  //   A = sum |d_i psi|^2/(1+l^2), B likewise for eta, W = sum w_i/(1+l^2),
  //   S = sum (t - l_i) Im(w_i)/(1+l^2).
  double a = 0.0, b = 0.0, s = 0.0;
  cplx w(0.0, 0.0);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double li = lambdas[i];
    const double d = 1.0 + li * li;
    const auto idx = static_cast<Eigen::Index>(i);
    const cplx wi = grad_psi(idx) * std::conj(grad_eta(idx));
    a += std::norm(grad_psi(idx)) / d;
    b += std::norm(grad_eta(idx)) / d;
    w += wi / d;
    s += (t - li) * wi.imag() / d;
  }
  return -(1.0 + t * t) * (a * b - std::norm(w)) - s * s;
}

LagrangianCheck lagrangian_property_check(const std::vector<double>& mus_desc, double eta) {
  LagrangianCheck r;
  const int m = static_cast<int>(mus_desc.size());
  if (m == 0 || !(eta > 0.0)) return r;
  const int n = m - 1;  // mus indexed 0..n
  double sum_atan = 0.0;
  for (double mu : mus_desc) sum_atan += std::atan(mu);
  r.hypothesis_met = sum_atan >= static_cast<double>(n - 1) * kPi / 2.0 + eta;
  if (!r.hypothesis_met) return r;  // report the gate, not an error

  r.positivity = true;
  for (int i = 0; i + 1 < m; ++i) r.positivity = r.positivity && mus_desc[i] > 0.0;
  if (m >= 2) r.positivity = r.positivity && (mus_desc[n - 1] + mus_desc[n] >= 0.0);

  r.eigen_floor = mus_desc[n] >= -1.0 / std::tan(eta);
  if (m >= 2) r.eigen_floor = r.eigen_floor && mus_desc[n - 1] >= std::tan(eta / 2.0);

  r.negative_branch = true;
  if (mus_desc[n] < 0.0) {
    double inv_sum = 0.0;
    for (double mu : mus_desc) inv_sum += 1.0 / mu;
    r.negative_branch = inv_sum < -std::tan(eta);
    if (m >= 2) r.negative_branch = r.negative_branch && mus_desc[n - 1] >= std::tan(eta);
  }
  return r;
}

}  // namespace almcal
