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

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "almcal/common.hpp"

namespace almcal {

using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Eigenvalues lambda_i and derived pointwise data of a Hermitian pencil
// (omega, alpha): Theta = sum arctan(lambda_i), r = prod sqrt(1+lambda_i^2).
struct PhasePointData {
  std::vector<double> lambdas;  // descending
  double theta = 0.0;
  double radius = 1.0;
};

// Calibrated volume-ratio data at a lifted phase theta_hat:
//   real_part = r cos(Theta - theta_hat), imag_part = r sin(Theta - theta_hat),
//   tangent   = tan(Theta - theta_hat), defined only when real_part > 0.
struct CalibrationData {
  double theta_hat = 0.0;
  double real_part = 1.0;
  double imag_part = 0.0;
  double tangent = 0.0;
  bool tangent_valid = true;
};

// Hermitian symmetry check used by constructors of pointwise matrices.
double hermitian_defect(const Matrix& m);

// Eigenvalues of the endomorphism omega^{-1} alpha, descending.  Reduction is
// by Cholesky of omega to a standard Hermitian problem.  Throws DomainError
// naming the smallest eigenvalue when omega is not positive definite.
std::vector<double> pencil_eigenvalues(const Matrix& alpha, const Matrix& omega);

// Same reduction, but also returns the frame Y with Y^* omega Y = I and
// Y^* alpha Y = diag(lambda).  Gradients transform as g -> Y^* g.
struct PencilFrame {
  std::vector<double> lambdas;
  Matrix frame;
};
PencilFrame pencil_frame(const Matrix& alpha, const Matrix& omega);

double phase(const std::vector<double>& lambdas);
PhasePointData phase_point(const std::vector<double>& lambdas_any_order);

CalibrationData calibrated_volume(const std::vector<double>& lambdas, double theta_hat);

// Q(grad psi, grad eta) = sum_i (tan(Theta-theta_hat) - lambda_i)
//                         Re(d_i psi conj(d_i eta)) / (1+lambda_i^2),
// the diagonalized Levi-Civita integrand.  Gradients are the d/dz components
// in the pencil eigenframe.  Throws when the point is not calibrated.
double q_integrand(const std::vector<double>& lambdas, double theta_hat,
                   const CVector& grad_psi, const CVector& grad_eta);

// Pointwise integrand of <R(psi,eta)eta,psi> before volume weighting;
// always <= 0, vanishing exactly on flat 2-planes.
double curvature_integrand(const std::vector<double>& lambdas, double theta_hat,
                           const CVector& grad_psi, const CVector& grad_eta);

// The final (squared) term of the diagonalized curvature integrand, returned
// as the value it squares: S = sum_i (tan - lambda_i) Im(d_i psi conj(d_i eta))
// / (1 + lambda_i^2).  The integrand's last line equals -S^2.
double curvature_square_root_term(const std::vector<double>& lambdas, double theta_hat,
                                  const CVector& grad_psi, const CVector& grad_eta);

// Eigenvalue floor diagnostics for the Lagrangian phase operator in the
// hypercritical regime, for mus = (mu_0 >= ... >= mu_n):
//   hypothesis: sum arctan(mu_i) >= (n-1) pi/2 + eta
//   (1) mu_0,...,mu_{n-1} > 0 and mu_{n-1} + mu_n >= 0
//   (2) mu_{n-1} >= tan(eta/2) and mu_n >= -cot(eta)
//   (3) if mu_n < 0: mu_{n-1} >= tan(eta) and sum 1/mu_i < -tan(eta)
struct LagrangianCheck {
  bool hypothesis_met = false;
  bool positivity = false;       // (1)
  bool eigen_floor = false;      // (2)
  bool negative_branch = false;  // (3), vacuously true when mu_n >= 0
  bool all() const { return hypothesis_met && positivity && eigen_floor && negative_branch; }
};
LagrangianCheck lagrangian_property_check(const std::vector<double>& mus_desc, double eta);

}  // namespace almcal
