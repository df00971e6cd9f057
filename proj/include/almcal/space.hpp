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

#include <optional>
#include <vector>

#include "almcal/grid.hpp"
#include "almcal/pointwise.hpp"

namespace almcal {

// Background of the space H: flat Kahler form omega (constant, positive
// definite), a closed background (1,1) form alpha (a constant matrix plus an
// optional potential contribution i ddbar rho), and the lifted phase.
struct BackgroundData {
  TorusGrid grid;
  Matrix omega;
  Matrix alpha_const;
  std::optional<ScalarField> alpha_potential;
  Form11Field alpha;     // pointwise alpha_const + i ddbar rho
  Matrix omega_linv;     // inverse Cholesky factor of omega
  double theta_arg = 0;  // principal argument of the complex volume integral
  double theta_hat = 0;  // lifted phase in (-n pi/2, n pi/2)

  int n() const { return grid.complex_dim; }
  bool hypercritical() const;
};

// Builds a background and resolves the lifted phase from phi = 0.
BackgroundData make_background(const TorusGrid& grid, const Matrix& omega,
                               const Matrix& alpha_const,
                               const std::optional<ScalarField>& alpha_potential = {});

// Per-point spectral data of the pencil (omega, alpha_phi) over the grid.
// weight = r cos(Theta - theta_hat) is the quadrature density of the metric,
// im_weight = r sin(Theta - theta_hat) the one of Im(e^{-i theta} Omega^n).
struct SliceData {
  std::vector<double> lambdas;    // point-major, n per point, descending
  std::vector<double> theta;      // per point
  std::vector<double> weight;     // per point
  std::vector<double> im_weight;  // per point
  std::vector<cplx> frames;       // optional, point-major n*n column-major Y
  bool has_frames = false;
};

// alpha_phi = alpha + i ddbar phi as a pointwise Hermitian field.
Form11Field alpha_phi(const BackgroundData& bg, const ScalarField& phi);

SliceData compute_slice(const BackgroundData& bg, const ScalarField& phi,
                        bool need_frames = false);

// Topological angle: principal argument of the quadrature of (omega+i alpha)^n.
// Throws when the integral nearly vanishes (the standing assumption fails).
double topological_angle(const TorusGrid& grid, const Matrix& omega, const Matrix& alpha_const,
                         const std::optional<ScalarField>& alpha_potential = {});

// Unique beta in (-n pi/2, n pi/2) with beta = theta_arg mod 2pi and
// |Theta(alpha_phi) - beta| < pi/2 on the whole grid.
double lift_phase(const BackgroundData& bg, const ScalarField& phi);

struct MembershipResult {
  bool member = false;
  double margin = 0.0;          // min over grid of pi/2 - |Theta - theta_hat|
  std::int64_t worst_point = 0; // flat index of the minimizing point
};
MembershipResult is_member(const BackgroundData& bg, const ScalarField& phi);

// <psi1, psi2>_phi = int psi1 psi2 Re(e^{-i theta}(omega + i alpha_phi)^n).
double metric_inner(const BackgroundData& bg, const ScalarField& phi, const ScalarField& psi1,
                    const ScalarField& psi2);

// E(t_k) along a path; every slice must be a member.
std::vector<double> path_energy_profile(const BackgroundData& bg, const PathField& path);

double path_length(const BackgroundData& bg, const PathField& path);
double path_length_from_energy(const std::vector<double>& energy, double dt);

// delta J(psi) = -int psi Im(e^{-i theta} Omega_phi^n).
double j_functional_delta(const BackgroundData& bg, const ScalarField& phi,
                          const ScalarField& psi);

// J(t_k) along a path by trapezoid integration of delta J(phi, phi_dot),
// normalized to J(t_0) = 0.
std::vector<double> j_functional_along(const BackgroundData& bg, const PathField& path);

PathField linear_path(const ScalarField& phi0, const ScalarField& phi1, int time_steps);

}  // namespace almcal
