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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "almcal/common.hpp"

namespace almcal {

// Uniform periodic grid on the flat torus X = (C/2piZ)^n carried as 2n real
// axes in the fixed order x_1, y_1, ..., x_n, y_n (x_1 slowest in memory).
struct TorusGrid {
  int complex_dim = 1;     // n, 1 or 2
  int points_per_axis = 8; // even, >= 8
  double period = kTwoPi;  // per real axis

  int real_dims() const { return 2 * complex_dim; }
  double spacing() const { return period / points_per_axis; }
  std::int64_t point_count() const {
    std::int64_t p = 1;
    for (int a = 0; a < real_dims(); ++a) p *= points_per_axis;
    return p;
  }
  // Cell volume of the quadrature, h^{2n}.
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < real_dims(); ++a) v *= spacing();
    return v;
  }
  std::int64_t axis_stride(int axis) const {
    std::int64_t s = 1;
    for (int a = axis + 1; a < real_dims(); ++a) s *= points_per_axis;
    return s;
  }
  bool operator==(const TorusGrid& o) const {
    return complex_dim == o.complex_dim && points_per_axis == o.points_per_axis &&
           period == o.period;
  }
  void validate() const;
};

struct ScalarField {
  TorusGrid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g) : grid(g), values(g.point_count(), 0.0) {}
  ScalarField(const TorusGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {}

  double mean() const;
  bool finite() const;
};

// Pointwise n x n Hermitian matrices over the grid: real diagonal entries and
// the independent upper off-diagonals (n <= 2 so at most one).
struct Form11Field {
  TorusGrid grid;
  std::vector<double> diag;  // point-major, n entries per point
  std::vector<cplx> off;     // entry (0,1) per point when n == 2

  Form11Field() = default;
  explicit Form11Field(const TorusGrid& g)
      : grid(g),
        diag(static_cast<std::size_t>(g.point_count()) * g.complex_dim, 0.0),
        off(g.complex_dim == 2 ? static_cast<std::size_t>(g.point_count()) : 0, cplx(0, 0)) {}

  double max_hermitian_defect() const { return 0.0; }  // Hermitian by layout
};

// Complex n-vector field, point-major: v[p*n + j] = (d/dz_j) f at point p.
struct GradientField {
  TorusGrid grid;
  std::vector<cplx> values;
};

// Second-order central differences along one real axis, periodic.
void axis_derivative(const ScalarField& f, int axis, std::vector<double>& out);

// d/dz_j f = (1/2)(d/dx_j - i d/dy_j) f, all j, O(h^2).
GradientField complex_gradient(const ScalarField& f);

// d^2/(dz_j dzbar_k) f.  Hermitian by construction of the symmetrized stencil.
Form11Field complex_hessian(const ScalarField& f);

// Full real Hessian sup-norm, max over points and axis pairs of |D_a D_b f|.
double sup_real_hessian(const ScalarField& f);

double sup_abs(const std::vector<double>& v);

// Uniform Riemann sum of f * weight * h^{2n}; exact for trigonometric
// polynomials below the Nyquist degree.
double integrate(const ScalarField& f, const std::vector<double>& weight);
double integrate3(const ScalarField& f, const ScalarField& g, const std::vector<double>& weight);

// Evaluates fn(x) over the grid, fn receives the 2n real coordinates in the
// axis order x_1, y_1, ...
template <typename Fn>
ScalarField field_from_function(const TorusGrid& g, Fn&& fn) {
  ScalarField f(g);
  const int nd = g.real_dims();
  const int N = g.points_per_axis;
  const double h = g.spacing();
  std::vector<double> x(nd, 0.0);
  std::vector<int> idx(nd, 0);
  const std::int64_t P = g.point_count();
  for (std::int64_t p = 0; p < P; ++p) {
    for (int a = 0; a < nd; ++a) x[a] = idx[a] * h;
    f.values[static_cast<std::size_t>(p)] = fn(x);
    for (int a = nd - 1; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }
  return f;
}

// Time-indexed family phi(., t_k), t_k = k/(m-1), on a shared spatial grid.
struct PathField {
  TorusGrid grid;
  int time_steps = 2;
  std::vector<double> values;  // slice-major, time_steps * point_count

  PathField() = default;
  PathField(const TorusGrid& g, int m)
      : grid(g), time_steps(m),
        values(static_cast<std::size_t>(m) * static_cast<std::size_t>(g.point_count()), 0.0) {}

  double* slice(int k) { return values.data() + static_cast<std::size_t>(k) * grid.point_count(); }
  const double* slice(int k) const {
    return values.data() + static_cast<std::size_t>(k) * grid.point_count();
  }
  ScalarField slice_field(int k) const;
  double dt() const { return 1.0 / (time_steps - 1); }
};

// Time derivative of a path at slice k: central in the interior, one-sided
// second order at the endpoints.
ScalarField path_time_derivative(const PathField& path, int k);

// Bit-exact binary serialization.
void save_field(const ScalarField& f, const std::string& path);
ScalarField load_field(const std::string& path);
void save_path(const PathField& p, const std::string& path);
PathField load_path(const std::string& path);

}  // namespace almcal
