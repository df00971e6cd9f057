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

#include "almcal/grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "almcal/parallel.hpp"

namespace almcal {

void TorusGrid::validate() const {
  if (complex_dim < 1 || complex_dim > 2)
    throw DomainError("TorusGrid: complex_dim must be 1 or 2");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw DomainError("TorusGrid: points_per_axis must be an even integer >= 8");
  if (!(period > 0.0)) throw DomainError("TorusGrid: period must be positive");
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

bool ScalarField::finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

ScalarField PathField::slice_field(int k) const {
  ScalarField f(grid);
  std::memcpy(f.values.data(), slice(k), sizeof(double) * grid.point_count());
  return f;
}

namespace {

// Wrapped neighbor offset tables for one axis: for position i along the axis,
// the flat-index shift of i+1 and i-1.
struct AxisWrap {
  std::vector<std::int64_t> up, dn;
  AxisWrap(int N, std::int64_t stride) : up(N), dn(N) {
    for (int i = 0; i < N; ++i) {
      up[i] = (i + 1 < N) ? stride : stride * (1 - N);
      dn[i] = (i > 0) ? -stride : stride * (N - 1);
    }
  }
};

// Runs fn(p, pos) over all points with pos = per-axis index array.
template <typename Fn>
void for_each_point(const TorusGrid& g, Fn&& fn) {
  const int nd = g.real_dims();
  const int N = g.points_per_axis;
  const std::int64_t P = g.point_count();
  std::vector<int> pos(nd, 0);
  for (std::int64_t p = 0; p < P; ++p) {
    fn(p, pos.data());
    for (int a = nd - 1; a >= 0; --a) {
      if (++pos[a] < N) break;
      pos[a] = 0;
    }
  }
}

}  // namespace

void axis_derivative(const ScalarField& f, int axis, std::vector<double>& out) {
  const TorusGrid& g = f.grid;
  const double inv2h = 1.0 / (2.0 * g.spacing());
  AxisWrap w(g.points_per_axis, g.axis_stride(axis));
  out.assign(f.values.size(), 0.0);
  const double* v = f.values.data();
  for_each_point(g, [&](std::int64_t p, const int* pos) {
    const int i = pos[axis];
    out[p] = (v[p + w.up[i]] - v[p + w.dn[i]]) * inv2h;
  });
}

GradientField complex_gradient(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  const int n = g.complex_dim;
  GradientField out;
  out.grid = g;
  out.values.assign(static_cast<std::size_t>(g.point_count()) * n, cplx(0, 0));
  std::vector<double> dx, dy;
  for (int j = 0; j < n; ++j) {
    axis_derivative(f, 2 * j, dx);
    axis_derivative(f, 2 * j + 1, dy);
    for (std::size_t p = 0; p < dx.size(); ++p)
      out.values[p * n + j] = 0.5 * cplx(dx[p], -dy[p]);
  }
  return out;
}

namespace {

// Mixed second central differences D_a D_b f (a != b), and pure D_a^2 f.
void second_diff_pure(const ScalarField& f, int axis, std::vector<double>& out) {
  const TorusGrid& g = f.grid;
  const double invh2 = 1.0 / (g.spacing() * g.spacing());
  AxisWrap w(g.points_per_axis, g.axis_stride(axis));
  out.assign(f.values.size(), 0.0);
  const double* v = f.values.data();
  for_each_point(g, [&](std::int64_t p, const int* pos) {
    const int i = pos[axis];
    out[p] = (v[p + w.up[i]] - 2.0 * v[p] + v[p + w.dn[i]]) * invh2;
  });
}

void second_diff_mixed(const ScalarField& f, int a, int b, std::vector<double>& out) {
  const TorusGrid& g = f.grid;
  const double inv4h2 = 1.0 / (4.0 * g.spacing() * g.spacing());
  AxisWrap wa(g.points_per_axis, g.axis_stride(a));
  AxisWrap wb(g.points_per_axis, g.axis_stride(b));
  out.assign(f.values.size(), 0.0);
  const double* v = f.values.data();
  for_each_point(g, [&](std::int64_t p, const int* pos) {
    const int ia = pos[a], ib = pos[b];
    out[p] = (v[p + wa.up[ia] + wb.up[ib]] - v[p + wa.up[ia] + wb.dn[ib]] -
              v[p + wa.dn[ia] + wb.up[ib]] + v[p + wa.dn[ia] + wb.dn[ib]]) *
             inv4h2;
  });
}

}  // namespace

Form11Field complex_hessian(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  const int n = g.complex_dim;
  Form11Field H(g);
  const std::size_t P = f.values.size();
  std::vector<double> t1, t2, t3, t4;
  for (int j = 0; j < n; ++j) {
    second_diff_pure(f, 2 * j, t1);
    second_diff_pure(f, 2 * j + 1, t2);
    for (std::size_t p = 0; p < P; ++p) H.diag[p * n + j] = 0.25 * (t1[p] + t2[p]);
  }
  if (n == 2) {
    // (0,1) entry: 1/4[(Dx0 Dx1 + Dy0 Dy1) + i(Dx0 Dy1 - Dy0 Dx1)].
    second_diff_mixed(f, 0, 2, t1);
    second_diff_mixed(f, 1, 3, t2);
    second_diff_mixed(f, 0, 3, t3);
    second_diff_mixed(f, 1, 2, t4);
    for (std::size_t p = 0; p < P; ++p)
      H.off[p] = 0.25 * cplx(t1[p] + t2[p], t3[p] - t4[p]);
  }
  return H;
}

double sup_real_hessian(const ScalarField& f) {
  const int nd = f.grid.real_dims();
  double sup = 0.0;
  std::vector<double> t;
  for (int a = 0; a < nd; ++a) {
    second_diff_pure(f, a, t);
    for (double v : t) sup = std::max(sup, std::fabs(v));
    for (int b = a + 1; b < nd; ++b) {
      second_diff_mixed(f, a, b, t);
      for (double v : t) sup = std::max(sup, std::fabs(v));
    }
  }
  return sup;
}

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

double integrate(const ScalarField& f, const std::vector<double>& weight) {
  if (weight.size() != f.values.size())
    throw DomainError("integrate: weight and field live on different grids");
  double s = 0.0;
  for (std::size_t p = 0; p < weight.size(); ++p) s += f.values[p] * weight[p];
  return s * f.grid.cell_volume();
}

double integrate3(const ScalarField& f, const ScalarField& g, const std::vector<double>& weight) {
  if (!(f.grid == g.grid) || weight.size() != f.values.size())
    throw DomainError("integrate3: grid mismatch");
  double s = 0.0;
  for (std::size_t p = 0; p < weight.size(); ++p) s += f.values[p] * g.values[p] * weight[p];
  return s * f.grid.cell_volume();
}

ScalarField path_time_derivative(const PathField& path, int k) {
  const int m = path.time_steps;
  const double dt = path.dt();
  ScalarField out(path.grid);
  const std::int64_t P = path.grid.point_count();
  if (k > 0 && k < m - 1) {
    const double* a = path.slice(k - 1);
    const double* b = path.slice(k + 1);
    for (std::int64_t p = 0; p < P; ++p) out.values[p] = (b[p] - a[p]) / (2.0 * dt);
  } else if (k == 0) {
    const double* f0 = path.slice(0);
    const double* f1 = path.slice(1);
    const double* f2 = path.slice(2);
    for (std::int64_t p = 0; p < P; ++p)
      out.values[p] = (-3.0 * f0[p] + 4.0 * f1[p] - f2[p]) / (2.0 * dt);
  } else {
    const double* f0 = path.slice(m - 1);
    const double* f1 = path.slice(m - 2);
    const double* f2 = path.slice(m - 3);
    for (std::int64_t p = 0; p < P; ++p)
      out.values[p] = (3.0 * f0[p] - 4.0 * f1[p] + f2[p]) / (2.0 * dt);
  }
  return out;
}

namespace {

constexpr char kFieldMagic[4] = {'A', 'C', 'F', '1'};
constexpr char kPathMagic[4] = {'A', 'C', 'P', '1'};

void write_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  os.write(b, 4);
}
std::uint32_t read_u32(std::istream& is) {
  char b[4];
  is.read(b, 4);
  std::uint32_t v;
  std::memcpy(&v, b, 4);
  return v;
}
void write_f64(std::ostream& os, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  os.write(b, 8);
}
double read_f64(std::istream& is) {
  char b[8];
  is.read(b, 8);
  double v;
  std::memcpy(&v, b, 8);
  return v;
}

void write_grid_header(std::ostream& os, const TorusGrid& g) {
  write_u32(os, static_cast<std::uint32_t>(g.complex_dim));
  write_u32(os, static_cast<std::uint32_t>(g.points_per_axis));
  write_f64(os, g.period);
}

TorusGrid read_grid_header(std::istream& is) {
  TorusGrid g;
  g.complex_dim = static_cast<int>(read_u32(is));
  g.points_per_axis = static_cast<int>(read_u32(is));
  g.period = read_f64(is);
  return g;
}

}  // namespace

void save_field(const ScalarField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("save_field: cannot open " + path);
  os.write(kFieldMagic, 4);
  write_grid_header(os, f.grid);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(sizeof(double) * f.values.size()));
}

ScalarField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NumericalError("load_field: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, kFieldMagic, 4) != 0)
    throw DomainError("load_field: bad magic in " + path);
  TorusGrid g = read_grid_header(is);
  g.validate();
  ScalarField f(g);
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(sizeof(double) * f.values.size()));
  if (!is) throw NumericalError("load_field: truncated file " + path);
  return f;
}

void save_path(const PathField& p, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("save_path: cannot open " + path);
  os.write(kPathMagic, 4);
  write_grid_header(os, p.grid);
  write_u32(os, static_cast<std::uint32_t>(p.time_steps));
  os.write(reinterpret_cast<const char*>(p.values.data()),
           static_cast<std::streamsize>(sizeof(double) * p.values.size()));
}

PathField load_path(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NumericalError("load_path: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, kPathMagic, 4) != 0) throw DomainError("load_path: bad magic in " + path);
  TorusGrid g = read_grid_header(is);
  g.validate();
  const int m = static_cast<int>(read_u32(is));
  if (m < 2) throw DomainError("load_path: timeSteps must be >= 2");
  PathField p(g, m);
  is.read(reinterpret_cast<char*>(p.values.data()),
          static_cast<std::streamsize>(sizeof(double) * p.values.size()));
  if (!is) throw NumericalError("load_path: truncated file " + path);
  return p;
}

}  // namespace almcal
