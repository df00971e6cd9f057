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
#include <cmath>

#include "almcal/common.hpp"

namespace almcal::detail {

// Closed-form spectral tools for 2x2 and 3x3 complex Hermitian matrices.
// These run once per grid point inside the solver's hot loops; the iterative
// Eigen solver is kept as a fallback for (rare) near-degenerate points.

struct Eig2 {
  double lam[2];  // descending
  cplx vec[4];    // column-major, vec[2*j+i] = component i of eigenvector j
};

inline Eig2 herm2_eig(double a, cplx b, double c) {
  Eig2 e;
  const double m = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  const double d = std::sqrt(half_diff * half_diff + std::norm(b));
  e.lam[0] = m + d;
  e.lam[1] = m - d;
  if (d < 1e-300 || std::abs(b) == 0.0) {
    const bool flip = a < c;
    e.vec[0] = flip ? cplx(0, 0) : cplx(1, 0);
    e.vec[1] = flip ? cplx(1, 0) : cplx(0, 0);
    e.vec[2] = flip ? cplx(1, 0) : cplx(0, 0);
    e.vec[3] = flip ? cplx(0, 0) : cplx(1, 0);
    return e;
  }
  // (a - lam) x + b y = 0 -> (x, y) ~ (b, lam - a); pick the stabler row.
  for (int j = 0; j < 2; ++j) {
    const double lam = e.lam[j];
    cplx x, y;
    if (std::fabs(lam - a) > std::fabs(lam - c)) {
      x = b;
      y = cplx(lam - a, 0);
    } else {
      x = cplx(lam - c, 0);
      y = std::conj(b);
    }
    const double nrm = std::sqrt(std::norm(x) + std::norm(y));
    e.vec[2 * j] = x / nrm;
    e.vec[2 * j + 1] = y / nrm;
  }
  return e;
}

struct Eig3 {
  double lam[3];  // descending
  cplx vec[9];    // column-major
};

// Analytic eigenvalues (trigonometric method) plus cross-product eigenvectors
// with an Eigen fallback when conditioning is poor.
inline Eig3 herm3_eig(const Eigen::Matrix3cd& a) {
  Eig3 out;
  const double m = a.trace().real() / 3.0;
  Eigen::Matrix3cd k = a;
  k(0, 0) -= m;
  k(1, 1) -= m;
  k(2, 2) -= m;
  double p = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p += std::norm(k(i, j));
  p /= 6.0;
  const double q = k.determinant().real() / 2.0;
  const double p3 = p * p * p;
  const double disc = p3 - q * q;
  const double phi = std::atan2(std::sqrt(disc > 0.0 ? disc : 0.0), q) / 3.0;
  const double sp = std::sqrt(p > 0.0 ? p : 0.0);
  const double c = std::cos(phi), s = std::sin(phi);
  double lam[3] = {m + 2.0 * sp * c, m - sp * (c - std::sqrt(3.0) * s),
                   m - sp * (c + std::sqrt(3.0) * s)};
  // descending
  if (lam[0] < lam[1]) std::swap(lam[0], lam[1]);
  if (lam[1] < lam[2]) std::swap(lam[1], lam[2]);
  if (lam[0] < lam[1]) std::swap(lam[0], lam[1]);
  out.lam[0] = lam[0];
  out.lam[1] = lam[1];
  out.lam[2] = lam[2];

  const double scale = a.cwiseAbs().maxCoeff() + std::fabs(m) + 1e-300;
  bool ok = true;
  for (int j = 0; j < 3 && ok; ++j) {
    Eigen::Matrix3cd b = a;
    b(0, 0) -= lam[j];
    b(1, 1) -= lam[j];
    b(2, 2) -= lam[j];
    // complex cross products of row pairs: null vector of the rank-2 matrix
    Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
    double best_n = 0.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pr : pairs) {
      const Eigen::Vector3cd r1 = b.row(pr[0]);
      const Eigen::Vector3cd r2 = b.row(pr[1]);
      Eigen::Vector3cd v;
      v(0) = r1(1) * r2(2) - r1(2) * r2(1);
      v(1) = r1(2) * r2(0) - r1(0) * r2(2);
      v(2) = r1(0) * r2(1) - r1(1) * r2(0);
      const double nn = v.norm();
      if (nn > best_n) {
        best_n = nn;
        best = v;
      }
    }
    if (best_n < 1e-10 * scale * scale) {
      ok = false;
      break;
    }
    best /= best_n;
    if ((a * best - lam[j] * best).norm() > 1e-7 * scale) {
      ok = false;
      break;
    }
    for (int i = 0; i < 3; ++i) out.vec[3 * j + i] = best(i);
  }
  if (!ok) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(a);
    for (int j = 0; j < 3; ++j) {
      out.lam[j] = es.eigenvalues()(2 - j);
      for (int i = 0; i < 3; ++i) out.vec[3 * j + i] = es.eigenvectors()(i, 2 - j);
    }
  }
  return out;
}

// det(I + iA) for Hermitian A: equals prod_j (1 + i lambda_j), computed
// without any eigen decomposition.  This is the numerically exact route for
// the phase residual (arg + branch correction).
inline cplx det_i_plus_ia2(double a, cplx b, double c) {
  return cplx(1, a) * cplx(1, c) - cplx(0, 1) * b * cplx(0, 1) * std::conj(b);
}

inline cplx det_i_plus_ia3(const Eigen::Matrix3cd& a) {
  Eigen::Matrix3cd m = cplx(0, 1) * a;
  m(0, 0) += 1.0;
  m(1, 1) += 1.0;
  m(2, 2) += 1.0;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace almcal::detail
