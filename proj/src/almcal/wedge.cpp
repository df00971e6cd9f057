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

#include "almcal/wedge.hpp"

#include <bit>
#include <cmath>

namespace almcal {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

// Sign of merging two disjoint ascending index blocks into ascending order:
// (-1)^{#inversions}, inversions = pairs (i in a, j in b) with i > j.
int merge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (int j = 0; j < MultiForm::kMaxDim; ++j) {
    if (!(b & (1u << j))) continue;
    const unsigned above = a >> (j + 1);
    inv += popcount(above);
  }
  return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace

MultiForm::MultiForm(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw DomainError("MultiForm: n must be in 1..3");
  c_.fill(cplx(0, 0));
}

MultiForm MultiForm::scalar(int n, cplx value) {
  MultiForm f(n);
  f.set_coeff(0, 0, value);
  return f;
}

MultiForm MultiForm::one_one(const Eigen::MatrixXcd& m) {
  MultiForm f(static_cast<int>(m.rows()));
  for (int k = 0; k < f.n_; ++k)
    for (int l = 0; l < f.n_; ++l)
      f.set_coeff(1u << k, 1u << l, cplx(0, 1) * m(k, l));
  return f;
}

MultiForm MultiForm::grad_pair(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::MatrixXcd m(a.size(), a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k)
    for (Eigen::Index l = 0; l < a.size(); ++l) m(k, l) = a(k) * std::conj(b(l));
  return one_one(m);
}

MultiForm& MultiForm::operator+=(const MultiForm& o) {
  if (o.n_ != n_) throw DomainError("MultiForm: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

MultiForm& MultiForm::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

MultiForm MultiForm::wedge(const MultiForm& o) const {
  if (o.n_ != n_) throw DomainError("MultiForm: dimension mismatch");
  MultiForm out(n_);
  const unsigned full = (1u << n_) - 1u;
  for (unsigned h1 = 0; h1 <= full; ++h1) {
    for (unsigned a1 = 0; a1 <= full; ++a1) {
      const cplx c1 = coeff(h1, a1);
      if (c1 == cplx(0, 0)) continue;
      for (unsigned h2 = 0; h2 <= full; ++h2) {
        if (h1 & h2) continue;
        for (unsigned a2 = 0; a2 <= full; ++a2) {
          if (a1 & a2) continue;
          const cplx c2 = o.coeff(h2, a2);
          if (c2 == cplx(0, 0)) continue;
          // Reorder (h1 a1 h2 a2) -> (h1 h2 a1 a2) -> sorted blocks.
          int sign = ((popcount(a1) * popcount(h2)) % 2 == 0) ? 1 : -1;
          sign *= merge_sign(h1, h2);
          sign *= merge_sign(a1, a2);
          out.c_[(h1 | h2) * 8 + (a1 | a2)] += static_cast<double>(sign) * c1 * c2;
        }
      }
    }
  }
  return out;
}

MultiForm MultiForm::pow(int k) const {
  MultiForm acc = scalar(n_, cplx(1, 0));
  for (int i = 0; i < k; ++i) acc = acc.wedge(*this);
  return acc;
}

MultiForm MultiForm::conjugate() const {
  MultiForm out(n_);
  const unsigned full = (1u << n_) - 1u;
  for (unsigned h = 0; h <= full; ++h) {
    for (unsigned a = 0; a <= full; ++a) {
      const cplx c = coeff(h, a);
      if (c == cplx(0, 0)) continue;
      const int pq = popcount(h) * popcount(a);
      const double sign = (pq % 2 == 0) ? 1.0 : -1.0;
      out.c_[a * 8 + h] += sign * std::conj(c);
    }
  }
  return out;
}

MultiForm MultiForm::real_part() const {
  MultiForm out = *this;
  out += conjugate();
  out *= cplx(0.5, 0);
  return out;
}

MultiForm MultiForm::imag_part() const {
  MultiForm conj = conjugate();
  MultiForm out = *this;
  for (std::size_t i = 0; i < out.c_.size(); ++i)
    out.c_[i] = (out.c_[i] - conj.c_[i]) / cplx(0, 2);
  return out;
}

cplx MultiForm::top_coefficient() const {
  const unsigned full = (1u << n_) - 1u;
  return coeff(full, full);
}

bool MultiForm::is_zero(double tol) const {
  for (const auto& v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

MultiForm complex_volume_power(const Eigen::MatrixXcd& alpha, const Eigen::MatrixXcd& omega,
                               int power) {
  const Eigen::MatrixXcd m = omega + cplx(0, 1) * alpha;
  return MultiForm::one_one(m).pow(power);
}

cplx top_ratio(const MultiForm& f, const Eigen::MatrixXcd& omega) {
  const int n = f.dim();
  const cplx denom = MultiForm::one_one(omega).pow(n).top_coefficient();
  if (denom == cplx(0, 0)) throw DomainError("top_ratio: degenerate omega");
  return f.top_coefficient() / denom;
}

cplx wedge_oracle(const std::vector<Eigen::MatrixXcd>& forms,
                  const std::vector<Eigen::VectorXcd>& one_forms, double theta_hat,
                  const Eigen::MatrixXcd& omega) {
  const int n = static_cast<int>(omega.rows());
  if (n > MultiForm::kMaxDim) throw DomainError("wedge_oracle: n > 3 unsupported");
  if (one_forms.size() % 2 != 0)
    throw DomainError("wedge_oracle: one-forms must come in (d, dbar) pairs");
  const int degree = static_cast<int>(forms.size() + one_forms.size() / 2);
  if (degree != n) throw DomainError("wedge_oracle: total degree mismatch, need (n,n)");
  MultiForm acc = MultiForm::scalar(n, std::polar(1.0, -theta_hat));
  for (const auto& m : forms) acc = acc.wedge(MultiForm::one_one(m));
  for (std::size_t i = 0; i + 1 < one_forms.size(); i += 2)
    acc = acc.wedge(MultiForm::grad_pair(one_forms[i], one_forms[i + 1]));
  return top_ratio(acc, omega);
}

}  // namespace almcal
