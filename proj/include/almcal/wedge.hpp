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
#include <array>
#include <vector>

#include "almcal/common.hpp"

namespace almcal {

// Element of the exterior algebra over dz_1..dz_n, dzbar_1..dzbar_n with
// complex coefficients, n <= 3.  Basis monomials are indexed by a pair of
// bitmasks (holomorphic, antiholomorphic), factors ascending, dz block first.
// Brute-force expansion with explicit sign bookkeeping; no eigenvalue
// shortcuts anywhere, which is the whole point of this verifier.
class MultiForm {
 public:
  static constexpr int kMaxDim = 3;

  explicit MultiForm(int n);

  static MultiForm scalar(int n, cplx value);
  // sum_kl i M(k,l) dz_k ^ dzbar_l ; Hermitian M gives a real (1,1) form.
  static MultiForm one_one(const Eigen::MatrixXcd& m);
  // i d(a) ^ dbar(b) for gradient vectors a = (d_k a), b = (d_k b); the
  // antiholomorphic side conjugates b, matching dbar of a real function.
  static MultiForm grad_pair(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

  MultiForm& operator+=(const MultiForm& o);
  MultiForm& operator*=(cplx s);
  MultiForm wedge(const MultiForm& o) const;
  MultiForm pow(int k) const;
  MultiForm conjugate() const;  // complex conjugation of the form
  MultiForm real_part() const;
  MultiForm imag_part() const;

  cplx top_coefficient() const;  // coefficient on dz_1^dzbar_1^...^dz_n^dzbar_n
  int dim() const { return n_; }
  bool is_zero(double tol = 0.0) const;

  cplx coeff(unsigned holo_mask, unsigned anti_mask) const {
    return c_[holo_mask * 8 + anti_mask];
  }
  void set_coeff(unsigned holo_mask, unsigned anti_mask, cplx v) {
    c_[holo_mask * 8 + anti_mask] = v;
  }

 private:
  int n_;
  std::array<cplx, 64> c_;
};

// (omega + i alpha)^power as a MultiForm.
MultiForm complex_volume_power(const Eigen::MatrixXcd& alpha, const Eigen::MatrixXcd& omega,
                               int power);

// Top-degree ratio F / omega^n.
cplx top_ratio(const MultiForm& f, const Eigen::MatrixXcd& omega);

// e^{-i theta_hat} (f_1 ^ ... ^ f_k) ^ (i d a_1 ^ dbar a_2) ^ ... / omega^n.
// `one_forms` holds consecutive gradient-vector pairs.  Throws DomainError on
// degree mismatch or n > 3.
cplx wedge_oracle(const std::vector<Eigen::MatrixXcd>& forms,
                  const std::vector<Eigen::VectorXcd>& one_forms, double theta_hat,
                  const Eigen::MatrixXcd& omega);

}  // namespace almcal
