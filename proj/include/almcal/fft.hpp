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

#include <vector>

#include "almcal/common.hpp"

namespace almcal {

// Complex mixed-radix (2/3/5) FFT along one axis of a multi-dimensional array.
// Sizes with other prime factors are rejected; callers fall back to a Jacobi
// preconditioner in that case.  Deliberately plain so repeated runs are
// bit-identical.
class SmallFFT {
 public:
  static bool supported(int n) {
    if (n < 1) return false;
    for (int p : {2, 3, 5})
      while (n % p == 0) n /= p;
    return n == 1;
  }

  explicit SmallFFT(int n);

  // In-place transform of `count` interleaved lines: element j of line l sits
  // at data[offset(l) + j*stride].  Lines are described by an index list.
  void transform(cplx* data, const std::vector<std::size_t>& line_offsets,
                 std::size_t stride, bool inverse) const;

  int size() const { return n_; }

 private:
  void plan(int n);
  void fft_line(cplx* x, bool inverse) const;

  int n_;
  std::vector<int> radices_;
  std::vector<cplx> twiddle_fwd_;  // e^{-2pi i k/n}, k = 0..n-1
  mutable std::vector<cplx> work_;
};

// Applies an n-dimensional FFT over a regular grid stored row-major with the
// given axis lengths (all supported sizes).  Used to diagonalize the constant
// coefficient part of the solver preconditioner.
class GridFFT {
 public:
  explicit GridFFT(const std::vector<int>& dims);
  static bool supported(const std::vector<int>& dims) {
    for (int d : dims)
      if (!SmallFFT::supported(d)) return false;
    return true;
  }
  void forward(cplx* data) const { run(data, false); }
  void inverse(cplx* data) const { run(data, true); }  // includes 1/N scaling
  std::size_t size() const { return total_; }

 private:
  void run(cplx* data, bool inverse) const;

  std::vector<int> dims_;
  std::vector<SmallFFT> ffts_;
  std::size_t total_;
};

}  // namespace almcal
