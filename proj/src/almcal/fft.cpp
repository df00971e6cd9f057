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

#include "almcal/fft.hpp"

#include <cmath>

namespace almcal {

SmallFFT::SmallFFT(int n) : n_(n) {
  if (!supported(n)) throw DomainError("SmallFFT: size has prime factor > 5");
  plan(n);
}

void SmallFFT::plan(int n) {
  int m = n;
  for (int p : {5, 3, 2}) {
    while (m % p == 0) {
      radices_.push_back(p);
      m /= p;
    }
  }
  twiddle_fwd_.resize(n);
  for (int k = 0; k < n; ++k) {
    const double a = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle_fwd_[k] = cplx(std::cos(a), std::sin(a));
  }
  work_.resize(n);
}

// Recursive decimation-in-time over the planned radix list.
namespace {

void fft_rec(const cplx* in, cplx* out, int n, int stride, const std::vector<int>& radices,
             std::size_t level, const std::vector<cplx>& tw, int tw_stride, bool inverse,
             cplx* scratch) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const int r = radices[level];
  const int m = n / r;
  for (int q = 0; q < r; ++q) {
    fft_rec(in + q * stride, out + q * m, m, stride * r, radices, level + 1, tw, tw_stride * r,
            inverse, scratch);
  }
  // Combine r interleaved sub-transforms.
  for (int k = 0; k < m; ++k) {
    for (int q = 0; q < r; ++q) {
      cplx t = out[q * m + k];
      if (q > 0) {
        cplx w = tw[(static_cast<std::size_t>(q) * k * tw_stride) % (static_cast<std::size_t>(n) * tw_stride)];
        if (inverse) w = std::conj(w);
        t *= w;
      }
      scratch[q] = t;
    }
    for (int j = 0; j < r; ++j) {
      cplx acc = scratch[0];
      for (int q = 1; q < r; ++q) {
        const std::size_t idx =
            (static_cast<std::size_t>(j) * q * m * tw_stride) % (static_cast<std::size_t>(n) * tw_stride);
        cplx w = tw[idx];
        if (inverse) w = std::conj(w);
        acc += scratch[q] * w;
      }
      out[j * m + k] = acc;
    }
  }
}

}  // namespace

void SmallFFT::fft_line(cplx* x, bool inverse) const {
  std::vector<cplx> tmp(x, x + n_);
  cplx scratch[5];
  fft_rec(tmp.data(), work_.data(), n_, 1, radices_, 0, twiddle_fwd_, 1, inverse, scratch);
  for (int i = 0; i < n_; ++i) x[i] = work_[i];
}

void SmallFFT::transform(cplx* data, const std::vector<std::size_t>& line_offsets,
                         std::size_t stride, bool inverse) const {
  std::vector<cplx> line(n_);
  for (std::size_t off : line_offsets) {
    for (int j = 0; j < n_; ++j) line[j] = data[off + static_cast<std::size_t>(j) * stride];
    fft_line(line.data(), inverse);
    for (int j = 0; j < n_; ++j) data[off + static_cast<std::size_t>(j) * stride] = line[j];
  }
}

GridFFT::GridFFT(const std::vector<int>& dims) : dims_(dims), total_(1) {
  for (int d : dims_) {
    ffts_.emplace_back(d);
    total_ *= static_cast<std::size_t>(d);
  }
}

void GridFFT::run(cplx* data, bool inverse) const {
  const int nd = static_cast<int>(dims_.size());
  // Axis a has stride = product of dims after it (row-major).
  std::vector<std::size_t> strides(nd, 1);
  for (int a = nd - 2; a >= 0; --a)
    strides[a] = strides[a + 1] * static_cast<std::size_t>(dims_[a + 1]);
  for (int a = 0; a < nd; ++a) {
    const std::size_t stride = strides[a];
    const int len = dims_[a];
    std::vector<std::size_t> offsets;
    offsets.reserve(total_ / len);
    const std::size_t outer = total_ / (stride * len);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < stride; ++i)
        offsets.push_back(o * stride * static_cast<std::size_t>(len) + i);
    ffts_[a].transform(data, offsets, stride, inverse);
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(total_);
    for (std::size_t i = 0; i < total_; ++i) data[i] *= scale;
  }
}

}  // namespace almcal
