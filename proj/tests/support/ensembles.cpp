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

#include "support/ensembles.hpp"

#include <cmath>

namespace almcal::testing {

BackgroundData make_b1(int points_per_axis) {
  TorusGrid g{1, points_per_axis, kTwoPi};
  return make_background(g, Matrix::Identity(1, 1), Matrix::Identity(1, 1));
}

BackgroundData make_b2(int points_per_axis) {
  TorusGrid g{2, points_per_axis, kTwoPi};
  Matrix alpha = Matrix::Zero(2, 2);
  alpha(0, 0) = 1.0;
  alpha(1, 1) = std::tan(3.0 * kPi / 8.0);
  return make_background(g, Matrix::Identity(2, 2), alpha);
}

BackgroundData make_b3(int points_per_axis) {
  TorusGrid g{1, points_per_axis, kTwoPi};
  auto rho = field_from_function(g, [](const std::vector<double>& x) {
    return 0.3 * std::sin(x[0]) + 0.2 * std::cos(x[1]);
  });
  return make_background(g, Matrix::Identity(1, 1), 2.0 * Matrix::Identity(1, 1), rho);
}

ScalarField random_trig_field(const TorusGrid& grid, Rng& rng, double amplitude, int modes) {
  const int nd = grid.real_dims();
  struct Mode {
    std::vector<int> k;
    double amp, phase;
  };
  std::vector<Mode> chosen;
  for (int j = 0; j < modes; ++j) {
    Mode m;
    m.k.resize(nd, 0);
    int nonzero = 0;
    while (nonzero == 0) {
      for (int a = 0; a < nd; ++a) {
        m.k[a] = rng.uniform_int(-2, 2);
        if (m.k[a] != 0) ++nonzero;
      }
    }
    m.amp = amplitude * rng.uniform(0.3, 1.0) / modes;
    m.phase = rng.uniform(0.0, kTwoPi);
    chosen.push_back(m);
  }
  return field_from_function(grid, [&](const std::vector<double>& x) {
    double v = 0.0;
    for (const auto& m : chosen) {
      double arg = m.phase;
      for (int a = 0; a < nd; ++a) arg += m.k[a] * x[a];
      v += m.amp * std::cos(arg);
    }
    return v;
  });
}

ScalarField random_member_field(const BackgroundData& bg, Rng& rng, double amplitude,
                                double margin) {
  ScalarField f = random_trig_field(bg.grid, rng, amplitude);
  for (int tries = 0; tries < 60; ++tries) {
    auto m = is_member(bg, f);
    if (m.member && m.margin >= margin) return f;
    for (auto& v : f.values) v *= 0.7;
  }
  throw NumericalError("random_member_field: could not reach the requested margin");
}

}  // namespace almcal::testing
