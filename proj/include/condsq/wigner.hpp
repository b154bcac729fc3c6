// Copyright 2025 The condsqueeze Authors
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

#include <span>
#include <vector>

#include "condsq/fockspace.hpp"

namespace condsq {

// Phase-space samples of a Wigner function: values(i, j) = W(re_axis[j] +
// i*im_axis[i]). Convention W(alpha) = (2/pi) Tr[rho D(alpha) P D(alpha)^dag]
// with D(alpha) = exp(alpha b^dag - alpha* b) and P the photon-number parity,
// normalized so that the integral over d^2alpha is 1.
struct PhaseSpaceGrid {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    Eigen::MatrixXd values;

    void validate() const;
    double riemann_integral() const;
};

// Symmetric axis with exactly mirrored points (axis[i] = -axis[n-1-i]).
std::vector<double> symmetric_axis(double extent, int points);

PhaseSpaceGrid wigner(const StateVector& state, std::span<const double> re_axis,
                      std::span<const double> im_axis);
PhaseSpaceGrid wigner(const DensityMatrix& state, std::span<const double> re_axis,
                      std::span<const double> im_axis);

}  // namespace condsq
