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

#include <utility>
#include <vector>

#include "condsq/fockspace.hpp"

namespace condsq {

// Complex squeezing parameter xi = r e^{i phi}; phi canonicalized to [0, 2pi).
class SqueezeParam {
   public:
    explicit SqueezeParam(double r, double phi = 0.0);
    static SqueezeParam from_complex(Complex xi);

    double r() const { return r_; }
    double phi() const { return phi_; }
    Complex value() const { return std::polar(r_, phi_); }
    SqueezeParam negated() const { return SqueezeParam(r_, phi_ + M_PI); }

   private:
    double r_;
    double phi_;
};

enum class LogicalLabel { ZeroL, OneL };

struct MomentReport {
    double r;
    int p;
    double moment_zero;
    double moment_one;
    double ratio;
    long terms_used;
    double truncation_estimate;
};

// Squeezed vacuum S(xi)|0> from its Fock-basis expansion (support on even
// Fock levels only). The measured norm deficiency 1 - |psi|^2 of the raw
// truncated expansion is optionally reported; the state is renormalized when
// the deficiency stays below leak_threshold and a TruncationError is raised
// otherwise.
StateVector squeezed_vacuum(const SqueezeParam& xi, const HilbertSpace& space,
                            double leak_threshold = kDefaultLeakThreshold,
                            double* norm_deficiency = nullptr);

// N+- = 2[1 +- cosh^{-1/2}(2r)].
std::pair<double, double> normalization_constants(double r);

// Logical code words: |0_L> ~ [S(xi)+S(-xi)]|0> on Fock support {4n},
// |1_L> ~ [S(xi)-S(-xi)]|0> on {4n+2} (overall sign of the expansion kept).
StateVector logical_state(LogicalLabel label, const SqueezeParam& xi, const HilbertSpace& space,
                          double leak_threshold = kDefaultLeakThreshold,
                          double* norm_deficiency = nullptr);

// <(b^dag b)^p> in a logical state, summed from the closed-form series until
// the next term drops below tolerance * partial sum.
double number_moment(LogicalLabel label, double r, int p, double tolerance = 1e-12);

// Ratio <0_L|(b^dag b)^p|0_L> / <1_L|(b^dag b)^p|1_L>.
MomentReport moment_ratio(double r, int p, double tolerance = 1e-12);

// Knill-Laflamme diagnostics for the error set {I, b, b^dag b, (b^dag b)^2}:
// the largest logical off-diagonal element over all operator pairs, and the
// moment mismatch |ratio - 1| for p = 1..4.
struct KlReport {
    double off_diagonal_max;
    std::vector<std::pair<int, double>> moment_mismatches;
};
KlReport kl_check(const SqueezeParam& xi, const HilbertSpace& space);

}  // namespace condsq
