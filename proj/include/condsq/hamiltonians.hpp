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

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "condsq/fockspace.hpp"

namespace condsq {

using SparseBlock = Eigen::SparseMatrix<Complex>;

// First positive root of J_0, to full double precision.
inline constexpr double kFirstJ0Root = 2.404825557695772768;

// Bessel function of the first kind, integer order. Power series for small
// arguments, backward (Miller) recurrence with normalization otherwise.
// Negative orders via J_{-n} = (-1)^n J_n. Valid for |n| <= 200, |x| <= 50.
double bessel_j(int n, double x);

// Partial sums of the two Fourier-Bessel series
//   cos(chi sin tau) = J_0 + 2 sum_{n>=1} J_{2n}(chi) cos(2n tau)
//   sin(chi sin tau) =       2 sum_{n>=1} J_{2n-1}(chi) sin((2n-1) tau)
// through harmonic index n_max.
std::pair<double, double> jacobi_anger_partial(double chi, double tau, int n_max);

// All frequencies in units of omega_m; only ratios enter the dynamics.
struct SystemParams {
    double omega_q = 20.0;
    double omega_m = 1.0;
    double omega_d = 1.0;
    double amplitude_A = 0.5 * kFirstJ0Root;  // puts a_bar at the J0 root
    double g = 1e-4;

    double a_bar() const { return 2.0 * amplitude_A / omega_d; }
    double g_cs() const;  // g * J_2(a_bar)
    void validate() const;
};

struct DriveCondition {
    bool resonant;                     // omega_d = omega_m
    bool amplitude_at_first_j0_root;   // a_bar at the first root of J_0
    static DriveCondition evaluate(const SystemParams& params, double tolerance = 1e-9);
};

// H(t) = sum_j c_j(t) B_j with constant sparse blocks. Individual blocks need
// not be Hermitian; the assembled sum is. This decomposition is what the
// integrators consume: applying the blocks costs O(nnz) per evaluation
// instead of a dense rebuild.
class TimeDependentHamiltonian {
   public:
    struct Term {
        std::function<Complex(double)> coefficient;
        SparseBlock block;
    };

    TimeDependentHamiltonian(HilbertSpace space, std::vector<Term> terms);
    static TimeDependentHamiltonian constant(const OperatorMatrix& h);

    const HilbertSpace& space() const { return space_; }
    std::size_t term_count() const { return terms_.size(); }

    void apply(double t, const Vector& in, Vector& out) const;        // out = H(t) in
    void apply_left(double t, const Matrix& in, Matrix& out) const;   // out = H(t) in
    void apply_right(double t, const Matrix& in, Matrix& out) const;  // out = in H(t)
    Matrix dense(double t) const;
    OperatorMatrix matrix(double t) const;

   private:
    HilbertSpace space_;
    std::vector<Term> terms_;
};

enum class Model { Lab, Interaction, Rotating, Rwa, Cs };

// Block-coefficient decomposition of the chosen model.
TimeDependentHamiltonian hamiltonian_terms(Model model, const SystemParams& params,
                                           const HilbertSpace& space);

// Laboratory frame: (omega_q/2) sigma_z + omega_m b^dag b
//                   + g (b + b^dag)^2 sigma_z + H_d(t).
OperatorMatrix h_lab(const SystemParams& params, const HilbertSpace& space, double t);

// Interaction frame (V_1): g (b^2 e^{-2i w_m t} + b^dag^2 e^{2i w_m t}
//                   + 2 b^dag b + 1) sigma_z + A cos(w_d t) sigma_x.
OperatorMatrix h_interaction(const SystemParams& params, const HilbertSpace& space, double t);

// Rotating frame (V = V_2 V_1), closed form with the full trigonometric
// envelopes; exact, no series truncation.
OperatorMatrix h_rotating(const SystemParams& params, const HilbertSpace& space, double t);

// Rotating frame with the envelopes replaced by their Fourier-Bessel partial
// sums through harmonic index n_max.
OperatorMatrix h_rotating_expanded(const SystemParams& params, const HilbertSpace& space, double t,
                                   int n_max);

// g J_0(a_bar) (2 b^dag b + 1) sigma_z + g J_2(a_bar) (b^2 + b^dag^2) sigma_z.
OperatorMatrix h_rwa(const SystemParams& params, const HilbertSpace& space);

// Conditional squeezing Hamiltonian g_cs (b^2 + b^dag^2) sigma_z.
OperatorMatrix h_cs(const SystemParams& params, const HilbertSpace& space);

enum class Frame { V1, V2, Full };

// Frame unitaries: V_1 = exp[i((w_q/2) sigma_z + w_m b^dag b) t],
// V_2 = exp[i (A/w_d) sin(w_d t) sigma_x], Full = V_2 V_1.
OperatorMatrix frame_transform(const SystemParams& params, const HilbertSpace& space, double t,
                               Frame which);

// Fastest angular frequency retained in the model's coefficient functions;
// 0 for time-independent models. Used to cap integrator steps.
double fastest_frequency(Model model, const SystemParams& params);

}  // namespace condsq
