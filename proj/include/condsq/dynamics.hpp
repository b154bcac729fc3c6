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
#include "condsq/hamiltonians.hpp"
#include "condsq/squeezing.hpp"

namespace condsq {

struct NoiseParams {
    double gamma_1 = 0.0;    // qubit decay rate
    double gamma_phi = 0.0;  // qubit dephasing rate
    double gamma_m = 0.0;    // oscillator damping rate
    double n_m_th = 0.0;     // oscillator bath thermal occupation
    void validate() const;
    bool any_nonzero() const { return gamma_1 > 0 || gamma_phi > 0 || gamma_m > 0; }
};

enum class SolverMethod { AdaptiveEmbedded, FixedRk4 };

struct SolverOptions {
    SolverMethod method = SolverMethod::AdaptiveEmbedded;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;    // 0: only the span itself caps the step
    double fixed_step = 0.0;  // required for FixedRk4
    int store_every = 0;      // 0: endpoints only (when no sample times given)
    void validate() const;
};

// Integration health record. The known invariant (norm or trace) is projected
// back after each accepted adaptive step; the pre-projection deviations are
// what is reported here.
struct SolverDiagnostics {
    long steps_accepted = 0;
    long steps_rejected = 0;
    double max_invariant_step_deviation = 0.0;
    double cumulative_invariant_correction = 0.0;
    double final_invariant_drift = 0.0;
    double min_eigenvalue_seen = 0.0;  // density runs, at store points
    bool positivity_warning = false;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    SolverDiagnostics diagnostics;
};

struct DensityTrajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    SolverDiagnostics diagnostics;
};

// Solves i dpsi/dt = H(t) psi from t0 to t1. sample_times (strictly inside
// [t0, t1], increasing) are hit exactly; when empty, the endpoints and every
// store_every-th accepted step are recorded.
Trajectory evolve_state(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0,
                        double t1, const SolverOptions& opts,
                        std::span<const double> sample_times = {});

// Lindblad master equation with qubit decay/dephasing and a thermal
// oscillator bath. Hermiticity is enforced at store points.
DensityTrajectory evolve_density(const TimeDependentHamiltonian& h, const NoiseParams& noise,
                                 const DensityMatrix& rho0, double t0, double t1,
                                 const SolverOptions& opts,
                                 std::span<const double> sample_times = {});

// U = exp(-i H t) for constant Hermitian H (scaling-and-squaring Pade kernel).
OperatorMatrix propagator(const OperatorMatrix& h_const, double t);

// Right-hand side of the master equation:
// -i[H, rho] + (gamma_phi/2) D[sigma_z] + gamma_1 D[sigma_-]
//            + gamma_m n_th D[b^dag] + gamma_m (n_th + 1) D[b].
Matrix lindblad_rhs(const OperatorMatrix& h, const NoiseParams& noise, const DensityMatrix& rho);

// Single-mode squeeze operator S(xi) = exp[(xi* b^2 - xi b^dag^2)/2].
OperatorMatrix squeeze_unitary(const SqueezeParam& xi, const HilbertSpace& space,
                               double leak_threshold = kDefaultLeakThreshold);

}  // namespace condsq
