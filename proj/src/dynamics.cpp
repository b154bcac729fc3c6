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

#include "condsq/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace condsq {

void NoiseParams::validate() const {
    if (gamma_1 < 0 || gamma_phi < 0 || gamma_m < 0 || n_m_th < 0) {
        throw std::invalid_argument("NoiseParams: rates must be non-negative");
    }
}

void SolverOptions::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) {
        throw std::invalid_argument("SolverOptions: tolerances must be positive");
    }
    if (method == SolverMethod::FixedRk4 && !(fixed_step > 0)) {
        throw std::invalid_argument("SolverOptions: fixed_step required for fixed_rk4");
    }
    if (max_step < 0 || fixed_step < 0 || store_every < 0) {
        throw std::invalid_argument("SolverOptions: negative option");
    }
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

template <typename State>
double scaled_error_norm(const State& err, const State& y_old, const State& y_new, double atol,
                         double rtol) {
    const auto* e = err.data();
    const auto* a = y_old.data();
    const auto* b = y_new.data();
    const Eigen::Index n = err.size();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
        const double r = std::abs(e[i]) / scale;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

// Outcome of projecting the known invariant: its pre-projection deviation
// and the scale factor that was applied to the state.
struct Projection {
    double deviation;
    double scale;
};

// Generic driver shared by the state-vector and density-matrix paths.
// Rhs: void(double t, const State&, State&). Project renormalizes the known
// invariant in place. Store: void(double t, const State&).
template <typename State, typename Rhs, typename Project, typename Store>
SolverDiagnostics integrate(Rhs&& rhs, Project&& project, Store&& store, State y, double t0,
                            double t1, const SolverOptions& opts,
                            std::span<const double> sample_times) {
    opts.validate();
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    const double span = t1 - t0;

    std::vector<double> targets(sample_times.begin(), sample_times.end());
    for (double s : targets) {
        if (s < t0 - 1e-12 * span || s > t1 + 1e-12 * span) {
            throw std::invalid_argument("integrate: sample time outside [t0, t1]");
        }
    }
    if (!std::is_sorted(targets.begin(), targets.end())) {
        throw std::invalid_argument("integrate: sample times must be increasing");
    }
    if (targets.empty() || targets.back() < t1 - 1e-12 * span) targets.push_back(t1);

    SolverDiagnostics diag;
    double t = t0;
    std::size_t next_target = 0;
    if (!sample_times.empty() && std::abs(targets.front() - t0) <= 1e-12 * span) {
        store(t0, y);
        ++next_target;
    } else if (sample_times.empty()) {
        store(t0, y);
    }

    const double span_cap = opts.max_step > 0 ? std::min(opts.max_step, span) : span;

    if (opts.method == SolverMethod::FixedRk4) {
        State k1 = y, k2 = y, k3 = y, k4 = y, tmp = y;
        while (next_target < targets.size()) {
            const double target = targets[next_target];
            double h = std::min(opts.fixed_step, span_cap);
            if (t + h >= target - 1e-14 * span) h = target - t;
            rhs(t, y, k1);
            tmp = y + (h / 2) * k1;
            rhs(t + h / 2, tmp, k2);
            tmp = y + (h / 2) * k2;
            rhs(t + h / 2, tmp, k3);
            tmp = y + h * k3;
            rhs(t + h, tmp, k4);
            y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
            ++diag.steps_accepted;
            if (!y.allFinite()) throw SolverError("fixed_rk4: state diverged");
            if (t >= target - 1e-14 * span) {
                t = target;
                store(t, y);
                ++next_target;
            } else if (sample_times.empty() && opts.store_every > 0 &&
                       diag.steps_accepted % opts.store_every == 0) {
                store(t, y);
            }
        }
        // Report, but do not repair, the raw drift of a fixed-step run.
        State probe = y;
        diag.final_invariant_drift = std::abs(project(probe).deviation);
        return diag;
    }

    // Adaptive embedded pair with first-same-as-last reuse.
    State k[7];
    for (auto& stage : k) stage = y;
    State y_new = y, err = y, tmp = y;
    rhs(t, y, k[0]);

    // Initial step from the magnitude of the right-hand side.
    double h = span_cap;
    {
        const double d1 = std::sqrt(static_cast<double>(k[0].size())) * 1.0;
        const double f_norm = k[0].matrix().norm() / d1 + 1e-300;
        h = std::min(h, 0.01 / f_norm);
        h = std::max(h, 1e-10 * span);
    }

    long stagnation_guard = 0;
    while (next_target < targets.size()) {
        const double target = targets[next_target];
        bool hit_target = false;
        if (t + h >= target - 1e-14 * span) {
            h = target - t;
            hit_target = true;
        }
        if (h <= 1e-14 * span || h <= 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) {
            throw SolverError("evolve: step size underflow at t = " + std::to_string(t));
        }

        for (int s = 1; s < 7; ++s) {
            tmp = y;
            for (int j = 0; j < s; ++j) tmp += (h * kA[s][j]) * k[j];
            rhs(t + kC[s] * h, tmp, k[s]);
        }
        y_new = y;
        for (int s = 0; s < 7; ++s) {
            if (kB5[s] != 0.0) y_new += (h * kB5[s]) * k[s];
        }
        err = (h * (kB5[0] - kB4[0])) * k[0];
        for (int s = 1; s < 7; ++s) err += (h * (kB5[s] - kB4[s])) * k[s];

        double err_norm = scaled_error_norm(err, y, y_new, opts.abs_tol, opts.rel_tol);
        if (!std::isfinite(err_norm)) err_norm = 1e10;

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y_new);
            k[0].swap(k[6]);  // FSAL
            ++diag.steps_accepted;

            const Projection proj = project(y);
            const double deviation = std::abs(proj.deviation);
            diag.max_invariant_step_deviation =
                std::max(diag.max_invariant_step_deviation, deviation);
            diag.cumulative_invariant_correction += deviation;
            if (deviation > 100.0 * opts.rel_tol) {
                throw SolverError("evolve: invariant drift " + std::to_string(deviation) +
                                  " exceeded 100 * rel_tol in one step");
            }
            // The equation is linear, so the cached slope rescales with y.
            k[0] *= proj.scale;

            if (hit_target) {
                store(t, y);
                ++next_target;
            } else if (sample_times.empty() && opts.store_every > 0 &&
                       diag.steps_accepted % opts.store_every == 0) {
                store(t, y);
            }
            stagnation_guard = 0;
        } else {
            ++diag.steps_rejected;
            if (++stagnation_guard > 60) {
                throw SolverError("evolve: repeated step rejection at t = " + std::to_string(t));
            }
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0);
        h = std::min(h * factor, span_cap);
    }

    State probe = y;
    diag.final_invariant_drift = std::abs(project(probe).deviation);
    return diag;
}

struct JumpOperator {
    SparseBlock op;
    SparseBlock op_dag;
    SparseBlock op_dag_op;
};

std::vector<JumpOperator> build_jumps(const NoiseParams& noise, const HilbertSpace& space) {
    noise.validate();
    if (!space.has_qubit() && (noise.gamma_1 > 0 || noise.gamma_phi > 0)) {
        throw std::invalid_argument("evolve_density: qubit rates on an oscillator-only space");
    }
    std::vector<JumpOperator> jumps;
    auto add = [&jumps](double rate, const Matrix& op) {
        if (rate <= 0.0) return;
        const Matrix scaled = std::sqrt(rate) * op;
        JumpOperator j;
        j.op = scaled.sparseView(1.0, 1e-300);
        j.op_dag = SparseBlock(j.op.adjoint());
        j.op_dag_op = SparseBlock(j.op_dag * j.op);
        jumps.push_back(std::move(j));
    };
    if (space.has_qubit()) {
        add(noise.gamma_phi / 2.0, pauli(Pauli::Z, space).elements());
        add(noise.gamma_1, pauli(Pauli::Minus, space).elements());
    }
    add(noise.gamma_m * noise.n_m_th, creation(space).elements());
    add(noise.gamma_m * (noise.n_m_th + 1.0), annihilation(space).elements());
    return jumps;
}

}  // namespace

Trajectory evolve_state(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0,
                        double t1, const SolverOptions& opts,
                        std::span<const double> sample_times) {
    if (psi0.space() != h.space()) {
        throw SpaceMismatchError("evolve_state: state and Hamiltonian spaces differ");
    }
    if (!psi0.is_normalized(1e-8)) {
        throw std::invalid_argument("evolve_state: initial state not normalized");
    }

    Trajectory traj;
    const Complex minus_i(0.0, -1.0);
    Vector scratch(psi0.amplitudes().size());
    auto rhs = [&](double t, const Vector& y, Vector& out) {
        h.apply(t, y, scratch);
        out = minus_i * scratch;
    };
    auto project = [](Vector& y) {
        const double n2 = y.squaredNorm();
        const double scale = 1.0 / std::sqrt(n2);
        y *= scale;
        return Projection{n2 - 1.0, scale};
    };
    auto store = [&](double t, const Vector& y) {
        traj.times.push_back(t);
        traj.states.emplace_back(h.space(), y);
    };
    traj.diagnostics = integrate<Vector>(rhs, project, store, psi0.amplitudes(), t0, t1, opts,
                                         sample_times);
    return traj;
}

DensityTrajectory evolve_density(const TimeDependentHamiltonian& h, const NoiseParams& noise,
                                 const DensityMatrix& rho0, double t0, double t1,
                                 const SolverOptions& opts,
                                 std::span<const double> sample_times) {
    if (rho0.space() != h.space()) {
        throw SpaceMismatchError("evolve_density: state and Hamiltonian spaces differ");
    }
    const auto jumps = build_jumps(noise, h.space());
    const Complex minus_i(0.0, -1.0);
    const int dim = h.space().total_dim();

    DensityTrajectory traj;
    traj.diagnostics.min_eigenvalue_seen = std::numeric_limits<double>::infinity();
    Matrix left(dim, dim), right(dim, dim), work(dim, dim);
    auto rhs = [&](double t, const Matrix& y, Matrix& out) {
        h.apply_left(t, y, left);
        h.apply_right(t, y, right);
        out = minus_i * (left - right);
        for (const auto& j : jumps) {
            work.noalias() = j.op * y;
            out.noalias() += work * j.op_dag;
            work.noalias() = j.op_dag_op * y;
            out.noalias() -= 0.5 * work;
            work.noalias() = y * j.op_dag_op;
            out.noalias() -= 0.5 * work;
        }
    };
    auto project = [](Matrix& y) {
        const double tr = y.trace().real();
        const double scale = 1.0 / tr;
        y *= scale;
        return Projection{tr - 1.0, scale};
    };
    auto store = [&](double t, const Matrix& y) {
        Matrix rho = 0.5 * (y + y.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        traj.diagnostics.min_eigenvalue_seen =
            std::min(traj.diagnostics.min_eigenvalue_seen, min_eig);
        if (min_eig < -1e-6) traj.diagnostics.positivity_warning = true;
        traj.times.push_back(t);
        traj.states.emplace_back(h.space(), std::move(rho), DensityMatrix::Unchecked{});
    };
    // store() accumulates into traj.diagnostics before integrate() returns.
    SolverDiagnostics stepping = integrate<Matrix>(rhs, project, store, rho0.elements(), t0, t1,
                                                   opts, sample_times);
    stepping.min_eigenvalue_seen = traj.diagnostics.min_eigenvalue_seen;
    stepping.positivity_warning = traj.diagnostics.positivity_warning;
    traj.diagnostics = stepping;
    return traj;
}

OperatorMatrix propagator(const OperatorMatrix& h_const, double t) {
    const double herm_dev =
        (h_const.elements() - h_const.elements().adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTolerance) {
        throw std::invalid_argument("propagator: Hamiltonian is not Hermitian");
    }
    const Matrix generator = Complex(0.0, -t) * h_const.elements();
    return OperatorMatrix(h_const.space(), generator.exp());
}

Matrix lindblad_rhs(const OperatorMatrix& h, const NoiseParams& noise, const DensityMatrix& rho) {
    require_same_space(h.space(), rho.space(), "lindblad_rhs");
    const auto jumps = build_jumps(noise, h.space());
    const Complex minus_i(0.0, -1.0);
    Matrix out = minus_i * (h.elements() * rho.elements() - rho.elements() * h.elements());
    for (const auto& j : jumps) {
        out += j.op * rho.elements() * j.op_dag;
        out -= 0.5 * (j.op_dag_op * rho.elements() + rho.elements() * j.op_dag_op);
    }
    return out;
}

OperatorMatrix squeeze_unitary(const SqueezeParam& xi, const HilbertSpace& space,
                               double leak_threshold) {
    if (space.has_qubit()) {
        throw std::invalid_argument("squeeze_unitary: oscillator-only space required");
    }
    const Matrix b = annihilation(space).elements();
    const Matrix b2 = b * b;
    const Complex value = xi.value();
    const Matrix generator = 0.5 * (std::conj(value) * b2 - value * b2.adjoint());
    Matrix s = generator.exp();

    // Truncation guard: population near the cutoff of S(xi)|0>.
    const int dim = space.total_dim();
    const double leak = std::norm(s(dim - 1, 0)) + (dim > 1 ? std::norm(s(dim - 2, 0)) : 0.0);
    if (leak >= leak_threshold) {
        throw TruncationError("squeeze_unitary: cutoff too small for requested squeezing", leak);
    }
    return OperatorMatrix(space, std::move(s));
}

}  // namespace condsq
