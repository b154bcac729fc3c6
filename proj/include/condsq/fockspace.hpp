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

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "condsq/errors.hpp"

namespace condsq {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultLeakThreshold = 1e-6;

// Truncated qubit (x) oscillator space. Basis ordering is fixed once and for
// all: composite index k = q*(N+1) + n with q = 0 for |e>, q = 1 for |g>,
// and n the Fock index, N the highest retained Fock level.
class HilbertSpace {
   public:
    explicit HilbertSpace(int fock_cutoff, bool has_qubit = true)
        : fock_cutoff_(fock_cutoff), has_qubit_(has_qubit) {
        if (fock_cutoff < 1) {
            throw std::invalid_argument("HilbertSpace: fock_cutoff must be >= 1");
        }
    }

    int fock_cutoff() const { return fock_cutoff_; }
    bool has_qubit() const { return has_qubit_; }
    int osc_dim() const { return fock_cutoff_ + 1; }
    int total_dim() const { return has_qubit_ ? 2 * osc_dim() : osc_dim(); }

    // Composite index of |q> (x) |n>; q = 0 for |e>, 1 for |g>.
    int index(int qubit, int n) const { return qubit * osc_dim() + n; }

    HilbertSpace oscillator_only() const { return HilbertSpace(fock_cutoff_, false); }

    bool operator==(const HilbertSpace& other) const {
        return fock_cutoff_ == other.fock_cutoff_ && has_qubit_ == other.has_qubit_;
    }
    bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

   private:
    int fock_cutoff_;
    bool has_qubit_;
};

inline void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* where) {
    if (a != b) throw SpaceMismatchError(std::string(where) + ": operands live in different spaces");
}

// Pure state. Amplitude vectors are not forcibly normalized: applying a
// non-unitary operator legitimately produces an unnormalized vector. The
// normalizing factories check/establish |psi|^2 = 1 within kNormTolerance.
class StateVector {
   public:
    StateVector(HilbertSpace space, Vector amplitudes)
        : space_(space), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != space_.total_dim()) {
            throw std::invalid_argument("StateVector: amplitude length does not match space");
        }
    }

    static StateVector normalized(const HilbertSpace& space, Vector amplitudes);

    // Fock state |n> in an oscillator-only space.
    static StateVector fock(const HilbertSpace& space, int n);
    // |q> (x) |n> in a composite space; q = 0 for |e>, 1 for |g>.
    static StateVector qubit_fock(const HilbertSpace& space, int qubit, int n);
    // (|e> + |g>)/sqrt(2) (x) |n>, the protocol's initial state.
    static StateVector plus_x_fock(const HilbertSpace& space, int n);

    const HilbertSpace& space() const { return space_; }
    const Vector& amplitudes() const { return amplitudes_; }

    double norm_squared() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(double eps = kNormTolerance) const {
        return std::abs(norm_squared() - 1.0) <= eps;
    }
    StateVector normalized_copy() const;

   private:
    HilbertSpace space_;
    Vector amplitudes_;
};

// Mixed state. Construction validates Hermiticity and unit trace;
// approximate positivity is available on demand via min_eigenvalue().
class DensityMatrix {
   public:
    struct Unchecked {};  // tag for solver-internal construction

    DensityMatrix(HilbertSpace space, Matrix elements);
    DensityMatrix(HilbertSpace space, Matrix elements, Unchecked)
        : space_(space), elements_(std::move(elements)) {}

    static DensityMatrix from_pure(const StateVector& psi);

    const HilbertSpace& space() const { return space_; }
    const Matrix& elements() const { return elements_; }

    double trace_real() const { return elements_.trace().real(); }
    double min_eigenvalue() const;

   private:
    HilbertSpace space_;
    Matrix elements_;
};

// Dense operator tagged with its space. hermitian_hint is a checked promise.
class OperatorMatrix {
   public:
    OperatorMatrix(HilbertSpace space, Matrix elements, bool hermitian_hint = false);

    const HilbertSpace& space() const { return space_; }
    const Matrix& elements() const { return elements_; }
    bool hermitian_hint() const { return hermitian_hint_; }

    OperatorMatrix adjoint() const {
        return OperatorMatrix(space_, elements_.adjoint(), hermitian_hint_);
    }

   private:
    HilbertSpace space_;
    Matrix elements_;
    bool hermitian_hint_;
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scalar, const OperatorMatrix& op);
StateVector operator*(const OperatorMatrix& op, const StateVector& psi);

OperatorMatrix identity(const HilbertSpace& space);

// Bosonic lowering operator: <n-1|b|n> = sqrt(n). On a composite space the
// qubit factor is the identity.
OperatorMatrix annihilation(const HilbertSpace& space);
OperatorMatrix creation(const HilbertSpace& space);
OperatorMatrix number_op(const HilbertSpace& space);

enum class Pauli { X, Y, Z, Minus };

// Pauli operator (or lowering operator |g><e|) on the qubit factor,
// embedded as sigma (x) I_osc. Convention: sigma_z |e> = +|e>.
OperatorMatrix pauli(Pauli axis, const HilbertSpace& space);

// Kronecker product in the fixed basis ordering (qubit factor first).
// A missing factor is replaced by the identity.
OperatorMatrix embed(const std::optional<Matrix>& qubit_op, const std::optional<Matrix>& osc_op,
                     const HilbertSpace& space);

Complex expectation(const OperatorMatrix& op, const StateVector& psi);
Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho);

// Pure-pure |<a|b>|^2, pure-mixed <a|rho|a>, mixed-mixed Uhlmann fidelity.
double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const StateVector& b);
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Projective sigma_x measurement of the qubit. Branch states are
// renormalized oscillator-only states; a zero-probability branch is flagged
// degenerate and carries the vacuum as placeholder.
struct MeasurementBranch {
    double probability;
    StateVector state;
    bool degenerate;
};
struct XMeasurement {
    MeasurementBranch plus;
    MeasurementBranch minus;
};
XMeasurement measure_qubit_x(const StateVector& psi);

struct DensityMeasurementBranch {
    double probability;
    DensityMatrix state;
    bool degenerate;
};
struct XMeasurementDensity {
    DensityMeasurementBranch plus;
    DensityMeasurementBranch minus;
};
XMeasurementDensity measure_qubit_x(const DensityMatrix& rho);

DensityMatrix partial_trace_qubit(const DensityMatrix& rho);

// Population of the highest retained Fock level(s); the truncation guard.
double top_fock_population(const StateVector& psi);

}  // namespace condsq
