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

#include "condsq/fockspace.hpp"

#include <cmath>

namespace condsq {

namespace {

Matrix qubit_matrix(Pauli axis) {
    // Basis order {|e>, |g>}; sigma_z|e> = +|e>.
    const Complex i(0.0, 1.0);
    Matrix m = Matrix::Zero(2, 2);
    switch (axis) {
        case Pauli::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Pauli::Y:
            m(0, 1) = -i;
            m(1, 0) = i;
            break;
        case Pauli::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case Pauli::Minus:
            m(1, 0) = 1.0;  // |g><e|
            break;
    }
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

StateVector StateVector::normalized(const HilbertSpace& space, Vector amplitudes) {
    const double nrm = amplitudes.norm();
    if (nrm == 0.0) throw std::invalid_argument("StateVector::normalized: zero vector");
    amplitudes /= nrm;
    return StateVector(space, std::move(amplitudes));
}

StateVector StateVector::fock(const HilbertSpace& space, int n) {
    if (space.has_qubit()) throw std::invalid_argument("StateVector::fock: composite space");
    if (n < 0 || n > space.fock_cutoff()) throw std::invalid_argument("StateVector::fock: bad index");
    Vector amps = Vector::Zero(space.total_dim());
    amps(n) = 1.0;
    return StateVector(space, std::move(amps));
}

StateVector StateVector::qubit_fock(const HilbertSpace& space, int qubit, int n) {
    if (!space.has_qubit()) throw std::invalid_argument("StateVector::qubit_fock: no qubit factor");
    if (qubit < 0 || qubit > 1 || n < 0 || n > space.fock_cutoff()) {
        throw std::invalid_argument("StateVector::qubit_fock: bad index");
    }
    Vector amps = Vector::Zero(space.total_dim());
    amps(space.index(qubit, n)) = 1.0;
    return StateVector(space, std::move(amps));
}

StateVector StateVector::plus_x_fock(const HilbertSpace& space, int n) {
    if (!space.has_qubit()) throw std::invalid_argument("StateVector::plus_x_fock: no qubit factor");
    Vector amps = Vector::Zero(space.total_dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amps(space.index(0, n)) = inv_sqrt2;
    amps(space.index(1, n)) = inv_sqrt2;
    return StateVector(space, std::move(amps));
}

StateVector StateVector::normalized_copy() const {
    return StateVector::normalized(space_, amplitudes_);
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix elements)
    : space_(space), elements_(std::move(elements)) {
    if (elements_.rows() != space_.total_dim() || elements_.cols() != space_.total_dim()) {
        throw std::invalid_argument("DensityMatrix: dimensions do not match space");
    }
    const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kNormTolerance) {
        throw std::invalid_argument("DensityMatrix: input is not Hermitian");
    }
    elements_ = 0.5 * (elements_ + elements_.adjoint().eval());
    if (std::abs(elements_.trace().real() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    if (!psi.is_normalized()) {
        throw std::invalid_argument("DensityMatrix::from_pure: state not normalized");
    }
    return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(elements_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

OperatorMatrix::OperatorMatrix(HilbertSpace space, Matrix elements, bool hermitian_hint)
    : space_(space), elements_(std::move(elements)), hermitian_hint_(hermitian_hint) {
    if (elements_.rows() != space_.total_dim() || elements_.cols() != space_.total_dim()) {
        throw std::invalid_argument("OperatorMatrix: dimensions do not match space");
    }
    if (hermitian_hint_) {
        const double dev = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
        if (dev > kHermitianTolerance) {
            throw std::invalid_argument("OperatorMatrix: hermitian_hint violated");
        }
    }
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a.space(), b.space(), "OperatorMatrix product");
    return OperatorMatrix(a.space(), a.elements() * b.elements());
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a.space(), b.space(), "OperatorMatrix sum");
    return OperatorMatrix(a.space(), a.elements() + b.elements());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a.space(), b.space(), "OperatorMatrix difference");
    return OperatorMatrix(a.space(), a.elements() - b.elements());
}

OperatorMatrix operator*(Complex scalar, const OperatorMatrix& op) {
    return OperatorMatrix(op.space(), scalar * op.elements());
}

StateVector operator*(const OperatorMatrix& op, const StateVector& psi) {
    require_same_space(op.space(), psi.space(), "operator application");
    return StateVector(psi.space(), op.elements() * psi.amplitudes());
}

OperatorMatrix identity(const HilbertSpace& space) {
    return OperatorMatrix(space, Matrix::Identity(space.total_dim(), space.total_dim()), true);
}

OperatorMatrix annihilation(const HilbertSpace& space) {
    const int m = space.osc_dim();
    Matrix b = Matrix::Zero(m, m);
    for (int n = 1; n < m; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    if (!space.has_qubit()) return OperatorMatrix(space, std::move(b));
    return embed(std::nullopt, b, space);
}

OperatorMatrix creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

OperatorMatrix number_op(const HilbertSpace& space) {
    const int m = space.osc_dim();
    Matrix n = Matrix::Zero(m, m);
    for (int k = 0; k < m; ++k) n(k, k) = static_cast<double>(k);
    if (!space.has_qubit()) return OperatorMatrix(space, std::move(n), true);
    return embed(std::nullopt, n, space);
}

OperatorMatrix pauli(Pauli axis, const HilbertSpace& space) {
    if (!space.has_qubit()) throw std::invalid_argument("pauli: space has no qubit factor");
    return embed(qubit_matrix(axis), std::nullopt, space);
}

OperatorMatrix embed(const std::optional<Matrix>& qubit_op, const std::optional<Matrix>& osc_op,
                     const HilbertSpace& space) {
    if (!qubit_op && !osc_op) throw std::invalid_argument("embed: at least one factor required");
    const int m = space.osc_dim();
    if (osc_op && (osc_op->rows() != m || osc_op->cols() != m)) {
        throw std::invalid_argument("embed: oscillator factor has wrong dimension");
    }
    if (qubit_op) {
        if (!space.has_qubit()) throw std::invalid_argument("embed: qubit factor on oscillator-only space");
        if (qubit_op->rows() != 2 || qubit_op->cols() != 2) {
            throw std::invalid_argument("embed: qubit factor must be 2x2");
        }
    }
    if (!space.has_qubit()) return OperatorMatrix(space, *osc_op);
    const Matrix q = qubit_op ? *qubit_op : Matrix::Identity(2, 2);
    const Matrix o = osc_op ? *osc_op : Matrix::Identity(m, m);
    return OperatorMatrix(space, kron(q, o));
}

Complex expectation(const OperatorMatrix& op, const StateVector& psi) {
    require_same_space(op.space(), psi.space(), "expectation");
    return psi.amplitudes().dot(op.elements() * psi.amplitudes());
}

Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho) {
    require_same_space(op.space(), rho.space(), "expectation");
    return (rho.elements() * op.elements()).trace();
}

double fidelity(const StateVector& a, const StateVector& b) {
    require_same_space(a.space(), b.space(), "fidelity");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const StateVector& a, const DensityMatrix& b) {
    require_same_space(a.space(), b.space(), "fidelity");
    return (a.amplitudes().dot(b.elements() * a.amplitudes())).real();
}

double fidelity(const DensityMatrix& a, const StateVector& b) { return fidelity(b, a); }

namespace {

Matrix hermitian_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_space(a.space(), b.space(), "fidelity");
    // Uhlmann fidelity as the squared nuclear norm of sqrt(a) sqrt(b); the
    // singular values of M and M^dag coincide, so this route is symmetric.
    const Matrix product = hermitian_sqrt(a.elements()) * hermitian_sqrt(b.elements());
    Eigen::JacobiSVD<Matrix> svd(product);
    const double root_sum = svd.singularValues().sum();
    return root_sum * root_sum;
}

XMeasurement measure_qubit_x(const StateVector& psi) {
    if (!psi.space().has_qubit()) {
        throw std::invalid_argument("measure_qubit_x: oscillator-only state");
    }
    if (!psi.is_normalized()) {
        throw std::invalid_argument("measure_qubit_x: state not normalized");
    }
    const HilbertSpace osc = psi.space().oscillator_only();
    const int m = psi.space().osc_dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vector branch_plus = inv_sqrt2 * (psi.amplitudes().head(m) + psi.amplitudes().tail(m));
    const Vector branch_minus = inv_sqrt2 * (psi.amplitudes().head(m) - psi.amplitudes().tail(m));

    auto make_branch = [&](const Vector& v) {
        const double p = v.squaredNorm();
        if (p <= 0.0) {
            return MeasurementBranch{0.0, StateVector::fock(osc, 0), true};
        }
        return MeasurementBranch{p, StateVector(osc, v / std::sqrt(p)), false};
    };
    return XMeasurement{make_branch(branch_plus), make_branch(branch_minus)};
}

XMeasurementDensity measure_qubit_x(const DensityMatrix& rho) {
    if (!rho.space().has_qubit()) {
        throw std::invalid_argument("measure_qubit_x: oscillator-only density matrix");
    }
    const HilbertSpace osc = rho.space().oscillator_only();
    const int m = rho.space().osc_dim();
    const Matrix& r = rho.elements();
    // <+-, m| rho |+-, n> = (r_ee +- r_eg +- r_ge + r_gg)/2 blockwise.
    const Matrix ee = r.topLeftCorner(m, m);
    const Matrix eg = r.topRightCorner(m, m);
    const Matrix ge = r.bottomLeftCorner(m, m);
    const Matrix gg = r.bottomRightCorner(m, m);
    auto make_branch = [&](const Matrix& block) {
        const double p = block.trace().real();
        if (p <= kNormTolerance) {
            return DensityMeasurementBranch{std::max(p, 0.0),
                                            DensityMatrix::from_pure(StateVector::fock(osc, 0)), true};
        }
        Matrix scaled = block / p;
        scaled = 0.5 * (scaled + scaled.adjoint().eval());
        return DensityMeasurementBranch{p, DensityMatrix(osc, std::move(scaled)), false};
    };
    return XMeasurementDensity{make_branch(0.5 * (ee + eg + ge + gg)),
                               make_branch(0.5 * (ee - eg - ge + gg))};
}

DensityMatrix partial_trace_qubit(const DensityMatrix& rho) {
    if (!rho.space().has_qubit()) {
        throw std::invalid_argument("partial_trace_qubit: oscillator-only input");
    }
    const int m = rho.space().osc_dim();
    Matrix out = rho.elements().topLeftCorner(m, m) + rho.elements().bottomRightCorner(m, m);
    return DensityMatrix(rho.space().oscillator_only(), std::move(out));
}

double top_fock_population(const StateVector& psi) {
    const int m = psi.space().osc_dim();
    const int n = m - 1;
    if (!psi.space().has_qubit()) return std::norm(psi.amplitudes()(n));
    return std::norm(psi.amplitudes()(psi.space().index(0, n))) +
           std::norm(psi.amplitudes()(psi.space().index(1, n)));
}

}  // namespace condsq
