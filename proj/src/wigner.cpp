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

#include "condsq/wigner.hpp"

#include <cmath>
#include <iostream>

#include "condsq/detail/parallel.hpp"

namespace condsq {

void PhaseSpaceGrid::validate() const {
    auto strictly_increasing = [](const std::vector<double>& axis) {
        for (std::size_t i = 1; i < axis.size(); ++i) {
            if (!(axis[i] > axis[i - 1])) return false;
        }
        return !axis.empty();
    };
    if (!strictly_increasing(re_axis) || !strictly_increasing(im_axis)) {
        throw std::invalid_argument("PhaseSpaceGrid: axes must be strictly increasing");
    }
    if (values.rows() != static_cast<Eigen::Index>(im_axis.size()) ||
        values.cols() != static_cast<Eigen::Index>(re_axis.size())) {
        throw std::invalid_argument("PhaseSpaceGrid: value shape does not match axes");
    }
    if (!values.allFinite()) throw std::invalid_argument("PhaseSpaceGrid: non-finite values");
}

double PhaseSpaceGrid::riemann_integral() const {
    if (re_axis.size() < 2 || im_axis.size() < 2) return 0.0;
    const double dx = re_axis[1] - re_axis[0];
    const double dy = im_axis[1] - im_axis[0];
    return values.sum() * dx * dy;
}

std::vector<double> symmetric_axis(double extent, int points) {
    if (points < 2 || !(extent > 0)) throw std::invalid_argument("symmetric_axis: bad arguments");
    // axis[i] = k * step with k symmetric around zero, so mirrored points
    // negate exactly in floating point.
    const double center = (points - 1) / 2.0;
    const double step = 2.0 * extent / (points - 1);
    std::vector<double> axis(points);
    for (int i = 0; i < points; ++i) axis[i] = (i - center) * step;
    return axis;
}

namespace {

struct DisplacementBasis {
    Matrix eigvecs;            // of the Hermitian generator i(b^dag - b)
    Eigen::VectorXd eigvals;
    Eigen::VectorXd parity;    // (-1)^n
};

DisplacementBasis displacement_basis(const HilbertSpace& space) {
    const Matrix b = annihilation(space).elements();
    const Matrix p = Complex(0.0, 1.0) * (b.adjoint() - b);
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    DisplacementBasis basis;
    basis.eigvecs = es.eigenvectors();
    basis.eigvals = es.eigenvalues();
    basis.parity = Eigen::VectorXd(space.total_dim());
    for (int n = 0; n < space.total_dim(); ++n) basis.parity(n) = (n % 2 == 0) ? 1.0 : -1.0;
    return basis;
}

// Parity expectation of D(alpha)^dag |psi>: D(alpha) = R(theta) e^{-i|a|P}
// R(theta)^dag with R = diag(e^{i theta n}). The trailing R leaves Fock
// magnitudes unchanged and drops out of the parity sum.
double displaced_parity(const DisplacementBasis& basis, const Vector& psi, double re, double im) {
    const double radius = std::hypot(re, im);
    const double theta = std::atan2(im, re);
    const Eigen::Index dim = psi.size();
    Vector u(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        u(n) = std::polar(1.0, -theta * static_cast<double>(n)) * psi(n);
    }
    Vector v = basis.eigvecs.adjoint() * u;
    for (Eigen::Index n = 0; n < dim; ++n) v(n) *= std::polar(1.0, radius * basis.eigvals(n));
    const Vector z = basis.eigvecs * v;
    double sum = 0.0;
    for (Eigen::Index n = 0; n < dim; ++n) sum += basis.parity(n) * std::norm(z(n));
    return sum;
}

void warn_if_grid_exceeds_cutoff(const HilbertSpace& space, std::span<const double> re_axis,
                                 std::span<const double> im_axis) {
    double max_abs2 = 0.0;
    for (double x : re_axis)
        for (double y : im_axis) max_abs2 = std::max(max_abs2, x * x + y * y);
    if (max_abs2 > space.fock_cutoff() / 4.0) {
        std::cerr << "wigner: grid reaches |alpha|^2 = " << max_abs2
                  << ", close to the Fock cutoff " << space.fock_cutoff()
                  << "; values near the edge may be unreliable\n";
    }
}

PhaseSpaceGrid evaluate_grid(const HilbertSpace& space,
                             const std::vector<std::pair<double, Vector>>& components,
                             std::span<const double> re_axis, std::span<const double> im_axis) {
    if (space.has_qubit()) throw std::invalid_argument("wigner: oscillator-only states required");
    warn_if_grid_exceeds_cutoff(space, re_axis, im_axis);
    const DisplacementBasis basis = displacement_basis(space);

    PhaseSpaceGrid grid;
    grid.re_axis.assign(re_axis.begin(), re_axis.end());
    grid.im_axis.assign(im_axis.begin(), im_axis.end());
    grid.values.resize(static_cast<Eigen::Index>(im_axis.size()),
                       static_cast<Eigen::Index>(re_axis.size()));

    const int rows = static_cast<int>(im_axis.size());
    detail::parallel_for(rows, [&](int i) {
        for (std::size_t j = 0; j < re_axis.size(); ++j) {
            double w = 0.0;
            for (const auto& [weight, psi] : components) {
                w += weight * displaced_parity(basis, psi, re_axis[j], im_axis[i]);
            }
            grid.values(i, static_cast<Eigen::Index>(j)) = w * (2.0 / M_PI);
        }
    });
    grid.validate();
    return grid;
}

}  // namespace

PhaseSpaceGrid wigner(const StateVector& state, std::span<const double> re_axis,
                      std::span<const double> im_axis) {
    if (!state.is_normalized(1e-8)) throw std::invalid_argument("wigner: state not normalized");
    std::vector<std::pair<double, Vector>> components;
    components.emplace_back(1.0, state.amplitudes());
    return evaluate_grid(state.space(), components, re_axis, im_axis);
}

PhaseSpaceGrid wigner(const DensityMatrix& state, std::span<const double> re_axis,
                      std::span<const double> im_axis) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.elements());
    std::vector<std::pair<double, Vector>> components;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double p = es.eigenvalues()(k);
        if (p > 1e-14) components.emplace_back(p, es.eigenvectors().col(k));
    }
    return evaluate_grid(state.space(), components, re_axis, im_axis);
}

}  // namespace condsq
