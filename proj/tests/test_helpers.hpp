// Shared helpers for the test suites. Oracles here are deliberately
// independent of the library code paths they are used to check.
#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "condsq/fockspace.hpp"

namespace testutil {

using condsq::Complex;
using condsq::Matrix;
using condsq::Vector;

inline std::mt19937& rng() {
    static std::mt19937 gen(20250811u);
    return gen;
}

inline Vector random_complex_vector(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(dist(gen), dist(gen));
    return v;
}

inline condsq::StateVector random_state(const condsq::HilbertSpace& space, std::mt19937& gen) {
    return condsq::StateVector::normalized(space, random_complex_vector(space.total_dim(), gen));
}

inline condsq::DensityMatrix random_density(const condsq::HilbertSpace& space, std::mt19937& gen,
                                            int rank = 3) {
    const int dim = space.total_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    double total = 0.0;
    for (int k = 0; k < rank; ++k) {
        Vector v = random_complex_vector(dim, gen);
        v.normalize();
        const double w = weight(gen);
        rho += w * (v * v.adjoint());
        total += w;
    }
    rho /= total;
    return condsq::DensityMatrix(space, std::move(rho));
}

inline Matrix random_complex_matrix(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

// Squeezed vacuum by direct matrix exponential of the generator
// (xi* b^2 - xi b^dag^2)/2 applied to |0>, on an oscillator-only space.
inline Vector squeezed_vacuum_expm(int fock_cutoff, double r, double phi) {
    const int dim = fock_cutoff + 1;
    Matrix b = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Matrix b2 = b * b;
    const Complex xi = std::polar(r, phi);
    const Matrix gen = 0.5 * (std::conj(xi) * b2 - xi * b2.adjoint());
    Matrix s = gen.exp();
    return s.col(0);
}

// Bessel J_n by the alternating power series in extended precision.
// Usable for |x| <= 12 where cancellation stays harmless.
inline double bessel_series_oracle(int n, double x) {
    const long double half = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / k;
    long double sum = term;
    const long double x2 = half * half;
    for (int k = 1; k < 400; ++k) {
        term *= -x2 / (static_cast<long double>(k) * (n + k));
        sum += term;
        if (std::abs(term) < 1e-25L * (std::abs(sum) + 1e-30L)) break;
    }
    return static_cast<double>(sum);
}

}  // namespace testutil
