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

#include "condsq/squeezing.hpp"

#include <cmath>

namespace condsq {

namespace {

constexpr long kMaxSeriesTerms = 1000000;

void require_oscillator_space(const HilbertSpace& space, const char* where) {
    if (space.has_qubit()) {
        throw std::invalid_argument(std::string(where) + ": oscillator-only space required");
    }
}

struct SeriesSum {
    double value;
    long terms_used;
    double last_term;
};

// Sum of the closed-form series for <(b^dag b)^p> in a logical state.
// Terms first grow (the n^p factor), then decay geometrically like tanh^4 r,
// so termination requires the decaying regime in addition to smallness.
SeriesSum moment_series(LogicalLabel label, double r, int p, double tolerance) {
    const double t4 = std::pow(std::tanh(r), 4.0);
    const auto [n_plus, n_minus] = normalization_constants(r);
    const double prefactor =
        4.0 / ((label == LogicalLabel::ZeroL ? n_plus : n_minus) * std::cosh(r));

    double coeff = (label == LogicalLabel::ZeroL) ? 1.0 : 0.5 * std::tanh(r) * std::tanh(r);
    double sum = 0.0;
    double term = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (long n = 0; n < kMaxSeriesTerms; ++n) {
        const double occupation =
            (label == LogicalLabel::ZeroL) ? 4.0 * static_cast<double>(n)
                                           : 4.0 * static_cast<double>(n) + 2.0;
        term = coeff * std::pow(occupation, p);
        sum += term;
        if (sum > 0.0 && term < previous && term <= tolerance * sum) {
            return {prefactor * sum, n + 1, prefactor * term};
        }
        previous = term;
        const double dn = static_cast<double>(n);
        if (label == LogicalLabel::ZeroL) {
            coeff *= (4 * dn + 1) * (4 * dn + 2) * (4 * dn + 3) * (4 * dn + 4) /
                     (16.0 * (2 * dn + 1) * (2 * dn + 1) * (2 * dn + 2) * (2 * dn + 2)) * t4;
        } else {
            coeff *= (4 * dn + 3) * (4 * dn + 4) * (4 * dn + 5) * (4 * dn + 6) /
                     (16.0 * (2 * dn + 2) * (2 * dn + 2) * (2 * dn + 3) * (2 * dn + 3)) * t4;
        }
    }
    throw SolverError("number_moment: series did not converge within the term cap");
}

StateVector finalize_expansion(Vector amps, const HilbertSpace& space, double leak_threshold,
                               double* norm_deficiency, const char* where) {
    const double deficiency = 1.0 - amps.squaredNorm();
    if (norm_deficiency) *norm_deficiency = deficiency;
    if (deficiency >= leak_threshold) {
        throw TruncationError(std::string(where) + ": cutoff too small, norm deficiency " +
                                  std::to_string(deficiency),
                              deficiency);
    }
    amps /= amps.norm();
    return StateVector(space, std::move(amps));
}

}  // namespace

SqueezeParam::SqueezeParam(double r, double phi) : r_(r), phi_(phi) {
    if (!(r >= 0.0)) throw std::invalid_argument("SqueezeParam: r must be >= 0");
    phi_ = std::fmod(phi_, 2.0 * M_PI);
    if (phi_ < 0.0) phi_ += 2.0 * M_PI;
}

SqueezeParam SqueezeParam::from_complex(Complex xi) {
    return SqueezeParam(std::abs(xi), std::arg(xi));
}

StateVector squeezed_vacuum(const SqueezeParam& xi, const HilbertSpace& space,
                            double leak_threshold, double* norm_deficiency) {
    require_oscillator_space(space, "squeezed_vacuum");
    const double r = xi.r();
    const double th = std::tanh(r);
    const Complex phase = std::polar(1.0, xi.phi());

    Vector amps = Vector::Zero(space.total_dim());
    // c_n on |2n>: (-1)^n sqrt((2n)!)/(2^n n!) e^{i n phi} tanh^n r / sqrt(cosh r)
    Complex c = Complex(1.0 / std::sqrt(std::cosh(r)), 0.0);
    for (int n = 0; 2 * n <= space.fock_cutoff(); ++n) {
        amps(2 * n) = c;
        const double dn = static_cast<double>(n + 1);
        c *= -phase * th * std::sqrt((2 * dn) * (2 * dn - 1)) / (2 * dn);
    }
    return finalize_expansion(std::move(amps), space, leak_threshold, norm_deficiency,
                              "squeezed_vacuum");
}

std::pair<double, double> normalization_constants(double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("normalization_constants: r must be >= 0");
    const double c = 1.0 / std::sqrt(std::cosh(2.0 * r));
    return {2.0 * (1.0 + c), 2.0 * (1.0 - c)};
}

StateVector logical_state(LogicalLabel label, const SqueezeParam& xi, const HilbertSpace& space,
                          double leak_threshold, double* norm_deficiency) {
    require_oscillator_space(space, "logical_state");
    const double r = xi.r();
    const double th = std::tanh(r);
    const Complex phase2 = std::polar(1.0, 2.0 * xi.phi());
    const auto [n_plus, n_minus] = normalization_constants(r);

    Vector amps = Vector::Zero(space.total_dim());
    if (label == LogicalLabel::ZeroL) {
        // a_n on |4n>: 2 sqrt((4n)!) tanh^{2n} e^{i 2n phi} / (2^{2n} (2n)! sqrt(N+ cosh r))
        Complex a = Complex(2.0 / std::sqrt(n_plus * std::cosh(r)), 0.0);
        for (int n = 0; 4 * n <= space.fock_cutoff(); ++n) {
            amps(4 * n) = a;
            const double dn = static_cast<double>(n);
            a *= phase2 * th * th *
                 std::sqrt((4 * dn + 1) * (4 * dn + 2) * (4 * dn + 3) * (4 * dn + 4)) /
                 (4.0 * (2 * dn + 1) * (2 * dn + 2));
        }
    } else {
        if (r <= 0.0) {
            throw DegenerateStateError("logical_state: |1_L> is undefined at r = 0 (N- = 0)");
        }
        // b_n on |4n+2>: -2 sqrt((4n+2)!) tanh^{2n+1} e^{i(2n+1)phi}
        //               / (2^{2n+1} (2n+1)! sqrt(N- cosh r))
        Complex b = Complex(-std::sqrt(2.0) / std::sqrt(n_minus * std::cosh(r)), 0.0) * th *
                    std::polar(1.0, xi.phi());
        for (int n = 0; 4 * n + 2 <= space.fock_cutoff(); ++n) {
            amps(4 * n + 2) = b;
            const double dn = static_cast<double>(n);
            b *= phase2 * th * th *
                 std::sqrt((4 * dn + 3) * (4 * dn + 4) * (4 * dn + 5) * (4 * dn + 6)) /
                 (4.0 * (2 * dn + 2) * (2 * dn + 3));
        }
    }
    return finalize_expansion(std::move(amps), space, leak_threshold, norm_deficiency,
                              "logical_state");
}

double number_moment(LogicalLabel label, double r, int p, double tolerance) {
    if (p < 1 || p > 4) throw std::invalid_argument("number_moment: p must be in 1..4");
    if (!(tolerance > 0.0)) throw std::invalid_argument("number_moment: tolerance must be > 0");
    if (label == LogicalLabel::OneL && r <= 0.0) {
        throw DegenerateStateError("number_moment: |1_L> is undefined at r = 0");
    }
    if (!(r >= 0.0)) throw std::invalid_argument("number_moment: r must be >= 0");
    return moment_series(label, r, p, tolerance).value;
}

MomentReport moment_ratio(double r, int p, double tolerance) {
    if (!(r > 0.0)) throw std::invalid_argument("moment_ratio: r must be > 0");
    if (p < 1 || p > 4) throw std::invalid_argument("moment_ratio: p must be in 1..4");
    const SeriesSum zero = moment_series(LogicalLabel::ZeroL, r, p, tolerance);
    const SeriesSum one = moment_series(LogicalLabel::OneL, r, p, tolerance);
    MomentReport report;
    report.r = r;
    report.p = p;
    report.moment_zero = zero.value;
    report.moment_one = one.value;
    report.ratio = zero.value / one.value;
    report.terms_used = std::max(zero.terms_used, one.terms_used);
    report.truncation_estimate = std::max(std::abs(zero.last_term), std::abs(one.last_term));
    return report;
}

KlReport kl_check(const SqueezeParam& xi, const HilbertSpace& space) {
    require_oscillator_space(space, "kl_check");
    if (!(xi.r() > 0.0)) throw std::invalid_argument("kl_check: r must be > 0");

    const StateVector zero = logical_state(LogicalLabel::ZeroL, xi, space);
    const StateVector one = logical_state(LogicalLabel::OneL, xi, space);

    const Matrix b = annihilation(space).elements();
    const Matrix n = number_op(space).elements();
    const std::vector<Matrix> error_set = {Matrix::Identity(space.total_dim(), space.total_dim()),
                                           b, n, n * n};

    double off_diag_max = 0.0;
    for (const Matrix& ei : error_set) {
        for (const Matrix& ej : error_set) {
            const Complex elem = zero.amplitudes().dot(ei.adjoint() * (ej * one.amplitudes()));
            off_diag_max = std::max(off_diag_max, std::abs(elem));
        }
    }

    KlReport report;
    report.off_diagonal_max = off_diag_max;
    for (int p = 1; p <= 4; ++p) {
        report.moment_mismatches.emplace_back(p, std::abs(moment_ratio(xi.r(), p).ratio - 1.0));
    }
    return report;
}

}  // namespace condsq
