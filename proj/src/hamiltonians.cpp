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

#include "condsq/hamiltonians.hpp"

#include <cmath>

namespace condsq {

namespace {

constexpr int kMaxBesselOrder = 200;
constexpr double kMaxBesselArgument = 50.0;

// Direct power series in extended precision; safe against cancellation for
// small arguments.
double bessel_series(int n, double x) {
    const long double half = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / k;
    long double sum = term;
    const long double x2 = half * half;
    for (int k = 1; k < 600; ++k) {
        term *= -x2 / (static_cast<long double>(k) * (n + k));
        sum += term;
        if (std::abs(term) < 1e-25L * (std::abs(sum) + 1e-30L)) break;
    }
    return static_cast<double>(sum);
}

// Miller's backward recurrence with the normalization J_0 + 2 sum J_{2k} = 1.
// Values grow steeply during the downward sweep; rescale on overflow risk.
double bessel_miller(int n, double x) {
    const int base = std::max(n, static_cast<int>(std::ceil(x)));
    int start = base + 20 + static_cast<int>(1.5 * std::sqrt(40.0 * base));
    if (start % 2 != 0) ++start;

    long double f_up = 0.0L;
    long double f = 1e-30L;
    long double norm = 0.0L;
    long double target = 0.0L;
    for (int k = start; k >= 1; --k) {
        const long double f_down = (2.0L * k / x) * f - f_up;
        f_up = f;
        f = f_down;
        if (k - 1 == n) target = f;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * f;
        if (std::abs(f) > 1e250L) {
            f /= 1e250L;
            f_up /= 1e250L;
            norm /= 1e250L;
            target /= 1e250L;
        }
    }
    norm += f;  // J_0 contribution
    if (n == 0) target = f;
    return static_cast<double>(target / norm);
}

}  // namespace

double bessel_j(int n, double x) {
    double sign = 1.0;
    if (n < 0) {  // J_{-n} = (-1)^n J_n
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (n > kMaxBesselOrder || x > kMaxBesselArgument) {
        throw std::invalid_argument("bessel_j: order or argument out of supported range");
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const double value = (x <= 8.0) ? bessel_series(n, x) : bessel_miller(n, x);
    return sign * value;
}

std::pair<double, double> jacobi_anger_partial(double chi, double tau, int n_max) {
    if (n_max < 1) throw std::invalid_argument("jacobi_anger_partial: n_max must be >= 1");
    if (2 * n_max > kMaxBesselOrder) {
        throw std::invalid_argument("jacobi_anger_partial: n_max too large for bessel_j");
    }
    double cos_value = bessel_j(0, chi);
    double sin_value = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        cos_value += 2.0 * bessel_j(2 * n, chi) * std::cos(2.0 * n * tau);
        sin_value += 2.0 * bessel_j(2 * n - 1, chi) * std::sin((2.0 * n - 1.0) * tau);
    }
    return {cos_value, sin_value};
}

double SystemParams::g_cs() const { return g * bessel_j(2, a_bar()); }

void SystemParams::validate() const {
    if (!(omega_q > 0.0) || !(omega_m > 0.0) || !(omega_d > 0.0)) {
        throw std::invalid_argument("SystemParams: frequencies must be positive");
    }
    if (!(g > 0.0)) throw std::invalid_argument("SystemParams: g must be positive");
    if (amplitude_A < 0.0) throw std::invalid_argument("SystemParams: amplitude_A must be >= 0");
}

DriveCondition DriveCondition::evaluate(const SystemParams& params, double tolerance) {
    DriveCondition cond;
    cond.resonant = std::abs(params.omega_d - params.omega_m) <= tolerance;
    cond.amplitude_at_first_j0_root = std::abs(params.a_bar() - kFirstJ0Root) <= tolerance;
    return cond;
}

// ---------------------------------------------------------------------------
// Block-coefficient decomposition

TimeDependentHamiltonian::TimeDependentHamiltonian(HilbertSpace space, std::vector<Term> terms)
    : space_(space), terms_(std::move(terms)) {
    const int dim = space_.total_dim();
    for (const auto& term : terms_) {
        if (term.block.rows() != dim || term.block.cols() != dim) {
            throw std::invalid_argument("TimeDependentHamiltonian: block dimension mismatch");
        }
        if (!term.coefficient) {
            throw std::invalid_argument("TimeDependentHamiltonian: empty coefficient");
        }
    }
}

TimeDependentHamiltonian TimeDependentHamiltonian::constant(const OperatorMatrix& h) {
    std::vector<Term> terms;
    terms.push_back({[](double) { return Complex(1.0, 0.0); }, h.elements().sparseView()});
    return TimeDependentHamiltonian(h.space(), std::move(terms));
}

void TimeDependentHamiltonian::apply(double t, const Vector& in, Vector& out) const {
    out.setZero(in.size());
    for (const auto& term : terms_) out.noalias() += term.coefficient(t) * (term.block * in);
}

void TimeDependentHamiltonian::apply_left(double t, const Matrix& in, Matrix& out) const {
    out.setZero(in.rows(), in.cols());
    for (const auto& term : terms_) out.noalias() += term.coefficient(t) * (term.block * in);
}

void TimeDependentHamiltonian::apply_right(double t, const Matrix& in, Matrix& out) const {
    out.setZero(in.rows(), in.cols());
    for (const auto& term : terms_) out.noalias() += term.coefficient(t) * (in * term.block);
}

Matrix TimeDependentHamiltonian::dense(double t) const {
    Matrix out = Matrix::Zero(space_.total_dim(), space_.total_dim());
    for (const auto& term : terms_) out += term.coefficient(t) * Matrix(term.block);
    return out;
}

OperatorMatrix TimeDependentHamiltonian::matrix(double t) const {
    return OperatorMatrix(space_, dense(t));
}

// ---------------------------------------------------------------------------
// Model builders

namespace {

void require_composite(const HilbertSpace& space, const char* where) {
    if (!space.has_qubit()) {
        throw std::invalid_argument(std::string(where) + ": composite space required");
    }
}

struct OscBlocks {
    Matrix b2;             // b^2
    Matrix bd2;            // b^dag^2
    Matrix two_n_plus_1;   // 2 b^dag b + 1
    Matrix quad;           // (b + b^dag)^2 in expanded form
    Matrix number;         // b^dag b
};

// (b + b^dag)^2 is represented by its normal-ordered expansion
// b^2 + b^dag^2 + 2 b^dag b + 1 in every frame. Under truncation the two
// forms differ in the corner element, and only the expanded form conjugates
// exactly under the diagonal frame unitaries, keeping the frame identities
// exact at the matrix level.
OscBlocks oscillator_blocks(const HilbertSpace& space) {
    const HilbertSpace osc = space.has_qubit() ? space.oscillator_only() : space;
    const Matrix b = annihilation(osc).elements();
    OscBlocks blocks;
    blocks.b2 = b * b;
    blocks.bd2 = blocks.b2.adjoint();
    blocks.number = b.adjoint() * b;
    blocks.two_n_plus_1 = 2.0 * blocks.number + Matrix::Identity(osc.total_dim(), osc.total_dim());
    blocks.quad = blocks.b2 + blocks.bd2 + blocks.two_n_plus_1;
    return blocks;
}

Matrix qubit_sigma(Pauli axis) {
    const Complex i(0.0, 1.0);
    Matrix m = Matrix::Zero(2, 2);
    switch (axis) {
        case Pauli::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case Pauli::Y: m(0, 1) = -i; m(1, 0) = i; break;
        case Pauli::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case Pauli::Minus: m(1, 0) = 1.0; break;
    }
    return m;
}

SparseBlock embedded_sparse(const Matrix& qubit_op, const Matrix& osc_op,
                            const HilbertSpace& space) {
    return embed(qubit_op, osc_op, space).elements().sparseView(1.0, 1e-300);
}

}  // namespace

TimeDependentHamiltonian hamiltonian_terms(Model model, const SystemParams& params,
                                           const HilbertSpace& space) {
    require_composite(space, "hamiltonian_terms");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    const Matrix sx = qubit_sigma(Pauli::X);
    const Matrix sy = qubit_sigma(Pauli::Y);
    const Matrix sz = qubit_sigma(Pauli::Z);
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix id_osc = Matrix::Identity(space.osc_dim(), space.osc_dim());

    const double wq = params.omega_q;
    const double wm = params.omega_m;
    const double wd = params.omega_d;
    const double amp = params.amplitude_A;
    const double g = params.g;
    const double a_bar = params.a_bar();
    const Complex i(0.0, 1.0);

    auto unit = [](double) { return Complex(1.0, 0.0); };
    std::vector<TimeDependentHamiltonian::Term> terms;

    switch (model) {
        case Model::Lab: {
            Matrix static_part = embed(sz, id_osc, space).elements() * (wq / 2.0) +
                                 embed(id2, osc.number, space).elements() * wm +
                                 embed(sz, osc.quad, space).elements() * g;
            terms.push_back({unit, static_part.sparseView(1.0, 1e-300)});
            terms.push_back({[amp, wd, wq](double t) {
                                 return Complex(amp * std::cos(wd * t) * std::cos(wq * t), 0.0);
                             },
                             embedded_sparse(sx, id_osc, space)});
            terms.push_back({[amp, wd, wq](double t) {
                                 return Complex(amp * std::cos(wd * t) * std::sin(wq * t), 0.0);
                             },
                             embedded_sparse(sy, id_osc, space)});
            break;
        }
        case Model::Interaction: {
            terms.push_back({[g, wm, i](double t) { return g * std::exp(-2.0 * i * wm * t); },
                             embedded_sparse(sz, osc.b2, space)});
            terms.push_back({[g, wm, i](double t) { return g * std::exp(2.0 * i * wm * t); },
                             embedded_sparse(sz, osc.bd2, space)});
            terms.push_back({[g](double) { return Complex(g, 0.0); },
                             embedded_sparse(sz, osc.two_n_plus_1, space)});
            terms.push_back({[amp, wd](double t) { return Complex(amp * std::cos(wd * t), 0.0); },
                             embedded_sparse(sx, id_osc, space)});
            break;
        }
        case Model::Rotating: {
            auto cos_env = [a_bar, wd](double t) { return std::cos(a_bar * std::sin(wd * t)); };
            auto sin_env = [a_bar, wd](double t) { return std::sin(a_bar * std::sin(wd * t)); };
            struct Piece {
                Pauli axis;
                const Matrix* osc_block;
                int rotation;  // exponent sign of e^{2i w_m t}
            };
            const Piece pieces[] = {{Pauli::Z, &osc.b2, -1},          {Pauli::Z, &osc.bd2, +1},
                                    {Pauli::Z, &osc.two_n_plus_1, 0}, {Pauli::Y, &osc.b2, -1},
                                    {Pauli::Y, &osc.bd2, +1},         {Pauli::Y, &osc.two_n_plus_1, 0}};
            for (const auto& piece : pieces) {
                const bool is_z = piece.axis == Pauli::Z;
                const int rot = piece.rotation;
                terms.push_back(
                    {[g, wm, i, rot, is_z, cos_env, sin_env](double t) {
                         const Complex rotor =
                             rot == 0 ? Complex(1.0, 0.0)
                                      : std::exp(Complex(0.0, 2.0 * rot * wm * t));
                         return g * rotor * (is_z ? cos_env(t) : sin_env(t));
                     },
                     embedded_sparse(is_z ? sz : sy, *piece.osc_block, space)});
            }
            break;
        }
        case Model::Rwa: {
            Matrix h = embed(sz, osc.two_n_plus_1, space).elements() * (g * bessel_j(0, a_bar)) +
                       embed(sz, Matrix(osc.b2 + osc.bd2), space).elements() *
                           (g * bessel_j(2, a_bar));
            terms.push_back({unit, h.sparseView(1.0, 1e-300)});
            break;
        }
        case Model::Cs: {
            Matrix h = embed(sz, Matrix(osc.b2 + osc.bd2), space).elements() * params.g_cs();
            terms.push_back({unit, h.sparseView(1.0, 1e-300)});
            break;
        }
    }
    return TimeDependentHamiltonian(space, std::move(terms));
}

OperatorMatrix h_lab(const SystemParams& params, const HilbertSpace& space, double t) {
    require_composite(space, "h_lab");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    const Matrix id_osc = Matrix::Identity(space.osc_dim(), space.osc_dim());
    const double drive = params.amplitude_A * std::cos(params.omega_d * t);
    Matrix h = embed(qubit_sigma(Pauli::Z), id_osc, space).elements() * (params.omega_q / 2.0) +
               embed(std::nullopt, osc.number, space).elements() * params.omega_m +
               embed(qubit_sigma(Pauli::Z), osc.quad, space).elements() * params.g +
               embed(qubit_sigma(Pauli::X), id_osc, space).elements() *
                   (drive * std::cos(params.omega_q * t)) +
               embed(qubit_sigma(Pauli::Y), id_osc, space).elements() *
                   (drive * std::sin(params.omega_q * t));
    return OperatorMatrix(space, std::move(h), true);
}

namespace {

// Oscillator factor b^2 e^{-2i w_m t} + b^dag^2 e^{2i w_m t} + 2 b^dag b + 1.
Matrix oscillator_factor(const OscBlocks& osc, double wm, double t) {
    const Complex rotor = std::exp(Complex(0.0, 2.0 * wm * t));
    return osc.b2 * std::conj(rotor) + osc.bd2 * rotor + osc.two_n_plus_1;
}

}  // namespace

OperatorMatrix h_interaction(const SystemParams& params, const HilbertSpace& space, double t) {
    require_composite(space, "h_interaction");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    const Matrix id_osc = Matrix::Identity(space.osc_dim(), space.osc_dim());
    Matrix h = embed(qubit_sigma(Pauli::Z), oscillator_factor(osc, params.omega_m, t), space)
                   .elements() *
                   params.g +
               embed(qubit_sigma(Pauli::X), id_osc, space).elements() *
                   (params.amplitude_A * std::cos(params.omega_d * t));
    return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix h_rotating(const SystemParams& params, const HilbertSpace& space, double t) {
    require_composite(space, "h_rotating");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    const double theta = params.a_bar() * std::sin(params.omega_d * t);
    const Matrix envelope = std::cos(theta) * qubit_sigma(Pauli::Z) +
                            std::sin(theta) * qubit_sigma(Pauli::Y);
    Matrix h = embed(envelope, oscillator_factor(osc, params.omega_m, t), space).elements() *
               params.g;
    return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix h_rotating_expanded(const SystemParams& params, const HilbertSpace& space, double t,
                                   int n_max) {
    require_composite(space, "h_rotating_expanded");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    const auto [cos_sum, sin_sum] =
        jacobi_anger_partial(params.a_bar(), params.omega_d * t, n_max);
    const Matrix envelope = cos_sum * qubit_sigma(Pauli::Z) + sin_sum * qubit_sigma(Pauli::Y);
    Matrix h = embed(envelope, oscillator_factor(osc, params.omega_m, t), space).elements() *
               params.g;
    return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix h_rwa(const SystemParams& params, const HilbertSpace& space) {
    require_composite(space, "h_rwa");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    Matrix h = embed(qubit_sigma(Pauli::Z), osc.two_n_plus_1, space).elements() *
                   (params.g * bessel_j(0, params.a_bar())) +
               embed(qubit_sigma(Pauli::Z), Matrix(osc.b2 + osc.bd2), space).elements() *
                   (params.g * bessel_j(2, params.a_bar()));
    return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix h_cs(const SystemParams& params, const HilbertSpace& space) {
    require_composite(space, "h_cs");
    params.validate();
    const OscBlocks osc = oscillator_blocks(space);
    Matrix h =
        embed(qubit_sigma(Pauli::Z), Matrix(osc.b2 + osc.bd2), space).elements() * params.g_cs();
    return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix frame_transform(const SystemParams& params, const HilbertSpace& space, double t,
                               Frame which) {
    require_composite(space, "frame_transform");
    params.validate();
    const int m = space.osc_dim();
    const Complex i(0.0, 1.0);

    auto v1 = [&]() {
        Matrix v = Matrix::Zero(space.total_dim(), space.total_dim());
        for (int q = 0; q < 2; ++q) {
            const double qubit_sign = (q == 0) ? 1.0 : -1.0;
            for (int n = 0; n < m; ++n) {
                const double phase = (qubit_sign * params.omega_q / 2.0 + params.omega_m * n) * t;
                v(space.index(q, n), space.index(q, n)) = std::exp(i * phase);
            }
        }
        return v;
    };
    auto v2 = [&]() {
        const double theta = params.amplitude_A / params.omega_d * std::sin(params.omega_d * t);
        const Matrix q = std::cos(theta) * Matrix::Identity(2, 2) +
                         i * std::sin(theta) * qubit_sigma(Pauli::X);
        return embed(q, std::nullopt, space).elements();
    };

    switch (which) {
        case Frame::V1: return OperatorMatrix(space, v1());
        case Frame::V2: return OperatorMatrix(space, v2());
        case Frame::Full: return OperatorMatrix(space, Matrix(v2() * v1()));
    }
    throw std::invalid_argument("frame_transform: unknown frame");
}

double fastest_frequency(Model model, const SystemParams& params) {
    switch (model) {
        case Model::Lab:
            return params.omega_q + params.omega_d;
        case Model::Interaction:
            return std::max(2.0 * params.omega_m, params.omega_d);
        case Model::Rotating: {
            // Highest drive harmonic with non-negligible Bessel weight.
            int n = 1;
            while (n < 60 && std::abs(bessel_j(n, params.a_bar())) > 1e-9) ++n;
            return 2.0 * params.omega_m + n * params.omega_d;
        }
        case Model::Rwa:
        case Model::Cs:
            return 0.0;
    }
    return 0.0;
}

}  // namespace condsq
