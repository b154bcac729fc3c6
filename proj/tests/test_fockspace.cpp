#include <doctest.h>

#include <cmath>

#include "condsq/fockspace.hpp"
#include "test_helpers.hpp"

using namespace condsq;

TEST_SUITE_BEGIN("fockspace");

TEST_CASE("spaces validate their dimensions") {
    CHECK_THROWS_AS(HilbertSpace(0), std::invalid_argument);
    HilbertSpace composite(5, true);
    CHECK(composite.total_dim() == 12);
    CHECK(composite.index(1, 3) == 9);
    HilbertSpace osc(5, false);
    CHECK(osc.total_dim() == 6);
}

TEST_CASE("annihilation operator has sqrt(n) ladder elements") {
    HilbertSpace osc(8, false);
    const Matrix b = annihilation(osc).elements();
    CHECK(b(0, 1) == 1.0);
    CHECK(b(1, 2) == std::sqrt(2.0));
    for (int n = 1; n <= 8; ++n) CHECK(b(n - 1, n) == std::sqrt(static_cast<double>(n)));
    CHECK(b.cwiseAbs().sum() == doctest::Approx(b.diagonal(1).cwiseAbs().sum()));
}

TEST_CASE("truncated commutator is the identity except the corner") {
    for (int cutoff : {4, 16, 64}) {
        HilbertSpace osc(cutoff, false);
        const Matrix b = annihilation(osc).elements();
        Matrix comm = b * b.adjoint() - b.adjoint() * b;
        // Perfect-square cutoffs make the corner entry exact in floating point.
        CHECK(comm(cutoff, cutoff).real() == -static_cast<double>(cutoff));
        comm(cutoff, cutoff) = 1.0;
        const Matrix dev = comm - Matrix::Identity(cutoff + 1, cutoff + 1);
        CHECK(dev.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("pauli operators follow the |e>,|g> convention") {
    HilbertSpace space(3, true);
    const auto sz = pauli(Pauli::Z, space);
    const auto sx = pauli(Pauli::X, space);
    const auto sm = pauli(Pauli::Minus, space);
    const auto e0 = StateVector::qubit_fock(space, 0, 0);
    const auto g0 = StateVector::qubit_fock(space, 1, 0);

    CHECK((sz * e0).amplitudes()(space.index(0, 0)) == Complex(1.0));
    CHECK(expectation(sz, e0).real() == doctest::Approx(1.0));
    CHECK(expectation(sz, g0).real() == doctest::Approx(-1.0));
    CHECK(g0.amplitudes().dot((sx * e0).amplitudes()) == Complex(1.0));
    CHECK((sm * e0).amplitudes().isApprox(g0.amplitudes()));
    CHECK((sm * g0).amplitudes().norm() == 0.0);

    HilbertSpace osc(3, false);
    CHECK_THROWS_AS(pauli(Pauli::Z, osc), std::invalid_argument);
}

TEST_CASE("embed follows the fixed basis ordering") {
    HilbertSpace space(4, true);
    Matrix sz(2, 2);
    sz << 1, 0, 0, -1;
    const Matrix z_emb = embed(sz, std::nullopt, space).elements();
    for (int n = 0; n <= 4; ++n) {
        CHECK(z_emb(space.index(0, n), space.index(0, n)) == Complex(1.0));
        CHECK(z_emb(space.index(1, n), space.index(1, n)) == Complex(-1.0));
    }
    const Matrix n_emb = embed(std::nullopt, number_op(space.oscillator_only()).elements(), space)
                             .elements();
    for (int n = 0; n <= 4; ++n) {
        CHECK(n_emb(space.index(0, n), space.index(0, n)) == Complex(n));
        CHECK(n_emb(space.index(1, n), space.index(1, n)) == Complex(n));
    }
    CHECK((z_emb * n_emb).isApprox(embed(sz, number_op(space.oscillator_only()).elements(), space)
                                       .elements()));
}

TEST_CASE("embed(A,I)*embed(I,B) = embed(A,B) for random factors") {
    HilbertSpace space(6, true);
    auto& gen = testutil::rng();
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = testutil::random_complex_matrix(2, gen);
        const Matrix b = testutil::random_complex_matrix(space.osc_dim(), gen);
        const Matrix lhs =
            embed(a, std::nullopt, space).elements() * embed(std::nullopt, b, space).elements();
        const Matrix rhs = embed(a, b, space).elements();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
    }
    CHECK_THROWS_AS(embed(std::nullopt, std::nullopt, space), std::invalid_argument);
    CHECK_THROWS_AS(embed(std::nullopt, Matrix::Identity(3, 3), space), std::invalid_argument);
}

TEST_CASE("expectation values") {
    HilbertSpace osc(10, false);
    const auto n_op = number_op(osc);
    CHECK(expectation(n_op, StateVector::fock(osc, 0)) == Complex(0.0));

    // <b^dag b> of squeezed vacuum equals sinh^2(r); squeezed state built by
    // matrix exponential, independent of the series construction.
    HilbertSpace big(120, false);
    StateVector sq(big, testutil::squeezed_vacuum_expm(120, 1.0, 0.0));
    const double expected = std::sinh(1.0) * std::sinh(1.0);
    CHECK(expectation(number_op(big), sq).real() == doctest::Approx(expected).epsilon(1e-8));

    auto& gen = testutil::rng();
    auto rho = testutil::random_density(HilbertSpace(4, true), gen);
    CHECK(expectation(identity(rho.space()), rho).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity definitions and symmetry") {
    HilbertSpace osc(6, false);
    const auto f0 = StateVector::fock(osc, 0);
    const auto f1 = StateVector::fock(osc, 1);
    CHECK(fidelity(f0, f0) == doctest::Approx(1.0));
    CHECK(fidelity(f0, f1) == doctest::Approx(0.0));

    Matrix mixed = Matrix::Zero(osc.total_dim(), osc.total_dim());
    mixed(0, 0) = 0.5;
    mixed(1, 1) = 0.5;
    DensityMatrix rho(osc, mixed);
    CHECK(fidelity(f0, rho) == doctest::Approx(0.5));

    auto& gen = testutil::rng();
    for (int rep = 0; rep < 25; ++rep) {
        const auto a = testutil::random_density(osc, gen);
        const auto b = testutil::random_density(osc, gen);
        const double fab = fidelity(a, b);
        const double fba = fidelity(b, a);
        CHECK(std::abs(fab - fba) <= 1e-10);
        CHECK(fab >= 0.0);
        CHECK(fab <= 1.0 + 1e-10);
    }

    // Uhlmann fidelity reduces to the overlap when one argument is pure.
    for (int rep = 0; rep < 10; ++rep) {
        const auto psi = testutil::random_state(osc, gen);
        const auto rho2 = testutil::random_density(osc, gen);
        const double pure_route = fidelity(psi, rho2);
        const double mixed_route = fidelity(DensityMatrix::from_pure(psi), rho2);
        CHECK(pure_route == doctest::Approx(mixed_route).epsilon(1e-7));
    }
}

TEST_CASE("sigma_x measurement: product states") {
    HilbertSpace space(4, true);
    const auto result = measure_qubit_x(StateVector::plus_x_fock(space, 0));
    CHECK(result.plus.probability == doctest::Approx(1.0));
    CHECK(result.minus.probability == doctest::Approx(0.0));
    CHECK(result.minus.degenerate);
    CHECK(std::norm(result.plus.state.amplitudes()(0)) == doctest::Approx(1.0));

    const auto even = measure_qubit_x(StateVector::qubit_fock(space, 0, 0));
    CHECK(even.plus.probability == doctest::Approx(0.5));
    CHECK(even.minus.probability == doctest::Approx(0.5));
    CHECK(std::norm(even.plus.state.amplitudes()(0)) == doctest::Approx(1.0));
    CHECK(std::norm(even.minus.state.amplitudes()(0)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(measure_qubit_x(StateVector::fock(HilbertSpace(4, false), 0)),
                    std::invalid_argument);
}

TEST_CASE("sigma_x measurement: entangled squeezed state reproduces N+-/4") {
    // |psi> = [S(xi)|0> (x) |e> + S(-xi)|0> (x) |g>]/sqrt(2) at r = 1.
    const int cutoff = 200;
    HilbertSpace space(cutoff, true);
    const Vector sp = testutil::squeezed_vacuum_expm(cutoff, 1.0, 0.0);
    const Vector sm = testutil::squeezed_vacuum_expm(cutoff, 1.0, M_PI);
    Vector amps = Vector::Zero(space.total_dim());
    amps.head(cutoff + 1) = sp / std::sqrt(2.0);
    amps.tail(cutoff + 1) = sm / std::sqrt(2.0);
    const auto result = measure_qubit_x(StateVector(space, amps));

    // Independent evaluation of N+- = 2[1 +- cosh^{-1/2}(2r)].
    const double c = 1.0 / std::sqrt(std::cosh(2.0));
    CHECK(result.plus.probability == doctest::Approx(2.0 * (1.0 + c) / 4.0).epsilon(1e-6));
    CHECK(result.minus.probability == doctest::Approx(2.0 * (1.0 - c) / 4.0).epsilon(1e-6));
    CHECK(result.plus.probability == doctest::Approx(0.7577800558781069).epsilon(1e-6));

    // The branches are the normalized symmetric/antisymmetric superpositions.
    Vector sym = (sp + sm).normalized();
    Vector asym = (sp - sm).normalized();
    CHECK(std::norm(sym.dot(result.plus.state.amplitudes())) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::norm(asym.dot(result.minus.state.amplitudes())) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sigma_x measurement probabilities sum to one") {
    HilbertSpace space(7, true);
    auto& gen = testutil::rng();
    for (int rep = 0; rep < 100; ++rep) {
        const auto psi = testutil::random_state(space, gen);
        const auto result = measure_qubit_x(psi);
        CHECK(std::abs(result.plus.probability + result.minus.probability - 1.0) <= 1e-10);
    }
}

TEST_CASE("density-matrix sigma_x measurement matches the pure route") {
    HilbertSpace space(6, true);
    auto& gen = testutil::rng();
    for (int rep = 0; rep < 10; ++rep) {
        const auto psi = testutil::random_state(space, gen);
        const auto pure = measure_qubit_x(psi);
        const auto mixed = measure_qubit_x(DensityMatrix::from_pure(psi));
        CHECK(mixed.plus.probability == doctest::Approx(pure.plus.probability).epsilon(1e-10));
        if (!pure.plus.degenerate) {
            CHECK(fidelity(pure.plus.state, mixed.plus.state) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("partial trace over the qubit") {
    HilbertSpace space(3, true);
    const auto e0 = StateVector::qubit_fock(space, 0, 0);
    auto reduced = partial_trace_qubit(DensityMatrix::from_pure(e0));
    CHECK(reduced.elements()(0, 0) == Complex(1.0));
    CHECK(reduced.trace_real() == doctest::Approx(1.0));

    Matrix rho = Matrix::Zero(space.total_dim(), space.total_dim());
    rho(space.index(0, 0), space.index(0, 0)) = 0.5;
    rho(space.index(1, 1), space.index(1, 1)) = 0.5;
    auto reduced2 = partial_trace_qubit(DensityMatrix(space, rho));
    CHECK(reduced2.elements()(0, 0) == Complex(0.5));
    CHECK(reduced2.elements()(1, 1) == Complex(0.5));

    auto& gen = testutil::rng();
    const auto rnd = testutil::random_density(space, gen);
    CHECK(partial_trace_qubit(rnd).trace_real() == doctest::Approx(rnd.trace_real()).epsilon(1e-12));
    CHECK_THROWS_AS(partial_trace_qubit(reduced), std::invalid_argument);
}

TEST_CASE("density matrix construction enforces its invariants") {
    HilbertSpace osc(3, false);
    Matrix bad = Matrix::Zero(4, 4);
    bad(0, 1) = 1.0;  // not Hermitian
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(DensityMatrix(osc, bad), std::invalid_argument);
    Matrix off_trace = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(DensityMatrix(osc, off_trace), std::invalid_argument);
    Matrix ok = Matrix::Zero(4, 4);
    ok(0, 0) = 1.0;
    CHECK(DensityMatrix(osc, ok).min_eigenvalue() >= -1e-12);
}

TEST_CASE("operator hermitian hint is validated") {
    HilbertSpace osc(2, false);
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(OperatorMatrix(osc, m, true), std::invalid_argument);
    CHECK_NOTHROW(OperatorMatrix(osc, m, false));
}

TEST_SUITE_END();
