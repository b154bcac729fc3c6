#include <doctest.h>

#include <cmath>

#include "condsq/squeezing.hpp"
#include "test_helpers.hpp"

using namespace condsq;

TEST_SUITE_BEGIN("squeezing");

TEST_CASE("squeeze parameter canonicalizes its phase") {
    CHECK(SqueezeParam(0.5, -M_PI / 2).phi() == doctest::Approx(3 * M_PI / 2));
    CHECK(SqueezeParam(0.5, 5 * M_PI).phi() == doctest::Approx(M_PI));
    CHECK_THROWS_AS(SqueezeParam(-0.1), std::invalid_argument);
    const SqueezeParam xi(0.7, 0.3);
    CHECK(xi.negated().phi() == doctest::Approx(0.3 + M_PI));
    CHECK(std::abs(SqueezeParam::from_complex(Complex(0.0, 1.0)).phi() - M_PI / 2) < 1e-15);
}

TEST_CASE("squeezed vacuum: r = 0 is the vacuum, odd amplitudes vanish") {
    HilbertSpace osc(40, false);
    const auto vac = squeezed_vacuum(SqueezeParam(0.0), osc);
    CHECK(vac.amplitudes()(0) == Complex(1.0));
    CHECK(vac.amplitudes().tail(40).cwiseAbs().maxCoeff() == 0.0);

    const auto sq = squeezed_vacuum(SqueezeParam(0.9, 1.1), osc);
    for (int n = 1; n <= 40; n += 2) CHECK(sq.amplitudes()(n) == Complex(0.0));
}

TEST_CASE("squeezed vacuum matches the matrix-exponential oracle") {
    HilbertSpace osc(120, false);
    for (double phi : {0.0, M_PI / 2}) {
        const auto series = squeezed_vacuum(SqueezeParam(1.0, phi), osc);
        const Vector oracle = testutil::squeezed_vacuum_expm(120, 1.0, phi);
        CHECK(1.0 - std::norm(oracle.dot(series.amplitudes())) <= 1e-10);
    }
}

TEST_CASE("squeezed vacuum truncation handling") {
    HilbertSpace tiny(20, false);
    CHECK_THROWS_AS(squeezed_vacuum(SqueezeParam(3.0), tiny), TruncationError);
    double deficiency = -1.0;
    HilbertSpace osc(200, false);
    squeezed_vacuum(SqueezeParam(1.5), osc, kDefaultLeakThreshold, &deficiency);
    CHECK(deficiency >= 0.0);
    CHECK(deficiency < 1e-8);
    // Doubling the cutoff shrinks the deficiency.
    double deficiency_half = -1.0;
    HilbertSpace half(100, false);
    squeezed_vacuum(SqueezeParam(1.5), half, 1e-3, &deficiency_half);
    CHECK(deficiency < deficiency_half);
}

TEST_CASE("normalization constants") {
    const auto [n_plus0, n_minus0] = normalization_constants(0.0);
    CHECK(n_plus0 == doctest::Approx(4.0));
    CHECK(n_minus0 == doctest::Approx(0.0));

    const auto [n_plus, n_minus] = normalization_constants(1.0);
    const double c = 1.0 / std::sqrt(std::cosh(2.0));
    CHECK(n_plus == doctest::Approx(2.0 * (1.0 + c)).epsilon(1e-14));
    CHECK(n_minus == doctest::Approx(2.0 * (1.0 - c)).epsilon(1e-14));
    CHECK(n_plus == doctest::Approx(3.0311202235124277).epsilon(1e-12));
    CHECK(n_plus + n_minus == doctest::Approx(4.0).epsilon(1e-14));

    // Both constants approach 2 for strong squeezing; at r = 5 the gap is
    // 2 cosh^{-1/2}(10) = 0.01906...
    const auto [big_plus, big_minus] = normalization_constants(5.0);
    const double gap = 2.0 / std::sqrt(std::cosh(10.0));
    CHECK(std::abs(big_plus - 2.0) == doctest::Approx(gap).epsilon(1e-12));
    CHECK(std::abs(big_minus - 2.0) == doctest::Approx(gap).epsilon(1e-12));
    CHECK(std::abs(big_plus - 2.0) < 0.02);
}

TEST_CASE("logical states: supports, limits, degenerate case") {
    HilbertSpace osc(120, false);
    const auto zero_at_0 = logical_state(LogicalLabel::ZeroL, SqueezeParam(0.0), osc);
    CHECK(zero_at_0.amplitudes()(0) == Complex(1.0));
    CHECK_THROWS_AS(logical_state(LogicalLabel::OneL, SqueezeParam(0.0), osc),
                    DegenerateStateError);

    const SqueezeParam xi(0.9, 0.4);
    const auto zero = logical_state(LogicalLabel::ZeroL, xi, osc);
    const auto one = logical_state(LogicalLabel::OneL, xi, osc);
    for (int n = 0; n <= 120; ++n) {
        if (n % 4 != 0) CHECK(zero.amplitudes()(n) == Complex(0.0));
        if (n % 4 != 2) CHECK(one.amplitudes()(n) == Complex(0.0));
    }
    CHECK(std::abs(zero.amplitudes().dot(one.amplitudes())) == 0.0);
}

TEST_CASE("logical states equal the normalized superposition of squeezed vacua") {
    HilbertSpace osc(160, false);
    const SqueezeParam xi(0.8, 0.6);
    const auto [n_plus, n_minus] = normalization_constants(0.8);

    // The truncated expansions are renormalized; undo that to recombine.
    double dp = 0.0, dm = 0.0;
    const Vector sp = squeezed_vacuum(xi, osc, kDefaultLeakThreshold, &dp).amplitudes() *
                      std::sqrt(1.0 - dp);
    const Vector sm =
        squeezed_vacuum(xi.negated(), osc, kDefaultLeakThreshold, &dm).amplitudes() *
        std::sqrt(1.0 - dm);

    const Vector zero_oracle = (sp + sm) / std::sqrt(n_plus);
    const Vector one_oracle = (sp - sm) / std::sqrt(n_minus);

    const auto zero = logical_state(LogicalLabel::ZeroL, xi, osc);
    const auto one = logical_state(LogicalLabel::OneL, xi, osc);
    CHECK((zero.amplitudes() - zero_oracle).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((one.amplitudes() - one_oracle).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("number moments: small-r limits") {
    for (int p = 1; p <= 4; ++p) {
        CHECK(number_moment(LogicalLabel::ZeroL, 1e-3, p) < 1e-6);
        CHECK(std::abs(number_moment(LogicalLabel::OneL, 1e-3, p) - std::pow(2.0, p)) < 1e-3);
    }
    CHECK_THROWS_AS(number_moment(LogicalLabel::OneL, 0.0, 1), DegenerateStateError);
    CHECK_THROWS_AS(number_moment(LogicalLabel::ZeroL, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(number_moment(LogicalLabel::ZeroL, 1.0, 1, -1.0), std::invalid_argument);
}

TEST_CASE("number moments agree with matrix-exponential states") {
    // Oracle: build [S(xi) +- S(-xi)]|0> by matrix exponential, normalize,
    // and sum n^p over the amplitudes; fully independent of the series.
    const int cutoff = 280;
    for (double r : {0.25, 0.5, 1.0, 1.5}) {
        const Vector sp = testutil::squeezed_vacuum_expm(cutoff, r, 0.0);
        const Vector sm = testutil::squeezed_vacuum_expm(cutoff, r, M_PI);
        const Vector zero = (sp + sm).normalized();
        const Vector one = (sp - sm).normalized();
        for (int p = 1; p <= 4; ++p) {
            double direct_zero = 0.0, direct_one = 0.0;
            for (int n = 0; n <= cutoff; ++n) {
                direct_zero += std::norm(zero(n)) * std::pow(n, p);
                direct_one += std::norm(one(n)) * std::pow(n, p);
            }
            const double series_zero = number_moment(LogicalLabel::ZeroL, r, p);
            const double series_one = number_moment(LogicalLabel::OneL, r, p);
            CHECK(std::abs(series_zero - direct_zero) <=
                  1e-6 * std::max(1.0, std::abs(direct_zero)));
            CHECK(std::abs(series_one - direct_one) <=
                  1e-6 * std::max(1.0, std::abs(direct_one)));
        }
    }
}

TEST_CASE("moment ratios: range, convergence toward 1, report fields") {
    for (int p = 1; p <= 4; ++p) {
        double previous_gap = std::numeric_limits<double>::infinity();
        for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) {
            const MomentReport report = moment_ratio(r, p);
            CHECK(report.ratio > 0.0);
            CHECK(report.ratio <= 1.0);
            CHECK(report.moment_zero >= 0.0);
            CHECK(report.moment_one >= 0.0);
            CHECK(report.terms_used >= 1);
            CHECK(report.truncation_estimate >= 0.0);
            const double gap = std::abs(report.ratio - 1.0);
            CHECK(gap <= previous_gap);
            previous_gap = gap;
        }
        CHECK(std::abs(moment_ratio(2.0, p).ratio - 1.0) <
              std::abs(moment_ratio(0.5, p).ratio - 1.0));
    }
    CHECK(moment_ratio(0.1, 1).ratio < 0.01);
    CHECK(moment_ratio(1.0, 1).ratio == doctest::Approx(0.2425963617368403).epsilon(1e-10));
}

TEST_CASE("moment ratio matches the truncated-space operator ratio at r = 1.2") {
    const int cutoff = 300;
    const Vector sp = testutil::squeezed_vacuum_expm(cutoff, 1.2, 0.0);
    const Vector sm = testutil::squeezed_vacuum_expm(cutoff, 1.2, M_PI);
    const Vector zero = (sp + sm).normalized();
    const Vector one = (sp - sm).normalized();
    for (int p = 1; p <= 4; ++p) {
        double direct_zero = 0.0, direct_one = 0.0;
        for (int n = 0; n <= cutoff; ++n) {
            direct_zero += std::norm(zero(n)) * std::pow(n, p);
            direct_one += std::norm(one(n)) * std::pow(n, p);
        }
        CHECK(std::abs(moment_ratio(1.2, p).ratio - direct_zero / direct_one) <= 1e-5);
    }
}

TEST_CASE("overlap identity ties the expansion to the normalization constants") {
    HilbertSpace osc(200, false);
    for (double r : {0.3, 0.8, 1.2}) {
        const SqueezeParam xi(r, 0.0);
        double dp = 0.0, dm = 0.0;
        const Vector sp = squeezed_vacuum(xi, osc, kDefaultLeakThreshold, &dp).amplitudes() *
                          std::sqrt(1.0 - dp);
        const Vector sm =
            squeezed_vacuum(xi.negated(), osc, kDefaultLeakThreshold, &dm).amplitudes() *
            std::sqrt(1.0 - dm);
        const double overlap = sp.dot(sm).real();
        CHECK(std::abs(overlap - 1.0 / std::sqrt(std::cosh(2.0 * r))) <= 1e-8);
    }
}

TEST_CASE("KL check: exact orthogonality, strictly positive moment mismatch") {
    HilbertSpace osc(200, false);
    for (double r : {0.5, 1.0}) {
        const auto report = kl_check(SqueezeParam(r, M_PI / 2), osc);
        CHECK(report.off_diagonal_max <= 1e-12);
        CHECK(report.moment_mismatches.size() == 4);
        for (const auto& [p, mismatch] : report.moment_mismatches) {
            CHECK(p >= 1);
            CHECK(p <= 4);
            CHECK(mismatch > 0.0);
        }
    }
    const auto tight = kl_check(SqueezeParam(2.0), HilbertSpace(400, false));
    const auto loose = kl_check(SqueezeParam(0.5), HilbertSpace(400, false));
    CHECK(tight.off_diagonal_max <= 1e-12);
    CHECK(tight.moment_mismatches[0].second < loose.moment_mismatches[0].second);
}

TEST_SUITE_END();
