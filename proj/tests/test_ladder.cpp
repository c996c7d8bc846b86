#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pii/distributions.hpp"
#include "pii/ladder.hpp"
#include "pii/specfun.hpp"

using namespace pii;

namespace {

const SigmaLadder& ladder(double xi) {
    static const SigmaLadder one = build_ladder(cached_solution(1.0));
    static const SigmaLadder half = build_ladder(cached_solution(0.5));
    return xi == 1.0 ? one : half;
}

double instanton(double x) { return std::exp(-4.0 / 3.0 * x * std::sqrt(x)); }

}  // namespace

TEST(HalfTranscendent, RightAsymptote) {
    const HalfTranscendent h = q_half_from_q0(cached_solution(1.0));
    EXPECT_NEAR(h.q(15.0) * 2.0 * 15.0, 1.0, 1e-2);
}

TEST(HalfTranscendent, LeftAsymptote) {
    const HalfTranscendent h = q_half_from_q0(cached_solution(1.0));
    EXPECT_NEAR(h.q(-15.0) / std::sqrt(7.5), 1.0, 1e-2);
}

TEST(HalfTranscendent, PainleveResidual) {
    const HalfTranscendent h = q_half_from_q0(cached_solution(1.0));
    EXPECT_LE(std::fabs(h.pii_residual(0.0)), 1e-7);
    double worst = 0.0;
    for (double t = -12.0; t <= 12.0; t += 0.2371) worst = std::max(worst, std::fabs(h.pii_residual(t)));
    EXPECT_LE(worst, 1e-7);
}

TEST(HalfTranscendent, ZeroOfTranscendentIsAPole) {
    const TranscendentSolution& sol = cached_solution(0.5);
    const auto z = q0_zeros(sol);
    ASSERT_FALSE(z.empty());
    EXPECT_THROW(q_half_from_q0(sol, z.back() - 0.5, z.back() + 0.5), PoleError);
    EXPECT_NO_THROW(q_half_from_q0(sol));
    EXPECT_TRUE(q0_zeros(cached_solution(1.0)).empty());
}

TEST(PAux, DefinitionHoldsIdentically) {
    const HalfTranscendent h = q_half_from_q0(cached_solution(1.0));
    const PAux p = p_aux(h, {-3.0, -1.0, 0.5, 2.0});
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        const Jet j = h.jet(p.t[i]);
        EXPECT_NEAR(p.p_alpha[i] - j.d1 - j.v * j.v - 0.5 * p.t[i], 0.0, 1e-15);
    }
}

TEST(Gambier, DegenerateForZeroParameter) {
    const TranscendentSolution sol = solve_q0(0.0, -8.0);
    EXPECT_EQ(gambier_residual(sol, 1, -6.0, 6.0), 0.0);
    EXPECT_EQ(gambier_residual(sol, -1, -6.0, 6.0), 0.0);
}

TEST(Gambier, ResidualBothSigns) {
    for (double xi : {0.5, 1.0}) {
        EXPECT_LE(gambier_residual(cached_solution(xi), 1, -6.0, 6.0), 1e-7) << "xi=" << xi;
        EXPECT_LE(gambier_residual(cached_solution(xi), -1, -6.0, 6.0), 1e-7) << "xi=" << xi;
    }
    EXPECT_THROW(gambier_residual(cached_solution(1.0), 2, -6.0, 6.0), std::invalid_argument);
}

TEST(Gambier, SigmaDerivativeFromHalfTranscendent) {
    for (double xi : {0.5, 1.0}) EXPECT_LE(ta1_residual(cached_solution(xi), -6.0, 6.0), 1e-7) << "xi=" << xi;
}

TEST(UOne, LargeXExpansion) {
    const double x = 8.0;
    const double expect = -std::sqrt(x) - 1.0 / (4.0 * x) + 5.0 / (32.0 * std::pow(x, 2.5));
    EXPECT_NEAR(ladder(1.0).at(1.0).u(x), expect, 1e-4);
}

TEST(UOne, SigmaResidual) { EXPECT_LE(sigma_residual(ladder(1.0).at(1.0), -2.0, 6.0), 1e-6); }

TEST(UOne, InstantonPartAtFour) {
    const double x = 4.0;
    const AiryPair a = airy(x);
    const double d = ladder(1.0).at(1.0).u(x) - a.ai_prime / a.ai;
    const double expect = -instanton(x) / (64.0 * std::numbers::pi * std::pow(x, 2.5));
    EXPECT_NEAR(d / expect, 1.0, 0.25);
}

TEST(UTwo, LargeXExpansion) {
    const double x = 8.0;
    const double expect = -2.0 * std::sqrt(x) - 1.0 / x + 17.0 / (16.0 * std::pow(x, 2.5));
    EXPECT_NEAR(ladder(1.0).at(2.0).u(x), expect, 1e-3);
}

TEST(UTwo, InstantonPartAtFour) {
    const double x = 4.0;
    const double d = (ladder(0.5).at(2.0).u(x) - ladder(1.0).at(2.0).u(x)) / (0.5 - 1.0);
    EXPECT_NEAR(d * 256.0 * std::numbers::pi * std::pow(x, 4) / instanton(x), 1.0, 0.25);
}

TEST(UTwo, SigmaResidual) { EXPECT_LE(sigma_residual(ladder(1.0).at(2.0), 0.0, 6.0), 1e-6); }

TEST(UTwo, RejectsZeroParameter) {
    EXPECT_THROW(u_two(sigma0_from_q0(solve_q0(0.0, -8.0))), std::domain_error);
}

TEST(UHalf, LargeXForms) {
    const double x = 8.0;
    EXPECT_NEAR(ladder(1.0).at(0.5).u(x) + std::sqrt(x) / 2.0, 0.0, 1e-3);
    EXPECT_NEAR(ladder(1.0).at(-0.5).u(x) - std::sqrt(x) / 2.0, 0.0, 1e-3);
}

TEST(UHalf, OscillatoryEnvelopeForHalf) {
    const double xi = 0.5;
    const TranscendentSolution sol = solve_q0(xi, -32.0);
    const HalfPair hp = u_half_pair(sol);
    double mean = 0.0;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double X = 29.0 + 2.0 * i / (n - 1.0);
        mean += -hp.plus.u(X / cbrt2) / cbrt2 + X * X / 8.0;
    }
    mean /= n;
    const double amp = std::fabs(std::log(1.0 - xi)) * std::sqrt(30.0) / (2.0 * std::numbers::pi);
    EXPECT_NEAR(mean / amp, 1.0, 0.10);
}

TEST(UHalf, SigmaResidual) { EXPECT_LE(sigma_residual(ladder(1.0).at(0.5), -2.0, 4.0), 1e-6); }

TEST(UHalf, DifferenceIsScaledTranscendent) {
    for (double xi : {0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        double worst = 0.0;
        for (double x = -6.0; x <= 6.0; x += 0.25) {
            const double d = ladder(xi).at(0.5).u(x) - ladder(xi).at(-0.5).u(x);
            worst = std::max(worst, std::fabs(d + cbrt2 * sol.q(-cbrt2 * x)));
        }
        EXPECT_LE(worst, 1e-8) << "xi=" << xi;
    }
}

TEST(Recurrence, UnitParameterNoughtInstance) {
    const SigmaLadder& l = ladder(1.0);
    EXPECT_LE(adpi_mu0_residual(l.at(0.0), l.at(1.0), l.at(2.0), 0.0, 6.0), 1e-7);
}

TEST(Recurrence, ThirdMemberSigmaResidual) {
    EXPECT_LE(sigma_residual(ladder(1.0).at(3.0), 0.0, 6.0), 1e-6);
    for (auto& [mu, u] : ladder(1.0).members)
        if (mu >= 1.0 && mu <= 3.0) EXPECT_LE(sigma_residual(u, 0.0, 6.0), 1e-6) << "mu=" << mu;
}

TEST(Recurrence, ThirdMemberLeadingTerm) {
    const double x = 12.0;
    EXPECT_NEAR(ladder(1.0).at(3.0).u(x) / (-3.0 * std::sqrt(x)), 1.0, 0.02);
}

TEST(Recurrence, ProvenanceTags) {
    const SigmaLadder& l = ladder(1.0);
    EXPECT_EQ(l.provenance(3.0).rfind("recurrence", 0), 0u);
    EXPECT_EQ(l.provenance(1.0).rfind("direct", 0), 0u);
    EXPECT_THROW(l.at(7.0), std::out_of_range);
}

TEST(AsymptoticForm, SimpleValues) {
    EXPECT_EQ(asym_u_mu_xistar(9.0, 0.0), 0.0);
    const double x = 8.0;
    EXPECT_DOUBLE_EQ(asym_u_mu_xistar(x, 1.0), -std::sqrt(8.0) - 1.0 / 32.0 + 5.0 / (32.0 * std::pow(8.0, 2.5)));
    EXPECT_NEAR(asym_u_mu_xistar(x, 2.0), ladder(1.0).at(2.0).u(x), 1e-3);
    EXPECT_THROW(asym_u_mu_xistar(2.0, 1.0), std::domain_error);
}
