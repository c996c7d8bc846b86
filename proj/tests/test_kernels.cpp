#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pii/distributions.hpp"
#include "pii/kernels.hpp"
#include "pii/specfun.hpp"

using namespace pii;

TEST(AiryKernel, DiagonalAtOrigin) {
    const double aip0 = airy(0.0).ai_prime;
    EXPECT_DOUBLE_EQ(airy_kernel(0.0, 0.0, 0.0), aip0 * aip0);
    EXPECT_NEAR(airy_kernel(0.0, 0.0, 0.0), 0.0669874837796640, 1e-15);
}

TEST(AiryKernel, Symmetric) {
    EXPECT_EQ(airy_kernel(1.0, 2.0, 0.0), airy_kernel(2.0, 1.0, 0.0));
    EXPECT_NEAR(airy_kernel(-1.3, 0.4, 2.0), airy_kernel(0.4, -1.3, 2.0), 1e-17);
}

TEST(AiryKernel, ContinuousAcrossDiagonal) {
    for (double x : {-3.0, 0.0, 2.5}) {
        const double d = airy_kernel(x, x, 0.0);
        // The symmetric mean removes the first-order term in the offset.
        const double e = 1e-4;
        EXPECT_NEAR(0.5 * (airy_kernel(x, x + e, 0.0) + airy_kernel(x, x - e, 0.0)), d, 1e-8);
        // Series branch below offset 1e-2 meets the direct quotient above it;
        // the kernel slope is below 0.25 here, so a 2e-9 step moves it by < 5e-10.
        EXPECT_NEAR(airy_kernel(x, x + 0.01 - 1e-9, 0.0), airy_kernel(x, x + 0.01 + 1e-9, 0.0), 5e-10);
    }
}

TEST(AiryKernel, DiagonalTailMatchesClosedForm) {
    const double c = 5.0;
    const double tail = rho1_tail(0, c);
    EXPECT_NEAR(tail, rho1_tail0_closed(c), 1e-8);
    EXPECT_NEAR(tail / rho1_tail0_closed(c), 1.0, 1e-10);
}

TEST(AiryKernel, TwoPointCorrelationNonnegative) {
    for (double x = -3.0; x <= 3.0; x += 0.5)
        for (double y = -3.0; y <= 3.0; y += 0.7) {
            const double k = airy_kernel(x, y, 0.0);
            EXPECT_GE(airy_kernel(x, x, 0.0) * airy_kernel(y, y, 0.0) - k * k, -1e-10);
        }
}

TEST(K2Kernel, VanishesOnAxes) {
    for (double x : {0.0, 0.3, 1.7, 4.0}) EXPECT_NEAR(k2_kernel(x, 0.0, 1.0), 0.0, 1e-17);
    EXPECT_EQ(k2_kernel(0.0, 0.0, 0.0), 0.0);
}

TEST(K2Kernel, LargeShiftForm) {
    EXPECT_NEAR(k2_kernel(0.5, 0.5, 6.0) / k2_large_c(0.5, 0.5, 6.0), 1.0, 0.10);
}

TEST(Recurrence, ReproducesClosedK2) {
    const KernelEvaluator k0 = KernelEvaluator::airy(0.0);
    EXPECT_NEAR(k_even_recurrence(k0, 1.0, 2.0, 0.0), k2_kernel(1.0, 2.0, 0.0), 1e-12);
    for (double c : {0.0, 1.0, 3.0}) {
        const KernelEvaluator b = KernelEvaluator::airy(c);
        for (double x : {0.0, 0.5, 2.0})
            for (double y : {0.3, 1.0, 2.0})
                EXPECT_NEAR(k_even_recurrence(b, x, y, c), k2_kernel(x, y, c), 1e-12) << x << "," << y << "," << c;
    }
    EXPECT_THROW(k_even_recurrence(k0, 1.0, 2.0, 1.0), std::invalid_argument);
}

TEST(Recurrence, FourthKernelStructure) {
    const double c = 1.0;
    const KernelEvaluator k2 = KernelEvaluator::even(2, c);
    for (double x : {0.0, 0.4, 1.5, 3.0}) EXPECT_NEAR(k_even_recurrence(k2, x, 0.0, c), 0.0, 1e-14);
    EXPECT_NEAR(k_even_recurrence(k2, 0.3, 1.1, c), k_even_recurrence(k2, 1.1, 0.3, c), 1e-12);
    EXPECT_EQ(k2.next().mu(), 4);
    EXPECT_THROW(KernelEvaluator::even(3, c), std::invalid_argument);
}

TEST(Fredholm, ZeroParameterIsOne) {
    FredholmConfig cfg;
    cfg.xi = 0.0;
    EXPECT_EQ(fredholm_e2(-5.0, cfg), 1.0);
}

TEST(Fredholm, EmptyKernelRegime) { EXPECT_NEAR(fredholm_e2(10.0), 1.0, 1e-12); }

TEST(Fredholm, MatchesPainleveRoute) {
    const TranscendentSolution& sol = cached_solution(1.0);
    EXPECT_NEAR(fredholm_e2(-2.0), std::exp(-sol.int_u0(-2.0)), 1e-8);
    for (double xi : {0.25, 0.5}) {
        FredholmConfig cfg;
        cfg.xi = xi;
        for (double s = -8.0; s <= 4.0; s += 2.0) EXPECT_NEAR(fredholm_e2(s, cfg), e2_soft(s, xi), 1e-8) << s;
    }
}

TEST(Fredholm, StableUnderNodeDoubling) {
    auto k = [](double x, double y) { return airy_kernel(x, y, 0.0); };
    EXPECT_NEAR(nystrom_determinant(k, 0.0, 25.0, 1.0, 100), nystrom_determinant(k, 0.0, 25.0, 1.0, 200), 1e-10);
}

TEST(Fredholm, MonotoneInShiftAndParameter) {
    double prev = 0.0;
    for (double s = -6.0; s <= 3.0; s += 0.5) {
        const double v = fredholm_e2(s);
        EXPECT_GE(v, prev);
        prev = v;
    }
    FredholmConfig a, b;
    a.xi = 0.3;
    b.xi = 0.7;
    EXPECT_GT(fredholm_e2(-1.0, a), fredholm_e2(-1.0, b));
}

TEST(Fredholm, FirstOrderInParameter) {
    const double c = 5.0, xi = 0.1;
    FredholmConfig cfg;
    cfg.xi = xi;
    cfg.T = 25.0;
    const double tr0 = rho1_tail(0, c);
    const double det0 = fredholm_determinant([c](double x, double y) { return airy_kernel(x, y, c); }, 0.0, 25.0, cfg);
    EXPECT_LE(std::fabs(det0 - (1.0 - xi * tr0)), xi * xi * tr0);
    const double tr2 = rho1_tail(2, c);
    const double det2 = fredholm_determinant([c](double x, double y) { return k2_kernel(x, y, c); }, 0.0, 25.0, cfg);
    EXPECT_LE(std::fabs(det2 - (1.0 - xi * tr2)), xi * xi * tr2);
}

TEST(TailIntegral, UnshiftedDerivativeClosedForm) {
    for (double c : {2.0, 5.0, 8.0}) {
        const AiryPair a = airy(c);
        EXPECT_NEAR(-rho1_tail_dc(0, c), a.ai_prime * a.ai_prime - c * a.ai * a.ai, 1e-8);
        EXPECT_NEAR(-rho1_tail_dc(0, c) / (a.ai_prime * a.ai_prime - c * a.ai * a.ai), 1.0, 1e-10);
    }
}

TEST(TailIntegral, DerivativeMatchesDifference) {
    for (int mu : {0, 2}) {
        const double c = 2.0, h = 1e-3;
        const double fd = (rho1_tail(mu, c + h) - rho1_tail(mu, c - h)) / (2.0 * h);
        EXPECT_NEAR(rho1_tail_dc(mu, c) / fd, 1.0, 1e-5) << "mu=" << mu;
    }
}

TEST(TailIntegral, SecondKernelLargeShift) {
    EXPECT_NEAR(-rho1_tail_dc(2, 6.0) / rho1_tail2_large_c(6.0), 1.0, 0.15);
}

TEST(TailIntegral, DecaysForLargeShift) {
    EXPECT_LT(rho1_tail(0, 20.0), 1e-30);
    EXPECT_GT(rho1_tail(0, 20.0), 0.0);
    EXPECT_THROW(rho1_tail(1, 2.0), std::invalid_argument);
}

TEST(SecondOrderU0, ZeroParameter) { EXPECT_EQ(u0_second_order(5.0, 0.0), 0.0); }

TEST(SecondOrderU0, MatchesTransSeries) {
    EXPECT_NEAR(u0_second_order(5.0, 1.0) / transseries_u0(5.0, 1.0), 1.0, 1e-3);
}

TEST(SecondOrderU0, QuadraticInParameter) {
    const double c = 4.0, xi = 0.3;
    const double lin = airy_kernel(0.0, 0.0, c);
    const double quad = u0_second_order(c, 1.0) - lin;
    EXPECT_NEAR(u0_second_order(c, 2 * xi) - 2 * u0_second_order(c, xi), 2 * xi * xi * quad, 1e-15 * lin);
    EXPECT_NEAR(u0_second_order_literal(c, 1.0) - lin, -quad, 1e-15 * lin);
    EXPECT_THROW(u0_second_order(2.0, 1.0), std::domain_error);
}

TEST(SecondOrderU0, SignOfQuadraticTermAgainstSolver) {
    const double c = 5.0;
    const double ref = cached_solution(1.0).u0(c);
    EXPECT_LT(std::fabs(u0_second_order(c, 1.0) - ref), std::fabs(u0_second_order_literal(c, 1.0) - ref));
}
