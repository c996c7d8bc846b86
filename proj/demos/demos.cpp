// Small tour of the library: a few distribution values, one ladder member,
// a Fredholm cross-check and a finite-N comparison.

#include <cmath>
#include <cstdio>

#include "pii/distributions.hpp"
#include "pii/finite_n.hpp"
#include "pii/kernels.hpp"
#include "pii/ladder.hpp"
#include "pii/laxpair.hpp"

int main() {
    using namespace pii;
    std::printf("%6s %14s %14s %14s\n", "s", "E2", "E1", "E4");
    for (double s = -4.0; s <= 2.0; s += 1.0)
        std::printf("%6.1f %14.10f %14.10f %14.10f\n", s, e2_soft(s, 1.0), e1_soft(s), e4_soft(s));

    const TranscendentSolution& sol = cached_solution(1.0);
    std::printf("\nq0(0) = %.15f   q0'(0) = %.15f\n", sol.q(0.0), sol.q_prime(0.0));
    std::printf("E2(-2): Painleve %.12f   Fredholm %.12f\n", e2_soft(-2.0, sol), fredholm_e2(-2.0));

    const SigmaLadder l = build_ladder(sol);
    std::printf("u_1(8) = %.10f   large-x form %.10f\n", l.at(1.0).u(8.0), asym_u_mu_xistar(8.0, 1.0));

    LaxOptions con;
    con.normalization = LaxNormalization::connected;
    std::printf("perturbed beta=2 law at s=0: w=0 %.10f  w=1 %.10f\n", perturbed_cdf_beta2(0.0, 0.0, con),
                perturbed_cdf_beta2(0.0, 1.0, con));

    std::printf("Pr(h <= 80) at lambda=40: %.8f   (E2(0) = %.8f)\n", hammersley_cdf(80, 40.0), e2_soft(0.0, sol));
    std::printf("Pr(H_6 <= sqrt 12) = %.8f   (E1(0) = %.8f)\n", excursion_max_cdf(6, std::sqrt(12.0)), e1_soft(0.0));
    return 0;
}
