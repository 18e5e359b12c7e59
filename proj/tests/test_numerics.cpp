#include "doctest.h"

#include <random>

#include "hecke/chars.hpp"
#include "hecke/kernels.hpp"
#include "hecke/zeta.hpp"

using namespace hecke;

TEST_CASE("complex gamma") {
    CHECK(gamma_complex(cplx(0.5, 0)).real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(gamma_complex(cplx(1, 0)).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_complex(cplx(5, 0)).real() == doctest::Approx(24.0).epsilon(1e-13));
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (double y : {0.3, 1.0, 2.5, 7.0}) {
        double lhs = std::norm(gamma_complex(cplx(0.5, y)));
        CHECK(lhs == doctest::Approx(M_PI / std::cosh(M_PI * y)).epsilon(1e-12));
    }
    // functional equation Gamma(z+1) = z Gamma(z) across the reflection split
    for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.7), cplx(0.1, -2.0)}) {
        cplx lhs = gamma_complex(z + 1.0);
        cplx rhs = z * gamma_complex(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("zeta and beta") {
    CHECK(riemann_zeta(cplx(2, 0)).real() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
    CHECK(dirichlet_beta(cplx(2, 0)).real() == doctest::Approx(0.9159655941772190).epsilon(1e-14));
    CHECK(zeta_K(cplx(2, 0)).real() == doctest::Approx(1.5067030099229850).epsilon(1e-12));
    CHECK_THROWS_AS(zeta_K(cplx(1, 0)), DomainError);
    CHECK_THROWS_AS(zeta_K(cplx(0.4, 0)), DomainError);

    // residue: (s-1) zeta_K(s) -> pi/4
    cplx s(1.0 + 1e-4, 0.0);
    CHECK(((s - 1.0) * zeta_K(s)).real() == doctest::Approx(M_PI / 4).epsilon(1e-3));
}

TEST_CASE("zeta_K matches the direct ideal sum") {
    for (double s : {2.0, 3.0, 1.5}) {
        auto direct = zeta_K_ideal_sum(s, 10000);
        double closed = zeta_K(cplx(s, 0)).real();
        CHECK(std::abs(direct.partial - closed) <= direct.tail_estimate);
    }
    auto d2 = zeta_K_ideal_sum(2.0, 10000);
    CHECK(d2.tail_estimate < 1e-3);
    CHECK(d2.partial == doctest::Approx(1.5067030099229850).epsilon(1e-4));
}

TEST_CASE("V_1 quadrature vs series oracle") {
    const auto& k1 = smoothing_kernel(1);
    for (double t : {0.1, 1.0, 5.0}) {
        double series = SmoothingKernel::series_j1(t);
        CHECK(std::abs(k1.value_by_quadrature(t) - series) < 1e-9);
        CHECK(std::abs(k1.value(t) - series) < 1e-9);
    }
}

TEST_CASE("V_j -> 1 as t -> 0") {
    CHECK(std::abs(smoothing_kernel(1).value(1e-6) - 1.0) < 1e-3);
    CHECK(std::abs(smoothing_kernel(2).value(1e-6) - 1.0) < 1e-2);
}

TEST_CASE("V_j decay envelope holds on the whole grid") {
    for (int j : {1, 2}) {
        const auto& k = smoothing_kernel(j);
        for (double t = 1e-6; t < 1150.0; t *= 1.18) {
            double env = SmoothingKernel::envelope(j, t);
            if (env < 1e-14) break;  // below the contour quadrature noise floor
            double v = std::abs(k.value_by_quadrature(t));
            CHECK(v <= env);
        }
    }
}

TEST_CASE("interpolated kernel values match direct quadrature") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> logs(std::log(2e-7), std::log(900.0));
    for (int j : {1, 2}) {
        const auto& k = smoothing_kernel(j);
        for (int i = 0; i < 120; ++i) {
            double t = std::exp(logs(rng));
            CHECK(std::abs(k.value(t) - k.value_by_quadrature(t)) < 1e-9);
        }
    }
}

TEST_CASE("kernel quadrature is converged in (c, T, h)") {
    SmoothingKernel base(2);
    SmoothingKernel finer(2, KernelQuadrature{0.5, 60.0, 0.025});
    SmoothingKernel shifted(2, KernelQuadrature{0.75, 45.0, 0.04});
    for (double t : {1e-5, 1e-3, 0.1, 1.0, 3.0, 10.0, 40.0}) {
        double v = base.value_by_quadrature(t);
        CHECK(std::abs(v - finer.value_by_quadrature(t)) < 1e-8);
        CHECK(std::abs(v - shifted.value_by_quadrature(t)) < 1e-8);
    }
}

TEST_CASE("term-sum bounds dominate the sieve counts") {
    PrimaryTable table(300000);
    double c1 = 0, c2 = 0;
    for (size_t i = 0; i < table.points().size(); ++i) {
        c1 += 1.0;
        c2 += static_cast<double>(table.d2(i));
        double u = static_cast<double>(table.norms()[i]);
        CHECK(c1 <= afe_term_sum_bound(1, u));
        CHECK(c2 <= afe_term_sum_bound(2, u));
    }
    // and the bounds are not wildly loose at the top end
    double utop = 300000.0;
    CHECK(afe_term_sum_bound(1, utop) < 3.0 * c1);
    CHECK(afe_term_sum_bound(2, utop) < 3.0 * c2);
}

TEST_CASE("afe tail machinery") {
    for (int j : {1, 2}) {
        double D = (j == 1) ? 45.0 : 2000.0;
        double t1 = afe_tail_bound(j, D, 100.0 * D);
        double t2 = afe_tail_bound(j, D, 200.0 * D);
        CHECK(t2 < t1);
        i64 M = afe_cutoff(j, D, 1e-6, i64(1) << 40);
        CHECK(afe_tail_bound(j, D, static_cast<double>(M)) <= 1e-6);
    }
    CHECK_THROWS_AS(afe_cutoff(2, 1e6, 1e-12, 100000), ToleranceError);
}

TEST_CASE("tail bound dominates the literal discarded sum") {
    PrimaryTable table(2000000);
    const auto& k2 = smoothing_kernel(2);
    double D = 300.0;
    i64 M = 60 * 300;
    double discarded = 0.0;
    for (size_t i = table.prefix_count(M); i < table.points().size(); ++i) {
        double N = static_cast<double>(table.norms()[i]);
        discarded += 2.0 * static_cast<double>(table.d2(i)) / std::sqrt(N) * std::abs(k2.value(N / D));
    }
    CHECK(discarded <= afe_tail_bound(2, D, static_cast<double>(M)));
    CHECK(afe_tail_bound(2, D, static_cast<double>(M)) < 1e5 * discarded + 1e-30);
}
