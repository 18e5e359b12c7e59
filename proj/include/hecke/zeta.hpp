#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "hecke/arith.hpp"
#include "hecke/errors.hpp"
#include "hecke/gammafn.hpp"

namespace hecke {

namespace detail {

/// sum_{k>=0} (-1)^k a(k) accelerated Chebyshev-style (Cohen, Rodriguez
/// Villegas, Zagier). Error ~ (3+sqrt(8))^{-n}; terms need only mild
/// smoothness, which n^{-s} has for the moderate |Im s| used here.
inline cplx alternating_sum(const std::function<cplx(long)>& a, int n) {
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    cplx s = 0.0;
    for (long k = 0; k < n; ++k) {
        c = b - c;
        s += c * a(k);
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

inline int alternating_terms(cplx s) {
    return 48 + static_cast<int>(3.0 * std::abs(s.imag()));
}

} // namespace detail

/// Riemann zeta via the eta series, accelerated. Valid for Re(s) > 0, s != 1.
inline cplx riemann_zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw DomainError("zeta pole at s=1");
    cplx eta = detail::alternating_sum(
        [&](long k) { return std::pow(cplx(static_cast<double>(k + 1), 0.0), -s); },
        detail::alternating_terms(s));
    return eta / (1.0 - std::pow(cplx(2.0, 0.0), 1.0 - s));
}

/// Dirichlet beta = L(s, chi_{-4}), entire; same acceleration.
inline cplx dirichlet_beta(cplx s) {
    return detail::alternating_sum(
        [&](long k) { return std::pow(cplx(static_cast<double>(2 * k + 1), 0.0), -s); },
        detail::alternating_terms(s));
}

/// zeta_K(s) = zeta(s) * L(s, chi_{-4}) for the Gaussian field.
/// Contract: Re(s) > 1/2, s != 1.
inline cplx zeta_K(cplx s) {
    if (s.real() <= 0.5) throw DomainError("zeta_K requires Re(s) > 1/2");
    if (s == cplx(1.0, 0.0)) throw DomainError("zeta_K pole at s=1");
    return riemann_zeta(s) * dirichlet_beta(s);
}

/// Direct partial sum over ideals: sum_{(n), 0 < N(n) <= maxnorm} N(n)^{-s},
/// plus a crude tail estimate. Independent oracle for zeta_K at real s > 1.
struct IdealSumValue {
    double partial;
    double tail_estimate;
};

inline IdealSumValue zeta_K_ideal_sum(double s, i64 maxnorm) {
    if (s <= 1.0) throw DomainError("ideal sum needs s > 1");
    // each nonzero lattice point counted once; ideals = points / 4
    double sum = 0.0, comp = 0.0;
    i64 R = isqrt_floor(maxnorm);
    for (i64 a = -R; a <= R; ++a) {
        for (i64 b = -R; b <= R; ++b) {
            i64 N = a * a + b * b;
            if (N == 0 || N > maxnorm) continue;
            double term = std::pow(static_cast<double>(N), -s);
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    // #ideals(N<=u) ~ (pi/4)u, so the tail is about (pi/4) * maxnorm^{1-s}/(s-1)
    double tail = (M_PI / 4.0) * std::pow(static_cast<double>(maxnorm), 1.0 - s) / (s - 1.0) * 1.5;
    return {sum / 4.0, tail};
}

} // namespace hecke
