#pragma once

#include <cmath>
#include <complex>

#include "hecke/errors.hpp"

namespace hecke {

using cplx = std::complex<double>;

/// Gamma(z) on C (poles excepted) via the Lanczos approximation (g = 7),
/// reflection formula for Re(z) < 1/2. Relative accuracy ~1e-13 in the
/// region used here; validated against the series route for V_1.
inline cplx gamma_complex(cplx z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    cplx a = coef[0];
    for (int i = 1; i < 9; ++i) a += coef[i] / (z + cplx(static_cast<double>(i), 0.0));
    cplx t = z + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

} // namespace hecke
