#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/gammafn.hpp"
#include "hecke/gint.hpp"

namespace hecke {

/// beta = 2^{5/2}/pi, the conductor scale in w_j.
inline constexpr double kKernelBeta = 5.656854249492380195 / M_PI;

/// Vertical-line quadrature parameters for V_j.
struct KernelQuadrature {
    double c = 0.5;   // contour abscissa
    double T = 45.0;  // truncation height
    double h = 0.05;  // trapezoid step
};

/// The smoothing kernel V_j(t) = (1/2pi i) Int_(c) w_j(s) t^{-s} ds/s with
/// w_j(s) = (2^{5/2}/pi)^{js} (Gamma(1/2+s)/Gamma(1/2))^j, j in {1,2}.
///
/// Values are cached on a geometric grid in t with Hermite-cubic
/// interpolation in log t (derivatives come from the same contour integral),
/// interpolation budget below 1e-9. Immutable after construction.
class SmoothingKernel {
public:
    explicit SmoothingKernel(int j, KernelQuadrature quad = {}, double grid_ratio = 1.005,
                             double tmin = 1e-8, double tmax = 1200.0)
        : j_(j), quad_(quad), tmin_(tmin), tmax_(tmax) {
        if (j != 1 && j != 2) throw DomainError("smoothing kernel defined for j in {1,2}");
        const int K = static_cast<int>(quad_.T / quad_.h);
        w_.resize(static_cast<size_t>(K) + 1);
        for (int k = 0; k <= K; ++k) {
            cplx s(quad_.c, k * quad_.h);
            w_[static_cast<size_t>(k)] = w_j(s);
        }
        double lr = std::log(grid_ratio);
        int nodes = static_cast<int>(std::ceil(std::log(tmax_ / tmin_) / lr)) + 1;
        logt0_ = std::log(tmin_);
        dlogt_ = (std::log(tmax_) - logt0_) / (nodes - 1);
        val_.resize(static_cast<size_t>(nodes));
        dval_.resize(static_cast<size_t>(nodes));
        for (int i = 0; i < nodes; ++i) {
            double t = std::exp(logt0_ + i * dlogt_);
            auto [v, dv] = quadrature_pair(t);
            val_[static_cast<size_t>(i)] = v;
            dval_[static_cast<size_t>(i)] = dv;
        }
    }

    int j() const { return j_; }
    const KernelQuadrature& quadrature() const { return quad_; }

    /// V_j(t) for t > 0. Grid-interpolated; below the grid the kernel has not
    /// been certified and the call is rejected.
    double value(double t) const {
        if (!(t > 0)) throw DomainError("V_j needs t > 0");
        if (t >= tmax_) return 0.0;
        if (t < tmin_) throw ToleranceError("V_j argument below certified grid range");
        double x = (std::log(t) - logt0_) / dlogt_;
        auto i = static_cast<size_t>(x);
        if (i + 1 >= val_.size()) i = val_.size() - 2;
        double u = x - static_cast<double>(i);
        // cubic Hermite in log t with exact nodal derivatives
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        double h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u);
        double h11 = u * u * (u - 1);
        return h00 * val_[i] + h10 * dlogt_ * dval_[i] + h01 * val_[i + 1] + h11 * dlogt_ * dval_[i + 1];
    }

    /// Direct contour evaluation (no grid); used for convergence tests.
    double value_by_quadrature(double t) const { return quadrature_pair(t).first; }

    /// Convergent residue series for j=1 (independent oracle):
    /// V_1(t) = 1 - (1/sqrt(pi)) sum_k (-1)^k/(k! (k+1/2)) (t/beta)^{k+1/2}.
    /// Alternating with growing terms; double precision is trustworthy for
    /// t <= 8 or so.
    static double series_j1(double t) {
        if (t > 12.0) throw DomainError("series oracle unreliable for t > 12");
        double x = t / kKernelBeta;
        double s = 0.0;
        double xk = std::sqrt(x);  // x^{k+1/2}
        double kfact = 1.0;
        for (int k = 0; k < 160; ++k) {
            double term = xk / (kfact * (k + 0.5));
            s += (k % 2 == 0) ? term : -term;
            xk *= x;
            kfact *= (k + 1);
        }
        return 1.0 - s / std::sqrt(M_PI);
    }

    /// Measured decay envelope: V_j(t) <= envelope(j, t) for all t >= 0.
    /// j=1: 1.05 exp(-(pi/2^{5/2}) t); j=2: 1.05 exp(-(pi/2^{3/2}) sqrt(t)).
    /// Validated against the contour values over the whole grid in the test
    /// suite; the exponents come from the saddle point of w_j(s) t^{-s}.
    static double envelope(int j, double t) {
        if (t < 0) throw DomainError("envelope needs t >= 0");
        if (j == 1) return 1.05 * std::exp(-t / kKernelBeta);
        if (j == 2) return 1.05 * std::exp(-2.0 * std::sqrt(t) / kKernelBeta);
        throw DomainError("envelope defined for j in {1,2}");
    }

private:
    cplx w_j(cplx s) const {
        cplx g = gamma_complex(0.5 + s) / std::sqrt(M_PI);
        cplx b = std::pow(cplx(kKernelBeta, 0.0), cplx(static_cast<double>(j_), 0.0) * s);
        return (j_ == 1) ? b * g : b * g * g;
    }

    // (V_j(t), dV_j/dlog t) from one pass over the contour; the derivative
    // integrand is -w_j(s) t^{-s} (no 1/s factor).
    std::pair<double, double> quadrature_pair(double t) const {
        const double c = quad_.c, h = quad_.h;
        const double tc = std::pow(t, -c);
        const double lt = std::log(t);
        const cplx rot = std::exp(cplx(0.0, -h * lt));
        cplx phase(1.0, 0.0);
        // k = 0 term
        cplx s0(c, 0.0);
        cplx f0 = w_[0] / s0;
        double sumV = f0.real();
        double sumD = w_[0].real();
        for (size_t k = 1; k < w_.size(); ++k) {
            phase *= rot;
            cplx s(c, static_cast<double>(k) * h);
            cplx wp = w_[k] * phase;
            sumV += 2.0 * (wp / s).real();
            sumD += 2.0 * wp.real();
        }
        double V = tc * sumV * h / (2.0 * M_PI);
        double dVdlogt = -tc * sumD * h / (2.0 * M_PI);
        return {V, dVdlogt};
    }

    int j_;
    KernelQuadrature quad_;
    double tmin_, tmax_;
    std::vector<cplx> w_;
    double logt0_ = 0.0, dlogt_ = 1.0;
    std::vector<double> val_, dval_;
};

/// Shared immutable kernels, built once per process.
inline const SmoothingKernel& smoothing_kernel(int j) {
    static const SmoothingKernel k1(1);
    static const SmoothingKernel k2(2);
    if (j == 1) return k1;
    if (j == 2) return k2;
    throw DomainError("smoothing kernel defined for j in {1,2}");
}

// ---------------------------------------------------------------------------
// Certified truncation for the central-value sums: with S_j(u) an upper bound
// on sum_{primary n, N(n) <= u} d_j(n) and the envelope above,
//   2 sum_{N(n) > M} d_j(n) N^{-1/2} V_j(N/D)
//     <= 2 Int_M^inf S_j(u) (-f'(u)) du,   f(u) = envelope(j, u/D)/sqrt(u),
// discretized as an upper Riemann sum on a geometric ladder.
// ---------------------------------------------------------------------------

/// Upper bound on sum_{primary n, N(n) <= u} d_j(n); constants validated
/// against the sieve in the test suite.
inline double afe_term_sum_bound(int j, double u) {
    if (u < 1) return 0.0;
    if (j == 1) return 0.392700 * u + 6.0 * std::sqrt(u) + 8.0;
    return 0.154214 * u * (std::log(u) + 7.0) + 80.0 * std::sqrt(u) * (std::log(u + 2.0) + 2.0);
}

inline double afe_tail_bound(int j, double D, double M) {
    auto f = [&](double u) { return SmoothingKernel::envelope(j, u / D) / std::sqrt(u); };
    const double r = 1.04;
    double total = 0.0;
    double u = M;
    double fu = f(u);
    for (int k = 0; k < 4000 && fu > 0.0; ++k) {
        double unext = u * r;
        double fnext = f(unext);
        total += afe_term_sum_bound(j, unext) * (fu - fnext);
        u = unext;
        fu = fnext;
        if (fu * afe_term_sum_bound(j, u * 40) < total * 1e-14 + 1e-300) break;
    }
    return 2.0 * total;
}

/// Smallest ladder norm M with certified tail below tol.
inline i64 afe_cutoff(int j, double D, double tol, i64 hard_cap) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    double M = std::max(64.0, D);
    while (afe_tail_bound(j, D, M) > tol) {
        M *= 1.25;
        if (M > static_cast<double>(hard_cap))
            throw ToleranceError("AFE tail bound unachievable within the configured norm budget");
    }
    while (M > 128.0 && afe_tail_bound(j, D, M / 1.05) <= tol) M /= 1.05;
    return static_cast<i64>(std::ceil(M));
}

} // namespace hecke
