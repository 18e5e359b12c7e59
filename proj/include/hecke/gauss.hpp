#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/chars.hpp"
#include "hecke/gammafn.hpp"
#include "hecke/gint.hpp"
#include "hecke/parallel.hpp"

namespace hecke {

/// e~(z) = exp(2 pi i (z/(2i) - conj(z)/(2i))) = exp(2 pi i Im(z)).
inline cplx e_tilde(cplx z) {
    return std::exp(cplx(0.0, 2.0 * M_PI * z.imag()));
}

namespace detail {

/// Complete residue system mod n as the box {x + yi : 0 <= x < N/g,
/// 0 <= y < g}, g = gcd(|re|, |im|): row reduction of the lattice basis
/// {n, ni} puts (N/g, 0) and (c, g) in Hermite form.
struct ResidueBox {
    i64 width;   // N/g
    i64 height;  // g
    i64 N;
};

inline ResidueBox residue_box(const GInt& n) {
    if (n.is_zero()) throw DomainError("residue system of 0");
    i64 a = std::abs(n.re), b = std::abs(n.im);
    i64 g = std::gcd(a, b);
    i64 N = n.norm();
    return {N / g, g, N};
}

/// exp(2 pi i Im(r x / n)) with the phase computed exactly:
/// Im(r x conj(n)) mod N(n).
inline cplx e_tilde_ratio(const GInt& rx, const GInt& n, i64 N) {
    i128 im = i128(rx.im) * n.re - i128(rx.re) * n.im;  // Im(rx * conj(n))
    i64 k = static_cast<i64>(((im % N) + N) % N);
    double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(N);
    return {std::cos(ang), std::sin(ang)};
}

} // namespace detail

/// Exact value of the form coef * sqrt(rad).
struct ExactReal {
    i64 coef = 0;
    i64 rad = 1;
    double value() const { return static_cast<double>(coef) * std::sqrt(static_cast<double>(rad)); }
};

struct GaussSumValue {
    cplx value;
    std::optional<ExactReal> exact;
};

/// g(r, n) = sum_{x mod n} (x/n) e~(rx/n) by direct summation over a
/// fundamental box, odd n. Cost O(N(n) log N(n)).
inline GaussSumValue gauss_sum_direct(const GInt& r, const GInt& n, int workers = 1,
                                      i64 norm_budget = 2000000) {
    if (n.is_zero() || !n.is_odd()) throw DomainError("gauss sum needs an odd modulus");
    if (n.norm() > norm_budget) throw ToleranceError("gauss_sum_direct norm budget exceeded");
    auto box = detail::residue_box(n);
    GInt rr = mod(r, n);

    // prime-power moduli: (x/pi^l) = (x/pi)^l, tabulated over residues mod pi
    auto f = factor(n);
    bool prime_power = (f.primes.size() == 1);
    std::vector<std::int8_t> sym_table;
    detail::ResidueBox pbox{1, 1, 1};
    GInt pi{1, 0};
    int lpar = 0;
    if (prime_power) {
        pi = f.primes[0].first;
        lpar = f.primes[0].second % 2;
        pbox = detail::residue_box(pi);
        sym_table.resize(static_cast<size_t>(pbox.N));
        for (i64 x = 0; x < pbox.width; ++x)
            for (i64 y = 0; y < pbox.height; ++y)
                sym_table[static_cast<size_t>(x * pbox.height + y)] =
                    static_cast<std::int8_t>(residue_symbol_euler(GInt{x, y}, pi));
    }

    auto row_sum = [&](size_t xi) {
        i64 x = static_cast<i64>(xi);
        KahanSum re, im;
        for (i64 y = 0; y < box.height; ++y) {
            GInt z{x, y};
            int s;
            if (prime_power) {
                GInt zr = mod(z, pi);
                // canonical box coordinates of zr
                GInt c = zr;
                while (c.re < 0 || c.re >= pbox.width) c = (c.re < 0) ? c + GInt{pbox.width, 0} : c - GInt{pbox.width, 0};
                // reduce imaginary part using the second basis vector (c2, g)
                // simpler: walk y by repeated subtraction is wasteful; use mod again
                s = sym_table[static_cast<size_t>(box_index(c, pbox, pi))];
                if (s != 0 && lpar == 0) s = 1;
            } else {
                s = residue_symbol(z, n);
            }
            if (s == 0) continue;
            cplx term = detail::e_tilde_ratio(rr * z, n, box.N) * static_cast<double>(s);
            re.add(term.real());
            im.add(term.imag());
        }
        return cplx(re.value(), im.value());
    };

    std::vector<cplx> rows(static_cast<size_t>(box.width));
    parallel_for_index(rows.size(), workers, [&](size_t i) { rows[i] = row_sum(i); });
    KahanSum re, im;
    for (const cplx& v : rows) {
        re.add(v.real());
        im.add(v.imag());
    }
    return {cplx(re.value(), im.value()), std::nullopt};
}

namespace detail {
// canonical box index of a residue already reduced mod pi
inline i64 box_index(GInt c, const ResidueBox& pbox, const GInt& pi);
}

/// Closed form for g(k, pi^l), pi a primary prime, from the five-case table:
/// 0 (l <= h odd), phi(pi^l) (l <= h even), -N^{l-1} (l = h+1 even),
/// (i k pi^{-h} / pi) N^{l-1/2} (l = h+1 odd), 0 (l >= h+2); h = v_pi(k),
/// h = infinity for k = 0.
inline ExactReal gauss_sum_prime_power(const GInt& k, const GInt& pi, int l) {
    i64 N = pi.norm();
    int h;
    GInt kk = k;
    if (k.is_zero()) {
        h = l + 2;  // effectively infinite
    } else {
        h = 0;
        while (true) {
            auto [q, r] = divrem(kk, pi);
            if (!r.is_zero()) break;
            kk = q;
            ++h;
        }
    }
    auto powN = [&](int e) {
        i128 v = 1;
        for (int i = 0; i < e; ++i) {
            v *= N;
            if (v > i128(INT64_MAX)) throw OverflowError("prime power overflow in gauss sum");
        }
        return static_cast<i64>(v);
    };
    if (l <= h && l % 2 == 1) return {0, 1};
    if (l <= h && l % 2 == 0) return {powN(l) - powN(l - 1), 1};
    if (l == h + 1 && l % 2 == 0) return {-powN(l - 1), 1};
    if (l == h + 1 && l % 2 == 1) {
        int s = residue_symbol(kk.times_i(), pi);
        return {s * powN(l - 1), N};
    }
    return {0, 1};
}

/// g(k, n) for primary n via multiplicativity over the prime powers of n.
inline GaussSumValue gauss_sum_closed(const GInt& k, const GInt& n) {
    if (!is_primary(n)) throw DomainError("closed-form gauss sum needs a primary modulus");
    auto f = factor(n);
    ExactReal acc{1, 1};
    for (const auto& [pi, l] : f.primes) {
        ExactReal loc = gauss_sum_prime_power(k, pi, l);
        i128 c = i128(acc.coef) * loc.coef;
        i128 r = i128(acc.rad) * loc.rad;
        if (c > i128(INT64_MAX) || c < i128(INT64_MIN) || r > i128(INT64_MAX))
            throw OverflowError("gauss sum closed-form overflow");
        acc = {static_cast<i64>(c), static_cast<i64>(r)};
        if (acc.coef == 0) break;
    }
    return {cplx(acc.value(), 0.0), acc};
}

/// g(chi_{(1+i)^5 d}) by direct summation; equals sqrt(32 N(d)) for odd
/// square-free d.
inline GaussSumValue primitive_gauss_sum(const GInt& d, int workers = 1, i64 norm_budget = 10000000) {
    if (d.is_zero() || !d.is_odd()) throw DomainError("d must be odd");
    if (!factor(d).squarefree()) throw DomainError("d must be square-free");
    GInt q = d;
    for (int i = 0; i < 5; ++i) q = q * kOnePlusI;
    i64 N = q.norm();
    if (N > norm_budget) throw ToleranceError("primitive gauss sum norm budget exceeded");
    auto box = detail::residue_box(q);

    auto row_sum = [&](size_t xi) {
        i64 x = static_cast<i64>(xi);
        KahanSum re, im;
        for (i64 y = 0; y < box.height; ++y) {
            GInt z{x, y};
            if (!z.is_odd()) continue;  // chi_c(x) = 0 when (1+i) | x
            int s = residue_symbol(q, z);
            if (s == 0) continue;
            cplx term = detail::e_tilde_ratio(z, q, box.N) * static_cast<double>(s);
            re.add(term.real());
            im.add(term.imag());
        }
        return cplx(re.value(), im.value());
    };

    std::vector<cplx> rows(static_cast<size_t>(box.width));
    parallel_for_index(rows.size(), workers, [&](size_t i) { rows[i] = row_sum(i); });
    KahanSum re, im;
    for (const cplx& v : rows) {
        re.add(v.real());
        im.add(v.imag());
    }
    double expect = std::sqrt(32.0 * static_cast<double>(d.norm()));
    return {cplx(re.value(), im.value()),
            ExactReal{1, detail::to_i64_checked(i128(32) * d.norm(), "conductor norm")}};
    (void)expect;
}

// ---------------------------------------------------------------------------
// Smooth compact bump and its transform
//   W~(t) = 2 Int_0^{pi/2} Int_0^inf cos(2 pi t r^{1/2} sin theta) W(r) dr dtheta.
// ---------------------------------------------------------------------------

/// W(r) = exp(-1/(1-(2r-3)^2)) on (1,2), 0 elsewhere.
class BumpKernel {
public:
    double lo() const { return 1.0; }
    double hi() const { return 2.0; }
    double operator()(double r) const {
        double u = 2.0 * r - 3.0;
        double s = 1.0 - u * u;
        if (s <= 0.0) return 0.0;
        return std::exp(-1.0 / s);
    }
};

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
inline const double kGL16x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline const double kGL16w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16(const F& f, double a, double b) {
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        double dx = hw * kGL16x[i];
        s += kGL16w[i] * (f(c + dx) + f(c - dx));
    }
    return s * hw;
}

template <class F>
double composite_gl(const F& f, double a, double b, int panels) {
    double s = 0.0, w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) s += gl16(f, a + p * w, a + (p + 1) * w);
    return s;
}

} // namespace detail

inline double bump_integral(const BumpKernel& W, int panels = 12) {
    return detail::composite_gl([&](double r) { return W(r); }, W.lo(), W.hi(), panels);
}

/// W~(t) by tensor Gauss-Legendre panels; the r-axis oscillates with
/// frequency growing linearly in t, so panel counts scale with t.
/// Absolute error below 1e-8 over the ranges exercised here (validated by
/// panel doubling in the tests).
inline double w_transform(const BumpKernel& W, double t, int refine = 0) {
    if (t < 0) throw DomainError("w_transform needs t >= 0");
    int pr = 6 + static_cast<int>(std::ceil(0.6 * t)) + refine;
    int pth = 8 + static_cast<int>(std::ceil(1.6 * t)) + refine;
    auto outer = [&](double theta) {
        double st = std::sin(theta);
        auto inner = [&](double r) { return std::cos(2.0 * M_PI * t * std::sqrt(r) * st) * W(r); };
        return detail::composite_gl(inner, W.lo(), W.hi(), pr);
    };
    return 2.0 * detail::composite_gl(outer, 0.0, 0.5 * M_PI, pth);
}

/// Alternative evaluation through the Mellin form
///   W~(t) = (pi/2 pi i) Int_(c) W^(1-s) (pi t)^{-2s} Gamma(s)/Gamma(1-s) ds,
/// used as a cross-check at a few sample points.
inline double w_transform_mellin(const BumpKernel& W, double t, double c = 0.25, double T = 60.0,
                                 double h = 0.02) {
    if (t <= 0) throw DomainError("mellin form needs t > 0");
    auto mellin_w = [&](cplx s) {  // W^(1-s) = Int W(r) r^{-s} dr
        cplx acc = 0.0;
        int panels = 10;
        double w = (W.hi() - W.lo()) / panels;
        for (int p = 0; p < panels; ++p) {
            double a = W.lo() + p * w, b = a + w;
            double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
            for (int i = 0; i < 8; ++i) {
                double dx = hw * detail::kGL16x[i];
                for (double x : {mid + dx, mid - dx})
                    acc += detail::kGL16w[i] * hw * W(x) * std::pow(cplx(x, 0.0), -s);
            }
        }
        return acc;
    };
    KahanSum accr;
    for (double tau = -T; tau <= T; tau += h) {
        cplx s(c, tau);
        cplx integrand = mellin_w(s) * std::pow(cplx(M_PI * t, 0.0), -2.0 * s) * gamma_complex(s) /
                         gamma_complex(1.0 - s);
        accr.add(integrand.real());
    }
    // (pi / (2 pi i)) * (i h sum) = (h/2) sum
    return 0.5 * h * accr.value();
}

// ---------------------------------------------------------------------------
// Poisson summation checks (both formulas)
//   sum_{m in O_K}  (m/n) W(N(m)/X) = (X/N(n)) sum_k g(k,n) W~(sqrt(N(k)X/N(n)))
//   sum_{m odd}     (m/n) W(N(m)/X) = (X/2N(n)) ((1+i)/n) sum_k (-1)^{N(k)} g(k,n)
//                                                W~(sqrt(N(k)X/(2N(n))))
// ---------------------------------------------------------------------------

struct PoissonReport {
    double lhs_all = 0, rhs_all = 0;
    double lhs_odd = 0, rhs_odd = 0;
    double tail_all = 0, tail_odd = 0;
    i64 kmax = 0;
    double discrepancy_all() const { return std::abs(lhs_all - rhs_all); }
    double discrepancy_odd() const { return std::abs(lhs_odd - rhs_odd); }
};

inline PoissonReport poisson_check(const GInt& n, const BumpKernel& W, double X, i64 kmax,
                                   double tail_tol = 1e-6) {
    if (!is_primary(n)) throw DomainError("poisson check needs a primary modulus");
    PoissonReport rep;
    rep.kmax = kmax;
    double Nn = static_cast<double>(n.norm());

    // locally finite m-side
    {
        KahanSum all, odd;
        i64 hiN = static_cast<i64>(std::ceil(W.hi() * X));
        i64 R = isqrt_floor(hiN);
        for (i64 a = -R; a <= R; ++a) {
            for (i64 b = -R; b <= R; ++b) {
                GInt m{a, b};
                if (m.is_zero()) continue;
                double w = W(static_cast<double>(m.norm()) / X);
                if (w == 0.0) continue;
                int s = residue_symbol(m, n);
                if (s == 0) continue;
                all.add(s * w);
                if (m.is_odd()) odd.add(s * w);
            }
        }
        rep.lhs_all = all.value();
        rep.lhs_odd = odd.value();
    }

    // dual k-side, cached by N(k)
    std::map<i64, double> wt_all, wt_odd;
    auto wt = [&](std::map<i64, double>& cache, i64 Nk, double scale) {
        auto it = cache.find(Nk);
        if (it != cache.end()) return it->second;
        double v = w_transform(W, std::sqrt(static_cast<double>(Nk) * scale));
        cache[Nk] = v;
        return v;
    };
    double scale_all = X / Nn;
    double scale_odd = X / (2.0 * Nn);
    int supp_1pi = n.is_one() ? 1 : residue_symbol(kOnePlusI, n);

    KahanSum all, odd;
    i64 Rk = isqrt_floor(kmax);
    // fixed (norm, re, im) enumeration for a deterministic reduction
    std::vector<GInt> ks;
    for (i64 a = -Rk; a <= Rk; ++a)
        for (i64 b = -Rk; b <= Rk; ++b)
            if (a * a + b * b <= kmax) ks.push_back(GInt{a, b});
    std::sort(ks.begin(), ks.end(), norm_less);
    for (const GInt& k : ks) {
        double g = gauss_sum_closed(k, n).value.real();
        if (g != 0.0) {
            all.add(g * wt(wt_all, k.norm(), scale_all));
            double sign = ((k.re + k.im) & 1) ? 1.0 : -1.0;  // (-1)^{N(k)}, N(k) odd iff re+im odd
            odd.add(sign * g * wt(wt_odd, k.norm(), scale_odd));
        }
    }
    rep.rhs_all = scale_all * all.value();
    rep.rhs_odd = 0.5 * scale_odd * supp_1pi * odd.value();

    // tail estimate from the measured decay of W~ past the truncation edge
    auto tail_estimate = [&](double scale) {
        double t_edge = std::sqrt(static_cast<double>(kmax) * scale);
        double w1 = std::abs(w_transform(W, t_edge));
        double w2 = std::abs(w_transform(W, 1.3 * t_edge));
        double floor_v = 1e-17;
        double c_est = std::log(std::max(w1, floor_v) / std::max(w2, floor_v)) /
                       (std::sqrt(1.3 * t_edge) - std::sqrt(t_edge));
        c_est = std::max(0.5 * c_est, 0.1);  // conservative halving
        double A = 2.0 * std::max(w1, floor_v) * std::exp(c_est * std::sqrt(t_edge));
        // sum_{N(k) > kmax} |g| |W~| <= N(n) * sum ... with ~pi du lattice density
        double total = 0.0;
        double u = static_cast<double>(kmax);
        for (int i = 0; i < 2000; ++i) {
            double unext = u * 1.05;
            double tv = std::sqrt(u * scale);
            double env = A * std::exp(-c_est * std::sqrt(tv));
            total += env * M_PI * (unext - u);
            if (env * u < total * 1e-12) break;
            u = unext;
        }
        return Nn * scale * total;  // (X/N(n)) * N(n) * sum = X * sum
    };
    rep.tail_all = tail_estimate(scale_all);
    rep.tail_odd = 0.5 * tail_estimate(scale_odd);
    if (rep.tail_all > tail_tol || rep.tail_odd > tail_tol)
        throw ToleranceError("poisson truncation tail exceeds tolerance; raise kmax");
    return rep;
}

} // namespace hecke
