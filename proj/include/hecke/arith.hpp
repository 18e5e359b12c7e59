#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hecke/gint.hpp"

namespace hecke {

inline i64 isqrt_floor(i64 n) {
    if (n < 0) throw DomainError("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// x^2 + y^2 = p for a rational prime p = 1 mod 4, by exhaustive search.
inline std::pair<i64, i64> sum_two_squares(i64 p) {
    for (i64 x = 1; x * x <= p; ++x) {
        i64 y2 = p - x * x;
        i64 y = isqrt_floor(y2);
        if (y * y == y2) return {x, y};
    }
    throw DomainError("no two-square representation (input not a prime = 1 mod 4?)");
}

/// unit * (1+i)^e2 * prod primes[i]^mult[i], primes primary, pairwise
/// non-associate, sorted by (norm, re, im).
struct PrimaryFactorization {
    GInt unit{1, 0};
    int e2 = 0;
    std::vector<std::pair<GInt, int>> primes;

    GInt reconstruct() const {
        GInt v = unit;
        for (int i = 0; i < e2; ++i) v = v * kOnePlusI;
        for (const auto& [p, m] : primes)
            for (int i = 0; i < m; ++i) v = v * p;
        return v;
    }

    bool squarefree() const {
        if (e2 >= 2) return false;
        for (const auto& [p, m] : primes)
            if (m >= 2) return false;
        return true;
    }
};

/// Factor n != 0. Primality of the factors is certified by trial division of
/// N(n) up to its square root.
inline PrimaryFactorization factor(GInt n) {
    if (n.is_zero()) throw DomainError("factor(0)");
    PrimaryFactorization out;
    while (!n.is_odd()) {
        n = divrem(n, kOnePlusI).quot;
        ++out.e2;
    }
    i64 N = n.norm();
    i64 m = N;
    std::vector<i64> ps;
    for (i64 d = 3; d * d <= m; d += 2) {
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) ps.push_back(m);

    for (i64 p : ps) {
        if (p % 4 == 3) {
            GInt pi = primary_associate(GInt{p, 0}).primary;
            int mult = 0;
            while (true) {
                auto [q, r] = divrem(n, pi);
                if (!r.is_zero()) break;
                n = q;
                ++mult;
            }
            if (mult > 0) out.primes.push_back({pi, mult});
        } else {
            auto [x, y] = sum_two_squares(p);
            for (const GInt& w : {GInt{x, y}, GInt{x, -y}}) {
                GInt pi = primary_associate(w).primary;
                int mult = 0;
                while (true) {
                    auto [q, r] = divrem(n, pi);
                    if (!r.is_zero()) break;
                    n = q;
                    ++mult;
                }
                if (mult > 0) out.primes.push_back({pi, mult});
            }
        }
    }
    if (!n.is_unit()) throw DomainError("factorization did not terminate at a unit");
    out.unit = n;
    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return norm_less(a.first, b.first); });
    return out;
}

inline bool is_squarefree_odd(const GInt& n) {
    if (n.is_zero() || !n.is_odd()) return false;
    return factor(n).squarefree();
}

// ---------------------------------------------------------------------------
// Arithmetic functions on ideals. All depend only on (n), never on the
// chosen generator.
// ---------------------------------------------------------------------------

inline i64 binomial(i64 n, i64 k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    i128 r = 1;
    for (i64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > i128(INT64_MAX)) throw OverflowError("binomial overflow");
    }
    return static_cast<i64>(r);
}

/// d_{[i],k}: coefficient of N(n)^{-s} in zeta_K(s)^k; C(m+k-1, k-1) at
/// prime-power ideals.
inline i64 divisor_k(const PrimaryFactorization& f, int k) {
    if (k < 1) throw DomainError("divisor_k requires k >= 1");
    i128 r = (f.e2 > 0) ? binomial(f.e2 + k - 1, k - 1) : 1;
    for (const auto& [p, m] : f.primes) {
        r *= binomial(m + k - 1, k - 1);
        if (r > i128(INT64_MAX)) throw OverflowError("divisor_k overflow");
    }
    return static_cast<i64>(r);
}
inline i64 divisor_k(const GInt& n, int k) { return divisor_k(factor(n), k); }

inline int moebius(const PrimaryFactorization& f) {
    if (!f.squarefree()) return 0;
    int cnt = static_cast<int>(f.primes.size()) + (f.e2 == 1 ? 1 : 0);
    return (cnt % 2 == 0) ? 1 : -1;
}
inline int moebius(const GInt& n) { return moebius(factor(n)); }

/// phi_{[i]}: size of (O_K/(n))^x.
inline i64 phi_ideal(const PrimaryFactorization& f) {
    i128 r = 1;
    if (f.e2 > 0) {
        i128 q = 1;
        for (int i = 0; i < f.e2 - 1; ++i) q *= 2;
        r = q;  // 2^e - 2^(e-1)
    }
    for (const auto& [p, m] : f.primes) {
        i128 N = p.norm();
        i128 q = N - 1;
        for (int i = 0; i < m - 1; ++i) q *= N;
        r *= q;
        if (r > i128(INT64_MAX)) throw OverflowError("phi overflow");
    }
    return static_cast<i64>(r);
}
inline i64 phi_ideal(const GInt& n) { return phi_ideal(factor(n)); }

/// Lambda_{[i]}: log N(pi) on prime powers, else 0.
inline double von_mangoldt(const PrimaryFactorization& f) {
    if (f.e2 > 0 && f.primes.empty()) return std::log(2.0);
    if (f.e2 == 0 && f.primes.size() == 1) return std::log(static_cast<double>(f.primes[0].first.norm()));
    return 0.0;
}
inline double von_mangoldt(const GInt& n) { return von_mangoldt(factor(n)); }

/// P(n) = prod_{odd pi | n} N(pi)/(N(pi)+1).
inline double local_product_P(const PrimaryFactorization& f) {
    double r = 1.0;
    for (const auto& [p, m] : f.primes) {
        double N = static_cast<double>(p.norm());
        r *= N / (N + 1.0);
    }
    return r;
}
inline double local_product_P(const GInt& n) { return local_product_P(factor(n)); }

// ---------------------------------------------------------------------------
// Gaussian primes
// ---------------------------------------------------------------------------

/// Rational primes up to n.
inline std::vector<i64> rational_primes(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(n + 1), false);
    for (i64 p = 2; p <= n; ++p) {
        if (comp[static_cast<size_t>(p)]) continue;
        out.push_back(p);
        for (i64 q = p * p; q <= n; q += p) comp[static_cast<size_t>(q)] = true;
    }
    return out;
}

/// Primary primes with N(pi) <= maxnorm, sorted by (norm, re, im). One entry
/// per odd prime ideal; the ramified prime 1+i is not included.
inline std::vector<GInt> primary_primes(i64 maxnorm) {
    std::vector<GInt> out;
    for (i64 p : rational_primes(maxnorm)) {
        if (p == 2) continue;
        if (p % 4 == 1) {
            auto [x, y] = sum_two_squares(p);
            out.push_back(primary_associate(GInt{x, y}).primary);
            out.push_back(primary_associate(GInt{x, -y}).primary);
        } else {
            if (p * p > maxnorm) continue;
            out.push_back(primary_associate(GInt{p, 0}).primary);
        }
    }
    std::sort(out.begin(), out.end(), norm_less);
    return out;
}

// ---------------------------------------------------------------------------
// Square-free sieve over the (a,b) grid: cross off multiples of pi^2 for all
// Gaussian primes with N(pi)^2 <= X. Single-threaded builder; the emitted
// stream may be partitioned across workers.
// ---------------------------------------------------------------------------

class SquarefreeOddSieve {
public:
    explicit SquarefreeOddSieve(i64 X) : X_(X), R_(isqrt_floor(X)), side_(2 * R_ + 1) {
        if (X < 1) throw DomainError("sieve bound must be >= 1");
        grid_.assign(static_cast<size_t>(side_) * side_, 1);
        // even points are not square-free candidates for this family (d odd)
        for (i64 a = -R_; a <= R_; ++a)
            for (i64 b = -R_; b <= R_; ++b)
                if (((a + b) & 1) == 0) at(a, b) = 0;
        // multiples of pi^2
        for (const GInt& pi : primary_primes(isqrt_floor(X))) {
            GInt q = pi * pi;
            i64 Nq = q.norm();
            i64 Rm = isqrt_floor(X / Nq);
            for (i64 ma = -Rm; ma <= Rm; ++ma) {
                for (i64 mb = -Rm; mb <= Rm; ++mb) {
                    if (ma * ma + mb * mb > X / Nq) continue;
                    GInt z = GInt{ma, mb} * q;
                    if (z.norm() <= X && std::abs(z.re) <= R_ && std::abs(z.im) <= R_)
                        at(z.re, z.im) = 0;
                }
            }
        }
        at(0, 0) = 0;
    }

    /// Primary square-free d with N(d) <= X, sorted by (norm, re, im).
    std::vector<GInt> primary_list() const {
        std::vector<GInt> out;
        for (i64 a = -R_; a <= R_; ++a)
            for (i64 b = -R_; b <= R_; ++b)
                if (a * a + b * b <= X_ && at(a, b) && is_primary(GInt{a, b}))
                    out.push_back(GInt{a, b});
        std::sort(out.begin(), out.end(), norm_less);
        return out;
    }

    /// All odd square-free elements: ideals in (norm, re, im) order of their
    /// primary generator, units within an ideal in order 1, i, -1, -i.
    std::vector<GInt> element_list() const {
        std::vector<GInt> out;
        for (const GInt& d : primary_list())
            for (const GInt& u : kUnits) out.push_back(d * u);
        return out;
    }

    bool contains(const GInt& d) const {
        if (d.norm() > X_) return false;
        return at(d.re, d.im) != 0;
    }

private:
    std::uint8_t& at(i64 a, i64 b) { return grid_[static_cast<size_t>((a + R_) * side_ + (b + R_))]; }
    const std::uint8_t& at(i64 a, i64 b) const { return grid_[static_cast<size_t>((a + R_) * side_ + (b + R_))]; }

    i64 X_;
    i64 R_;
    i64 side_;
    std::vector<std::uint8_t> grid_;
};

/// #{a in Z[i], a != 0 : N(a) <= x} = pi*x + O(x^theta)  (Gauss circle).
inline i64 norm_count(double x) {
    if (x < 1.0) throw DomainError("norm_count requires x >= 1");
    i64 X = static_cast<i64>(std::floor(x));
    i64 R = isqrt_floor(X);
    i64 total = 0;
    for (i64 a = -R; a <= R; ++a) total += 2 * isqrt_floor(X - a * a) + 1;
    return total - 1;
}

} // namespace hecke
