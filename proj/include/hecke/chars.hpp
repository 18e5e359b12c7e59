#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/gint.hpp"

namespace hecke {

namespace detail {

// (i/n) = (-1)^((1-a)/2) for primary n = a+bi
inline int supp_unit_i(const GInt& n) {
    i64 e = (1 - n.re) / 2;
    return (e & 1) ? -1 : 1;
}

// ((1+i)/n) = (-1)^((a-b-1-b^2)/4) for primary n = a+bi
inline int supp_one_plus_i(const GInt& n) {
    i128 num = i128(n.re) - n.im - 1 - i128(n.im) * n.im;
    if (num % 4 != 0)
        throw DomainError("supplementary-law exponent not integral (non-primary modulus?)");
    i128 e = num / 4;
    return (e & 1) ? -1 : 1;
}

} // namespace detail

/// Quadratic residue symbol (a/n) for odd n != 0, values in {-1, 0, 1}.
/// Binary-Jacobi style: reduce mod n, strip (1+i)-powers and units using the
/// supplementary laws, flip via reciprocity between primary elements, stop at
/// unit modulus.
inline int residue_symbol(GInt a, GInt n) {
    if (n.is_zero() || !n.is_odd()) throw DomainError("residue symbol needs an odd nonzero modulus");
    if (n.is_unit()) return 1;  // ( . / c ) = 1 for units c
    n = primary_associate(n).primary;
    int s = 1;
    while (true) {
        a = mod(a, n);
        if (n.is_one()) return s;
        if (a.is_zero()) return 0;
        while (!a.is_odd()) {
            a = divrem(a, kOnePlusI).quot;
            s *= detail::supp_one_plus_i(n);
        }
        auto [u, ap] = primary_associate(a);
        if (u == kI || u == -kI) s *= detail::supp_unit_i(n);  // (-1/n) = 1, (-i/n) = (i/n)
        // (ap/n) = (n/ap) for coprime primary pairs; a common factor
        // surfaces later as a zero remainder.
        a = n;
        n = ap;
    }
}

/// Euler-criterion symbol a^((N(pi)-1)/2) mod pi at an odd Gaussian prime.
/// Independent oracle for residue_symbol. Rejects detectably composite moduli.
inline int residue_symbol_euler(const GInt& a, const GInt& pi) {
    if (pi.is_zero() || !pi.is_odd()) throw DomainError("euler symbol needs an odd prime modulus");
    i64 N = pi.norm();
    // certify primality of the ideal (pi): N prime, or N = p^2 with pi ~ p = 3 mod 4
    auto is_rational_prime = [](i64 v) {
        if (v < 2) return false;
        for (i64 d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    };
    if (!is_rational_prime(N)) {
        i64 r = isqrt_floor(N);
        bool inert = (r * r == N) && is_rational_prime(r) && (r % 4 == 3) && divides(pi, GInt{r, 0} * GInt{r, 0}) && divides(GInt{r, 0}, pi);
        if (!inert) throw DomainError("euler symbol modulus is composite");
    }
    if (mod(a, pi).is_zero()) return 0;
    i64 e = (N - 1) / 2;
    GInt base = mod(a, pi);
    GInt r{1, 0};
    while (e > 0) {
        if (e & 1) r = mod(r * base, pi);
        base = mod(base * base, pi);
        e >>= 1;
    }
    if (mod(r - kOne, pi).is_zero()) return 1;
    if (mod(r + kOne, pi).is_zero()) return -1;
    throw DomainError("euler criterion did not give +-1 (composite modulus)");
}

/// The primitive quadratic Hecke character chi_{(1+i)^5 d} of modulus
/// (1+i)^5 d and trivial infinite type, for odd square-free d.
class QuadChar {
public:
    explicit QuadChar(const GInt& d) : d_(d) {
        if (d.is_zero() || !d.is_odd()) throw DomainError("character parameter d must be odd");
        if (!factor(d).squarefree()) throw DomainError("character parameter d must be square-free");
    }

    const GInt& d() const { return d_; }

    GInt modulus() const {
        GInt m = d_;
        for (int i = 0; i < 5; ++i) m = m * kOnePlusI;
        return m;
    }

    i64 conductor_norm() const { return 32 * d_.norm(); }

    /// chi(n) = ((1+i)^5 d / n) for odd n, 0 for even n.
    int operator()(const GInt& n) const {
        if (n.is_zero() || !n.is_odd()) return 0;
        int s1 = residue_symbol(kOnePlusI, n);  // ((1+i)/n)^5 = ((1+i)/n)
        int s2 = residue_symbol(d_, n);
        return s1 * s2;
    }

private:
    GInt d_;
};

// ---------------------------------------------------------------------------
// PrimaryTable: immutable index of all primary elements with N(n) <= maxnorm,
// in (norm, re, im) order, with smallest-prime-factor links. Built once,
// shared read-only across workers; per-character tables extend the values at
// primes by total multiplicativity in one linear pass.
// ---------------------------------------------------------------------------

class PrimaryTable {
public:
    explicit PrimaryTable(i64 maxnorm) : maxnorm_(maxnorm), R_(isqrt_floor(maxnorm)), side_(2 * R_ + 1) {
        for (i64 a = -R_; a <= R_; ++a)
            for (i64 b = -R_; b <= R_; ++b)
                if (a * a + b * b <= maxnorm && a * a + b * b > 0 && is_primary(GInt{a, b}))
                    points_.push_back(GInt{a, b});
        std::sort(points_.begin(), points_.end(), norm_less);

        norms_.resize(points_.size());
        index_grid_.assign(static_cast<size_t>(side_) * side_, -1);
        for (size_t i = 0; i < points_.size(); ++i) {
            norms_[i] = points_[i].norm();
            index_grid_[grid_slot(points_[i])] = static_cast<std::int32_t>(i);
        }

        primes_ = primary_primes(maxnorm);
        spf_.assign(points_.size(), -1);
        quot_.assign(points_.size(), -1);
        for (std::int32_t pi_idx = 0; pi_idx < static_cast<std::int32_t>(primes_.size()); ++pi_idx) {
            const GInt& pi = primes_[pi_idx];
            i64 bound = maxnorm / pi.norm();
            size_t mcount = prefix_count(bound);
            for (size_t mi = 0; mi < mcount; ++mi) {
                GInt z = points_[mi] * pi;
                std::int32_t zi = index_of(z);
                if (spf_[static_cast<size_t>(zi)] < 0) {
                    spf_[static_cast<size_t>(zi)] = pi_idx;
                    quot_[static_cast<size_t>(zi)] = static_cast<std::int32_t>(mi);
                }
            }
        }

        // d_{[i],2} by one ascending pass: with p = spf(n), e = mult_p(n),
        // d2(n) = (e+1) * d2(n / p^e).
        d2_.assign(points_.size(), 1);
        mult_.assign(points_.size(), 0);
        pfree_.assign(points_.size(), 0);
        for (size_t i = 1; i < points_.size(); ++i) {
            size_t q = static_cast<size_t>(quot_[i]);
            if (spf_[q] == spf_[i]) {
                mult_[i] = static_cast<std::uint8_t>(mult_[q] + 1);
                pfree_[i] = pfree_[q];
            } else {
                mult_[i] = 1;
                pfree_[i] = static_cast<std::int32_t>(q);
            }
            d2_[i] = static_cast<std::uint32_t>((mult_[i] + 1) * d2_[static_cast<size_t>(pfree_[i])]);
        }
    }

    i64 maxnorm() const { return maxnorm_; }
    const std::vector<GInt>& points() const { return points_; }
    const std::vector<i64>& norms() const { return norms_; }
    const std::vector<GInt>& primes() const { return primes_; }

    /// Number of points with norm <= bound (points are norm-sorted).
    size_t prefix_count(i64 bound) const {
        return static_cast<size_t>(std::upper_bound(norms_.begin(), norms_.end(), bound) - norms_.begin());
    }

    std::int32_t index_of(const GInt& z) const {
        if (std::abs(z.re) > R_ || std::abs(z.im) > R_) return -1;
        return index_grid_[grid_slot(z)];
    }

    bool is_prime_index(size_t i) const {
        return spf_[i] >= 0 && primes_[static_cast<size_t>(spf_[i])] == points_[i];
    }

    i64 d2(size_t i) const { return d2_[i]; }

    /// d_{[i],j}(points[i]) for j >= 1.
    i64 divisor_j(size_t i, int j) const {
        if (j == 2) return d2_[i];
        i128 r = 1;
        size_t cur = i;
        while (cur != 0) {
            r *= binomial(mult_[cur] + j - 1, j - 1);
            if (r > i128(INT64_MAX)) throw OverflowError("divisor_j overflow");
            cur = static_cast<size_t>(pfree_[cur]);
        }
        return static_cast<i64>(r);
    }

    /// Values chi(n) for the first prefix_count(bound) points: evaluated at
    /// primes via the reciprocity loop, extended multiplicatively.
    std::vector<std::int8_t> chi_sieved(const QuadChar& chi, i64 bound) const {
        size_t count = prefix_count(std::min(bound, maxnorm_));
        std::vector<std::int8_t> val(count);
        std::vector<std::int8_t> chi_p(primes_.size());
        for (size_t k = 0; k < primes_.size(); ++k) {
            if (primes_[k].norm() > bound) break;
            chi_p[k] = static_cast<std::int8_t>(chi(primes_[k]));
        }
        if (count > 0) val[0] = 1;
        for (size_t i = 1; i < count; ++i)
            val[i] = static_cast<std::int8_t>(chi_p[static_cast<size_t>(spf_[i])] * val[static_cast<size_t>(quot_[i])]);
        return val;
    }

private:
    size_t grid_slot(const GInt& z) const {
        return static_cast<size_t>((z.re + R_) * side_ + (z.im + R_));
    }

    i64 maxnorm_;
    i64 R_;
    i64 side_;
    std::vector<GInt> points_;
    std::vector<i64> norms_;
    std::vector<GInt> primes_;
    std::vector<std::int32_t> index_grid_;
    std::vector<std::int32_t> spf_;
    std::vector<std::int32_t> quot_;
    std::vector<std::uint32_t> d2_;
    std::vector<std::uint8_t> mult_;
    std::vector<std::int32_t> pfree_;
};

} // namespace hecke
