#pragma once

#include <cstdint>
#include <cstdlib>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "hecke/errors.hpp"

namespace hecke {

using i64 = std::int64_t;
using i128 = __int128;

namespace detail {

inline i64 to_i64_checked(i128 v, const char* ctx) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw OverflowError(std::string("integer overflow in ") + ctx);
    return static_cast<i64>(v);
}

// floor((2p + q) / (2q)) for q > 0: nearest integer to p/q, ties toward +inf.
inline i64 round_div(i128 p, i128 q) {
    i128 num = 2 * p + q;
    i128 den = 2 * q;
    i128 r = num / den;
    if (num % den != 0 && num < 0) r -= 1;
    return to_i64_checked(r, "round_div");
}

} // namespace detail

/// Exact Gaussian integer a+bi. All arithmetic is overflow-checked;
/// norms must stay below 2^63.
struct GInt {
    i64 re = 0;
    i64 im = 0;

    constexpr GInt() = default;
    constexpr GInt(i64 a, i64 b = 0) : re(a), im(b) {}

    friend constexpr bool operator==(const GInt&, const GInt&) = default;

    GInt operator-() const { return {-re, -im}; }

    GInt operator+(const GInt& w) const {
        i128 a = i128(re) + w.re, b = i128(im) + w.im;
        return {detail::to_i64_checked(a, "add"), detail::to_i64_checked(b, "add")};
    }
    GInt operator-(const GInt& w) const {
        i128 a = i128(re) - w.re, b = i128(im) - w.im;
        return {detail::to_i64_checked(a, "sub"), detail::to_i64_checked(b, "sub")};
    }
    GInt operator*(const GInt& w) const {
        i128 a = i128(re) * w.re - i128(im) * w.im;
        i128 b = i128(re) * w.im + i128(im) * w.re;
        return {detail::to_i64_checked(a, "mul"), detail::to_i64_checked(b, "mul")};
    }
    GInt& operator+=(const GInt& w) { return *this = *this + w; }
    GInt& operator-=(const GInt& w) { return *this = *this - w; }
    GInt& operator*=(const GInt& w) { return *this = *this * w; }

    GInt conj() const { return {re, -im}; }
    GInt times_i() const { return {-im, re}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }
    bool is_one() const { return re == 1 && im == 0; }

    /// N(a+bi) = a^2 + b^2, rejected if it does not fit in a signed 64-bit.
    i64 norm() const {
        i128 n = i128(re) * re + i128(im) * im;
        if (n > i128(INT64_MAX)) throw OverflowError("norm exceeds 2^63-1");
        return static_cast<i64>(n);
    }

    /// Odd means coprime to 1+i, i.e. odd norm.
    bool is_odd() const { return (norm() & 1) == 1; }
};

inline constexpr GInt kOne{1, 0};
inline constexpr GInt kI{0, 1};
inline constexpr GInt kOnePlusI{1, 1};
inline constexpr GInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

/// Euclidean division: a = q*b + r with N(r) <= N(b)/2. q is a/b with both
/// coordinates rounded to the nearest integer.
struct DivRem {
    GInt quot;
    GInt rem;
};

inline DivRem divrem(const GInt& a, const GInt& b) {
    if (b.is_zero()) throw DomainError("division by zero Gaussian integer");
    i128 n = i128(b.re) * b.re + i128(b.im) * b.im;
    i128 xr = i128(a.re) * b.re + i128(a.im) * b.im;  // a * conj(b)
    i128 xi = i128(a.im) * b.re - i128(a.re) * b.im;
    GInt q{detail::round_div(xr, n), detail::round_div(xi, n)};
    GInt r = a - q * b;
    return {q, r};
}

inline GInt mod(const GInt& a, const GInt& b) { return divrem(a, b).rem; }

inline bool divides(const GInt& b, const GInt& a) {
    return divrem(a, b).rem.is_zero();
}

/// n == 1 mod (1+i)^3, by the congruence characterization
/// a=1(4),b=0(4) or a=3(4),b=2(4).
inline bool is_primary(const GInt& n) {
    auto m4 = [](i64 v) { return ((v % 4) + 4) % 4; };
    i64 a = m4(n.re), b = m4(n.im);
    return (a == 1 && b == 0) || (a == 3 && b == 2);
}

/// For odd n != 0: the unique (unit, p) with p primary and n = unit * p.
struct PrimaryDecomp {
    GInt unit;
    GInt primary;
};

inline PrimaryDecomp primary_associate(const GInt& n) {
    if (n.is_zero() || !n.is_odd())
        throw DomainError("primary_associate requires an odd nonzero argument");
    for (const GInt& u : kUnits) {
        GInt p = n * u.conj();  // n / u
        if (is_primary(p)) return {u, p};
    }
    throw DomainError("no primary associate (unreachable for odd n)");
}

/// gcd normalized so that its odd part is primary; (1+i)-power factored in front.
/// gcd(a,0) = normalized a. Rejects (0,0).
inline GInt gcd(GInt a, GInt b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) undefined");
    while (!b.is_zero()) {
        GInt r = mod(a, b);
        a = b;
        b = r;
    }
    // a is some gcd; normalize: strip (1+i)^k, make the odd part primary.
    int k = 0;
    while (!a.is_odd()) {
        a = divrem(a, kOnePlusI).quot;
        ++k;
    }
    a = primary_associate(a).primary;
    for (int i = 0; i < k; ++i) a = a * kOnePlusI;
    return a;
}

inline bool coprime(const GInt& a, const GInt& b) {
    return gcd(a, b).is_unit();
}

// ---------------------------------------------------------------------------
// Text form: "a+bi" / "a-bi" with optional spaces, also "a", "bi", "i", "-i".
// Canonical printing uses the same grammar.
// ---------------------------------------------------------------------------

inline std::string to_string(const GInt& z) {
    if (z.re == 0 && z.im == 0) return "0";
    std::string s;
    if (z.re != 0) s += std::to_string(z.re);
    if (z.im != 0) {
        if (z.im > 0 && !s.empty()) s += "+";
        if (z.im == -1) s += "-";
        else if (z.im != 1) s += std::to_string(z.im);
        s += "i";
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const GInt& z) {
    return os << to_string(z);
}

/// Parse the grammar above. Throws DomainError on malformed input.
inline GInt parse_gint(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw DomainError("empty Gaussian integer literal");

    auto fail = [&] { throw DomainError("bad Gaussian integer literal: '" + std::string(text) + "'"); };

    // split into one or two signed terms
    size_t pos = 0;
    auto read_term = [&]() -> std::pair<i64, bool> {  // (coefficient, is_imaginary)
        i64 sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1;
            ++pos;
        }
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        bool imag = false;
        i64 mag;
        if (pos < s.size() && s[pos] == 'i') {
            imag = true;
            mag = (pos == start) ? 1 : 0;
            if (pos != start) {
                errno = 0;
                mag = std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10);
                if (errno != 0) fail();
            }
            ++pos;
        } else {
            if (pos == start) fail();
            errno = 0;
            mag = std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10);
            if (errno != 0) fail();
        }
        return {sign * mag, imag};
    };

    GInt out{0, 0};
    bool seen_re = false, seen_im = false;
    auto [c1, i1] = read_term();
    (i1 ? out.im : out.re) = c1;
    (i1 ? seen_im : seen_re) = true;
    if (pos < s.size()) {
        auto [c2, i2] = read_term();
        if (pos != s.size()) fail();
        if ((i2 && seen_im) || (!i2 && seen_re)) fail();
        (i2 ? out.im : out.re) = c2;
    }
    return out;
}

/// Deterministic total order by (norm, re, im).
inline bool norm_less(const GInt& x, const GInt& y) {
    i64 nx = x.norm(), ny = y.norm();
    if (nx != ny) return nx < ny;
    if (x.re != y.re) return x.re < y.re;
    return x.im < y.im;
}

} // namespace hecke
