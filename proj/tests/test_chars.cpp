#include "doctest.h"

#include <random>

#include "hecke/chars.hpp"

using namespace hecke;

namespace {

std::vector<GInt> odd_elements_box(i64 maxnorm) {
    std::vector<GInt> out;
    i64 R = isqrt_floor(maxnorm);
    for (i64 a = -R; a <= R; ++a)
        for (i64 b = -R; b <= R; ++b) {
            GInt n{a, b};
            if (!n.is_zero() && a * a + b * b <= maxnorm && n.is_odd()) out.push_back(n);
        }
    return out;
}

} // namespace

TEST_CASE("residue symbol examples") {
    CHECK(residue_symbol(kI, GInt{-1, -2}) == -1);
    CHECK(residue_symbol(kOnePlusI, GInt{-1, -2}) == -1);
    CHECK(residue_symbol(GInt{-3, 0}, GInt{-1, -2}) == -1);
    CHECK(residue_symbol(GInt{-1, -2}, GInt{-3, 0}) == -1);
    for (const GInt& n : {GInt{7, 0}, GInt{-3, 0}, GInt{4, 1}, GInt{-5, -2}})
        CHECK(residue_symbol(kOne, n) == 1);
    CHECK_THROWS_AS(residue_symbol(GInt{3, 0}, GInt{2, 0}), DomainError);
    CHECK_THROWS_AS(residue_symbol(GInt{3, 0}, GInt{0, 0}), DomainError);
    // unit modulus
    CHECK(residue_symbol(GInt{5, 2}, kI) == 1);
}

TEST_CASE("euler criterion examples") {
    CHECK(residue_symbol_euler(kI, GInt{-1, -2}) == -1);
    CHECK(residue_symbol_euler(GInt{-1, -2} * GInt{4, 1}, GInt{-1, -2}) == 0);
    CHECK(residue_symbol_euler(GInt{2, 0}, GInt{-3, 0}) == 1);
    CHECK_THROWS_AS(residue_symbol_euler(kI, GInt{3, 2} * GInt{-1, 2}), DomainError);
}

TEST_CASE("oracle equivalence on random (a, prime) pairs") {
    auto primes = primary_primes(10000);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<i64> dist(-300, 300);
    for (int t = 0; t < 4000; ++t) {
        GInt a{dist(rng), dist(rng)};
        if (a.is_zero()) continue;
        GInt pi = primes[pick(rng)];
        CHECK(residue_symbol(a, pi) == residue_symbol_euler(a, pi));
    }
}

TEST_CASE("reciprocity on random coprime primary pairs") {
    auto odds = odd_elements_box(900);
    std::vector<GInt> prim;
    for (const GInt& n : odds)
        if (is_primary(n) && !n.is_one()) prim.push_back(n);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<size_t> pick(0, prim.size() - 1);
    int done = 0;
    while (done < 1000) {
        GInt m = prim[pick(rng)], n = prim[pick(rng)];
        if (!coprime(m, n)) continue;
        CHECK(residue_symbol(m, n) == residue_symbol(n, m));
        ++done;
    }
}

TEST_CASE("complete multiplicativity") {
    auto odds = odd_elements_box(400);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<size_t> pick(0, odds.size() - 1);
    std::uniform_int_distribution<i64> dist(-40, 40);
    for (int t = 0; t < 2000; ++t) {
        GInt a{dist(rng), dist(rng)}, b{dist(rng), dist(rng)};
        GInt m = odds[pick(rng)], n = odds[pick(rng)];
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(residue_symbol(a * b, n) == residue_symbol(a, n) * residue_symbol(b, n));
        CHECK(residue_symbol(a, m * n) == residue_symbol(a, m) * residue_symbol(a, n));
    }
}

TEST_CASE("periodicity: (a/n) depends only on a mod n for coprime a") {
    std::mt19937_64 rng(11);
    auto odds = odd_elements_box(500);
    std::uniform_int_distribution<size_t> pick(0, odds.size() - 1);
    std::uniform_int_distribution<i64> dist(-25, 25);
    std::uniform_int_distribution<i64> kdist(-6, 6);
    for (int t = 0; t < 1500; ++t) {
        GInt n = odds[pick(rng)];
        GInt a{dist(rng), dist(rng)};
        if (n.is_unit() || a.is_zero() || !coprime(a, n)) continue;
        GInt k{kdist(rng), kdist(rng)};
        CHECK(residue_symbol(a + k * n, n) == residue_symbol(a, n));
    }
}

TEST_CASE("QuadChar construction and evaluation") {
    QuadChar chi1(kOne);
    CHECK(chi1.modulus().norm() == 32);
    CHECK(chi1.conductor_norm() == 32);
    CHECK(chi1(kOne) == 1);
    CHECK(chi1(kOnePlusI) == 0);
    CHECK(chi1(GInt{-1, -2}) == -1);

    QuadChar chi3(GInt{-3, 0});
    CHECK(chi3.conductor_norm() == 32 * 9);

    CHECK_THROWS_AS(QuadChar(GInt{9, 0}), DomainError);
    CHECK_THROWS_AS(QuadChar(GInt{1, 1}), DomainError);
    CHECK_THROWS_AS(QuadChar(GInt{0, 0}), DomainError);
}

TEST_CASE("character is quadratic: chi(n^2) = 1 when chi(n) != 0") {
    QuadChar chi(GInt{-1, 2});
    for (const GInt& n : odd_elements_box(700)) {
        if (chi(n) != 0) CHECK(chi(n * n) == 1);
        CHECK(chi(n) == chi(-n));  // (-1/n) = 1: unit multiples of d give equal characters pairwise
    }
}

TEST_CASE("chi_sieved agrees with pointwise chi") {
    PrimaryTable table(1000);
    QuadChar chi(GInt{-3, 0});
    auto vals = table.chi_sieved(chi, 1000);
    REQUIRE(vals.size() == table.prefix_count(1000));
    CHECK(vals[0] == 1);
    for (size_t i = 0; i < vals.size(); ++i) {
        const GInt& n = table.points()[i];
        CHECK(static_cast<int>(vals[i]) == chi(n));
        bool vanishes = !coprime(n, chi.d());
        CHECK((vals[i] == 0) == vanishes);
    }
}

TEST_CASE("PrimaryTable structure") {
    PrimaryTable table(2000);
    CHECK(table.points()[0] == kOne);
    // d2 on the table matches the factorization route
    for (size_t i = 0; i < table.prefix_count(500); ++i) {
        CHECK(table.d2(i) == divisor_k(table.points()[i], 2));
        CHECK(table.divisor_j(i, 1) == 1);
        CHECK(table.divisor_j(i, 3) == divisor_k(table.points()[i], 3));
    }
    // primes marked correctly
    size_t nprimes = 0;
    for (size_t i = 0; i < table.points().size(); ++i)
        if (table.is_prime_index(i)) ++nprimes;
    CHECK(nprimes == table.primes().size());
}
