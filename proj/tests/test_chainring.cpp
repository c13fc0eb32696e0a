#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "arithtop/chainring.hpp"
#include "doctest.h"

using namespace arithtop;

TEST_CASE("l=2 chain ring is Z/2^d with pi = -2") {
    const ChainRing R(2, 3);  // Z/8
    CHECK(R.digits(R.pi()) == std::vector<int>{0, 1, 0});
    CHECK(R.digits(R.mul(R.pi(), R.pi())) == std::vector<int>{0, 0, 1});  // pi^2 = 4
    CHECK(R.is_zero(R.add(R.from_int(3), R.from_int(5))));                // 3 + 5 = 0 mod 8
    CHECK(R.valuation(R.from_int(4)) == 2);
    CHECK(R.valuation(R.from_int(6)) == 1);
    CHECK(R.valuation(R.zero()) == 3);
}

TEST_CASE("l=3: pi^2 truncates at d=2 and (1+pi)^3 = 1") {
    const ChainRing R(3, 2);
    const auto pi = R.pi();
    CHECK(R.is_zero(R.mul(pi, pi)));
    const auto zeta = R.add(R.one(), pi);
    CHECK(R.equal(R.mul(R.mul(zeta, zeta), zeta), R.one()));
}

TEST_CASE("l=2 ops agree with plain modular arithmetic") {
    std::mt19937_64 rng(5150);
    for (int d = 1; d <= 6; ++d) {
        const ChainRing R(2, d);
        const i64 m = i64{1} << d;
        for (int trial = 0; trial < 300; ++trial) {
            const i64 x = static_cast<i64>(rng() % static_cast<unsigned long long>(m));
            const i64 y = static_cast<i64>(rng() % static_cast<unsigned long long>(m));
            CHECK(R.equal(R.add(R.from_int(x), R.from_int(y)), R.from_int((x + y) % m)));
            CHECK(R.equal(R.mul(R.from_int(x), R.from_int(y)), R.from_int(x * y % m)));
            CHECK(R.equal(R.neg(R.from_int(x)), R.from_int((m - x) % m)));
            // valuation = 2-adic valuation
            int v = 0;
            i64 xx = x;
            while (v < d && xx % 2 == 0) {
                if (xx == 0) {
                    v = d;
                    break;
                }
                xx /= 2;
                ++v;
            }
            CHECK(R.valuation(R.from_int(x)) == v);
        }
    }
}

TEST_CASE("digits round-trip") {
    for (int l : {2, 3, 5}) {
        for (int d : {1, 2, 3, 4}) {
            const ChainRing R(l, d);
            std::mt19937_64 rng(static_cast<unsigned>(100 * l + d));
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<int> digits;
                for (int k = 0; k < d; ++k) digits.push_back(static_cast<int>(rng() % static_cast<unsigned>(l)));
                CHECK(R.digits(R.from_digits(digits)) == digits);
            }
        }
    }
}

TEST_CASE("unit inverse") {
    for (int l : {2, 3, 5}) {
        const ChainRing R(l, 4);
        std::mt19937_64 rng(static_cast<unsigned>(l));
        for (int trial = 0; trial < 50; ++trial) {
            const i64 k = 1 + static_cast<i64>(rng() % 1000);
            const auto u = R.from_int(k);
            if (R.valuation(u) != 0) continue;
            CHECK(R.equal(R.mul(u, R.unit_inverse(u)), R.one()));
        }
        CHECK_THROWS_AS(R.unit_inverse(R.pi()), std::domain_error);
    }
}

TEST_CASE("snf basics") {
    const ChainRing R(2, 3);
    SUBCASE("identity") {
        ChainMatrix I3(R, 3, 3);
        for (int i = 0; i < 3; ++i) I3.at(i, i) = R.one();
        CHECK(snf(I3).valuations == std::vector<int>{0, 0, 0});
    }
    SUBCASE("already diagonal (2,4) over Z/8") {
        ChainMatrix M(R, 2, 2);
        M.at(0, 0) = R.from_int(2);
        M.at(1, 1) = R.from_int(4);
        CHECK(snf(M).valuations == std::vector<int>{1, 2});
    }
    SUBCASE("0 diagonal / 4 off-diagonal over Z/8 gives (4,4,0)") {
        ChainMatrix M(R, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) M.at(i, j) = R.from_int(4);
        const ElementaryDivisors div = snf(M);
        CHECK(div.valuations == std::vector<int>{2, 2, 3});
        CHECK(e_d_from_divisors(div, 2) == 2);
        CHECK(e_d_from_divisors(div, 3) == 0);
    }
}

TEST_CASE("e_d_from_divisors edge cases") {
    ElementaryDivisors div;
    div.d = 3;
    div.valuations = {0, 0, 3};
    CHECK(e_d_from_divisors(div, 1) == 0);
    div.valuations = {0, 0, 0};
    CHECK_THROWS_AS(e_d_from_divisors(div, 1), std::domain_error);
}

namespace {

ChainMatrix random_unimodular(const ChainRing& R, int n, std::mt19937_64& rng) {
    // product of elementary transvections and unit row scalings
    ChainMatrix M(R, n, n);
    for (int i = 0; i < n; ++i) M.at(i, i) = R.one();
    for (int step = 0; step < 3 * n; ++step) {
        const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
        const int j = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (i == j) {
            i64 u = 1 + static_cast<i64>(rng() % 40);
            if (u % R.l() == 0) ++u;  // keep it a unit
            for (int k = 0; k < n; ++k) M.at(i, k) = R.mul(M.at(i, k), R.from_int(u));
        } else {
            const auto f = R.from_int(static_cast<i64>(rng() % 17) - 8);
            for (int k = 0; k < n; ++k)
                M.at(i, k) = R.add(M.at(i, k), R.mul(f, M.at(j, k)));
        }
    }
    return M;
}

ChainMatrix mat_mul(const ChainMatrix& A, const ChainMatrix& B) {
    const ChainRing& R = *A.ring;
    ChainMatrix C(R, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            auto acc = R.zero();
            for (int k = 0; k < A.cols; ++k) acc = R.add(acc, R.mul(A.at(i, k), B.at(k, j)));
            C.at(i, j) = acc;
        }
    return C;
}

}  // namespace

TEST_CASE("snf divisors invariant under unimodular transforms") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const int l = (trial % 2 == 0) ? 2 : 3;
        const int d = 2 + static_cast<int>(rng() % 3);
        const ChainRing R(l, d);
        const int n = 2 + static_cast<int>(rng() % 5);  // up to 6
        ChainMatrix M(R, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = R.from_int(static_cast<i64>(rng() % 64) - 32);
        const auto base = snf(M).valuations;
        const ChainMatrix U = random_unimodular(R, n, rng);
        const ChainMatrix V = random_unimodular(R, n, rng);
        const auto transformed = snf(mat_mul(mat_mul(U, M), V)).valuations;
        CHECK(base == transformed);
        // divisibility chain
        for (std::size_t k = 1; k < base.size(); ++k) CHECK(base[k - 1] <= base[k]);
    }
}

TEST_CASE("zeta rank inversion") {
    SUBCASE("(1-t)^2, the two-component chain case") {
        const RankSequence r = zeta_rank_inversion({1, -2, 1}, 4);
        CHECK(r.a == std::vector<i64>{2, 0, 0, 0});
    }
    SUBCASE("(1-t)(1-2t) matches the free-product Witt ranks") {
        const RankSequence r = zeta_rank_inversion({1, -3, 2}, 3);
        CHECK(r.a == std::vector<i64>{3, 1, 2});
    }
    SUBCASE("constant 1") {
        const RankSequence r = zeta_rank_inversion({1}, 3);
        CHECK(r.a == std::vector<i64>{0, 0, 0});
    }
    SUBCASE("f(0) != 1 rejected") {
        CHECK_THROWS_AS(zeta_rank_inversion({2, 1}, 2), std::invalid_argument);
    }
}

namespace {

// Witt formula for the free group of rank r: count of basic commutators
i64 witt(i64 r, int d) {
    // (1/d) sum_{e | d} moebius(e) r^{d/e}
    auto moebius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        if (n > 1) m = -m;
        return m;
    };
    i64 s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        i64 pw = 1;
        for (int k = 0; k < d / e; ++k) pw *= r;
        s += moebius(e) * pw;
    }
    return s / d;
}

}  // namespace

TEST_CASE("rank inversion round-trips and matches Witt for the chain-series family") {
    for (int n = 2; n <= 6; ++n) {
        // f = (1-t)(1-(n-1)t)
        const std::vector<i64> f{1, -n, n - 1};
        for (int D = 2; D <= 8; ++D) {
            const RankSequence r = zeta_rank_inversion(f, D);
            // round trip
            const auto back = expand_rank_product(r, D);
            for (int k = 0; k <= D; ++k)
                CHECK(back[static_cast<std::size_t>(k)] == (k < 3 ? f[static_cast<std::size_t>(k)] : 0));
            // a_d = witt(1, d) + witt(n-1, d)
            for (int d = 1; d <= D; ++d)
                CHECK(r.a[static_cast<std::size_t>(d - 1)] == witt(1, d) + witt(n - 1, d));
        }
        // Labute family f = (1-t)(1-nt+nt^2): round trip only
        const std::vector<i64> g{1, -(n + 1), 2 * n, -n};
        const RankSequence rg = zeta_rank_inversion(g, 8);
        const auto back = expand_rank_product(rg, 8);
        for (int k = 0; k <= 8; ++k)
            CHECK(back[static_cast<std::size_t>(k)] == (k < 4 ? g[static_cast<std::size_t>(k)] : 0));
    }
}
