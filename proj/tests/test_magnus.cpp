#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "arithtop/magnus.hpp"
#include "doctest.h"

using namespace arithtop;

namespace {

FreeWord random_word(std::mt19937_64& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(1, rank);
    std::uniform_int_distribution<int> sgn(0, 1);
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
    return FreeWord::from_letters(ls);
}

MultiIndex random_index(std::mt19937_64& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(1, rank);
    MultiIndex I;
    for (int i = 0; i < len; ++i) I.push_back(gen(rng));
    return I;
}

}  // namespace

TEST_CASE("magnus images of single letters") {
    const NCSeries a = magnus_expand(FreeWord::generator(1), 2, 2);
    CHECK(a.coeff({}) == 1);
    CHECK(a.coeff({1}) == 1);
    CHECK(a.coeff({1, 1}) == 0);

    const NCSeries b = magnus_expand(FreeWord::generator(1, -1), 2, 2);
    CHECK(b.coeff({}) == 1);
    CHECK(b.coeff({1}) == -1);
    CHECK(b.coeff({1, 1}) == 1);

    const NCSeries c = magnus_expand(commutator(FreeWord::generator(1), FreeWord::generator(2)), 2, 2);
    CHECK(c.coeff({}) == 1);
    CHECK(c.coeff({1}) == 0);
    CHECK(c.coeff({2}) == 0);
    CHECK(c.coeff({1, 2}) == 1);
    CHECK(c.coeff({2, 1}) == -1);
}

TEST_CASE("magnus homomorphism and inverse, randomized") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int D = 1 + static_cast<int>(rng() % 5);
        const FreeWord u = random_word(rng, 3, 10);
        const FreeWord v = random_word(rng, 3, 10);
        CHECK(magnus_expand(multiply(u, v), 3, D) ==
              magnus_expand(u, 3, D) * magnus_expand(v, 3, D));
        CHECK(magnus_expand(multiply(u, invert(u)), 3, D) == NCSeries::one(3, D));
    }
}

TEST_CASE("degree-1 coefficients are exponent sums") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const FreeWord w = random_word(rng, 4, 20);
        const NCSeries s = magnus_expand(w, 4, 1);
        for (int g = 1; g <= 4; ++g) CHECK(s.coeff({g}) == w.exponent_sum(g));
    }
}

TEST_CASE("fox derivative basics") {
    const FreeWord x1 = FreeWord::generator(1);
    const FreeWord x2 = FreeWord::generator(2);

    // d(x1 x2)/dx1 = 1
    CHECK(fox_derive(multiply(x1, x2), 1) == GroupRing::one());
    // d(x1^-1)/dx1 = -x1^-1
    CHECK(fox_derive(invert(x1), 1) == GroupRing(invert(x1), -1));
    // d[x1,x2]/dx1 = 1 - x1 x2 x1^-1
    GroupRing want = GroupRing::one();
    want -= GroupRing(multiply(multiply(x1, x2), invert(x1)), 1);
    CHECK(fox_derive(commutator(x1, x2), 1) == want);
}

TEST_CASE("fox product rule, randomized") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        const FreeWord u = random_word(rng, 3, 8);
        const FreeWord v = random_word(rng, 3, 8);
        for (int g = 1; g <= 3; ++g) {
            GroupRing rhs = fox_derive(u, g);
            rhs += GroupRing(u) * fox_derive(v, g);
            CHECK(fox_derive(multiply(u, v), g) == rhs);
        }
    }
}

TEST_CASE("higher fox eps equals magnus coefficient") {
    CHECK(higher_fox_eps(FreeWord::generator(2), {2}) == 1);
    CHECK(higher_fox_eps(FreeWord::generator(2), {1}) == 0);
    CHECK(higher_fox_eps(commutator(FreeWord::generator(1), FreeWord::generator(2)), {1, 2}) == 1);

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        const FreeWord w = random_word(rng, 3, 8);
        const int len = 1 + static_cast<int>(rng() % 4);
        const MultiIndex I = random_index(rng, 3, len);
        CHECK(higher_fox_eps(w, I) == magnus_expand(w, 3, len).coeff(I));
    }
}

TEST_CASE("hopf milnor table") {
    // y_1 = x2, y_2 = x1
    const MilnorTable t =
        milnor_table({FreeWord::generator(2), FreeWord::generator(1)}, 2);
    CHECK(t.at({2, 1}).mu == 1);
    CHECK(t.at({1, 2}).mu == 1);
    CHECK(t.at({1, 2}).delta == 0);
    CHECK(t.at({1, 2}).mubar == 1);
    CHECK(check_symmetries(t).ok());
}

TEST_CASE("delta index set matches the subsequence/rotation recipe") {
    const auto set = delta_index_set({1, 1, 2, 2});
    // proper subsequences have length 2 or 3; every rotation included
    for (const auto& J : set) {
        CHECK(J.size() >= 2);
        CHECK(J.size() < 4);
    }
    const auto has = [&](const MultiIndex& J) {
        return std::find(set.begin(), set.end(), J) != set.end();
    };
    CHECK(has({1, 2}));
    CHECK(has({2, 1}));
    CHECK(has({1, 1}));
    CHECK(has({2, 2}));
    CHECK(has({1, 2, 2}));
    CHECK(has({2, 2, 1}));  // rotation of (1,2,2)
    CHECK(!has({2, 1, 2, 2}));
}

TEST_CASE("proper shuffles") {
    const auto sh = proper_shuffles({1}, {2});
    REQUIRE(sh.size() == 2);
    const auto sh2 = proper_shuffles({1, 2}, {3});
    CHECK(sh2.size() == 3);
    // multiset semantics: shuffling equal letters keeps multiplicity
    CHECK(proper_shuffles({1}, {1}).size() == 2);
}

TEST_CASE("constructed cyclic violation is flagged") {
    // y_1 = x2, y_2 = x1^2: mu(21) = 1 but mu(12) = 2, deltas are zero
    const MilnorTable t =
        milnor_table({FreeWord::generator(2), FreeWord::generator(1, 2)}, 2);
    const SymmetryReport rep = check_symmetries(t);
    CHECK(!rep.ok());
}

TEST_CASE("modulus variant reduces coefficients and delta") {
    // y_1 = x2^5, y_2 = x1: mu(21) = 5 = 1 mod 4
    const MilnorTable t =
        milnor_table({FreeWord::generator(2, 5), FreeWord::generator(1)}, 2, 4, 4);
    CHECK(t.at({2, 1}).mu == 1);
    CHECK(t.modulus() == 4);
    // binomial part of Delta: gcd(C(4,1), C(4,2)) = 2 enters at |I| = 2
    CHECK(t.at({2, 1}).delta == 2);
    CHECK(t.at({2, 1}).mubar == 1);
}
