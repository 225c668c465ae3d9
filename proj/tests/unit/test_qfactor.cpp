#include "doctest.h"
#include "lwk/qfactor.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace lwk;

namespace {

RootMultiset roots_of(const GroundField& F, const std::vector<long>& exps, const char* s = "a")
{
    RootMultiset r;
    for (long e : exps) r.push_back(canon(F, sym(s, e)));
    return r;
}

QFactorization single(const GroundField& F, long xi, long r = 1, const char* s = "a")
{
    return {{{canon(F, sym(s, xi)), r}}, {}};
}

} // namespace

TEST_CASE("expand strings")
{
    auto G = GroundField::generic();
    CHECK(expand(G, single(G, 0)) == roots_of(G, {0}));
    auto r3 = expand(G, single(G, 0, 3));
    CHECK(r3 == roots_of(G, {-2, 0, 2}));
    QFactorization two{{{sym("a"), 2}, {sym("b"), 1}}, {}};
    auto r = expand(G, two);
    CHECK(r.size() == 3);
    CHECK(std::count(r.begin(), r.end(), sym("b")) == 1);
    CHECK(expand(G, single(G, 0, 2), 2) == roots_of(G, {-2, 2}));
}

TEST_CASE("factorization examples")
{
    auto G = GroundField::generic();
    auto f = xi_factorize(G, roots_of(G, {1, -1}));
    REQUIRE(f.quantum.size() == 1);
    CHECK(f.quantum[0] == QString{sym("a"), 2});

    auto R3 = GroundField::root(3);
    auto g = xi_factorize(R3, roots_of(R3, {0, 1, 2}));
    CHECK(g.quantum.empty());
    REQUIRE(g.frobenius.size() == 1);
    CHECK(g.frobenius[0] == SpectralParam{{{"a", 3}}, 0});

    auto h = xi_factorize(G, roots_of(G, {0, 4}));
    CHECK(h.quantum.size() == 2);

    auto O = GroundField::one();
    auto o = xi_factorize(O, roots_of(O, {0, 3, 5}));
    CHECK(o.quantum.empty());
    CHECK(o.frobenius.size() == 3);

    // distinct bases never interact
    auto m = xi_factorize(G, {sym("a"), sym("b", 2)});
    CHECK(m.quantum.size() == 2);

    // existing Frobenius factors add up
    auto p = xi_factorize(R3, roots_of(R3, {0, 1, 2}), {SpectralParam{{{"a", 3}}, 0}});
    CHECK(p.frobenius.size() == 2);
}

TEST_CASE("uniqueness against exhaustive partitions")
{
    for (long l : {0L, 3L, 5L}) {
        for (long d : {1L, 2L}) {
            if (l == 0 && d == 2) continue;
            GroundField F = l ? GroundField::root(int(l)) : GroundField::generic();
            PartitionOracle O{l, d};
            std::mt19937 rng(unsigned(l * 10 + d));
            std::uniform_int_distribution<long> e(0, 9), sz(1, 5);
            for (int t = 0; t < 150; ++t) {
                std::vector<long> ex;
                for (long k = sz(rng); k > 0; --k) ex.push_back(e(rng));
                auto parts = O.all(ex);
                auto f = xi_factorize(F, roots_of(F, ex), {}, d);
                REQUIRE(parts.size() == 1);
                CHECK(*parts.begin() == PartitionOracle::from(f));
            }
        }
    }
}

TEST_CASE("round trip on random factorizations")
{
    std::mt19937 rng(5);
    for (auto F : {GroundField::generic(), GroundField::root(3), GroundField::root(5), GroundField::root(7)}) {
        std::uniform_int_distribution<long> e(-8, 8), len(1, F.mode == Mode::Root ? F.l - 1 : 4), cnt(1, 4);
        for (int t = 0; t < 100; ++t) {
            RootMultiset rs;
            for (long k = cnt(rng); k > 0; --k) {
                auto s = expand(F, single(F, e(rng), len(rng), k % 2 ? "a" : "b"));
                rs.insert(rs.end(), s.begin(), s.end());
            }
            auto f = xi_factorize(F, rs);
            auto again = canonicalize(F, f);
            CHECK(again == f);
            auto back = expand(F, f);
            RootMultiset q = rs;
            std::sort(q.begin(), q.end());
            if (f.frobenius.empty()) CHECK(back == q);
        }
    }
}

TEST_CASE("resonance predicates")
{
    auto G = GroundField::generic();
    // the ratio a_k / a'_j must avoid xi^{-2}
    CHECK_FALSE(pair_resonant(G, single(G, -2), single(G, 0), Strength::Strict));
    CHECK(pair_resonant(G, single(G, 0), single(G, -2), Strength::Strict));
    CHECK(pair_resonant(G, single(G, 0), single(G, 0, 1, "b"), Strength::Strict));
    CHECK_FALSE(general_position(G, single(G, 0), single(G, 2)));
    CHECK(general_position(G, single(G, 0), single(G, 0)));
    CHECK(tuple_resonant(G, {single(G, 3)}, Strength::Strict));

    // l = 5: ratio 3 = -2 mod 5 is forbidden for p = 0 of (2,2): -(2+2) = 1; p = 1: -(2) = 3
    auto R5 = GroundField::root(5);
    CHECK_FALSE(pair_resonant(R5, single(R5, 0, 2), single(R5, 2, 2), Strength::Strict));
    CHECK(pair_resonant(R5, single(R5, 0, 2), single(R5, 1, 2), Strength::Strict));

    auto R3 = GroundField::root(3);
    CHECK_FALSE(poly_regular(R3, xi_factorize(R3, roots_of(R3, {0, 1, 2}))));
    CHECK(poly_regular(R3, xi_factorize(R3, roots_of(R3, {0, 1}))));
    auto O = GroundField::one();
    CHECK(poly_regular(O, xi_factorize(O, roots_of(O, {0, 1}, "a"))) == false);
    CHECK(poly_regular(O, xi_factorize(O, {sym("a"), sym("b")})));
}

TEST_CASE("regularity iff a resonant permutation exists")
{
    std::mt19937 rng(9);
    for (auto F : {GroundField::root(3), GroundField::root(5), GroundField::one(), GroundField::generic()}) {
        std::uniform_int_distribution<long> e(0, 6), cnt(1, 5);
        for (int t = 0; t < 120; ++t) {
            std::vector<long> ex;
            for (long k = cnt(rng); k > 0; --k) ex.push_back(e(rng));
            std::sort(ex.begin(), ex.end());
            bool found = false;
            do {
                std::vector<QFactorization> fs;
                for (long x : ex) fs.push_back(F.mode == Mode::One ? xi_factorize(F, roots_of(F, {x})) : single(F, x));
                found = found || tuple_resonant(F, fs, Strength::Strict);
            } while (!found && std::next_permutation(ex.begin(), ex.end()));
            CHECK(found == poly_regular(F, xi_factorize(F, roots_of(F, ex))));
        }
    }
}
