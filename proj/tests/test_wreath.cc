#include "doctest.h"

#include "lpg/oracle.hh"
#include "lpg/wreath.hh"

using namespace lpg;
using std::map;

namespace {
    WreathElement random_element(Rng & rng, Int n)
    {
        map<Int, PeriodicFn> comps;
        size_t k = rng() % 4;
        for (size_t i = 0; i < k; ++i)
            comps[Int(rng() % 9) - 4] = random_periodic_fn(n, 2 * n, rng);
        return WreathElement(n, Int(rng() % 7) - 3, comps);
    }

    // Elements sharing h often, so that component comparisons matter.
    WreathElement random_near(Rng & rng, const WreathElement & a)
    {
        WreathElement b = random_element(rng, a.period());
        return rng() % 2 ? WreathElement(a.period(), a.h(), b.comps()) : b;
    }

    WreathElement one(Int n) { return WreathElement(n); }
}

TEST_CASE("wreath multiplication")
{
    Rng rng(19);
    for (int it = 0; it < 500; ++it) {
        Int n = 1 + it % 3;
        auto a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
        REQUIRE(multiply(one(n), b) == b);
        REQUIRE(multiply(b, one(n)) == b);
        REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        Int h = Int(rng() % 7) - 3, j = Int(rng() % 11) - 5;
        auto acted = act(a, h);
        auto it2 = acted.find(j);
        PeriodicFn lhs = it2 == acted.end() ? PeriodicFn::identity(n) : it2->second;
        REQUIRE(lhs == a.comp(h + j));
    }
}

TEST_CASE("wreath order and lattice")
{
    Int n = 2;
    WreathElement f(n, 1, {{0, PeriodicFn(2, {0, 1})}});
    WreathElement g(n, 1, {{0, PeriodicFn(2, {1, 1})}});
    CHECK(leq(f, f));
    // equal global parts: components combine
    CHECK(join(f, g).comp(0) == join(f.comp(0), g.comp(0)));
    CHECK(meet(f, g).comp(0) == meet(f.comp(0), g.comp(0)));
    // different global parts: the larger translation wins outright
    WreathElement up(n, 2, {{5, PeriodicFn(2, {-3, -3})}});
    CHECK(join(f, up) == up);
    CHECK(meet(f, up) == f);

    Rng rng(23);
    for (int it = 0; it < 500; ++it) {
        Int k = 1 + it % 2;
        auto a = random_element(rng, k);
        auto b = random_near(rng, a), c = random_near(rng, a);
        REQUIRE(meet(a, join(a, b)) == a);
        REQUIRE(join(a, meet(a, b)) == a);
        REQUIRE(leq(meet(a, b), a));
        REQUIRE(leq(a, join(a, b)));
        REQUIRE(meet(a, join(b, c)) == join(meet(a, b), meet(a, c)));
        if (leq(a, b) && leq(b, a))
            REQUIRE(a == b);
        if (leq(a, b))
            REQUIRE(leq(multiply(a, c), multiply(b, c)));
    }
}

TEST_CASE("wreath residuals")
{
    CHECK(linv(one(3)) == one(3));
    Rng rng(29);
    for (int it = 0; it < 500; ++it) {
        Int n = 1 + it % 3;
        auto a = random_element(rng, n);
        auto al = linv(a), ar = rinv(a);
        REQUIRE(linv(al) == WreathElement(n, a.h(), [&] {
                    map<Int, PeriodicFn> m;
                    for (auto & [j, f] : a.comps())
                        m.emplace(j, linv(linv(f)));
                    return m;
                }()));
        REQUIRE(leq(multiply(al, a), one(n)));
        REQUIRE(leq(one(n), multiply(a, al)));
        REQUIRE(leq(multiply(a, ar), one(n)));
        REQUIRE(leq(one(n), multiply(ar, a)));
        REQUIRE(rinv(al) == a);
        REQUIRE(iter_inv(a, 2 * n) == a);
    }
}

TEST_CASE("periodicity follows the components")
{
    Rng rng(31);
    // F_2(Z) is not 1-periodic, and neither is the wreath product over it
    bool seen = false;
    for (int it = 0; it < 200 && ! seen; ++it) {
        auto a = random_element(rng, 2);
        seen = iter_inv(a, 2) != a;
    }
    CHECK(seen);
    for (int it = 0; it < 200; ++it) {
        auto a = random_element(rng, 1);
        REQUIRE(iter_inv(a, 2) == a);
    }
}

TEST_CASE("wreath elements as lexicographic functions")
{
    CHECK(iso_to_lexfn(one(2)) == LexFn(2));
    CHECK(iso_from_lexfn(LexFn(2)) == one(2));
    Rng rng(37);
    for (int it = 0; it < 500; ++it) {
        Int n = 1 + it % 3;
        auto a = random_element(rng, n), b = random_near(rng, a);
        LexFn fa = iso_to_lexfn(a), fb = iso_to_lexfn(b);
        REQUIRE(iso_from_lexfn(fa) == a);
        REQUIRE(iso_to_lexfn(multiply(a, b)) == compose(fa, fb));
        REQUIRE(iso_to_lexfn(linv(a)) == linv(fa));
        REQUIRE(iso_to_lexfn(rinv(a)) == rinv(fa));
        REQUIRE(iso_to_lexfn(meet(a, b)) == meet(fa, fb));
        REQUIRE(iso_to_lexfn(join(a, b)) == join(fa, fb));
        REQUIRE(leq(a, b) == exact_leq(fa, fb));
        for (int s = 0; s < 5; ++s) {
            Int j = Int(rng() % 11) - 5, m = Int(rng() % 21) - 10;
            auto [j2, m2] = a(j, m);
            REQUIRE(fa({Q(j), m}) == LexPoint{Q(j2), m2});
        }
    }
    CHECK_THROWS(iso_from_lexfn(LexFn(1, PLBijection::translation(Q(1, 2)), {})));
}

TEST_CASE("pregroup-valued global parts lose the lr round trip")
{
    // h(x) = 2 floor(x / 2) is not invertible, h^l h sends 1 to 0
    PeriodicFn h(2, {0, 0});
    PregroupWreath a{h, {{0, PeriodicFn::translation(1, -1)}}, 1};
    PregroupWreath back = rinv(linv(a));
    CHECK(back.h == h);
    CHECK(leq(back, a));
    CHECK(! (back == a));
    CHECK(back.comp(1) == PeriodicFn::translation(1, -1));

    // an invertible global part gives equality
    PregroupWreath b{PeriodicFn::translation(2, 3), {{0, PeriodicFn::translation(1, -1)}}, 1};
    CHECK(rinv(linv(b)) == b);

    Rng rng(41);
    for (int it = 0; it < 200; ++it) {
        PregroupWreath c{random_periodic_fn(2, 4, rng), {}, 1};
        PeriodicFn f = random_periodic_fn(1, 2, rng);
        if (f != PeriodicFn::identity(1))
            c.comps.emplace(Int(rng() % 5) - 2, f);
        PregroupWreath r = rinv(linv(c));
        REQUIRE(r.h == c.h);
        if (c.h.is_translation())
            REQUIRE(r == c);
    }
}
