#include "doctest.h"

#include "lpg/oracle.hh"
#include "lpg/serialize.hh"

#include <set>

using namespace lpg;
using std::vector;

namespace {
    Q frac(Int a, Int b)
    {
        Q x(a, b);
        x.canonicalize();
        return x;
    }

    Q small_q(Rng & rng) { return frac(Int(rng() % 25) - 12, 1 + Int(rng() % 3)); }

    vector<Q> distinct_sorted(Rng & rng, size_t k)
    {
        std::set<Q> s;
        while (s.size() < k)
            s.insert(small_q(rng));
        return vector<Q>(s.begin(), s.end());
    }

    PLBijection random_pl(Rng & rng)
    {
        size_t k = rng() % 4;
        auto xs = distinct_sorted(rng, k), ys = distinct_sorted(rng, k);
        vector<std::pair<Q, Q>> pts;
        for (size_t i = 0; i < k; ++i)
            pts.push_back({xs[i], ys[i]});
        return PLBijection::through(pts);
    }

    LexFn random_lex(Rng & rng, Int n)
    {
        std::map<Q, PeriodicFn> comps;
        size_t k = rng() % 4;
        for (size_t i = 0; i < k; ++i)
            comps[frac(Int(rng() % 9) - 4, 1 + Int(rng() % 2))] = random_periodic_fn(n, 3 * n, rng);
        return LexFn(n, random_pl(rng), comps);
    }

    LexPoint random_point(Rng & rng, const LexFn & f)
    {
        // hit supported coordinates often
        if (! f.comps().empty() && rng() % 2) {
            auto it = f.comps().begin();
            std::advance(it, rng() % f.comps().size());
            return {it->first, Int(rng() % 21) - 10};
        }
        return {frac(Int(rng() % 9) - 4, 1 + Int(rng() % 2)), Int(rng() % 21) - 10};
    }
}

TEST_CASE("pl bijections")
{
    PLBijection id;
    CHECK(id.is_identity());
    CHECK(id(Q(3, 7)) == Q(3, 7));
    auto f = PLBijection::through({{0, 0}, {1, 3}});
    CHECK(f(Q(1, 2)) == Q(3, 2));
    CHECK(f(5) == 7);
    CHECK(f(-2) == -2);
    CHECK_THROWS(PLBijection::through({{0, 1}, {1, 0}}));

    Rng rng(5);
    for (int it = 0; it < 300; ++it) {
        auto a = random_pl(rng), b = random_pl(rng);
        REQUIRE(a.valid());
        auto c = compose(a, b), ai = inverse(a);
        REQUIRE(c.valid());
        REQUIRE(compose(a, ai).is_identity());
        auto lo = pointwise_min(a, b), hi = pointwise_max(a, b);
        REQUIRE(lo.valid());
        REQUIRE(leq_everywhere(lo, a));
        REQUIRE(leq_everywhere(a, hi));
        for (int s = 0; s < 10; ++s) {
            Q x = small_q(rng) * 2;
            REQUIRE(c(x) == a(b(x)));
            REQUIRE(ai(a(x)) == x);
            REQUIRE(lo(x) == std::min(a(x), b(x)));
            REQUIRE(hi(x) == std::max(a(x), b(x)));
        }
    }
}

TEST_CASE("lexicographic evaluation")
{
    LexFn id(2);
    CHECK(id({Q(1, 2), 3}) == LexPoint{Q(1, 2), 3});
    LexFn f(2, PLBijection(), {{Q(0), PeriodicFn(2, {4, 4})}});
    CHECK(f({0, 1}) == LexPoint{0, 4});
    CHECK(f({7, 5}) == LexPoint{7, 5});
}

TEST_CASE("lexicographic composition")
{
    LexFn f(1, PLBijection::translation(1), {{Q(0), PeriodicFn::translation(1, 1)}});
    LexFn ff = compose(f, f);
    CHECK(ff.tilde() == PLBijection::translation(2));
    CHECK(ff.comp(0) == PeriodicFn::translation(1, 1));
    CHECK(ff.comp(-1) == PeriodicFn::translation(1, 1));
    CHECK(ff.comps().size() == 2);
    CHECK(compose(f, LexFn(1)) == f);
    CHECK_THROWS_AS(compose(f, LexFn(2)), PeriodError);

    Rng rng(7);
    for (int it = 0; it < 500; ++it) {
        Int n = 1 + it % 3;
        auto a = random_lex(rng, n), b = random_lex(rng, n);
        auto c = compose(a, b);
        for (int s = 0; s < 4; ++s) {
            LexPoint p = random_point(rng, b);
            REQUIRE(c(p) == a(b(p)));
        }
    }
}

TEST_CASE("lexicographic residuals")
{
    CHECK(linv(LexFn(3)) == LexFn(3));
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        Int n = 1 + it % 3;
        auto f = random_lex(rng, n);
        auto fl = linv(f), fr = rinv(f);
        REQUIRE(rinv(fl) == f);
        REQUIRE(linv(fr) == f);
        REQUIRE(iter_inv(f, 2 * n) == f);
        for (int s = 0; s < 10; ++s) {
            LexPoint a = random_point(rng, f), b = random_point(rng, fr);
            REQUIRE((f(a) <= b) == (a <= fr(b)));
            LexPoint c = random_point(rng, fl);
            REQUIRE((a <= f(c)) == (fl(a) <= c));
            // same first coordinate stays together
            LexPoint a2{a.j, a.r + 1 + Int(rng() % 5)};
            REQUIRE(f(a).j == f(a2).j);
        }
    }
}

TEST_CASE("lexicographic order and lattice")
{
    Rng rng(13);
    LexFn f(2, PLBijection(), {{Q(1), PeriodicFn(2, {0, 1})}});
    LexFn g(2, PLBijection(), {{Q(1), PeriodicFn(2, {0, 2})}});
    CHECK(exact_leq(f, f));
    CHECK(exact_leq(f, g));
    CHECK(! exact_leq(g, f));

    for (int it = 0; it < 300; ++it) {
        Int n = 1 + it % 2;
        auto a = random_lex(rng, n), b = random_lex(rng, n);
        auto m = meet(a, b), j = join(a, b);
        REQUIRE(exact_leq(m, a));
        REQUIRE(exact_leq(m, b));
        REQUIRE(exact_leq(a, j));
        REQUIRE(exact_leq(b, j));
        if (exact_leq(a, b) && exact_leq(b, a))
            REQUIRE(a == b);
        vector<LexPoint> sample;
        for (int s = 0; s < 20; ++s) {
            LexPoint p = random_point(rng, rng() % 2 ? a : b);
            sample.push_back(p);
            REQUIRE(m(p) == std::min(a(p), b(p)));
            REQUIRE(j(p) == std::max(a(p), b(p)));
        }
        if (exact_leq(a, b))
            REQUIRE(leq_sampled(a, b, sample));
    }
}

TEST_CASE("lexicographic serialization")
{
    Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        auto f = random_lex(rng, 1 + it % 3);
        Json j = to_json(f);
        REQUIRE(lex_from_json(Json::parse(j.dump())) == f);
    }
    CHECK(q_str(Q(6, 4)) == "3/2");
    CHECK(q_from_json(Json(5)) == 5);
    CHECK_THROWS(q_from_json(Json("1/0")));
}
