#include "doctest.h"

#include "lpg/search.hh"

#include <set>

using namespace lpg;
using std::vector;

namespace {
    SyntacticUniverse universe(const std::string & text)
    {
        auto eqs = normalize(text);
        REQUIRE(eqs.size() == 1);
        return make_universe(eqs[0]);
    }

    std::set<vector<Int>> all_by_enumeration(const SyntacticUniverse & U, bool failing)
    {
        std::set<vector<Int>> out;
        SurjectionOptions opt;
        opt.only_failing = failing;
        auto st = enumerate_compatible_surjections(U, opt, [&](const CompatibleSurjection & s) {
            out.insert(s.phi);
            return true;
        });
        CHECK(st.global_rejects == 0);
        CHECK(st.emitted == out.size());
        return out;
    }

    std::set<vector<Int>> all_by_brute_force(const SyntacticUniverse & U, bool failing)
    {
        std::set<vector<Int>> out;
        Int N = Int(U.pts.size());
        vector<Int> phi(N, 0);
        for (;;) {
            if (is_compatible(U, phi) && (! failing || fails_in(U, induced(U, phi))))
                out.insert(phi);
            Int k = 0;
            while (k < N && ++phi[k] == N)
                phi[k++] = 0;
            if (k == N)
                break;
        }
        return out;
    }

    bool has_failing(const std::string & text)
    {
        bool found = false;
        SurjectionOptions opt;
        opt.only_failing = true;
        enumerate_compatible_surjections(universe(text), opt, [&](const CompatibleSurjection &) {
            found = true;
            return false;
        });
        return found;
    }
}

TEST_CASE("universe structure")
{
    auto U = universe("1 <= x^(1)");
    CHECK(U.pts.size() == 5);
    CHECK(U.pts[U.unit].toks.empty());
    REQUIRE(U.joinands.size() == 1);
    CHECK(U.pts[U.joinands[0]].str() == "x^(1)");
    for (size_t i = 0; i < U.pts.size(); ++i)
        if (U.info[i].kind != SyntacticUniverse::Kind::Unit)
            CHECK(U.info[i].rest >= 0);
}

TEST_CASE("enumeration agrees with brute force on small universes")
{
    for (const char * text : {"1 <= x", "x <= 1", "1 <= x y", "1 <= x^(1)", "1 <= x^(-1)", "x^l <= x^r", "1 <= x | y"}) {
        auto U = universe(text);
        if (U.pts.size() > 7)
            continue;
        CAPTURE(text);
        CHECK(all_by_enumeration(U, false) == all_by_brute_force(U, false));
        CHECK(all_by_enumeration(U, true) == all_by_brute_force(U, true));
    }
}

TEST_CASE("local checks imply the global conditions")
{
    for (const char * text : {"1 <= x^(-2) x^(1)", "1 <= x x^(1)", "x^(2) = x", "1 <= x^(1) x | y^(-1) y", "x y <= y x"}) {
        CAPTURE(text);
        for (auto & e : normalize(text)) {
            auto U = make_universe(e);
            SurjectionOptions opt;
            opt.node_limit = 2000000;
            auto st = enumerate_compatible_surjections(U, opt, [&](const CompatibleSurjection & s) {
                REQUIRE(is_compatible(U, s.phi));
                return true;
            });
            CHECK(st.global_rejects == 0);
            CHECK(st.emitted > 0);
        }
    }
}

TEST_CASE("failing surjections track residuation laws")
{
    // f f^l >= id holds for every residuated map, f^l f <= id is strict in general
    CHECK(! has_failing("1 <= x x^(1)"));
    CHECK(has_failing("1 <= x^(1) x"));
    CHECK(! has_failing("1 <= x^(-1) x"));
    CHECK(has_failing("1 <= x x^(-1)"));
    CHECK(has_failing("1 <= x"));
    CHECK(! has_failing("1 <= x | x^(1) x^(2)"));
}

TEST_CASE("block partitions")
{
    auto U = universe("1 <= x^(1) x");
    int checked = 0;
    enumerate_compatible_surjections(U, {}, [&](const CompatibleSurjection & s) {
        auto all = valid_partitions(s);
        REQUIRE(! all.empty());
        auto fine = finest_partition(s);
        REQUIRE(valid_partition(s, fine));
        // every valid cut set is contained in the finest one
        for (auto & c : all)
            for (Int k = 1; k < s.chain.q; ++k)
                REQUIRE((! c[k] || fine[k]));
        // and unions of valid cut sets stay valid
        for (auto & a : all)
            for (auto & b : all) {
                vector<bool> u(a.size());
                for (size_t k = 0; k < a.size(); ++k)
                    u[k] = a[k] || b[k];
                REQUIRE(valid_partition(s, u));
            }
        auto d = make_partition_diagram(s, fine);
        for (size_t v = 0; v < s.g.size(); ++v) {
            IntMap t = d.tilde(Int(v));
            REQUIRE(is_order_preserving(t));
            for (auto [x, y] : s.g[v])
                REQUIRE(d.local(Int(v), d.block[x]).at(d.offset(x)) == d.offset(y));
        }
        ++checked;
        return true;
    });
    CHECK(checked > 0);
}
