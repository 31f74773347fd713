// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "lpg/decide.hh"
#include "lpg/oracle.hh"
#include "lpg/spacing.hh"
#include "lpg/wreath.hh"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace lpg;
using std::string;
using std::vector;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects the first few failure messages of a criterion.
struct Report {
    int failures = 0;
    std::ostringstream detail;

    void fail(const string & what)
    {
        if (failures++ < 5)
            detail << "\n    " << what;
    }
    void expect(bool ok, const string & what)
    {
        if (! ok)
            fail(what);
    }
};

DecideOptions complete_mode(std::uint64_t budget = 0)
{
    DecideOptions o;
    o.complete = true;
    o.budget = budget;
    return o;
}

void algebra_laws(Report & r)
{
    Rng rng(1001);
    auto t = Clock::now();
    for (int i = 0; i < 1000; ++i) {
        Int n = 1 + i % 3;
        PeriodicFn f = random_periodic_fn(n, 3 * n, rng), fl = linv(f), fr = rinv(f);
        std::ostringstream who;
        who << f.str() << ": ";
        r.expect(compose(compose(f, fl), f) == f, who.str() + "f f^l f != f");
        r.expect(compose(compose(fl, f), fl) == fl, who.str() + "f^l f f^l != f^l");
        r.expect(rinv(fl) == f && linv(fr) == f, who.str() + "f^lr or f^rl != f");
        r.expect(iter_inv(f, 2 * n) == f, who.str() + "f^(2n) != f");
        PeriodicFn f2 = iter_inv(f, 2);
        for (Int x = -3 * n; x <= 3 * n; ++x)
            r.expect(f2(x) == f(x - 1) + 1, who.str() + "f^(2)(x) != f(x-1)+1");
    }
    double s = seconds_since(t);
    r.expect(s < 10, "took " + std::to_string(s) + "s");
}

// Iterated inverse built from the min/max scans alone.
PeriodicFn scan_iter(const PeriodicFn & f, Int m)
{
    PeriodicFn g = f;
    for (Int k = 0; k < std::abs(m); ++k) {
        vector<Int> v;
        for (Int x = 0; x < f.period(); ++x)
            v.push_back(m > 0 ? linv_scan(g, x) : rinv_scan(g, x));
        g = PeriodicFn(f.period(), v);
    }
    return g;
}

void worked_example(Report & r)
{
    const PeriodicFn fig(2, {4, 4});
    Decomposition d = decompose(fig);
    r.expect(d.shift == 4, "shift " + std::to_string(d.shift));
    r.expect(d.star == PeriodicFn(2, {0, 0}), "star " + d.star.str());
    r.expect(recompose(d) == fig, "recompose");
    for (Int x = -8; x <= 8; ++x) {
        r.expect(linv(fig)(x) == linv_scan(fig, x), "linv at " + std::to_string(x));
        r.expect(rinv(fig)(x) == rinv_scan(fig, x), "rinv at " + std::to_string(x));
    }
    for (Int m = -4; m <= 4; ++m)
        r.expect(iter_inv(fig, m) == scan_iter(fig, m), "iter_inv " + std::to_string(m));
}

void partial_map_extension(Report & r)
{
    Rng rng(3003);
    std::uniform_int_distribution<Int> pt(-12, 12);
    int rejected = 0;
    for (int i = 0; i < 500; ++i) {
        Int n = 1 + i % 3;
        PeriodicFn f = random_periodic_fn(n, 3 * n, rng);
        IntMap h;
        for (int k = 0; k < 1 + i % 6; ++k) {
            Int x = pt(rng);
            h[x] = f(x);
        }
        try {
            PeriodicFn g = extend_partial(h, n);
            for (auto & [x, y] : h)
                r.expect(g(x) == y, "extension differs at " + std::to_string(x));
        } catch (const std::exception & e) {
            r.fail(string("extend_partial threw: ") + e.what());
        }

        // perturb: a smaller point now lands strictly above a larger one
        IntMap bad = h;
        Int a = pt(rng), b = pt(rng);
        while (a == b)
            b = pt(rng);
        if (a > b)
            std::swap(a, b);
        if (! bad.count(b))
            bad[b] = f(b);
        bad[a] = bad[b] + 1 + Int(rng() % 3);
        bool ok = is_n_periodic_map(bad, n);
        rejected += ! ok;
        r.expect(! ok, "perturbed map accepted");
    }
    r.expect(rejected == 500, std::to_string(rejected) + "/500 rejected");
}

SubChain random_subchain(Rng & rng, Int maxsize)
{
    Int size = 1 + Int(rng() % maxsize);
    SubChain c;
    Int x = Int(rng() % 7) - 3;
    for (Int i = 0; i < size; ++i) {
        if (i > 0) {
            Int step = 1 + Int(rng() % 6);
            if (step == 1 && rng() % 2)
                c.covers.insert(i - 1);
            x += step;
        }
        c.points.push_back(x);
    }
    return c;
}

std::map<Int, Int> positions(const SubChain & c, const SpacingEmbedding & e)
{
    std::map<Int, Int> pos;
    for (size_t i = 0; i < c.points.size(); ++i)
        pos[c.points[i]] = e.pos[i];
    return pos;
}

bool transfers_translations(const SubChain & c, const SpacingEmbedding & e)
{
    auto pos = positions(c, e);
    for (Int a : c.points)
        for (Int b : c.points) {
            std::optional<Int> diff;
            for (Int x : c.points)
                if (pos.count(x + a - b)) {
                    Int d = pos[x + a - b] - pos[x];
                    if (diff && *diff != d)
                        return false;
                    diff = d;
                }
        }
    return true;
}

bool transfers_periodic(const SubChain & c, const SpacingEmbedding & e, const PeriodicFn & f)
{
    auto pos = positions(c, e);
    IntMap h;
    for (Int x : c.points)
        if (pos.count(f(x)))
            h[pos[x]] = pos[f(x)];
    return is_n_periodic_map(h, f.period());
}

void spacing_bounds(Report & r)
{
    r.expect(rho(1) == 4, "rho(1)");
    r.expect(rho(2) == 35, "rho(2)");
    r.expect(nu(1, 2) == 658, "nu(1,2)");
    Rng rng(4004);
    for (int i = 0; i < 100; ++i) {
        SubChain c = random_subchain(rng, 6);
        Int size = Int(c.points.size());
        CChain cc{size, c.covers};
        SpacingEmbedding one = find_short_1transfer(c);
        r.expect(Z(one.height()) <= rho(size), "1-transfer too high");
        r.expect(is_spacing_embedding(one, cc), "1-transfer not a spacing embedding");
        r.expect(transfers_translations(c, one), "1-transfer misses a translation");

        Int n = 1 + i % 3;
        SpacingEmbedding e = find_short_ntransfer(c, n);
        r.expect(Z(e.height()) <= nu(size, n), "n-transfer too high");
        r.expect(is_spacing_embedding(e, cc), "n-transfer not a spacing embedding");
        for (int s = 0; s < 200; ++s)
            r.expect(transfers_periodic(c, e, random_periodic_fn(n, 3 * n, rng)), "n-transfer misses a function");
    }
}

// Each run must finish inside its own limit.
constexpr double per_equation_limit = 60;
// Roughly the node count reachable in that time on one core.
constexpr std::uint64_t per_equation_budget = 2500000;

void known_valid(Report & r)
{
    struct Case {
        const char * text;
        Int n;
    };
    const vector<Case> cases{{"1 <= x^(-1) x", 1}, {"1 <= x^(-1) x", 2}, {"1 <= x x^l", 1}, {"1 <= x x^l", 2},
                             {"x^l^r = x", 1},      {"x^l^r = x", 2},      {"x^(2) = x", 1},  {"x^(4) = x", 2},
                             {"x^l = x^r", 1}};
    for (auto & c : cases)
        for (bool lex : {false, true}) {
            auto t = Clock::now();
            Verdict v = lex ? decide_lpn(c.text, c.n, complete_mode(per_equation_budget))
                            : decide_fnz(c.text, c.n, complete_mode(per_equation_budget));
            double s = seconds_since(t);
            string who = string(lex ? "lpn " : "fnz ") + c.text + " n=" + std::to_string(c.n) + ": ";
            r.expect(v.status == Verdict::Status::Valid, who + status_name(v.status));
            r.expect(s < per_equation_limit, who + std::to_string(s) + "s");
        }
}

void known_failing(Report & r)
{
    auto fails_verified = [&](const Verdict & v, const string & who) {
        r.expect(v.status == Verdict::Status::Fails, who + status_name(v.status));
        r.expect(v.witness && verify_witness(v.equation, *v.witness), who + "witness does not verify");
    };
    for (Int n : {1, 2, 3}) {
        fails_verified(decide_fnz("1 <= x", n, complete_mode()), "fnz 1 <= x n=" + std::to_string(n) + ": ");
        fails_verified(decide_lpn("1 <= x", n, complete_mode()), "lpn 1 <= x n=" + std::to_string(n) + ": ");
    }
    Verdict lr = decide_lpn("x^l = x^r", 2, complete_mode());
    fails_verified(lr, "lpn x^l = x^r n=2: ");

    Verdict lex = decide_lpn("x y = y x", 1, complete_mode());
    fails_verified(lex, "lpn x y = y x n=1: ");
    r.expect(lex.witness && lex.witness->space == Witness::Space::FnQxZ, "commutativity witness not lexicographic");
    Verdict fz = decide_fnz("x y = y x", 1, complete_mode());
    r.expect(fz.status == Verdict::Status::Valid, string("fnz x y = y x n=1: ") + status_name(fz.status));
}

struct CorpusEntry {
    const char * text;
    Int n;
};

// Mixed valid and failing equations, each with at most 12 symbols.
const vector<CorpusEntry> agreement_corpus{
    {"1 <= x", 1},
    {"1 <= x", 2},
    {"x <= y", 1},
    {"x x <= x", 2},
    {"1 <= x^(-1) x", 2},
    {"1 <= x x^l", 2},
    {"x^l x <= 1", 2},
    {"x^l^r = x", 2},
    {"x x^l x = x", 1},
    {"x^(2) = x", 1},
    {"x^(2) = x", 2},
    {"x^l = x^r", 1},
    {"x^l = x^r", 2},
    {"1 <= x^l x", 1},
    {"1 <= x^l x", 2},
    {"x <= x | y", 2},
    {"x & y <= x", 2},
    {"x | y = y | x", 1},
    {"x y = y x", 1},
    {"x y <= y x", 2},
};

void oracle_agreement(Report & r)
{
    auto t = Clock::now();
    Rng rng(7007);
    for (auto & c : agreement_corpus) {
        string who = string(c.text) + " n=" + std::to_string(c.n) + ": ";
        r.expect(symbol_count(parse(c.text)) <= 12, who + "too long");
        for (bool lex : {false, true}) {
            string tag = who + (lex ? "lpn " : "fnz ");
            Verdict v = lex ? decide_lpn(c.text, c.n, complete_mode(per_equation_budget))
                            : decide_fnz(c.text, c.n, complete_mode(per_equation_budget));
            auto w = lex ? search_counterexample_lex(c.text, c.n, 3000, rng)
                         : search_counterexample_fnz(c.text, c.n, 3000, rng);
            if (w)
                r.expect(verify_witness(c.text, *w), tag + "oracle witness does not verify");
            if (v.status == Verdict::Status::Valid)
                r.expect(! w, tag + "valid but the oracle found a witness");
            if (v.status == Verdict::Status::Fails)
                r.expect(v.witness && verify_witness(c.text, *v.witness), tag + "witness does not verify");
            r.expect(v.status != Verdict::Status::Unknown, tag + "unknown");
        }
    }
    double s = seconds_since(t);
    r.expect(s < 30 * 60, "took " + std::to_string(s) + "s");
}

WreathElement random_wreath(Rng & rng, Int n)
{
    std::map<Int, PeriodicFn> comps;
    for (size_t k = rng() % 4; k > 0; --k)
        comps[Int(rng() % 9) - 4] = random_periodic_fn(n, 2 * n, rng);
    return WreathElement(n, Int(rng() % 7) - 3, comps);
}

void wreath_representation(Report & r)
{
    Rng rng(8008);
    for (int i = 0; i < 500; ++i) {
        Int n = 1 + i % 3;
        WreathElement a = random_wreath(rng, n), b = random_wreath(rng, n), c = random_wreath(rng, n);
        if (rng() % 2)
            b = WreathElement(n, a.h(), b.comps());
        LexFn fa = iso_to_lexfn(a), fb = iso_to_lexfn(b);
        r.expect(iso_to_lexfn(multiply(a, b)) == compose(fa, fb), "homomorphism");
        r.expect(leq(a, b) == exact_leq(fa, fb), "order");
        r.expect(iso_to_lexfn(linv(a)) == linv(fa), "left inverse");
        r.expect(iso_to_lexfn(rinv(a)) == rinv(fa), "right inverse");
        r.expect(iso_to_lexfn(meet(a, b)) == meet(fa, fb), "meet");
        r.expect(iso_to_lexfn(join(a, b)) == join(fa, fb), "join");
        r.expect(iter_inv(a, 2 * n) == a, "not n-periodic");
        r.expect(meet(a, join(b, c)) == join(meet(a, b), meet(a, c)), "meet over join");
        r.expect(join(a, meet(b, c)) == meet(join(a, b), join(a, c)), "join over meet");
    }

    PregroupWreath x{PeriodicFn(2, {0, 0}), {{0, PeriodicFn::translation(1, -1)}}, 1};
    PregroupWreath back = rinv(linv(x));
    r.expect(leq(back, x) && ! (back == x), "lr round trip is not strictly below");
    PregroupWreath y{PeriodicFn::translation(2, 3), {{0, PeriodicFn::translation(1, -1)}}, 1};
    r.expect(rinv(linv(y)) == y, "lr round trip with invertible global part");
}

void dlp_reduction(Report & r)
{
    r.expect(dlp_n(3) == 648, "dlp_n(3)");
    Verdict v = decide_dlp("1 <= x", 1, complete_mode());
    r.expect(v.status == Verdict::Status::Fails, string("1 <= x with n = 1: ") + status_name(v.status));
    r.expect(v.witness && verify_witness("1 <= x", *v.witness), "witness does not verify");
    r.expect(v.n_exact == dlp_n(2).get_str(), "reported exact n " + v.n_exact);
}

}

int main()
{
    const vector<std::pair<string, std::function<void(Report &)>>> criteria{
        {"algebra laws on random periodic functions", algebra_laws},
        {"decomposition and inverses of the worked example", worked_example},
        {"extension of periodic partial maps", partial_map_extension},
        {"short spacing embeddings", spacing_bounds},
        {"known-valid corpus", known_valid},
        {"known-failing corpus", known_failing},
        {"oracle agreement", oracle_agreement},
        {"wreath representation", wreath_representation},
        {"distributive reduction plumbing", dlp_reduction},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Report r;
        auto t = Clock::now();
        try {
            criteria[i].second(r);
        } catch (const std::exception & e) {
            r.fail(string("exception: ") + e.what());
        }
        failed += r.failures > 0;
        std::printf("criterion %zu %s: %s (%.1fs)%s\n", i + 1, r.failures ? "FAIL" : "PASS", criteria[i].first.c_str(),
                    seconds_since(t), r.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
