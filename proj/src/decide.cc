#include "lpg/decide.hh"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace lpg {

using std::string;
using std::vector;

namespace {

    template <class F, class P>
    P eval_word(const Word & w, const std::map<string, F> & asg, std::map<std::pair<string, Int>, F> & cache, P p)
    {
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            auto key = std::make_pair(it->var, Int(it->m));
            auto c = cache.find(key);
            if (c == cache.end())
                c = cache.emplace(key, iter_inv(asg.at(it->var), it->m)).first;
            p = c->second(p);
        }
        return p;
    }

    template <class F>
    void require_vars(const IntensionalEquation & eq, const std::map<string, F> & asg)
    {
        for (auto & x : eq.vars)
            if (! asg.count(x))
                throw ConfigError("assignment misses variable " + x);
    }

    // Values of every Fac point under the realized functions must match the diagram.
    template <class F, class P, class Pos>
    void check_realization(const SyntacticUniverse & U, const CompatibleSurjection & s,
                           const std::map<string, F> & asg, Pos pos)
    {
        std::map<std::pair<string, Int>, F> cache;
        for (size_t i = 0; i < U.pts.size(); ++i) {
            auto & in = U.info[i];
            if (in.kind != SyntacticUniverse::Kind::Fac)
                continue;
            Word w{{U.vars[in.var], in.m}};
            P got = eval_word(w, asg, cache, pos(s.phi[in.rest]));
            if (! (got == pos(s.phi[i])))
                throw std::logic_error("realized functions disagree with the diagram at " + U.pts[i].str());
        }
    }

    struct Attempt {
        std::optional<Witness> w;
        bool exhausted = true;
        std::uint64_t residue_nodes = 0, lp_nodes = 0;
    };

    Z cap_for(const DecideOptions & opt, Int q, Int n) { return opt.complete ? nu(q, n) : practical_cap(q, n); }

    Attempt try_fnz(const SyntacticUniverse & U, const CompatibleSurjection & s, Int n, const DecideOptions & opt)
    {
        auto r = find_witness_embedding(s.g, s.chain, n, cap_for(opt, s.chain.q, n), {}, opt.lp_node_limit);
        Attempt a{{}, r.exhausted, r.residue_nodes, r.lp_nodes};
        if (r.e)
            a.w = realize_fnz_witness(U, s, *r.e, n);
        return a;
    }

    Attempt try_lpn(const SyntacticUniverse & U, const CompatibleSurjection & s, Int n, const DecideOptions & opt)
    {
        PartitionDiagram pd = make_partition_diagram(s, finest_partition(s));
        auto r = find_witness_embedding(s.g, s.chain, n, cap_for(opt, s.chain.q, n), pd.block, opt.lp_node_limit);
        Attempt a{{}, r.exhausted, r.residue_nodes, r.lp_nodes};
        if (r.e)
            a.w = realize_lex_witness(U, pd, *r.e, n);
        return a;
    }

    using TryFn = Attempt (*)(const SyntacticUniverse &, const CompatibleSurjection &, Int, const DecideOptions &);

    // Runs a chunk in parallel; the witness reported is the one with the
    // smallest index, so the result does not depend on scheduling.
    std::optional<Witness> run_chunk(const SyntacticUniverse & U, const vector<CompatibleSurjection> & chunk, Int n,
                                     const DecideOptions & opt, TryFn attempt, DecideStats & stats, bool & certain)
    {
        vector<std::optional<Attempt>> out(chunk.size());
        std::atomic<size_t> next{0}, best{chunk.size()};
        std::exception_ptr err;
        std::mutex err_mu;
        auto work = [&]() {
            for (;;) {
                size_t i = next++;
                if (i >= chunk.size())
                    return;
                if (i > best.load())
                    continue;
                try {
                    out[i] = attempt(U, chunk[i], n, opt);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (! err)
                        err = std::current_exception();
                    best = 0;
                    return;
                }
                if (out[i]->w) {
                    size_t b = best.load();
                    while (i < b && ! best.compare_exchange_weak(b, i))
                        ;
                }
            }
        };
        unsigned jobs = std::max(1u, opt.jobs);
        if (jobs == 1)
            work();
        else {
            vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t)
                pool.emplace_back(work);
            for (auto & t : pool)
                t.join();
        }
        if (err)
            std::rethrow_exception(err);
        size_t b = best.load();
        for (size_t i = 0; i < chunk.size(); ++i) {
            if (! out[i] || i > b)
                continue;
            ++stats.embedding_searches;
            stats.residue_nodes += out[i]->residue_nodes;
            stats.lp_nodes += out[i]->lp_nodes;
            certain = certain && out[i]->exhausted;
        }
        if (b < chunk.size())
            return out[b]->w;
        return std::nullopt;
    }

    Verdict run(const string & theory, const string & text, Int n, const DecideOptions & opt, TryFn attempt)
    {
        auto t0 = std::chrono::steady_clock::now();
        if (n < 1)
            throw ConfigError("n must be positive");
        Verdict v;
        v.theory = theory;
        v.n = n;
        v.equation = text;
        v.complete = opt.complete;
        bool certain = true;
        const size_t chunk_size = 64 * std::max(1u, opt.jobs);
        for (auto & eq : normalize(text)) {
            SyntacticUniverse U = make_universe(eq);
            SurjectionOptions so;
            so.only_failing = true;
            so.node_limit = opt.budget;
            vector<CompatibleSurjection> chunk;
            std::optional<Witness> found;
            auto flush = [&]() {
                if (! chunk.empty())
                    found = run_chunk(U, chunk, n, opt, attempt, v.stats, certain);
                chunk.clear();
                return ! found;
            };
            auto st = enumerate_compatible_surjections(U, so, [&](const CompatibleSurjection & s) {
                ++v.stats.failing_candidates;
                chunk.push_back(s);
                return chunk.size() < chunk_size || flush();
            });
            if (! found)
                flush();
            v.stats.enumeration_nodes += st.nodes;
            if (found) {
                v.status = Verdict::Status::Fails;
                v.witness = found;
                break;
            }
            if (st.stopped)
                certain = false;
        }
        if (! v.witness)
            v.status = opt.complete && certain ? Verdict::Status::Valid : Verdict::Status::Unknown;
        v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return v;
    }

}

Verdict decide_fnz(const string & equation, Int n, const DecideOptions & opt)
{
    return run("fnz", equation, n, opt, &try_fnz);
}

Verdict decide_lpn(const string & equation, Int n, const DecideOptions & opt)
{
    return run("lpn", equation, n, opt, &try_lpn);
}

Z dlp_n(std::int64_t len)
{
    Z len4 = Z(len) * len * len * len;
    Z p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(len));
    return p * len4;
}

Verdict decide_dlp(const string & equation, std::optional<Int> n_override, const DecideOptions & opt)
{
    Z exact = dlp_n(symbol_count(parse(equation)));
    Int n;
    if (n_override)
        n = *n_override;
    else if (exact > opt.dlp_threshold && ! opt.force)
        throw ConfigError("the reduction needs n = " + exact.get_str() + "; pass an explicit n override or force");
    else if (! exact.fits_slong_p())
        throw ConfigError("n = " + exact.get_str() + " does not fit a machine integer");
    else
        n = exact.get_si();
    Verdict v = decide_fnz(equation, n, opt);
    v.theory = "dlp";
    v.n_exact = exact.get_str();
    return v;
}

Witness realize_fnz_witness(const SyntacticUniverse & U, const CompatibleSurjection & s, const SpacingEmbedding & e,
                            Int n)
{
    Witness w;
    w.space = Witness::Space::FnZ;
    w.n = n;
    w.inequality = U.eq.str();
    for (size_t v = 0; v < U.vars.size(); ++v)
        w.fz.emplace(U.vars[v], extend_partial(counterpart(s.g[v], e), n, true));
    w.point = {0, e.pos[s.phi[U.unit]]};
    check_realization<PeriodicFn, Int>(U, s, w.fz, [&](Int a) { return e.pos[a]; });
    w.values = joinand_values(U.eq, w);
    if (! verify_witness(U.eq, w))
        throw std::logic_error("realized F_n(Z) witness does not verify");
    return w;
}

Witness realize_lex_witness(const SyntacticUniverse & U, const PartitionDiagram & pd, const SpacingEmbedding & e,
                            Int n)
{
    const CompatibleSurjection & s = pd.s;
    Witness w;
    w.space = Witness::Space::FnQxZ;
    w.n = n;
    w.inequality = U.eq.str();
    // block i sits at the rational i
    for (size_t v = 0; v < U.vars.size(); ++v) {
        vector<std::pair<Q, Q>> pts;
        for (auto [a, b] : pd.tilde(Int(v)))
            pts.push_back({Q(a), Q(b)});
        std::map<Q, PeriodicFn> comps;
        for (auto [j, k] : pd.tilde(Int(v))) {
            IntMap h;
            for (auto [x, y] : s.g[v])
                if (pd.block[x] == j)
                    h[e.pos[x]] = e.pos[y];
            comps.emplace(Q(j), extend_partial(h, n));
        }
        w.fl.emplace(U.vars[v], LexFn(n, PLBijection::through(pts), comps));
    }
    auto pos = [&](Int a) { return LexPoint{Q(pd.block[a]), e.pos[a]}; };
    w.point = pos(s.phi[U.unit]);
    check_realization<LexFn, LexPoint>(U, s, w.fl, pos);
    w.values = joinand_values(U.eq, w);
    if (! verify_witness(U.eq, w))
        throw std::logic_error("realized F_n(QxZ) witness does not verify");
    return w;
}

vector<LexPoint> joinand_values(const IntensionalEquation & eq, const Witness & w)
{
    vector<LexPoint> values;
    if (w.space == Witness::Space::FnZ) {
        require_vars(eq, w.fz);
        std::map<std::pair<string, Int>, PeriodicFn> cache;
        for (auto & word : eq.joinands)
            values.push_back({0, eval_word(word, w.fz, cache, w.point.r)});
    } else {
        require_vars(eq, w.fl);
        std::map<std::pair<string, Int>, LexFn> cache;
        for (auto & word : eq.joinands)
            values.push_back(eval_word(word, w.fl, cache, w.point));
    }
    return values;
}

bool verify_witness(const IntensionalEquation & eq, const Witness & w)
{
    for (auto & p : joinand_values(eq, w))
        if (! (p < w.point))
            return false;
    return true;
}

bool verify_witness(const string & equation, const Witness & w)
{
    for (auto & eq : normalize(equation))
        if (verify_witness(eq, w))
            return true;
    return false;
}

Json to_json(const Witness & w)
{
    Json j;
    bool z = w.space == Witness::Space::FnZ;
    j["space"] = z ? "FnZ" : "FnQxZ";
    j["n"] = w.n;
    j["inequality"] = w.inequality;
    Json asg = Json::object();
    if (z)
        for (auto & [x, f] : w.fz)
            asg[x] = to_json(f);
    else
        for (auto & [x, f] : w.fl)
            asg[x] = to_json(f);
    j["assignment"] = asg;
    auto pt = [&](const LexPoint & p) -> Json {
        if (z)
            return p.r;
        return {{"j", q_str(p.j)}, {"r", p.r}};
    };
    j["point"] = pt(w.point);
    j["values"] = Json::array();
    for (auto & p : w.values)
        j["values"].push_back(pt(p));
    return j;
}

Witness witness_from_json(const Json & j)
{
    Witness w;
    string space = j.at("space").get<string>();
    if (space != "FnZ" && space != "FnQxZ")
        throw ConfigError("unknown witness space " + space);
    w.space = space == "FnZ" ? Witness::Space::FnZ : Witness::Space::FnQxZ;
    w.n = j.at("n").get<Int>();
    w.inequality = j.value("inequality", "");
    for (auto & [x, f] : j.at("assignment").items()) {
        if (w.space == Witness::Space::FnZ)
            w.fz.emplace(x, periodic_from_json(f));
        else
            w.fl.emplace(x, lex_from_json(f));
    }
    auto pt = [&](const Json & p) -> LexPoint {
        if (w.space == Witness::Space::FnZ)
            return {0, p.get<Int>()};
        return {q_from_json(p.at("j")), p.at("r").get<Int>()};
    };
    w.point = pt(j.at("point"));
    if (j.contains("values"))
        for (auto & p : j.at("values"))
            w.values.push_back(pt(p));
    return w;
}

const char * status_name(Verdict::Status s)
{
    switch (s) {
    case Verdict::Status::Valid:
        return "valid";
    case Verdict::Status::Fails:
        return "fails";
    case Verdict::Status::Unknown:
        return "unknown";
    }
    return "unknown";
}

int exit_code(const Verdict & v)
{
    switch (v.status) {
    case Verdict::Status::Valid:
        return 0;
    case Verdict::Status::Fails:
        return 1;
    case Verdict::Status::Unknown:
        return 2;
    }
    return 2;
}

// Wall-clock time is left out so that repeated runs print identical JSON.
Json to_json(const Verdict & v)
{
    Json j;
    j["theory"] = v.theory;
    j["n"] = v.n;
    if (! v.n_exact.empty())
        j["n_exact"] = v.n_exact;
    j["equation"] = v.equation;
    j["verdict"] = status_name(v.status);
    j["mode"] = v.complete ? "complete" : "capped";
    j["witness"] = v.witness ? to_json(*v.witness) : Json();
    j["stats"] = {{"enumeration_nodes", v.stats.enumeration_nodes},
                  {"failing_candidates", v.stats.failing_candidates},
                  {"embedding_searches", v.stats.embedding_searches},
                  {"residue_nodes", v.stats.residue_nodes},
                  {"lp_nodes", v.stats.lp_nodes}};
    return j;
}

}
