#include "lpg/search.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace lpg {

using std::vector;

Int SyntacticUniverse::index_of(const DeltaPoint & p) const
{
    auto it = std::lower_bound(pts.begin(), pts.end(), p);
    if (it == pts.end() || *it != p)
        return -1;
    return Int(it - pts.begin());
}

SyntacticUniverse make_universe(const IntensionalEquation & e)
{
    SyntacticUniverse U;
    U.eq = e;
    U.pts = delta_epsilon(e);
    U.vars = e.vars;
    U.unit = U.index_of(DeltaPoint{});
    for (auto & w : e.joinands)
        U.joinands.push_back(U.index_of(as_point(w)));

    std::map<std::string, Int> var_id;
    for (size_t i = 0; i < U.vars.size(); ++i)
        var_id[U.vars[i]] = Int(i);

    using K = SyntacticUniverse::Kind;
    for (auto & p : U.pts) {
        SyntacticUniverse::Info in{K::Unit};
        if (! p.toks.empty()) {
            DeltaPoint rest{vector<DToken>(p.toks.begin() + 1, p.toks.end())};
            in.rest = U.index_of(rest);
            const DToken & t = p.toks[0];
            if (t.kind == DToken::Kind::Fac) {
                in.kind = K::Fac;
                in.var = var_id.at(t.var);
                in.m = t.m;
            } else {
                in.kind = t.kind == DToken::Kind::Up ? K::Up : K::Down;
            }
        }
        U.info.push_back(in);
    }
    return U;
}

CompatibleSurjection induced(const SyntacticUniverse & U, const vector<Int> & phi)
{
    using K = SyntacticUniverse::Kind;
    CompatibleSurjection s;
    s.phi = phi;
    s.chain.q = phi.empty() ? 0 : *std::max_element(phi.begin(), phi.end()) + 1;
    s.g.assign(U.vars.size(), {});
    for (size_t i = 0; i < phi.size(); ++i) {
        auto & in = U.info[i];
        if (in.kind == K::Up)
            s.chain.covers.insert(phi[in.rest]);
        else if (in.kind == K::Down)
            s.chain.covers.insert(phi[i]);
        else if (in.kind == K::Fac && in.m == 0)
            s.g[in.var][phi[in.rest]] = phi[i];
    }
    return s;
}

bool is_compatible(const SyntacticUniverse & U, const vector<Int> & phi)
{
    using K = SyntacticUniverse::Kind;
    if (phi.size() != U.pts.size())
        return false;
    CompatibleSurjection s = induced(U, phi);
    vector<bool> hit(s.chain.q, false);
    for (Int v : phi) {
        if (v < 0)
            return false;
        hit[v] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        return false;

    for (size_t i = 0; i < phi.size(); ++i) {
        auto & in = U.info[i];
        if (in.kind == K::Up && phi[in.rest] + 1 != phi[i])
            return false;
        if (in.kind == K::Down && phi[i] + 1 != phi[in.rest])
            return false;
        if (in.kind == K::Fac && in.m == 0 && s.g[in.var].at(phi[in.rest]) != phi[i])
            return false;
    }
    for (auto & g : s.g)
        if (! is_order_preserving(g))
            return false;

    std::map<std::pair<Int, Int>, PartialFn> iter;
    for (size_t i = 0; i < phi.size(); ++i) {
        auto & in = U.info[i];
        if (in.kind != K::Fac || in.m == 0)
            continue;
        auto key = std::make_pair(in.var, in.m);
        if (! iter.count(key))
            iter[key] = iter_bracket(s.g[in.var], in.m, s.chain);
        auto & h = iter[key];
        auto it = h.find(phi[in.rest]);
        if (it == h.end() || it->second != phi[i])
            return false;
    }
    return true;
}

bool fails_in(const SyntacticUniverse & U, const CompatibleSurjection & s)
{
    for (Int j : U.joinands)
        if (s.phi[j] >= s.phi[U.unit])
            return false;
    return true;
}

namespace {

    using K = SyntacticUniverse::Kind;

    struct Constraint {
        enum class Type { Cover, Pair, Bracket, Below } type;
        Int a = -1, b = -1, c = -1;  // cover a ⋖ b; pair index a; bracket a, b, c
        bool strict_low = true;
    };

    // Ordered partitions built by inserting points one at a time. Relative
    // order among placed points never changes afterwards, so each constraint
    // is checked once, when its last point is placed.
    class Enumerator {
    public:
        Enumerator(const SyntacticUniverse & U, const SurjectionOptions & opt,
                   const std::function<bool(const CompatibleSurjection &)> & visit)
            : U_(U), opt_(opt), visit_(visit)
        {
            Int N = Int(U.pts.size());
            at_.assign(N, {});
            pos_.assign(N, -1);
            build();
            choose_order();
            for (auto & [c, pts] : pending_) {
                if (c.type == Constraint::Type::Bracket) {
                    std::set<Int> uniq(pts.begin(), pts.end());
                    for (Int p : uniq)
                        at_[p].push_back(c);
                    continue;
                }
                Int last = pts[0];
                for (Int p : pts)
                    if (rank_[p] > rank_[last])
                        last = p;
                at_[last].push_back(c);
            }
        }

        SurjectionStats run()
        {
            dfs(0);
            return stats_;
        }

    private:
        void add(Constraint c, vector<Int> pts) { pending_.push_back({c, std::move(pts)}); }

        // Greedy: next is the point closing the most constraints, then the
        // one touching the most partly placed constraints, then the shortest.
        void choose_order()
        {
            Int N = Int(U_.pts.size());
            vector<vector<Int>> touching(N);
            for (size_t k = 0; k < pending_.size(); ++k)
                for (Int p : pending_[k].second)
                    touching[p].push_back(Int(k));
            vector<Int> missing(pending_.size());
            for (size_t k = 0; k < pending_.size(); ++k)
                missing[k] = Int(std::set<Int>(pending_[k].second.begin(), pending_[k].second.end()).size());
            vector<bool> done(N, false);
            rank_.assign(N, 0);
            for (Int r = 0; r < N; ++r) {
                Int best = -1;
                std::tuple<Int, Int, Int> best_key;
                for (Int p = 0; p < N; ++p) {
                    if (done[p])
                        continue;
                    Int closes = 0, partial = 0;
                    for (Int k : touching[p]) {
                        closes += missing[k] == 1;
                        partial += missing[k] < Int(pending_[k].second.size());
                    }
                    std::tuple<Int, Int, Int> key{closes, partial, -Int(U_.pts[p].toks.size())};
                    if (r == 0)
                        key = {p == U_.unit, 0, 0};
                    if (best < 0 || key > best_key) {
                        best = p;
                        best_key = key;
                    }
                }
                done[best] = true;
                rank_[best] = r;
                order_.push_back(best);
                std::set<Int> seen;
                for (Int k : touching[best])
                    if (seen.insert(k).second)
                        --missing[k];
            }
        }

        void build()
        {
            for (size_t i = 0; i < U_.pts.size(); ++i) {
                auto & in = U_.info[i];
                Int p = Int(i);
                if (in.kind == K::Up)
                    add({Constraint::Type::Cover, in.rest, p}, {in.rest, p});
                else if (in.kind == K::Down)
                    add({Constraint::Type::Cover, p, in.rest}, {p, in.rest});
                if (in.kind == K::Fac) {
                    // every g^[m] is an order-preserving function
                    Int id = Int(pairs_.size());
                    pairs_.push_back({in.var, in.m, in.rest, p});
                    add({Constraint::Type::Pair, id}, {in.rest, p});
                }
                if (in.kind == K::Fac && in.m != 0) {
                    // neighbours of x^(m)u one level down
                    Int m = in.m, step = m > 0 ? -1 : 1;
                    auto deco = m > 0 ? DToken::Kind::Down : DToken::Kind::Up;
                    const auto & toks = U_.pts[i].toks;
                    DToken inner{DToken::Kind::Fac, U_.vars[in.var], m + step};
                    DToken mark{deco, {}, 0};
                    DeltaPoint dec{{mark}}, same{{inner}}, across{{inner, mark}};
                    dec.toks.insert(dec.toks.end(), toks.begin(), toks.end());
                    same.toks.insert(same.toks.end(), toks.begin(), toks.end());
                    across.toks.insert(across.toks.end(), toks.begin(), toks.end());
                    Int a = U_.index_of(across), b = U_.index_of(same);
                    if (U_.index_of(dec) < 0 || a < 0 || b < 0)
                        continue;  // left to the final check
                    if (m < 0)
                        std::swap(a, b);
                    Constraint c{Constraint::Type::Bracket, a, in.rest, b, m > 0};
                    add(c, {a, in.rest, b});
                }
            }
            if (opt_.only_failing)
                for (Int j : U_.joinands)
                    add({Constraint::Type::Below, j, U_.unit}, {j, U_.unit});
        }

        bool check(const Constraint & c)
        {
            switch (c.type) {
            case Constraint::Type::Cover:
                if (pos_[c.b] != pos_[c.a] + 1)
                    return false;
                if (! locked_[pos_[c.a]]) {
                    locked_[pos_[c.a]] = true;
                    lock_log_.push_back(c.a);
                }
                return true;
            case Constraint::Type::Pair: {
                auto & P = pairs_[c.a];
                for (size_t k = 0; k < pairs_.size(); ++k) {
                    auto & Q = pairs_[k];
                    if (Int(k) == c.a || Q.var != P.var || Q.m != P.m || pos_[Q.u] < 0 || pos_[Q.w] < 0)
                        continue;
                    Int du = pos_[P.u] - pos_[Q.u], dw = pos_[P.w] - pos_[Q.w];
                    if ((du < 0 && dw > 0) || (du > 0 && dw < 0) || (du == 0 && dw != 0))
                        return false;
                }
                return true;
            }
            case Constraint::Type::Bracket: {
                // checked as soon as any two of the three are placed
                Int lo = pos_[c.a], x = pos_[c.b], hi = pos_[c.c];
                if (lo >= 0 && hi >= 0 && lo >= hi)
                    return false;
                if (lo >= 0 && x >= 0 && (c.strict_low ? lo >= x : lo > x))
                    return false;
                if (x >= 0 && hi >= 0 && (c.strict_low ? x > hi : x >= hi))
                    return false;
                return true;
            }
            case Constraint::Type::Below:
                return pos_[c.a] < pos_[c.b];
            }
            return false;
        }

        // Places order_[k] at pos_ (already set), checks, recurses, and rolls back locks.
        bool step(Int k)
        {
            Int p = order_[k];
            size_t mark = lock_log_.size();
            bool ok = true;
            for (auto & c : at_[p])
                if (! check(c)) {
                    ok = false;
                    break;
                }
            bool go_on = true;
            if (ok)
                go_on = dfs(k + 1);
            while (lock_log_.size() > mark) {
                locked_[pos_[lock_log_.back()]] = false;
                lock_log_.pop_back();
            }
            return go_on;
        }

        bool dfs(Int k)
        {
            if (stats_.stopped)
                return false;
            if (opt_.node_limit && stats_.nodes >= opt_.node_limit) {
                stats_.stopped = true;
                return false;
            }
            ++stats_.nodes;
            if (k == Int(order_.size()))
                return emit();
            Int p = order_[k];
            Int nb = Int(locked_.size());
            for (Int b = 0; b < nb; ++b) {
                pos_[p] = b;
                if (! step(k)) {
                    pos_[p] = -1;
                    return false;
                }
            }
            pos_[p] = -1;
            for (Int g = 0; g <= nb; ++g) {
                if (g > 0 && locked_[g - 1])
                    continue;
                for (auto & v : pos_)
                    if (v >= g)
                        ++v;
                locked_.insert(locked_.begin() + g, false);
                pos_[p] = g;
                bool go_on = step(k);
                pos_[p] = -1;
                locked_.erase(locked_.begin() + g);
                for (auto & v : pos_)
                    if (v > g)
                        --v;
                if (! go_on)
                    return false;
            }
            pos_[p] = -1;
            return true;
        }

        bool emit()
        {
            if (! is_compatible(U_, pos_)) {
                ++stats_.global_rejects;
                return true;
            }
            CompatibleSurjection s = induced(U_, pos_);
            if (opt_.only_failing && ! fails_in(U_, s))
                return true;
            ++stats_.emitted;
            if (! visit_(s)) {
                stats_.stopped = true;
                return false;
            }
            return true;
        }

        struct Pair {
            Int var, m, u, w;
        };

        const SyntacticUniverse & U_;
        SurjectionOptions opt_;
        const std::function<bool(const CompatibleSurjection &)> & visit_;
        vector<Int> order_, rank_, pos_;
        vector<vector<Constraint>> at_;
        vector<Pair> pairs_;
        vector<std::pair<Constraint, vector<Int>>> pending_;
        vector<char> locked_;
        vector<Int> lock_log_;
        SurjectionStats stats_;
    };

}

SurjectionStats enumerate_compatible_surjections(const SyntacticUniverse & U, const SurjectionOptions & opt,
                                                 const std::function<bool(const CompatibleSurjection &)> & visit)
{
    return Enumerator(U, opt, visit).run();
}

namespace {

    bool any_cut(const vector<bool> & cuts, Int a, Int b)
    {
        for (Int k = a + 1; k <= b; ++k)
            if (cuts[k])
                return true;
        return false;
    }

}

bool valid_partition(const CompatibleSurjection & s, const vector<bool> & cuts)
{
    for (Int a : s.chain.covers)
        if (cuts[a + 1])
            return false;
    for (auto & g : s.g)
        for (auto i = g.begin(); i != g.end(); ++i)
            for (auto j = std::next(i); j != g.end(); ++j)
                if (any_cut(cuts, i->first, j->first) != any_cut(cuts, i->second, j->second))
                    return false;
    return true;
}

vector<vector<bool>> valid_partitions(const CompatibleSurjection & s)
{
    vector<vector<bool>> out;
    Int q = s.chain.q;
    if (q == 0)
        return out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (q - 1)); ++mask) {
        vector<bool> cuts(q, false);
        for (Int k = 1; k < q; ++k)
            cuts[k] = mask >> (k - 1) & 1;
        if (valid_partition(s, cuts))
            out.push_back(cuts);
    }
    return out;
}

vector<bool> finest_partition(const CompatibleSurjection & s)
{
    // Valid cut sets are closed under union; shrink from all cuts until stable.
    Int q = s.chain.q;
    vector<bool> cuts(std::max<Int>(q, 1), true);
    cuts[0] = false;
    for (Int a : s.chain.covers)
        cuts[a + 1] = false;
    auto clear = [&](Int a, Int b) {
        bool changed = false;
        for (Int k = a + 1; k <= b; ++k)
            if (cuts[k]) {
                cuts[k] = false;
                changed = true;
            }
        return changed;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (auto & g : s.g)
            for (auto i = g.begin(); i != g.end(); ++i)
                for (auto j = std::next(i); j != g.end(); ++j) {
                    bool dom = any_cut(cuts, i->first, j->first), img = any_cut(cuts, i->second, j->second);
                    if (dom && ! img)
                        changed = clear(i->first, j->first) || changed;
                    else if (img && ! dom)
                        changed = clear(i->second, j->second) || changed;
                }
    }
    return cuts;
}

PartitionDiagram make_partition_diagram(const CompatibleSurjection & s, const vector<bool> & cuts)
{
    PartitionDiagram d{s, {}, 0};
    for (Int k = 0; k < s.chain.q; ++k) {
        if (k == 0 || cuts[k])
            ++d.nblocks;
        d.block.push_back(d.nblocks - 1);
    }
    return d;
}

Int PartitionDiagram::offset(Int x) const
{
    Int k = x;
    while (k > 0 && block[k - 1] == block[x])
        --k;
    return x - k;
}

IntMap PartitionDiagram::tilde(Int var) const
{
    IntMap out;
    for (auto [x, y] : s.g[var])
        out[block[x]] = block[y];
    return out;
}

IntMap PartitionDiagram::local(Int var, Int j) const
{
    IntMap out;
    for (auto [x, y] : s.g[var])
        if (block[x] == j)
            out[offset(x)] = offset(y);
    return out;
}

}
