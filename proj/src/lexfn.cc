#include "lpg/lexfn.hh"

#include <algorithm>
#include <functional>
#include <set>

namespace lpg {

using std::vector;
using Piece = PLBijection::Piece;

namespace {

    Q eval_piece(const Piece & p, const Q & x) { return p.slope * x + p.intercept; }

    Q sample_in(const vector<Q> & bps, size_t k)
    {
        if (bps.empty())
            return 0;
        if (k == 0)
            return bps.front() - 1;
        if (k == bps.size())
            return bps.back() + 1;
        return (bps[k - 1] + bps[k]) / 2;
    }

    // One piece per interval of the sorted candidate breakpoints.
    PLBijection assemble(vector<Q> bps, const std::function<Piece(const Q &)> & piece_for)
    {
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        PLBijection out;
        out.breakpoints = bps;
        out.pieces.clear();
        for (size_t k = 0; k <= bps.size(); ++k)
            out.pieces.push_back(piece_for(sample_in(bps, k)));
        return simplified(out);
    }

    vector<Q> with_crossings(const PLBijection & f, const PLBijection & g)
    {
        vector<Q> bps = f.breakpoints;
        bps.insert(bps.end(), g.breakpoints.begin(), g.breakpoints.end());
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        vector<Q> out = bps;
        for (size_t k = 0; k <= bps.size(); ++k) {
            Q s = sample_in(bps, k);
            const Piece & a = f.piece_at(s);
            const Piece & b = g.piece_at(s);
            if (a.slope == b.slope)
                continue;
            Q x = (b.intercept - a.intercept) / (a.slope - b.slope);
            bool above = k == 0 || x > bps[k - 1];
            bool below = k == bps.size() || x < bps[k];
            if (above && below)
                out.push_back(x);
        }
        return out;
    }

    PLBijection interpolate(const vector<std::pair<Q, Q>> & pts)
    {
        PLBijection f;
        f.pieces.clear();
        f.pieces.push_back({1, pts[0].second - pts[0].first});
        for (size_t i = 0; i < pts.size(); ++i) {
            f.breakpoints.push_back(pts[i].first);
            if (i > 0) {
                Q s = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
                f.pieces.push_back({s, pts[i].second - s * pts[i].first});
            }
        }
        f.pieces.push_back({1, pts.back().second - pts.back().first});
        if (! f.valid())
            throw std::invalid_argument("interpolation points are not increasing");
        return simplified(f);
    }

}

PLBijection::PLBijection() : pieces{{1, 0}} {}

PLBijection PLBijection::translation(const Q & t)
{
    PLBijection f;
    f.pieces[0].intercept = t;
    return f;
}

PLBijection PLBijection::through(const vector<std::pair<Q, Q>> & pts)
{
    PLBijection f;
    if (pts.empty())
        return f;
    auto pts_c = pts;
    for (auto & [x, y] : pts_c) {
        x.canonicalize();
        y.canonicalize();
    }
    return interpolate(pts_c);
}

const Piece & PLBijection::piece_at(const Q & x) const
{
    size_t i = std::lower_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
    return pieces[i];
}

Q PLBijection::operator()(const Q & x) const { return eval_piece(piece_at(x), x); }

bool PLBijection::is_identity() const
{
    for (auto & p : pieces)
        if (p.slope != 1 || p.intercept != 0)
            return false;
    return true;
}

bool PLBijection::valid() const
{
    if (pieces.size() != breakpoints.size() + 1)
        return false;
    for (auto & p : pieces)
        if (p.slope <= 0)
            return false;
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        if (i > 0 && breakpoints[i - 1] >= breakpoints[i])
            return false;
        if (eval_piece(pieces[i], breakpoints[i]) != eval_piece(pieces[i + 1], breakpoints[i]))
            return false;
    }
    return true;
}

PLBijection simplified(PLBijection f)
{
    PLBijection out;
    out.pieces = {f.pieces[0]};
    for (size_t i = 0; i < f.breakpoints.size(); ++i) {
        if (f.pieces[i + 1] == out.pieces.back())
            continue;
        out.breakpoints.push_back(f.breakpoints[i]);
        out.pieces.push_back(f.pieces[i + 1]);
    }
    return out;
}

PLBijection compose(const PLBijection & f, const PLBijection & g)
{
    PLBijection gi = inverse(g);
    vector<Q> bps = g.breakpoints;
    for (auto & b : f.breakpoints)
        bps.push_back(gi(b));
    return assemble(bps, [&](const Q & s) {
        const Piece & pg = g.piece_at(s);
        const Piece & pf = f.piece_at(eval_piece(pg, s));
        return Piece{pf.slope * pg.slope, pf.slope * pg.intercept + pf.intercept};
    });
}

PLBijection inverse(const PLBijection & f)
{
    PLBijection out;
    out.pieces.clear();
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        if (i < f.breakpoints.size())
            out.breakpoints.push_back(f(f.breakpoints[i]));
        out.pieces.push_back({1 / f.pieces[i].slope, -f.pieces[i].intercept / f.pieces[i].slope});
    }
    return out;
}

PLBijection pointwise_min(const PLBijection & f, const PLBijection & g)
{
    return assemble(with_crossings(f, g), [&](const Q & s) { return f(s) <= g(s) ? f.piece_at(s) : g.piece_at(s); });
}

PLBijection pointwise_max(const PLBijection & f, const PLBijection & g)
{
    return assemble(with_crossings(f, g), [&](const Q & s) { return f(s) >= g(s) ? f.piece_at(s) : g.piece_at(s); });
}

bool leq_everywhere(const PLBijection & f, const PLBijection & g)
{
    return pointwise_min(f, g) == simplified(f);
}

LexFn::LexFn(Int n) : n_(n)
{
    if (n < 1)
        throw PeriodError("period must be positive");
}

LexFn::LexFn(Int n, PLBijection tilde, std::map<Q, PeriodicFn> comps) : n_(n), tilde_(simplified(std::move(tilde)))
{
    if (n < 1)
        throw PeriodError("period must be positive");
    if (! tilde_.valid())
        throw std::invalid_argument("global part is not an increasing bijection");
    PeriodicFn id = PeriodicFn::identity(n);
    for (auto & [j, f] : comps) {
        if (f.period() != n)
            throw PeriodError("component period differs from n");
        Q key = j;
        key.canonicalize();
        if (f != id)
            comps_.emplace(key, f);
    }
}

PeriodicFn LexFn::comp(const Q & j) const
{
    auto it = comps_.find(j);
    return it == comps_.end() ? PeriodicFn::identity(n_) : it->second;
}

LexPoint LexFn::operator()(const LexPoint & p) const { return {tilde_(p.j), comp(p.j)(p.r)}; }

namespace {

    void same_period(const LexFn & f, const LexFn & g)
    {
        if (f.period() != g.period())
            throw PeriodError("period mismatch");
    }

    std::set<Q> support_union(const LexFn & f, const LexFn & g)
    {
        std::set<Q> s;
        for (auto & [j, c] : f.comps())
            s.insert(j);
        for (auto & [j, c] : g.comps())
            s.insert(j);
        return s;
    }

    LexFn residual(const LexFn & f, PeriodicFn (*inv)(const PeriodicFn &))
    {
        std::map<Q, PeriodicFn> comps;
        for (auto & [j, c] : f.comps())
            comps.emplace(f.tilde()(j), inv(c));
        return LexFn(f.period(), inverse(f.tilde()), comps);
    }

    template <class Pick>
    LexFn lattice_op(const LexFn & f, const LexFn & g, const PLBijection & tilde, Pick pick)
    {
        same_period(f, g);
        std::map<Q, PeriodicFn> comps;
        for (auto & j : support_union(f, g))
            comps.emplace(j, pick(f.tilde()(j), g.tilde()(j), f.comp(j), g.comp(j)));
        return LexFn(f.period(), tilde, comps);
    }

}

LexFn compose(const LexFn & f, const LexFn & g)
{
    same_period(f, g);
    std::set<Q> keys;
    for (auto & [j, c] : g.comps())
        keys.insert(j);
    PLBijection gi = inverse(g.tilde());
    for (auto & [j, c] : f.comps())
        keys.insert(gi(j));
    std::map<Q, PeriodicFn> comps;
    for (auto & j : keys)
        comps.emplace(j, compose(f.comp(g.tilde()(j)), g.comp(j)));
    return LexFn(f.period(), compose(f.tilde(), g.tilde()), comps);
}

LexFn linv(const LexFn & f) { return residual(f, static_cast<PeriodicFn (*)(const PeriodicFn &)>(&linv)); }
LexFn rinv(const LexFn & f) { return residual(f, static_cast<PeriodicFn (*)(const PeriodicFn &)>(&rinv)); }

LexFn iter_inv(const LexFn & f, Int m)
{
    LexFn h = f;
    for (Int i = 0; i < std::abs(m); ++i)
        h = m > 0 ? linv(h) : rinv(h);
    return h;
}

LexFn meet(const LexFn & f, const LexFn & g)
{
    return lattice_op(f, g, pointwise_min(f.tilde(), g.tilde()),
                      [](const Q & a, const Q & b, const PeriodicFn & x, const PeriodicFn & y) {
                          return a < b ? x : b < a ? y : meet(x, y);
                      });
}

LexFn join(const LexFn & f, const LexFn & g)
{
    return lattice_op(f, g, pointwise_max(f.tilde(), g.tilde()),
                      [](const Q & a, const Q & b, const PeriodicFn & x, const PeriodicFn & y) {
                          return a > b ? x : b > a ? y : join(x, y);
                      });
}

bool leq_sampled(const LexFn & f, const LexFn & g, const vector<LexPoint> & sample)
{
    for (auto & p : sample)
        if (g(p) < f(p))
            return false;
    return true;
}

bool exact_leq(const LexFn & f, const LexFn & g)
{
    same_period(f, g);
    if (! leq_everywhere(f.tilde(), g.tilde()))
        return false;
    // identity components agree, so only supported coordinates with equal images matter
    for (auto & j : support_union(f, g))
        if (f.tilde()(j) == g.tilde()(j) && ! leq(f.comp(j), g.comp(j)))
            return false;
    return true;
}

}
