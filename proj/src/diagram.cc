#include "lpg/diagram.hh"

#include "json.hpp"

#include <stdexcept>

using std::function;
using std::string;
using std::vector;

namespace lpg {

bool is_order_preserving(const PartialFn & g)
{
    Int prev = 0;
    bool first = true;
    for (auto & [x, y] : g) {
        if (! first && y < prev)
            return false;
        prev = y;
        first = false;
    }
    return true;
}

PartialFn ell_bracket(const PartialFn & g, const function<bool(Int)> & cov)
{
    // g^[l](x) = b iff b-1 ⋖ b, both in Dom(g), g(b-1) < x <= g(b)
    PartialFn out;
    for (auto it = g.begin(); it != g.end(); ++it) {
        auto nx = std::next(it);
        if (nx == g.end())
            break;
        Int a = it->first, b = nx->first;
        if (b != a + 1 || ! cov(a))
            continue;
        for (Int x = it->second + 1; x <= nx->second; ++x)
            out[x] = b;
    }
    return out;
}

PartialFn r_bracket(const PartialFn & g, const function<bool(Int)> & cov)
{
    // g^[r](x) = a iff a ⋖ a+1, both in Dom(g), g(a) <= x < g(a+1)
    PartialFn out;
    for (auto it = g.begin(); it != g.end(); ++it) {
        auto nx = std::next(it);
        if (nx == g.end())
            break;
        Int a = it->first, b = nx->first;
        if (b != a + 1 || ! cov(a))
            continue;
        for (Int x = it->second; x < nx->second; ++x)
            out[x] = a;
    }
    return out;
}

PartialFn ell_bracket(const PartialFn & g, const CChain & c)
{
    return ell_bracket(g, [&](Int a) { return c.covered(a); });
}

PartialFn r_bracket(const PartialFn & g, const CChain & c)
{
    return r_bracket(g, [&](Int a) { return c.covered(a); });
}

PartialFn iter_bracket(const PartialFn & g, Int m, const CChain & c)
{
    PartialFn h = g;
    for (Int i = 0; i < std::abs(m) && ! h.empty(); ++i)
        h = m > 0 ? ell_bracket(h, c) : r_bracket(h, c);
    return h;
}

PartialFn iter_bracket_z(const PartialFn & g, Int m)
{
    auto all = [](Int) { return true; };
    PartialFn h = g;
    for (Int i = 0; i < std::abs(m) && ! h.empty(); ++i)
        h = m > 0 ? ell_bracket(h, all) : r_bracket(h, all);
    return h;
}

SpacingEmbedding SpacingEmbedding::identity(Int q)
{
    SpacingEmbedding e;
    for (Int i = 0; i < q; ++i)
        e.pos.push_back(i);
    return e;
}

bool is_spacing_embedding(const SpacingEmbedding & e, const CChain & c)
{
    if (static_cast<Int>(e.pos.size()) != c.q)
        return false;
    if (c.q > 0 && e.pos[0] != 0)
        return false;
    for (Int i = 1; i < c.q; ++i) {
        if (e.pos[i] <= e.pos[i - 1])
            return false;
        if (c.covered(i - 1) && e.pos[i] != e.pos[i - 1] + 1)
            return false;
    }
    return true;
}

IntMap counterpart(const PartialFn & g, const SpacingEmbedding & e)
{
    IntMap out;
    for (auto & [x, y] : g)
        out[e.pos.at(x)] = e.pos.at(y);
    return out;
}

bool check_n_periodic(const PartialFn & g, const SpacingEmbedding & e, Int n)
{
    return is_n_periodic_map(counterpart(g, e), n);
}

bool check_n_periodic_definitional(const PartialFn & g, const SpacingEmbedding & e, Int n)
{
    IntMap h = counterpart(g, e);
    Int span = 0;
    for (auto & [x, y] : h)
        span = std::max({span, std::abs(x), std::abs(y)});
    span = std::max(span, e.height());
    Int kmax = (span + n - 1) / n + 1;
    for (auto & [x, gx] : h)
        for (auto & [y, gy] : h)
            for (Int k = -kmax; k <= kmax; ++k)
                if (x <= y + k * n && gx > gy + k * n)
                    return false;
    return true;
}

string diagram_json(const Diagram & d)
{
    nlohmann::json j;
    j["q"] = d.chain.q;
    j["covers"] = nlohmann::json::array();
    for (Int a : d.chain.covers)
        j["covers"].push_back({a, a + 1});
    j["fns"] = nlohmann::json::object();
    for (auto & [name, g] : d.fns) {
        nlohmann::json m = nlohmann::json::object();
        for (auto & [x, y] : g)
            m[std::to_string(x)] = y;
        j["fns"][name] = m;
    }
    return j.dump();
}

}
