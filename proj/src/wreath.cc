#include "lpg/wreath.hh"

#include <set>

namespace lpg {

using std::map;

namespace {

    map<Int, PeriodicFn> drop_identities(map<Int, PeriodicFn> comps, Int n)
    {
        PeriodicFn id = PeriodicFn::identity(n);
        for (auto it = comps.begin(); it != comps.end();) {
            if (it->second.period() != n)
                throw PeriodError("component period differs from n");
            it = it->second == id ? comps.erase(it) : std::next(it);
        }
        return comps;
    }

    std::set<Int> keys(const map<Int, PeriodicFn> & a, const map<Int, PeriodicFn> & b)
    {
        std::set<Int> s;
        for (auto & [j, f] : a)
            s.insert(j);
        for (auto & [j, f] : b)
            s.insert(j);
        return s;
    }

    void same_period(const WreathElement & a, const WreathElement & b)
    {
        if (a.period() != b.period())
            throw PeriodError("period mismatch");
    }

}

WreathElement::WreathElement(Int n, Int h, map<Int, PeriodicFn> comps)
    : n_(n), h_(h), comps_(drop_identities(std::move(comps), n))
{
}

PeriodicFn WreathElement::comp(Int j) const
{
    auto it = comps_.find(j);
    return it == comps_.end() ? PeriodicFn::identity(n_) : it->second;
}

map<Int, PeriodicFn> act(const WreathElement & a, Int h)
{
    map<Int, PeriodicFn> out;
    for (auto & [j, f] : a.comps())
        out.emplace(j - h, f);
    return out;
}

WreathElement multiply(const WreathElement & a, const WreathElement & b)
{
    same_period(a, b);
    map<Int, PeriodicFn> shifted = act(a, b.h()), comps;
    for (Int j : keys(shifted, b.comps()))
        comps.emplace(j, compose(a.comp(b.h() + j), b.comp(j)));
    return WreathElement(a.period(), a.h() + b.h(), comps);
}

bool leq(const WreathElement & a, const WreathElement & b)
{
    same_period(a, b);
    if (a.h() != b.h())
        return a.h() < b.h();
    for (Int j : keys(a.comps(), b.comps()))
        if (! leq(a.comp(j), b.comp(j)))
            return false;
    return true;
}

// Translations are totally ordered, so h1 * j = h2 * j for one j means for all.
WreathElement meet(const WreathElement & a, const WreathElement & b)
{
    same_period(a, b);
    if (a.h() != b.h())
        return a.h() < b.h() ? a : b;
    map<Int, PeriodicFn> comps;
    for (Int j : keys(a.comps(), b.comps()))
        comps.emplace(j, meet(a.comp(j), b.comp(j)));
    return WreathElement(a.period(), a.h(), comps);
}

WreathElement join(const WreathElement & a, const WreathElement & b)
{
    same_period(a, b);
    if (a.h() != b.h())
        return a.h() > b.h() ? a : b;
    map<Int, PeriodicFn> comps;
    for (Int j : keys(a.comps(), b.comps()))
        comps.emplace(j, join(a.comp(j), b.comp(j)));
    return WreathElement(a.period(), a.h(), comps);
}

WreathElement linv(const WreathElement & a)
{
    map<Int, PeriodicFn> comps;
    for (auto & [j, f] : a.comps())
        comps.emplace(j + a.h(), linv(f));
    return WreathElement(a.period(), -a.h(), comps);
}

WreathElement rinv(const WreathElement & a)
{
    map<Int, PeriodicFn> comps;
    for (auto & [j, f] : a.comps())
        comps.emplace(j + a.h(), rinv(f));
    return WreathElement(a.period(), -a.h(), comps);
}

WreathElement iter_inv(const WreathElement & a, Int m)
{
    WreathElement x = a;
    for (Int i = 0; i < std::abs(m); ++i)
        x = m > 0 ? linv(x) : rinv(x);
    return x;
}

LexFn iso_to_lexfn(const WreathElement & a)
{
    map<Q, PeriodicFn> comps;
    for (auto & [j, f] : a.comps())
        comps.emplace(Q(j), f);
    return LexFn(a.period(), PLBijection::translation(a.h()), comps);
}

WreathElement iso_from_lexfn(const LexFn & f)
{
    const PLBijection & t = f.tilde();
    if (! t.breakpoints.empty() || t.pieces[0].slope != 1 || t.pieces[0].intercept.get_den() != 1)
        throw std::invalid_argument("global part is not an integer translation");
    map<Int, PeriodicFn> comps;
    for (auto & [j, c] : f.comps()) {
        if (j.get_den() != 1)
            throw std::invalid_argument("component outside the integer grid");
        comps.emplace(j.get_num().get_si(), c);
    }
    return WreathElement(f.period(), t.pieces[0].intercept.get_num().get_si(), comps);
}

namespace {

    // All j with h(j) in s; h moves points by at most max |vals[i] - i|.
    std::set<Int> preimage(const PeriodicFn & h, const std::set<Int> & s)
    {
        Int b = 0;
        for (size_t i = 0; i < h.vals().size(); ++i)
            b = std::max(b, std::abs(h.vals()[i] - Int(i)));
        std::set<Int> out;
        for (Int t : s)
            for (Int j = t - b; j <= t + b; ++j)
                if (s.count(h(j)))
                    out.insert(j);
        return out;
    }

    std::set<Int> support(const map<Int, PeriodicFn> & m)
    {
        std::set<Int> s;
        for (auto & [j, f] : m)
            s.insert(j);
        return s;
    }

    PregroupWreath make(PeriodicFn h, map<Int, PeriodicFn> comps, Int n)
    {
        return PregroupWreath{std::move(h), drop_identities(std::move(comps), n), n};
    }

    PregroupWreath residual(const PregroupWreath & a, PeriodicFn (*inv)(const PeriodicFn &))
    {
        PeriodicFn hi = inv(a.h);
        map<Int, PeriodicFn> comps;
        for (Int j : preimage(hi, support(a.comps)))
            comps.emplace(j, inv(a.comp(hi(j))));
        return make(hi, comps, a.n);
    }

}

PeriodicFn PregroupWreath::comp(Int j) const
{
    auto it = comps.find(j);
    return it == comps.end() ? PeriodicFn::identity(n) : it->second;
}

PregroupWreath multiply(const PregroupWreath & a, const PregroupWreath & b)
{
    std::set<Int> js = preimage(b.h, support(a.comps));
    for (auto & [j, f] : b.comps)
        js.insert(j);
    map<Int, PeriodicFn> comps;
    for (Int j : js)
        comps.emplace(j, compose(a.comp(b.h(j)), b.comp(j)));
    return make(compose(a.h, b.h), comps, a.n);
}

PregroupWreath linv(const PregroupWreath & a)
{
    return residual(a, static_cast<PeriodicFn (*)(const PeriodicFn &)>(&linv));
}

PregroupWreath rinv(const PregroupWreath & a)
{
    return residual(a, static_cast<PeriodicFn (*)(const PeriodicFn &)>(&rinv));
}

bool leq(const PregroupWreath & a, const PregroupWreath & b)
{
    if (! leq(a.h, b.h))
        return false;
    std::set<Int> js = support(a.comps);
    for (auto & [j, f] : b.comps)
        js.insert(j);
    for (Int j : js)
        if (a.h(j) == b.h(j) && ! leq(a.comp(j), b.comp(j)))
            return false;
    return true;
}

}
