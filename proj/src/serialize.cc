#include "lpg/serialize.hh"

namespace lpg {

std::string q_str(const Q & x)
{
    Q c = x;
    c.canonicalize();
    return c.get_str();
}

Q q_from_json(const Json & j)
{
    if (j.is_number_integer())
        return Q(j.get<long>());
    Q x(j.get<std::string>());
    if (x.get_den() == 0)
        throw std::invalid_argument("zero denominator");
    x.canonicalize();
    return x;
}

Json to_json(const PeriodicFn & f) { return {{"n", f.period()}, {"vals", f.vals()}}; }

PeriodicFn periodic_from_json(const Json & j)
{
    return PeriodicFn(j.at("n").get<Int>(), j.at("vals").get<std::vector<Int>>());
}

Json to_json(const PLBijection & f)
{
    Json bps = Json::array(), pieces = Json::array();
    for (auto & b : f.breakpoints)
        bps.push_back(q_str(b));
    for (auto & p : f.pieces)
        pieces.push_back({{"slope", q_str(p.slope)}, {"intercept", q_str(p.intercept)}});
    return {{"breakpoints", bps}, {"pieces", pieces}};
}

PLBijection pl_from_json(const Json & j)
{
    PLBijection f;
    f.pieces.clear();
    for (auto & b : j.at("breakpoints"))
        f.breakpoints.push_back(q_from_json(b));
    for (auto & p : j.at("pieces"))
        f.pieces.push_back({q_from_json(p.at("slope")), q_from_json(p.at("intercept"))});
    if (! f.valid())
        throw std::invalid_argument("not an increasing PL bijection");
    return f;
}

Json to_json(const LexFn & f)
{
    Json comps = Json::array();
    for (auto & [j, c] : f.comps())
        comps.push_back({{"j", q_str(j)}, {"fn", to_json(c)}});
    return {{"tilde", to_json(f.tilde())}, {"components", comps}, {"n", f.period()}};
}

LexFn lex_from_json(const Json & j)
{
    std::map<Q, PeriodicFn> comps;
    for (auto & c : j.at("components"))
        comps.emplace(q_from_json(c.at("j")), periodic_from_json(c.at("fn")));
    return LexFn(j.at("n").get<Int>(), pl_from_json(j.at("tilde")), comps);
}

}
