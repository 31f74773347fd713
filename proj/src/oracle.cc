#include "lpg/oracle.hh"

#include <algorithm>
#include <cmath>

namespace lpg {

using std::optional;
using std::string;
using std::vector;

PeriodicFn random_periodic_fn(Int n, Int value_bound, Rng & rng)
{
    std::uniform_int_distribution<Int> first(-value_bound, value_bound), step(0, n);
    Int v0 = first(rng);
    vector<Int> v{v0};
    for (Int i = 1; i < n; ++i)
        v.push_back(v0 + step(rng));
    std::sort(v.begin() + 1, v.end());
    return PeriodicFn(n, std::move(v));
}

namespace {

    vector<string> variables(const vector<IntensionalEquation> & forms)
    {
        vector<string> vs;
        for (auto & eq : forms)
            for (auto & word : eq.joinands)
                for (auto & f : word)
                    if (std::find(vs.begin(), vs.end(), f.var) == vs.end())
                        vs.push_back(f.var);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    // All n-periodic functions with |v0| <= b.
    vector<PeriodicFn> all_periodic_fns(Int n, Int b)
    {
        vector<PeriodicFn> out;
        vector<Int> v(n);
        auto rec = [&](auto & self, Int i) -> void {
            if (i == n) {
                out.emplace_back(n, v);
                return;
            }
            for (Int x = v[i - 1]; x <= v[0] + n; ++x) {
                v[i] = x;
                self(self, i + 1);
            }
        };
        for (Int v0 = -b; v0 <= b; ++v0) {
            v[0] = v0;
            rec(rec, 1);
        }
        return out;
    }

    // Tries every form at every point; the first failure wins.
    template <class Assign, class Points>
    optional<Witness> try_assignment(const vector<IntensionalEquation> & forms, Witness w, const Assign & assign,
                                     const Points & points)
    {
        if constexpr (std::is_same_v<typename Assign::mapped_type, PeriodicFn>)
            w.fz = assign;
        else
            w.fl = assign;
        for (auto & eq : forms)
            for (auto & p : points) {
                w.point = p;
                w.inequality = eq.str();
                if (verify_witness(eq, w)) {
                    w.values = joinand_values(eq, w);
                    return w;
                }
            }
        return std::nullopt;
    }

    vector<Int> stage_bounds(Int n) { return {n, 2 * n, 3 * n, 5 * n}; }

    PLBijection random_pl(Rng & rng)
    {
        std::uniform_int_distribution<int> k(0, 2), t(-2, 2), gap(1, 3);
        int nb = k(rng);
        if (nb == 0)
            return PLBijection::translation(Q(t(rng)));
        vector<Int> xs{-2, -1, 0, 1, 2};
        std::shuffle(xs.begin(), xs.end(), rng);
        xs.resize(nb + 1);
        std::sort(xs.begin(), xs.end());
        vector<std::pair<Q, Q>> pts;
        Int y = xs[0] + t(rng);
        for (size_t i = 0; i < xs.size(); ++i) {
            if (i > 0)
                y += gap(rng) + (xs[i] - xs[i - 1] - 1);
            pts.push_back({Q(xs[i]), Q(y)});
        }
        return PLBijection::through(pts);
    }

    LexFn random_lexfn(Int n, Int value_bound, Rng & rng)
    {
        std::uniform_int_distribution<int> k(0, 3), j(-2, 2);
        std::map<Q, PeriodicFn> comps;
        for (int i = k(rng); i > 0; --i)
            comps[Q(j(rng))] = random_periodic_fn(n, value_bound, rng);
        return LexFn(n, random_pl(rng), comps);
    }

}

optional<Witness> search_counterexample_fnz(const string & equation, Int n, std::uint64_t budget, Rng & rng)
{
    auto forms = normalize(equation);
    auto vars = variables(forms);
    Witness base;
    base.space = Witness::Space::FnZ;
    base.n = n;
    // words of n-periodic maps commute with translation by n
    vector<LexPoint> points;
    for (Int r = 0; r < n; ++r)
        points.push_back({0, r});
    std::uint64_t used = 0;

    // exhaustive over the smallest bound while it fits in a quarter of the budget
    auto small = all_periodic_fns(n, 1);
    double combos = std::pow(double(small.size()), double(vars.size()));
    if (combos <= double(budget) / 4) {
        vector<size_t> idx(vars.size(), 0);
        for (;;) {
            std::map<string, PeriodicFn> a;
            for (size_t i = 0; i < vars.size(); ++i)
                a.emplace(vars[i], small[idx[i]]);
            ++used;
            if (auto w = try_assignment(forms, base, a, points))
                return w;
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == small.size())
                idx[i++] = 0;
            if (i == idx.size())
                break;
        }
    }

    auto bounds = stage_bounds(n);
    for (size_t s = 0; s < bounds.size() && used < budget; ++s) {
        std::uint64_t quota = (budget - used) / (bounds.size() - s);
        for (std::uint64_t i = 0; i < std::max<std::uint64_t>(quota, 1) && used < budget; ++i, ++used) {
            std::map<string, PeriodicFn> a;
            for (auto & v : vars)
                a.emplace(v, random_periodic_fn(n, bounds[s], rng));
            if (auto w = try_assignment(forms, base, a, points))
                return w;
        }
    }
    return std::nullopt;
}

optional<Witness> search_counterexample_lex(const string & equation, Int n, std::uint64_t budget, Rng & rng)
{
    auto forms = normalize(equation);
    auto vars = variables(forms);
    Witness base;
    base.space = Witness::Space::FnQxZ;
    base.n = n;
    vector<LexPoint> points;
    for (Int j = -2; j <= 2; ++j)
        for (Int r = 0; r < n; ++r)
            points.push_back({Q(j), r});
    auto bounds = stage_bounds(n);
    std::uint64_t used = 0;
    for (size_t s = 0; s < bounds.size() && used < budget; ++s) {
        std::uint64_t quota = (budget - used) / (bounds.size() - s);
        for (std::uint64_t i = 0; i < std::max<std::uint64_t>(quota, 1) && used < budget; ++i, ++used) {
            std::map<string, LexFn> a;
            for (auto & v : vars)
                a.emplace(v, random_lexfn(n, bounds[s], rng));
            if (auto w = try_assignment(forms, base, a, points))
                return w;
        }
    }
    return std::nullopt;
}

}
