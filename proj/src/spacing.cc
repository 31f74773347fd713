#include "lpg/spacing.hh"

#include <algorithm>
#include <map>
#include <stdexcept>

using std::logic_error;
using std::map;
using std::optional;
using std::pair;
using std::set;
using std::size_t;
using std::vector;

namespace lpg {

Z rho(Int a)
{
    Z f = 1;
    for (Int i = 2; i <= a; ++i)
        f *= i;
    return 2 * Z(a) * a * a * f + a + 1;
}

Z nu(Int a, Int n)
{
    return (rho(3 * a) + 1) * n;
}

Z practical_cap(Int q, Int n)
{
    return Z(8) * (q + 1) * n;
}

bool LinearSystem::satisfied_by(const vector<Int> & y) const
{
    if (static_cast<Int>(y.size()) != l)
        return false;
    for (size_t i = 0; i < A.size(); ++i) {
        Int s = 0;
        for (Int k = 0; k < l; ++k)
            s += A[i][k] * y[k];
        if (s != b[i])
            return false;
    }
    return true;
}

bool LinearSystem::delta_bounded(Int delta_size) const
{
    if (l > delta_size)
        return false;
    for (size_t i = 0; i < A.size(); ++i) {
        if (std::abs(b[i]) > 2 * delta_size)
            return false;
        for (int v : A[i])
            if (v < -1 || v > 1)
                return false;
    }
    return true;
}

vector<Int> gap_vector(const vector<Int> & p)
{
    vector<Int> y;
    for (size_t k = 1; k < p.size(); ++k)
        y.push_back(p[k] - p[k - 1] - 1);
    return y;
}

LinearSystem build_1transfer_system(const SubChain & c)
{
    const auto & p = c.points;
    Int l = static_cast<Int>(p.size()) - 1;
    LinearSystem sys;
    sys.l = std::max<Int>(l, 0);
    if (l <= 0)
        return sys;
    map<Int, Int> idx;
    for (Int i = 0; i <= l; ++i)
        idx[p[i]] = i;

    set<pair<vector<int>, Int>> rows;
    set<Int> shifts;
    for (Int a : p)
        for (Int b : p)
            shifts.insert(a - b);
    for (Int t : shifts) {
        // the pattern of translation by t on Δ × Δ
        vector<pair<Int, Int>> pat;
        for (Int z = 0; z <= l; ++z) {
            auto it = idx.find(p[z] + t);
            if (it != idx.end())
                pat.push_back({z, it->second});
        }
        for (size_t u = 0; u < pat.size(); ++u)
            for (size_t v = u + 1; v < pat.size(); ++v) {
                auto [z, z2] = pat[u];
                auto [j, j2] = pat[v];
                vector<int> row(l);
                for (Int k = z; k < j; ++k)
                    row[k] += 1;
                for (Int k = z2; k < j2; ++k)
                    row[k] -= 1;
                Int rhs = (j2 - z2) - (j - z);
                bool zero = std::all_of(row.begin(), row.end(), [](int v) { return v == 0; });
                if (zero && rhs == 0)
                    continue;
                rows.insert({row, rhs});
            }
    }
    for (Int k : c.covers) {
        vector<int> row(l);
        row[k] = 1;
        rows.insert({row, 0});
    }
    for (auto & [row, rhs] : rows) {
        sys.A.push_back(row);
        sys.b.push_back(rhs);
    }
    return sys;
}

namespace {

    Z det_bareiss(vector<vector<Z>> m)
    {
        size_t n = m.size();
        Z prev = 1;
        int sign = 1;
        for (size_t k = 0; k < n; ++k) {
            if (m[k][k] == 0) {
                size_t r = k + 1;
                while (r < n && m[r][k] == 0)
                    ++r;
                if (r == n)
                    return 0;
                std::swap(m[k], m[r]);
                sign = -sign;
            }
            for (size_t i = k + 1; i < n; ++i)
                for (size_t j = k + 1; j < n; ++j)
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            prev = m[k][k];
        }
        return sign * m[n - 1][n - 1];
    }

    Z binom(Int n, Int k)
    {
        Z r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }

    const Int exact_minor_limit = 20000;

}

BoundedSolve solve_bounded_nonneg(const LinearSystem & sys)
{
    BoundedSolve res;
    Int l = sys.l;

    // maximal independent rows of (A|b)
    vector<vector<Q>> basis;
    vector<size_t> pivots, chosen;
    for (size_t i = 0; i < sys.A.size(); ++i) {
        vector<Q> r(l + 1);
        for (Int k = 0; k < l; ++k)
            r[k] = sys.A[i][k];
        r[l] = sys.b[i];
        for (size_t bi = 0; bi < basis.size(); ++bi) {
            if (r[pivots[bi]] == 0)
                continue;
            Q f = r[pivots[bi]] / basis[bi][pivots[bi]];
            for (Int k = 0; k <= l; ++k)
                r[k] -= f * basis[bi][k];
        }
        size_t pc = l + 1;
        for (Int k = 0; k < l; ++k)
            if (r[k] != 0) {
                pc = k;
                break;
            }
        if (pc == size_t(l + 1)) {
            if (r[l] != 0)
                return res;
            continue;
        }
        basis.push_back(r);
        pivots.push_back(pc);
        chosen.push_back(i);
    }
    Int M = static_cast<Int>(chosen.size());
    res.independent_rows = M;

    if (M == 0) {
        res.gamma = 1;
        res.box = 0;
        res.y = vector<Int>(l, 0);
        return res;
    }

    Z maxb = 1;
    for (size_t i : chosen)
        maxb = std::max(maxb, Z(std::abs(sys.b[i])));
    if (binom(l + 1, M) <= exact_minor_limit) {
        Z gamma = 0;
        vector<Int> cols(M);
        for (Int i = 0; i < M; ++i)
            cols[i] = i;
        for (;;) {
            vector<vector<Z>> m(M, vector<Z>(M));
            for (Int r = 0; r < M; ++r)
                for (Int k = 0; k < M; ++k)
                    m[r][k] = cols[k] == l ? Z(sys.b[chosen[r]]) : Z(sys.A[chosen[r]][cols[k]]);
            gamma = std::max(gamma, Z(abs(det_bareiss(m))));
            Int k = M - 1;
            while (k >= 0 && cols[k] == l + 1 - M + k)
                --k;
            if (k < 0)
                break;
            ++cols[k];
            for (Int j = k + 1; j < M; ++j)
                cols[j] = cols[j - 1] + 1;
        }
        res.gamma = gamma;
    }
    else {
        Z f = 1;
        for (Int i = 2; i <= M; ++i)
            f *= i;
        res.gamma = f * maxb;
        res.gamma_exact = false;
    }
    res.box = (l - M + 1) * res.gamma;

    IlpProblem p;
    p.nvars = l;
    for (size_t i : chosen) {
        vector<Z> row(l);
        for (Int k = 0; k < l; ++k)
            row[k] = sys.A[i][k];
        p.add_eq(row, sys.b[i]);
    }
    for (Int k = 0; k < l; ++k) {
        vector<Q> lo(l), hi(l);
        lo[k] = -1;
        hi[k] = 1;
        p.add_le(lo, 0);
        p.add_le(hi, Q(res.box));
    }
    p.objective.assign(l, 1);
    auto r = solve_ilp(p);
    if (! r.exhausted)
        throw logic_error("bounded solver hit its node limit");
    if (r.x) {
        vector<Int> y;
        for (auto & v : *r.x)
            y.push_back(v.get_si());
        res.y = y;
    }
    return res;
}

SpacingEmbedding find_short_1transfer(const SubChain & c)
{
    LinearSystem sys = build_1transfer_system(c);
    BoundedSolve s = solve_bounded_nonneg(sys);
    if (! s.y)
        throw logic_error("transfer system of a realized chain has no solution");
    SpacingEmbedding e;
    Int acc = 0;
    for (size_t i = 0; i < c.points.size(); ++i) {
        if (i > 0)
            acc += (*s.y)[i - 1];
        e.pos.push_back(static_cast<Int>(i) + acc);
    }
    if (Z(e.height()) > rho(static_cast<Int>(c.points.size())))
        throw logic_error("1-transfer embedding exceeds its height bound");
    return e;
}

SpacingEmbedding find_short_ntransfer(const SubChain & c, Int n)
{
    // Δ~ = {Qx, Qx±1}, with consecutive integers designated as covers
    set<Int> qs;
    for (Int x : c.points) {
        Int q = floor_div(x, n);
        qs.insert({q - 1, q, q + 1});
    }
    SubChain t;
    t.points.assign(qs.begin(), qs.end());
    for (size_t k = 0; k + 1 < t.points.size(); ++k)
        if (t.points[k + 1] == t.points[k] + 1)
            t.covers.insert(static_cast<Int>(k));
    SpacingEmbedding d = find_short_1transfer(t);
    map<Int, Int> dm;
    for (size_t k = 0; k < t.points.size(); ++k)
        dm[t.points[k]] = d.pos[k];

    SpacingEmbedding e;
    for (Int x : c.points)
        e.pos.push_back(dm[floor_div(x, n)] * n + floor_mod(x, n));
    Int base = e.pos.empty() ? 0 : e.pos.front();
    for (auto & v : e.pos)
        v -= base;
    if (Z(e.height()) > nu(static_cast<Int>(c.points.size()), n))
        throw logic_error("n-transfer embedding is not n-short");
    return e;
}

namespace {

    struct PairCon {
        Int x, y, gx, gy;
    };

    class EmbeddingSolver {
    public:
        EmbeddingSolver(const vector<PartialFn> & fns, const CChain & c, Int n, const Z & cap, const vector<Int> & blocks,
                        std::uint64_t limit)
            : fns_(fns), c_(c), n_(n), cap_(cap), blocks_(blocks), limit_(limit)
        {
            if (blocks_.empty())
                blocks_.assign(c.q, 0);
        }

        EmbeddingSearch run()
        {
            Int q = c_.q;
            if (q == 0) {
                out_.e = SpacingEmbedding{};
                return out_;
            }
            for (Int k = 1; k < q; ++k)
                if (c_.covered(k - 1) && blocks_[k] != blocks_[k - 1])
                    return out_;
            for (auto & g : fns_)
                for (auto & [x, gx] : g)
                    for (auto & [y, gy] : g)
                        if (x < y && blocks_[x] == blocks_[y]) {
                            if (blocks_[gx] != blocks_[gy])
                                return out_;
                            cons_.push_back({x, y, gx, gy});
                        }
            // a constraint is checked once its last point has a residue
            by_last_.assign(q, {});
            for (size_t i = 0; i < cons_.size(); ++i) {
                auto & p = cons_[i];
                by_last_[std::max({p.x, p.y, p.gx, p.gy})].push_back(i);
            }
            R_.assign(q, 0);
            dfs(0);
            return out_;
        }

    private:
        const vector<PartialFn> & fns_;
        const CChain & c_;
        Int n_;
        Z cap_;
        vector<Int> blocks_;
        std::uint64_t limit_;
        vector<PairCon> cons_;
        vector<vector<size_t>> by_last_;
        vector<Int> R_;
        EmbeddingSearch out_;

        bool start(Int k) const { return k == 0 || blocks_[k] != blocks_[k - 1]; }

        bool residues_ok(Int k) const
        {
            for (size_t i : by_last_[k]) {
                auto & p = cons_[i];
                if (R_[p.x] == R_[p.y] && R_[p.gx] != R_[p.gy])
                    return false;
            }
            return true;
        }

        int cxy(Int x, Int y, Int gx, Int gy) const { return int(R_[x] > R_[y]) - int(R_[gx] > R_[gy]); }

        bool dfs(Int k)
        {
            if (k == c_.q)
                return leaf();
            vector<Int> choices;
            if (start(k))
                choices = {0};
            else if (c_.covered(k - 1))
                choices = {(R_[k - 1] + 1) % n_};
            else
                // the adjacent residue first keeps embeddings compact
                for (Int r = 1; r <= n_; ++r)
                    choices.push_back((R_[k - 1] + r) % n_);
            for (Int r : choices) {
                ++out_.residue_nodes;
                R_[k] = r;
                if (residues_ok(k) && dfs(k + 1))
                    return true;
            }
            return false;
        }

        // D_x - D_y <= c_xy must have no negative cycle per function and block
        bool difference_feasible() const
        {
            for (auto & g : fns_) {
                map<Int, vector<Int>> groups;
                for (auto & [x, gx] : g)
                    groups[blocks_[x]].push_back(x);
                for (auto & [b, xs] : groups) {
                    size_t m = xs.size();
                    vector<vector<int>> d(m, vector<int>(m, 0));
                    for (size_t i = 0; i < m; ++i)
                        for (size_t j = 0; j < m; ++j)
                            if (i != j)
                                d[i][j] = cxy(xs[i], xs[j], g.at(xs[i]), g.at(xs[j]));
                    for (size_t t = 0; t < m; ++t)
                        for (size_t i = 0; i < m; ++i)
                            for (size_t j = 0; j < m; ++j)
                                d[i][j] = std::min(d[i][j], d[i][t] + d[t][j]);
                    for (size_t i = 0; i < m; ++i)
                        if (d[i][i] < 0)
                            return false;
                }
            }
            return true;
        }

        bool leaf()
        {
            if (! difference_feasible())
                return false;
            Int q = c_.q;
            IlpProblem p;
            p.nvars = q;
            p.objective.assign(q, 0);
            for (Int k = 0; k < q; ++k) {
                if (start(k)) {
                    vector<Z> row(q);
                    row[k] = 1;
                    p.add_eq(row, 0);
                    continue;
                }
                if (c_.covered(k - 1)) {
                    vector<Z> row(q);
                    row[k] = 1;
                    row[k - 1] = -1;
                    p.add_eq(row, R_[k - 1] == n_ - 1 ? 1 : 0);
                }
                else {
                    vector<Q> row(q);
                    row[k - 1] = 1;
                    row[k] = -1;
                    p.add_le(row, R_[k] <= R_[k - 1] ? -1 : 0);
                }
            }
            for (Int k = 0; k < q; ++k)
                if (k + 1 == q || start(k + 1)) {
                    vector<Q> row(q);
                    row[k] = n_;
                    p.add_le(row, Q(cap_ - R_[k]));
                    p.objective[k] = 1;
                }
            for (auto & pc : cons_) {
                // (Q_gx - Q_x) - (Q_gy - Q_y) <= c_xy, and the mirror
                for (int dir = 0; dir < 2; ++dir) {
                    Int x = dir ? pc.y : pc.x, y = dir ? pc.x : pc.y;
                    Int gx = dir ? pc.gy : pc.gx, gy = dir ? pc.gx : pc.gy;
                    vector<Q> row(q);
                    row[gx] += 1;
                    row[x] -= 1;
                    row[gy] -= 1;
                    row[y] += 1;
                    p.add_le(row, cxy(x, y, gx, gy));
                }
            }
            IlpResult r = solve_ilp(p, limit_);
            out_.lp_nodes += r.nodes;
            if (! r.exhausted)
                out_.exhausted = false;
            if (! r.x)
                return false;
            SpacingEmbedding e;
            for (Int k = 0; k < q; ++k)
                e.pos.push_back((*r.x)[k].get_si() * n_ + R_[k]);
            verify(e);
            out_.e = e;
            out_.exhausted = true;
            return true;
        }

        void verify(const SpacingEmbedding & e) const
        {
            for (Int k = 1; k < c_.q; ++k) {
                if (start(k))
                    continue;
                if (e.pos[k] <= e.pos[k - 1] || (c_.covered(k - 1) && e.pos[k] != e.pos[k - 1] + 1))
                    throw logic_error("embedding search produced a non-embedding");
            }
            for (auto & g : fns_) {
                map<pair<Int, Int>, IntMap> parts;
                for (auto & [x, gx] : g)
                    parts[{blocks_[x], blocks_[gx]}][e.pos[x]] = e.pos[gx];
                for (auto & [bb, h] : parts)
                    if (! is_n_periodic_map(h, n_))
                        throw logic_error("embedding search produced a non-periodic counterpart");
            }
        }
    };

}

EmbeddingSearch find_witness_embedding(const vector<PartialFn> & fns, const CChain & c, Int n, const Z & cap,
                                       const vector<Int> & blocks, std::uint64_t lp_node_limit)
{
    return EmbeddingSolver(fns, c, n, cap, blocks, lp_node_limit).run();
}

}
