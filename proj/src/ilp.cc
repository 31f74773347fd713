#include "lpg/ilp.hh"

#include <stdexcept>

using std::optional;
using std::size_t;
using std::vector;

namespace lpg {

namespace {

    class Tableau {
    public:
        // rows of [A | b] with b >= 0, one artificial per row appended
        Tableau(const QMat & A, const vector<Q> & b, size_t ncols) : m_(A.size()), n_(ncols)
        {
            t_.assign(m_ + 1, vector<Q>(n_ + m_ + 1));
            basis_.resize(m_);
            for (size_t i = 0; i < m_; ++i) {
                for (size_t j = 0; j < n_; ++j)
                    t_[i][j] = A[i][j];
                t_[i][n_ + i] = 1;
                t_[i].back() = b[i];
                basis_[i] = n_ + i;
            }
        }

        bool phase_one()
        {
            auto & z = t_[m_];
            for (auto & v : z)
                v = 0;
            for (size_t i = 0; i < m_; ++i)
                for (size_t j = 0; j <= n_ + m_; ++j)
                    if (j < n_ || j == n_ + m_)
                        z[j] -= t_[i][j];
            run(n_ + m_);
            if (z.back() != 0)
                return false;
            // drive artificials out where possible
            for (size_t i = 0; i < m_; ++i) {
                if (basis_[i] < n_)
                    continue;
                for (size_t j = 0; j < n_; ++j)
                    if (t_[i][j] != 0) {
                        pivot(i, j);
                        break;
                    }
            }
            return true;
        }

        // false when unbounded
        bool phase_two(const vector<Q> & c)
        {
            auto & z = t_[m_];
            for (size_t j = 0; j <= n_ + m_; ++j)
                z[j] = j < n_ ? c[j] : Q(0);
            for (size_t i = 0; i < m_; ++i) {
                size_t bj = basis_[i];
                Q cb = bj < n_ ? c[bj] : Q(0);
                if (cb == 0)
                    continue;
                for (size_t j = 0; j <= n_ + m_; ++j)
                    z[j] -= cb * t_[i][j];
            }
            return run(n_);
        }

        vector<Q> solution() const
        {
            vector<Q> x(n_);
            for (size_t i = 0; i < m_; ++i)
                if (basis_[i] < n_)
                    x[basis_[i]] = t_[i].back();
            return x;
        }

    private:
        size_t m_, n_;
        vector<vector<Q>> t_;
        vector<size_t> basis_;

        // entering columns restricted to [0, limit)
        bool run(size_t limit)
        {
            for (;;) {
                auto & z = t_[m_];
                size_t enter = limit;
                for (size_t j = 0; j < limit; ++j)
                    if (z[j] < 0) {
                        enter = j;
                        break;
                    }
                if (enter == limit)
                    return true;
                size_t leave = m_;
                Q best;
                for (size_t i = 0; i < m_; ++i) {
                    if (t_[i][enter] <= 0)
                        continue;
                    Q r = t_[i].back() / t_[i][enter];
                    if (leave == m_ || r < best || (r == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = r;
                    }
                }
                if (leave == m_)
                    return false;
                pivot(leave, enter);
            }
        }

        void pivot(size_t r, size_t c)
        {
            Q p = t_[r][c];
            for (auto & v : t_[r])
                v /= p;
            for (size_t i = 0; i <= m_; ++i) {
                if (i == r || t_[i][c] == 0)
                    continue;
                Q f = t_[i][c];
                for (size_t j = 0; j <= n_ + m_; ++j)
                    if (t_[r][j] != 0)
                        t_[i][j] -= f * t_[r][j];
            }
            basis_[r] = c;
        }
    };

    Z floor_q(const Q & v)
    {
        Z r;
        mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return r;
    }

}

LpResult lp_minimize(const QMat & G, const vector<Q> & h, const vector<Q> & c)
{
    size_t m = G.size(), d = c.size();
    // columns: x+ (d), x- (d), slack (m)
    size_t ncols = 2 * d + m;
    QMat A(m, vector<Q>(ncols));
    vector<Q> b(m);
    for (size_t i = 0; i < m; ++i) {
        int s = h[i] < 0 ? -1 : 1;
        for (size_t j = 0; j < d; ++j) {
            A[i][j] = s * G[i][j];
            A[i][d + j] = -s * G[i][j];
        }
        A[i][2 * d + i] = s;
        b[i] = s * h[i];
    }
    Tableau t(A, b, ncols);
    if (! t.phase_one())
        return {LpResult::Status::Infeasible, {}, 0};
    vector<Q> cc(ncols);
    for (size_t j = 0; j < d; ++j) {
        cc[j] = c[j];
        cc[d + j] = -c[j];
    }
    if (! t.phase_two(cc))
        return {LpResult::Status::Unbounded, {}, 0};
    vector<Q> u = t.solution(), x(d);
    Q val = 0;
    for (size_t j = 0; j < d; ++j) {
        x[j] = u[j] - u[d + j];
        val += c[j] * x[j];
    }
    return {LpResult::Status::Optimal, x, val};
}

optional<Lattice> integer_solutions(const ZMat & A0, const vector<Z> & b, size_t nvars)
{
    ZMat A = A0;
    size_t m = A.size(), n = nvars;
    ZMat U(n, vector<Z>(n));
    for (size_t i = 0; i < n; ++i)
        U[i][i] = 1;

    auto col_addmul = [&](size_t dst, size_t src, const Z & f) {
        for (size_t i = 0; i < m; ++i)
            A[i][dst] += f * A[i][src];
        for (size_t i = 0; i < n; ++i)
            U[i][dst] += f * U[i][src];
    };
    auto col_swap = [&](size_t a, size_t c) {
        for (size_t i = 0; i < m; ++i)
            std::swap(A[i][a], A[i][c]);
        for (size_t i = 0; i < n; ++i)
            std::swap(U[i][a], U[i][c]);
    };

    // column echelon form by unimodular column operations
    vector<optional<size_t>> pivot_of(m);
    size_t c = 0;
    for (size_t i = 0; i < m && c < n; ++i) {
        for (;;) {
            size_t best = n;
            for (size_t j = c; j < n; ++j)
                if (A[i][j] != 0 && (best == n || abs(A[i][j]) < abs(A[i][best])))
                    best = j;
            if (best == n)
                break;
            if (best != c)
                col_swap(best, c);
            bool done = true;
            for (size_t j = c + 1; j < n; ++j) {
                if (A[i][j] == 0)
                    continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][j].get_mpz_t(), A[i][c].get_mpz_t());
                col_addmul(j, c, -q);
                done = done && A[i][j] == 0;
            }
            if (done)
                break;
        }
        if (A[i][c] != 0)
            pivot_of[i] = c++;
    }
    size_t rank = c;

    vector<Z> w(n);
    for (size_t i = 0; i < m; ++i) {
        Z s = b[i];
        size_t lim = pivot_of[i] ? *pivot_of[i] : rank;
        for (size_t j = 0; j < lim; ++j)
            s -= A[i][j] * w[j];
        if (pivot_of[i]) {
            const Z & p = A[i][*pivot_of[i]];
            if (s % p != 0)
                return std::nullopt;
            w[*pivot_of[i]] = s / p;
        }
        else if (s != 0)
            return std::nullopt;
    }

    Lattice L;
    L.base.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < rank; ++j)
            L.base[i] += U[i][j] * w[j];
    for (size_t j = rank; j < n; ++j) {
        vector<Z> d(n);
        for (size_t i = 0; i < n; ++i)
            d[i] = U[i][j];
        L.dirs.push_back(d);
    }
    return L;
}

void IlpProblem::add_eq(vector<Z> row, Z rhs)
{
    row.resize(nvars);
    eq.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
}

void IlpProblem::add_le(vector<Q> row, Q rhs)
{
    row.resize(nvars);
    le.push_back(std::move(row));
    le_rhs.push_back(std::move(rhs));
}

IlpResult solve_ilp(const IlpProblem & p, std::uint64_t node_limit)
{
    IlpResult res;
    auto lat = integer_solutions(p.eq, p.eq_rhs, p.nvars);
    if (! lat)
        return res;
    size_t d = lat->dirs.size();

    // inequalities in the lattice parameters
    QMat G;
    vector<Q> h;
    for (size_t i = 0; i < p.le.size(); ++i) {
        vector<Q> row(d);
        Q rhs = p.le_rhs[i];
        for (size_t v = 0; v < p.nvars; ++v) {
            if (p.le[i][v] == 0)
                continue;
            rhs -= p.le[i][v] * lat->base[v];
            for (size_t k = 0; k < d; ++k)
                row[k] += p.le[i][v] * lat->dirs[k][v];
        }
        G.push_back(row);
        h.push_back(rhs);
    }
    vector<Q> c(d);
    for (size_t v = 0; v < p.nvars && v < p.objective.size(); ++v)
        for (size_t k = 0; k < d; ++k)
            c[k] += p.objective[v] * lat->dirs[k][v];

    auto point = [&](const vector<Q> & t) {
        vector<Z> x = lat->base;
        for (size_t k = 0; k < d; ++k)
            for (size_t v = 0; v < p.nvars; ++v)
                x[v] += t[k].get_num() * lat->dirs[k][v];
        return x;
    };

    if (d == 0) {
        res.nodes = 1;
        for (size_t i = 0; i < G.size(); ++i)
            if (h[i] < 0)
                return res;
        res.x = lat->base;
        return res;
    }

    // depth-first, lower branch first
    struct Node {
        QMat G;
        vector<Q> h;
    };
    vector<Node> stack{{G, h}};
    while (! stack.empty()) {
        if (res.nodes >= node_limit) {
            res.exhausted = false;
            return res;
        }
        Node nd = std::move(stack.back());
        stack.pop_back();
        ++res.nodes;
        LpResult lp = lp_minimize(nd.G, nd.h, c);
        if (lp.status == LpResult::Status::Unbounded)
            lp = lp_minimize(nd.G, nd.h, vector<Q>(d));
        if (lp.status == LpResult::Status::Infeasible)
            continue;
        size_t frac = d;
        for (size_t k = 0; k < d; ++k)
            if (lp.x[k].get_den() != 1) {
                frac = k;
                break;
            }
        if (frac == d) {
            res.x = point(lp.x);
            return res;
        }
        Z fl = floor_q(lp.x[frac]);
        vector<Q> e(d);
        e[frac] = 1;
        Node up = nd, down = std::move(nd);
        vector<Q> ne(d);
        ne[frac] = -1;
        up.G.push_back(ne);
        up.h.push_back(Q(-(fl + 1)));
        down.G.push_back(e);
        down.h.push_back(Q(fl));
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
    }
    return res;
}

}
