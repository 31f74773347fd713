#include "lpg/fnz.hh"

#include <algorithm>
#include <sstream>
#include <stdexcept>

using std::invalid_argument;
using std::overflow_error;
using std::string;
using std::to_string;
using std::vector;

namespace lpg {

Int floor_div(Int a, Int n)
{
    Int q = a / n;
    if ((a % n != 0) && ((a < 0) != (n < 0)))
        --q;
    return q;
}

Int floor_mod(Int a, Int n)
{
    Int r = a % n;
    if (r != 0 && ((r < 0) != (n < 0)))
        r += n;
    return r;
}

Int add_checked(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in addition");
    return r;
}

Int mul_checked(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in multiplication");
    return r;
}

PeriodicFn::PeriodicFn() : n_(1), vals_{0} {}

PeriodicFn::PeriodicFn(Int n, vector<Int> vals) : n_(n), vals_(std::move(vals))
{
    if (n_ < 1)
        throw invalid_argument("period must be positive");
    if (static_cast<Int>(vals_.size()) != n_)
        throw invalid_argument("expected " + to_string(n_) + " values, got " + to_string(vals_.size()));
    for (Int i = 1; i < n_; ++i)
        if (vals_[i - 1] > vals_[i])
            throw invalid_argument("values not monotone on the period: " + str());
    if (vals_[n_ - 1] > add_checked(vals_[0], n_))
        throw invalid_argument("last value exceeds first value plus period: " + str());
}

PeriodicFn PeriodicFn::identity(Int n)
{
    vector<Int> v(n);
    for (Int i = 0; i < n; ++i)
        v[i] = i;
    return PeriodicFn(n, std::move(v));
}

PeriodicFn PeriodicFn::translation(Int n, Int t)
{
    vector<Int> v(n);
    for (Int i = 0; i < n; ++i)
        v[i] = add_checked(i, t);
    return PeriodicFn(n, std::move(v));
}

Int PeriodicFn::operator()(Int x) const
{
    Int q = floor_div(x, n_);
    Int r = x - q * n_;
    return add_checked(vals_[r], mul_checked(q, n_));
}

bool PeriodicFn::is_translation() const
{
    for (Int i = 1; i < n_; ++i)
        if (vals_[i] != vals_[0] + i)
            return false;
    return true;
}

bool PeriodicFn::operator<(const PeriodicFn & o) const
{
    if (n_ != o.n_)
        return n_ < o.n_;
    return vals_ < o.vals_;
}

string PeriodicFn::str() const
{
    std::ostringstream s;
    s << "(" << n_ << ",[";
    for (size_t i = 0; i < vals_.size(); ++i)
        s << (i ? "," : "") << vals_[i];
    s << "])";
    return s.str();
}

namespace {
    void same_period(const PeriodicFn & f, const PeriodicFn & g)
    {
        if (f.period() != g.period())
            throw PeriodError("period mismatch: " + f.str() + " vs " + g.str());
    }
}

bool leq(const PeriodicFn & f, const PeriodicFn & g)
{
    same_period(f, g);
    for (Int i = 0; i < f.period(); ++i)
        if (f.vals()[i] > g.vals()[i])
            return false;
    return true;
}

PeriodicFn compose(const PeriodicFn & f, const PeriodicFn & g)
{
    same_period(f, g);
    vector<Int> v(f.period());
    for (Int i = 0; i < f.period(); ++i)
        v[i] = f(g.vals()[i]);
    return PeriodicFn(f.period(), std::move(v));
}

// f^l(a) = min{b : a <= f(b)}; the answer lies in [a - v_{n-1} - n, a + |v_0| + n].
Int linv_scan(const PeriodicFn & f, Int a)
{
    Int n = f.period();
    Int lo = a - f.vals().back() - n, hi = a + std::abs(f.vals().front()) + n;
    for (Int b = lo; b <= hi; ++b)
        if (a <= f(b))
            return b;
    throw std::logic_error("residual scan left its window");
}

// f^r(b) = max{a : f(a) <= b}.
Int rinv_scan(const PeriodicFn & f, Int b)
{
    Int n = f.period();
    Int lo = b - f.vals().back() - n, hi = b + std::abs(f.vals().front()) + n;
    for (Int a = hi; a >= lo; --a)
        if (f(a) <= b)
            return a;
    throw std::logic_error("residual scan left its window");
}

PeriodicFn linv(const PeriodicFn & f)
{
    vector<Int> v(f.period());
    for (Int a = 0; a < f.period(); ++a)
        v[a] = linv_scan(f, a);
    return PeriodicFn(f.period(), std::move(v));
}

PeriodicFn rinv(const PeriodicFn & f)
{
    vector<Int> v(f.period());
    for (Int b = 0; b < f.period(); ++b)
        v[b] = rinv_scan(f, b);
    return PeriodicFn(f.period(), std::move(v));
}

namespace {
    // f^(2k)(x) = f(x - k) + k
    PeriodicFn even_power(const PeriodicFn & f, Int k)
    {
        vector<Int> v(f.period());
        for (Int a = 0; a < f.period(); ++a)
            v[a] = add_checked(f(a - k), k);
        return PeriodicFn(f.period(), std::move(v));
    }
}

PeriodicFn iter_inv(const PeriodicFn & f, Int m)
{
    Int n = f.period();
    // f^(2n) = f, so reduce m modulo 2n first.
    m = floor_mod(m, 2 * n);
    if (m > n)
        m -= 2 * n;
    if (m >= 0) {
        PeriodicFn e = even_power(f, m / 2);
        return m % 2 ? linv(e) : e;
    }
    Int k = (-m) / 2;
    PeriodicFn e = even_power(f, -k);
    return (-m) % 2 ? rinv(e) : e;
}

PeriodicFn meet(const PeriodicFn & f, const PeriodicFn & g)
{
    same_period(f, g);
    vector<Int> v(f.period());
    for (Int i = 0; i < f.period(); ++i)
        v[i] = std::min(f.vals()[i], g.vals()[i]);
    return PeriodicFn(f.period(), std::move(v));
}

PeriodicFn join(const PeriodicFn & f, const PeriodicFn & g)
{
    same_period(f, g);
    vector<Int> v(f.period());
    for (Int i = 0; i < f.period(); ++i)
        v[i] = std::max(f.vals()[i], g.vals()[i]);
    return PeriodicFn(f.period(), std::move(v));
}

Decomposition decompose(const PeriodicFn & f)
{
    Int n = f.period();
    Int shift = floor_div(f.vals()[0], n) * n;
    vector<Int> v(f.vals());
    for (auto & x : v)
        x -= shift;
    return {shift, PeriodicFn(n, std::move(v))};
}

PeriodicFn recompose(const Decomposition & d)
{
    vector<Int> v(d.star.vals());
    for (auto & x : v)
        x = add_checked(x, d.shift);
    return PeriodicFn(d.star.period(), std::move(v));
}

namespace {
    Int ceil_div(Int a, Int n) { return -floor_div(-a, n); }
}

bool is_n_periodic_map(const IntMap & h, Int n)
{
    for (auto & [x, gx] : h)
        for (auto & [y, gy] : h)
            if (ceil_div(gx - gy, n) > ceil_div(x - y, n))
                return false;
    return true;
}

PeriodicFn extend_partial(const IntMap & h, Int n, bool allow_empty)
{
    if (h.empty()) {
        if (allow_empty)
            return PeriodicFn::identity(n);
        throw invalid_argument("extend_partial: empty partial map");
    }
    if (! is_n_periodic_map(h, n))
        throw invalid_argument("extend_partial: map is not " + to_string(n) + "-periodic");

    // Fold the domain into one period.
    std::map<Int, Int> folded;
    for (auto & [x, y] : h) {
        Int q = floor_div(x, n);
        folded[x - q * n] = y - q * n;
    }
    vector<Int> v(n);
    for (Int x = 0; x < n; ++x) {
        auto it = folded.lower_bound(x);
        if (it == folded.end())
            it = std::prev(folded.end());
        v[x] = it->second;
    }
    return PeriodicFn(n, std::move(v));
}

}
