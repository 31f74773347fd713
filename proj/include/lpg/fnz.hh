#ifndef LPG_FNZ_HH
#define LPG_FNZ_HH

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpg {

using Int = std::int64_t;

// Partial map on the integers; keys are the domain.
using IntMap = std::map<Int, Int>;

struct PeriodError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Int floor_div(Int a, Int n);
Int floor_mod(Int a, Int n);

// Checked arithmetic; throws std::overflow_error.
Int add_checked(Int a, Int b);
Int mul_checked(Int a, Int b);

// An n-periodic residuated map on Z, f(x) = vals[x mod n] + n*floor(x/n).
class PeriodicFn {
public:
    PeriodicFn();
    PeriodicFn(Int n, std::vector<Int> vals);

    static PeriodicFn identity(Int n);
    static PeriodicFn translation(Int n, Int t);

    Int period() const { return n_; }
    const std::vector<Int> & vals() const { return vals_; }

    Int operator()(Int x) const;

    bool is_translation() const;

    bool operator==(const PeriodicFn & o) const { return n_ == o.n_ && vals_ == o.vals_; }
    bool operator!=(const PeriodicFn & o) const { return ! (*this == o); }
    bool operator<(const PeriodicFn & o) const;

    std::string str() const;

private:
    Int n_;
    std::vector<Int> vals_;
};

// Pointwise order.
bool leq(const PeriodicFn & f, const PeriodicFn & g);

PeriodicFn compose(const PeriodicFn & f, const PeriodicFn & g);
PeriodicFn linv(const PeriodicFn & f);
PeriodicFn rinv(const PeriodicFn & f);
PeriodicFn iter_inv(const PeriodicFn & f, Int m);
PeriodicFn meet(const PeriodicFn & f, const PeriodicFn & g);
PeriodicFn join(const PeriodicFn & f, const PeriodicFn & g);

// Residuals by direct scan of the definitions, used as test oracles.
Int linv_scan(const PeriodicFn & f, Int a);
Int rinv_scan(const PeriodicFn & f, Int b);

struct Decomposition {
    Int shift;            // multiple of n
    PeriodicFn star;      // 0 <= star(0) < n
};

Decomposition decompose(const PeriodicFn & f);
PeriodicFn recompose(const Decomposition & d);

// ceil((a-b)/n) <= ceil((x-y)/n) for all pairs of the map.
bool is_n_periodic_map(const IntMap & h, Int n);

// Extends an n-periodic partial map to an element of F_n(Z).
// An empty map is rejected unless allow_empty, which yields the identity.
PeriodicFn extend_partial(const IntMap & h, Int n, bool allow_empty = false);

}

#endif
