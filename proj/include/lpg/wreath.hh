#ifndef LPG_WREATH_HH
#define LPG_WREATH_HH

#include "lpg/lexfn.hh"

#include <map>

namespace lpg {

// (h, comps) with h a translation of J = Z and comps: J -> F_n(Z) of finite
// support; absent components are the identity.
class WreathElement {
public:
    WreathElement(Int n = 1, Int h = 0, std::map<Int, PeriodicFn> comps = {});

    Int period() const { return n_; }
    Int h() const { return h_; }
    const std::map<Int, PeriodicFn> & comps() const { return comps_; }
    PeriodicFn comp(Int j) const;

    // the action on J ×→ Z
    std::pair<Int, Int> operator()(Int j, Int m) const { return {j + h_, comp(j)(m)}; }

    bool operator==(const WreathElement & o) const { return n_ == o.n_ && h_ == o.h_ && comps_ == o.comps_; }

private:
    Int n_;
    Int h_;
    std::map<Int, PeriodicFn> comps_;
};

// (n ⊗ h)(j) = n(h * j)
std::map<Int, PeriodicFn> act(const WreathElement & a, Int h);

WreathElement multiply(const WreathElement & a, const WreathElement & b);
bool leq(const WreathElement & a, const WreathElement & b);
WreathElement meet(const WreathElement & a, const WreathElement & b);
WreathElement join(const WreathElement & a, const WreathElement & b);
WreathElement linv(const WreathElement & a);
WreathElement rinv(const WreathElement & a);
WreathElement iter_inv(const WreathElement & a, Int m);

// Integer points of J sit at the same rationals.
LexFn iso_to_lexfn(const WreathElement & a);
// Requires an integer translation as global part and integer component keys.
WreathElement iso_from_lexfn(const LexFn & f);

// The generalization where H itself is an ℓ-pregroup, here F_k(Z) acting on
// J = Z by evaluation. Inverses use (h^ℓ, n^ℓ ⊗ h^ℓ) and (h^r, n^r ⊗ h^r).
struct PregroupWreath {
    PeriodicFn h;
    std::map<Int, PeriodicFn> comps;
    Int n = 1;

    PeriodicFn comp(Int j) const;
    bool operator==(const PregroupWreath & o) const { return h == o.h && comps == o.comps && n == o.n; }
};

PregroupWreath multiply(const PregroupWreath & a, const PregroupWreath & b);
PregroupWreath linv(const PregroupWreath & a);
PregroupWreath rinv(const PregroupWreath & a);
bool leq(const PregroupWreath & a, const PregroupWreath & b);

}

#endif
