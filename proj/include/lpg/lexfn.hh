#ifndef LPG_LEXFN_HH
#define LPG_LEXFN_HH

#include "lpg/fnz.hh"
#include "lpg/ilp.hh"

#include <map>
#include <utility>
#include <vector>

namespace lpg {

// Increasing PL bijection of Q. Piece i is affine on (b_{i-1}, b_i], the
// first and last pieces are unbounded; pieces.size() == breakpoints.size() + 1.
struct PLBijection {
    struct Piece {
        Q slope;
        Q intercept;

        bool operator==(const Piece &) const = default;
    };
    std::vector<Q> breakpoints;
    std::vector<Piece> pieces;

    PLBijection();
    static PLBijection translation(const Q & t);
    // Interpolates increasing points, slope 1 beyond the ends.
    static PLBijection through(const std::vector<std::pair<Q, Q>> & pts);

    Q operator()(const Q & x) const;
    const Piece & piece_at(const Q & x) const;
    bool is_identity() const;
    bool valid() const;

    bool operator==(const PLBijection &) const = default;
};

PLBijection compose(const PLBijection & f, const PLBijection & g);
PLBijection inverse(const PLBijection & f);
PLBijection pointwise_min(const PLBijection & f, const PLBijection & g);
PLBijection pointwise_max(const PLBijection & f, const PLBijection & g);
bool leq_everywhere(const PLBijection & f, const PLBijection & g);

// Merges equal neighbouring pieces.
PLBijection simplified(PLBijection f);

// A point of Q ×→ Z.
struct LexPoint {
    Q j;
    Int r;

    auto operator<=>(const LexPoint & o) const
    {
        if (j != o.j)
            return j < o.j ? std::strong_ordering::less : std::strong_ordering::greater;
        return r <=> o.r;
    }
    bool operator==(const LexPoint & o) const { return j == o.j && r == o.r; }
};

// f(j, r) = (tilde(j), comps[j](r)); missing components are the identity.
class LexFn {
public:
    LexFn(Int n = 1);
    LexFn(Int n, PLBijection tilde, std::map<Q, PeriodicFn> comps);

    Int period() const { return n_; }
    const PLBijection & tilde() const { return tilde_; }
    const std::map<Q, PeriodicFn> & comps() const { return comps_; }
    PeriodicFn comp(const Q & j) const;

    LexPoint operator()(const LexPoint & p) const;

    bool operator==(const LexFn & o) const { return n_ == o.n_ && tilde_ == o.tilde_ && comps_ == o.comps_; }

private:
    Int n_;
    PLBijection tilde_;
    std::map<Q, PeriodicFn> comps_;
};

LexFn compose(const LexFn & f, const LexFn & g);
LexFn linv(const LexFn & f);
LexFn rinv(const LexFn & f);
LexFn iter_inv(const LexFn & f, Int m);
LexFn meet(const LexFn & f, const LexFn & g);
LexFn join(const LexFn & f, const LexFn & g);

bool leq_sampled(const LexFn & f, const LexFn & g, const std::vector<LexPoint> & sample);
bool exact_leq(const LexFn & f, const LexFn & g);

}

#endif
