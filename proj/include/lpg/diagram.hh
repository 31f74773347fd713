#ifndef LPG_DIAGRAM_HH
#define LPG_DIAGRAM_HH

#include "lpg/fnz.hh"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lpg {

// Elements 0..q-1; a in covers means a ⋖ a+1 is designated.
struct CChain {
    Int q = 0;
    std::set<Int> covers;

    bool covered(Int a) const { return covers.count(a) != 0; }
};

// Order-preserving partial function on chain elements.
using PartialFn = IntMap;

bool is_order_preserving(const PartialFn & g);

// Bracket inverses relative to a cover predicate: cov(a) means a ⋖ a+1.
PartialFn ell_bracket(const PartialFn & g, const std::function<bool(Int)> & cov);
PartialFn r_bracket(const PartialFn & g, const std::function<bool(Int)> & cov);

PartialFn ell_bracket(const PartialFn & g, const CChain & c);
PartialFn r_bracket(const PartialFn & g, const CChain & c);
PartialFn iter_bracket(const PartialFn & g, Int m, const CChain & c);

// On Z the covers are the consecutive pairs inside the domain.
PartialFn iter_bracket_z(const PartialFn & g, Int m);

struct SpacingEmbedding {
    std::vector<Int> pos;

    Int height() const { return pos.empty() ? 0 : pos.back(); }
    static SpacingEmbedding identity(Int q);
};

// Strictly increasing, starts at 0, covers go to consecutive integers.
bool is_spacing_embedding(const SpacingEmbedding & e, const CChain & c);

IntMap counterpart(const PartialFn & g, const SpacingEmbedding & e);

bool check_n_periodic(const PartialFn & g, const SpacingEmbedding & e, Int n);

// The definition itself: x <= y + kn implies g(x) <= g(y) + kn for |k| <= ceil(height/n).
bool check_n_periodic_definitional(const PartialFn & g, const SpacingEmbedding & e, Int n);

struct Diagram {
    CChain chain;
    std::map<std::string, PartialFn> fns;
};

std::string diagram_json(const Diagram & d);

}

#endif
