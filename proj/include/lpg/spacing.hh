#ifndef LPG_SPACING_HH
#define LPG_SPACING_HH

#include "lpg/diagram.hh"
#include "lpg/ilp.hh"

#include <optional>
#include <set>
#include <vector>

namespace lpg {

Z rho(Int a);
Z nu(Int a, Int n);

// Points p0 < ... < pl of Z; covers holds indices k with p_k ⋖ p_{k+1}.
struct SubChain {
    std::vector<Int> points;
    std::set<Int> covers;
};

// Gap variables Y_1..Y_l are stored at indices 0..l-1.
struct LinearSystem {
    Int l = 0;
    std::vector<std::vector<int>> A;
    std::vector<Int> b;

    bool satisfied_by(const std::vector<Int> & y) const;
    bool delta_bounded(Int delta_size) const;
};

// y_k = p_k - p_{k-1} - 1
std::vector<Int> gap_vector(const std::vector<Int> & points);

LinearSystem build_1transfer_system(const SubChain & c);

struct BoundedSolve {
    std::optional<std::vector<Int>> y;
    Int independent_rows = 0;
    Z gamma;
    Z box;
    bool gamma_exact = true;
};

BoundedSolve solve_bounded_nonneg(const LinearSystem & sys);

SpacingEmbedding find_short_1transfer(const SubChain & c);
SpacingEmbedding find_short_ntransfer(const SubChain & c, Int n);

struct EmbeddingSearch {
    std::optional<SpacingEmbedding> e;
    // true when absence of e is certain within the cap
    bool exhausted = true;
    std::uint64_t residue_nodes = 0;
    std::uint64_t lp_nodes = 0;
};

// Positions of height <= cap making every fn n-periodic. With blocks (one id
// per chain element, ids constant on intervals) positions restart at 0 in
// every block and only pairs inside one block are constrained.
EmbeddingSearch find_witness_embedding(const std::vector<PartialFn> & fns, const CChain & c, Int n, const Z & cap,
                                       const std::vector<Int> & blocks = {}, std::uint64_t lp_node_limit = 2000000);

Z practical_cap(Int q, Int n);

}

#endif
