#ifndef LPG_ILP_HH
#define LPG_ILP_HH

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace lpg {

using Q = mpq_class;
using Z = mpz_class;
using QMat = std::vector<std::vector<Q>>;
using ZMat = std::vector<std::vector<Z>>;

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status;
    std::vector<Q> x;
    Q value;
};

// min c.x subject to G x <= h, x free. Exact; Bland's rule.
LpResult lp_minimize(const QMat & G, const std::vector<Q> & h, const std::vector<Q> & c);

// All integer solutions of A x = b as base + sum t_i dirs[i], t integral.
struct Lattice {
    std::vector<Z> base;
    std::vector<std::vector<Z>> dirs;
};

std::optional<Lattice> integer_solutions(const ZMat & A, const std::vector<Z> & b, std::size_t nvars);

struct IlpProblem {
    std::size_t nvars = 0;
    ZMat eq;
    std::vector<Z> eq_rhs;
    QMat le;
    std::vector<Q> le_rhs;
    std::vector<Q> objective;

    void add_eq(std::vector<Z> row, Z rhs);
    void add_le(std::vector<Q> row, Q rhs);
};

struct IlpResult {
    std::optional<std::vector<Z>> x;
    std::uint64_t nodes = 0;
    // false when the node limit cut the search short
    bool exhausted = true;
};

// Depth-first branch and bound; complete when the feasible region is bounded.
IlpResult solve_ilp(const IlpProblem & p, std::uint64_t node_limit = 1000000);

}

#endif
