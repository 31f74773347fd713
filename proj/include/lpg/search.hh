#ifndef LPG_SEARCH_HH
#define LPG_SEARCH_HH

#include "lpg/diagram.hh"
#include "lpg/term.hh"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace lpg {

// Δ_ε with the structure every compatible surjection has to respect.
struct SyntacticUniverse {
    IntensionalEquation eq;
    std::vector<DeltaPoint> pts;
    std::vector<std::string> vars;
    Int unit = 0;
    std::vector<Int> joinands;

    enum class Kind { Unit, Fac, Up, Down };
    struct Info {
        Kind kind;
        Int rest = -1;
        Int var = -1;
        Int m = 0;
    };
    std::vector<Info> info;

    Int index_of(const DeltaPoint & p) const;
};

SyntacticUniverse make_universe(const IntensionalEquation & e);

struct CompatibleSurjection {
    std::vector<Int> phi;
    CChain chain;
    std::vector<PartialFn> g;
};

// Builds chain and functions from phi; no conditions checked.
CompatibleSurjection induced(const SyntacticUniverse & U, const std::vector<Int> & phi);

// Conditions (i)-(iii) recomputed from scratch.
bool is_compatible(const SyntacticUniverse & U, const std::vector<Int> & phi);

bool fails_in(const SyntacticUniverse & U, const CompatibleSurjection & s);

struct SurjectionStats {
    std::uint64_t nodes = 0;
    std::uint64_t emitted = 0;
    std::uint64_t global_rejects = 0;
    bool stopped = false;
};

struct SurjectionOptions {
    bool only_failing = false;
    std::uint64_t node_limit = 0;  // 0 means unlimited
};

// Calls visit on each compatible surjection; visit returns false to stop.
SurjectionStats enumerate_compatible_surjections(const SyntacticUniverse & U, const SurjectionOptions & opt,
                                                 const std::function<bool(const CompatibleSurjection &)> & visit);

// A compatible surjection with its chain cut into consecutive blocks.
struct PartitionDiagram {
    CompatibleSurjection s;
    std::vector<Int> block;
    Int nblocks = 0;

    // block map of g, and the local part of g from block j as a map on offsets
    IntMap tilde(Int var) const;
    IntMap local(Int var, Int j) const;
    Int offset(Int x) const;
};

// cuts[k] means a block boundary between k-1 and k, for k in 1..q-1.
bool valid_partition(const CompatibleSurjection & s, const std::vector<bool> & cuts);
std::vector<std::vector<bool>> valid_partitions(const CompatibleSurjection & s);

// The unique valid partition with the most blocks.
std::vector<bool> finest_partition(const CompatibleSurjection & s);

PartitionDiagram make_partition_diagram(const CompatibleSurjection & s, const std::vector<bool> & cuts);

}

#endif
