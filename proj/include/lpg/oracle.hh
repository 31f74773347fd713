#ifndef LPG_ORACLE_HH
#define LPG_ORACLE_HH

#include "lpg/decide.hh"
#include "lpg/fnz.hh"

#include <optional>
#include <random>

namespace lpg {

using Rng = std::mt19937_64;

// Values satisfy the PeriodicFn invariants and |v0| <= value_bound.
PeriodicFn random_periodic_fn(Int n, Int value_bound, Rng & rng);

// budget counts assignments tried. A returned witness has passed verify_witness;
// none means nothing was found, not that the equation holds.
std::optional<Witness> search_counterexample_fnz(const std::string & equation, Int n, std::uint64_t budget, Rng & rng);
std::optional<Witness> search_counterexample_lex(const std::string & equation, Int n, std::uint64_t budget, Rng & rng);

}

#endif
