#ifndef LPG_SERIALIZE_HH
#define LPG_SERIALIZE_HH

#include "lpg/lexfn.hh"

#include "json.hpp"

namespace lpg {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings; plain integers are accepted on input.
std::string q_str(const Q & x);
Q q_from_json(const Json & j);

Json to_json(const PeriodicFn & f);
PeriodicFn periodic_from_json(const Json & j);

Json to_json(const PLBijection & f);
PLBijection pl_from_json(const Json & j);

Json to_json(const LexFn & f);
LexFn lex_from_json(const Json & j);

}

#endif
