#ifndef LPG_DECIDE_HH
#define LPG_DECIDE_HH

#include "lpg/lexfn.hh"
#include "lpg/search.hh"
#include "lpg/serialize.hh"
#include "lpg/spacing.hh"

#include <map>
#include <optional>
#include <string>

namespace lpg {

struct Witness {
    enum class Space { FnZ, FnQxZ };
    Space space = Space::FnZ;
    Int n = 1;
    std::string inequality;
    std::map<std::string, PeriodicFn> fz;
    std::map<std::string, LexFn> fl;
    LexPoint point{0, 0};  // j = 0 in F_n(Z)
    std::vector<LexPoint> values;
};

struct DecideStats {
    std::uint64_t enumeration_nodes = 0;
    std::uint64_t failing_candidates = 0;
    std::uint64_t embedding_searches = 0;
    std::uint64_t residue_nodes = 0;
    std::uint64_t lp_nodes = 0;
    double seconds = 0;
};

struct Verdict {
    enum class Status { Valid, Fails, Unknown };
    Status status = Status::Unknown;
    bool complete = false;
    std::string theory;
    Int n = 1;
    std::string n_exact;  // the reduction's n when it differs from the one used
    std::string equation;
    std::optional<Witness> witness;
    DecideStats stats;
};

struct DecideOptions {
    bool complete = false;
    std::uint64_t budget = 0;  // enumeration node limit, 0 means none
    unsigned jobs = 1;
    std::uint64_t lp_node_limit = 2000000;
    // decide_dlp refuses larger n unless forced
    Int dlp_threshold = 64;
    bool force = false;
};

// Thrown for unusable input or configuration; the CLI maps it to exit 3.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Verdict decide_fnz(const std::string & equation, Int n, const DecideOptions & opt = {});
Verdict decide_lpn(const std::string & equation, Int n, const DecideOptions & opt = {});
Verdict decide_dlp(const std::string & equation, std::optional<Int> n_override, const DecideOptions & opt = {});

Z dlp_n(std::int64_t len);

Witness realize_fnz_witness(const SyntacticUniverse & U, const CompatibleSurjection & s, const SpacingEmbedding & e,
                            Int n);
// e holds positions restarting at 0 in every block of pd.
Witness realize_lex_witness(const SyntacticUniverse & U, const PartitionDiagram & pd, const SpacingEmbedding & e,
                            Int n);

std::vector<LexPoint> joinand_values(const IntensionalEquation & eq, const Witness & w);

// Every joinand lands strictly below the point.
bool verify_witness(const IntensionalEquation & eq, const Witness & w);
// True when the witness refutes some intensional form of the equation.
bool verify_witness(const std::string & equation, const Witness & w);

Json to_json(const Witness & w);
Witness witness_from_json(const Json & j);
Json to_json(const Verdict & v);

const char * status_name(Verdict::Status s);
int exit_code(const Verdict & v);

}

#endif
