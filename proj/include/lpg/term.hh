#ifndef LPG_TERM_HH
#define LPG_TERM_HH

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpg {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string & msg, std::size_t off);
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Syntax tree. Inv carries an exponent: ^l is 1, ^r is -1, ^(m) is m.
struct Term {
    enum class Kind { Var, Unit, Prod, Join, Meet, Inv };
    Kind kind;
    std::string name;
    std::int64_t exp = 0;
    std::vector<TermPtr> kids;
    std::size_t pos = 0;

    std::string str() const;
};

enum class Rel { Eq, Leq };

struct Equation {
    TermPtr lhs;
    Rel rel;
    TermPtr rhs;
    std::string text;

    std::string str() const;
};

Equation parse(const std::string & text);

// Variables, constants, binary symbols (juxtaposition included) and inverse
// symbols, with ^(m) counting |m|.
std::int64_t symbol_count(const Equation & eq);

struct Factor {
    std::string var;
    std::int64_t m;

    auto operator<=>(const Factor &) const = default;
};

// x1^(m1) ... xk^(mk); empty means 1.
using Word = std::vector<Factor>;

std::string word_str(const Word & w);

struct IntensionalEquation {
    std::vector<Word> joinands;
    std::vector<std::string> vars;
    std::int64_t length = 0;

    std::string str() const;
};

std::vector<IntensionalEquation> to_intensional(const Equation & eq);
std::vector<IntensionalEquation> normalize(const std::string & text);

std::set<Word> final_subwords(const IntensionalEquation & e);

// A point of the syntactic universe: a word in factors and cover decorations.
struct DToken {
    enum class Kind { Fac, Up, Down };
    Kind kind;
    std::string var;
    std::int64_t m = 0;

    auto operator<=>(const DToken &) const = default;
};

struct DeltaPoint {
    std::vector<DToken> toks;

    auto operator<=>(const DeltaPoint &) const = default;
    std::string str() const;
    bool plain() const;
};

DeltaPoint as_point(const Word & w);

std::vector<DeltaPoint> delta_epsilon(const IntensionalEquation & e);

// 2^len * len^4, saturating at INT64_MAX.
std::int64_t delta_size_bound(std::int64_t len);

}

#endif
