#include "lpg/term.hh"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

using std::int64_t;
using std::make_shared;
using std::map;
using std::set;
using std::size_t;
using std::string;
using std::vector;

namespace lpg {

ParseError::ParseError(const string & msg, size_t off)
    : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off)
{
}

namespace {

    TermPtr mk(Term::Kind k, size_t pos, vector<TermPtr> kids = {}, string name = {}, int64_t e = 0)
    {
        auto t = make_shared<Term>();
        t->kind = k;
        t->pos = pos;
        t->kids = std::move(kids);
        t->name = std::move(name);
        t->exp = e;
        return t;
    }

    class Parser {
    public:
        explicit Parser(const string & s) : s_(s) {}

        Equation equation()
        {
            Equation eq;
            eq.text = s_;
            eq.lhs = join();
            skip();
            if (eat("<=") || eat("≤"))
                eq.rel = Rel::Leq;
            else if (eat("="))
                eq.rel = Rel::Eq;
            else
                throw ParseError("expected '=' or '<='", i_);
            eq.rhs = join();
            skip();
            if (i_ != s_.size())
                throw ParseError("unexpected trailing input", i_);
            return eq;
        }

    private:
        const string & s_;
        size_t i_ = 0;

        void skip()
        {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
                ++i_;
        }

        bool eat(const char * tok)
        {
            skip();
            size_t n = std::char_traits<char>::length(tok);
            if (s_.compare(i_, n, tok) == 0) {
                i_ += n;
                return true;
            }
            return false;
        }

        bool atom_start()
        {
            skip();
            if (i_ >= s_.size())
                return false;
            char c = s_[i_];
            return c == '(' || c == '1' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
        }

        TermPtr join()
        {
            size_t p = (skip(), i_);
            vector<TermPtr> ks{meet()};
            while (eat("|"))
                ks.push_back(meet());
            return ks.size() == 1 ? ks[0] : mk(Term::Kind::Join, p, ks);
        }

        TermPtr meet()
        {
            size_t p = (skip(), i_);
            vector<TermPtr> ks{prod()};
            while (eat("&"))
                ks.push_back(prod());
            return ks.size() == 1 ? ks[0] : mk(Term::Kind::Meet, p, ks);
        }

        TermPtr prod()
        {
            size_t p = (skip(), i_);
            vector<TermPtr> ks{post()};
            for (;;) {
                if (eat("*")) {
                    ks.push_back(post());
                    continue;
                }
                if (atom_start()) {
                    ks.push_back(post());
                    continue;
                }
                break;
            }
            return ks.size() == 1 ? ks[0] : mk(Term::Kind::Prod, p, ks);
        }

        TermPtr post()
        {
            TermPtr t = atom();
            for (;;) {
                skip();
                if (i_ >= s_.size() || s_[i_] != '^')
                    break;
                size_t p = i_++;
                if (eat("(")) {
                    skip();
                    size_t q = i_;
                    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+'))
                        ++i_;
                    size_t d = i_;
                    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                        ++i_;
                    if (d == i_)
                        throw ParseError("expected integer exponent", i_);
                    int64_t m;
                    try {
                        m = std::stoll(s_.substr(q, i_ - q));
                    } catch (const std::out_of_range &) {
                        throw ParseError("exponent out of range", q);
                    }
                    if (! eat(")"))
                        throw ParseError("expected ')'", i_);
                    t = mk(Term::Kind::Inv, p, {t}, {}, m);
                }
                else if (i_ < s_.size() && s_[i_] == 'l') {
                    ++i_;
                    t = mk(Term::Kind::Inv, p, {t}, {}, 1);
                }
                else if (i_ < s_.size() && s_[i_] == 'r') {
                    ++i_;
                    t = mk(Term::Kind::Inv, p, {t}, {}, -1);
                }
                else
                    throw ParseError("expected 'l', 'r' or '(' after '^'", i_);
            }
            return t;
        }

        TermPtr atom()
        {
            skip();
            if (i_ >= s_.size())
                throw ParseError("unexpected end of input", i_);
            size_t p = i_;
            char c = s_[i_];
            if (c == '(') {
                ++i_;
                TermPtr t = join();
                if (! eat(")"))
                    throw ParseError("expected ')'", i_);
                return t;
            }
            if (c == '1') {
                ++i_;
                if (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_])))
                    throw ParseError("unknown token", p);
                return mk(Term::Kind::Unit, p);
            }
            if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
                while (i_ < s_.size() && (s_[i_] == '_' || std::isalnum(static_cast<unsigned char>(s_[i_]))))
                    ++i_;
                return mk(Term::Kind::Var, p, {}, s_.substr(p, i_ - p));
            }
            throw ParseError("unknown token", p);
        }
    };

    int64_t count(const Term & t)
    {
        switch (t.kind) {
        case Term::Kind::Var:
        case Term::Kind::Unit:
            return 1;
        case Term::Kind::Inv:
            return std::abs(t.exp) + count(*t.kids[0]);
        default: {
            int64_t c = static_cast<int64_t>(t.kids.size()) - 1;
            for (auto & k : t.kids)
                c += count(*k);
            return c;
        }
        }
    }

    // Negation-normal form: inverses pushed onto variables.
    struct NTerm;
    using NPtr = std::shared_ptr<const NTerm>;
    struct NTerm {
        enum class Kind { Atom, Unit, Prod, Join, Meet } kind;
        Factor atom{};
        vector<NPtr> kids;
    };

    NPtr nmk(NTerm::Kind k, vector<NPtr> kids = {}, Factor a = {})
    {
        auto t = make_shared<NTerm>();
        t->kind = k;
        t->kids = std::move(kids);
        t->atom = std::move(a);
        return t;
    }

    // Normal form of t^(m): (ab)^(m) reverses factors for odd m, odd m swaps
    // joins and meets, 1^(m) = 1, and exponents on a variable add up.
    NPtr push(const Term & t, int64_t m)
    {
        bool odd = (m % 2) != 0;
        switch (t.kind) {
        case Term::Kind::Var:
            return nmk(NTerm::Kind::Atom, {}, Factor{t.name, m});
        case Term::Kind::Unit:
            return nmk(NTerm::Kind::Unit);
        case Term::Kind::Inv:
            return push(*t.kids[0], m + t.exp);
        case Term::Kind::Prod: {
            vector<NPtr> ks;
            for (auto & k : t.kids)
                ks.push_back(push(*k, m));
            if (odd)
                std::reverse(ks.begin(), ks.end());
            return nmk(NTerm::Kind::Prod, ks);
        }
        case Term::Kind::Join:
        case Term::Kind::Meet: {
            vector<NPtr> ks;
            for (auto & k : t.kids)
                ks.push_back(push(*k, m));
            bool is_join = (t.kind == Term::Kind::Join) != odd;
            return nmk(is_join ? NTerm::Kind::Join : NTerm::Kind::Meet, ks);
        }
        }
        throw std::logic_error("bad term");
    }

    // A join of meets of words.
    using Meet = set<Word>;
    using Dnf = vector<Meet>;

    Word cat(const Word & a, const Word & b)
    {
        Word w(a);
        w.insert(w.end(), b.begin(), b.end());
        return w;
    }

    void dedupe(Dnf & d)
    {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }

    Dnf dnf(const NTerm & t)
    {
        switch (t.kind) {
        case NTerm::Kind::Atom:
            return {Meet{Word{t.atom}}};
        case NTerm::Kind::Unit:
            return {Meet{Word{}}};
        case NTerm::Kind::Join: {
            Dnf r;
            for (auto & k : t.kids) {
                Dnf d = dnf(*k);
                r.insert(r.end(), d.begin(), d.end());
            }
            dedupe(r);
            return r;
        }
        case NTerm::Kind::Meet: {
            Dnf r = dnf(*t.kids[0]);
            for (size_t i = 1; i < t.kids.size(); ++i) {
                Dnf d = dnf(*t.kids[i]), nr;
                for (auto & a : r)
                    for (auto & b : d) {
                        Meet m(a);
                        m.insert(b.begin(), b.end());
                        nr.push_back(m);
                    }
                dedupe(nr);
                r = std::move(nr);
            }
            return r;
        }
        case NTerm::Kind::Prod: {
            Dnf r = dnf(*t.kids[0]);
            for (size_t i = 1; i < t.kids.size(); ++i) {
                Dnf d = dnf(*t.kids[i]), nr;
                for (auto & a : r)
                    for (auto & b : d) {
                        Meet m;
                        for (auto & u : a)
                            for (auto & v : b)
                                m.insert(cat(u, v));
                        nr.push_back(m);
                    }
                dedupe(nr);
                r = std::move(nr);
            }
            return r;
        }
        }
        throw std::logic_error("bad normal term");
    }

    void collect_vars(const Term & t, vector<string> & out)
    {
        if (t.kind == Term::Kind::Var) {
            if (std::find(out.begin(), out.end(), t.name) == out.end())
                out.push_back(t.name);
            return;
        }
        for (auto & k : t.kids)
            collect_vars(*k, out);
    }

    string exp_str(int64_t m)
    {
        return "^(" + std::to_string(m) + ")";
    }

}

string Term::str() const
{
    switch (kind) {
    case Kind::Var:
        return name;
    case Kind::Unit:
        return "1";
    case Kind::Inv:
        if (exp == 1)
            return kids[0]->str() + "^l";
        if (exp == -1)
            return kids[0]->str() + "^r";
        return kids[0]->str() + exp_str(exp);
    default: {
        const char * sep = kind == Kind::Prod ? " " : kind == Kind::Join ? " | " : " & ";
        string s = "(";
        for (size_t i = 0; i < kids.size(); ++i)
            s += (i ? sep : "") + kids[i]->str();
        return s + ")";
    }
    }
}

string Equation::str() const
{
    return lhs->str() + (rel == Rel::Eq ? " = " : " <= ") + rhs->str();
}

Equation parse(const string & text)
{
    return Parser(text).equation();
}

int64_t symbol_count(const Equation & eq)
{
    return count(*eq.lhs) + count(*eq.rhs);
}

string word_str(const Word & w)
{
    if (w.empty())
        return "1";
    string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += " ";
        s += w[i].var;
        if (w[i].m != 0)
            s += exp_str(w[i].m);
    }
    return s;
}

string IntensionalEquation::str() const
{
    string s = "1 <= ";
    for (size_t i = 0; i < joinands.size(); ++i)
        s += (i ? " | " : "") + word_str(joinands[i]);
    return s;
}

vector<IntensionalEquation> to_intensional(const Equation & eq)
{
    vector<std::pair<TermPtr, TermPtr>> ineqs{{eq.lhs, eq.rhs}};
    if (eq.rel == Rel::Eq)
        ineqs.push_back({eq.rhs, eq.lhs});

    vector<string> vars;
    collect_vars(*eq.lhs, vars);
    collect_vars(*eq.rhs, vars);
    int64_t len = symbol_count(eq);

    vector<IntensionalEquation> out;
    set<set<Word>> seen;
    for (auto & [s, t] : ineqs) {
        // s <= t  iff  1 <= s^r t
        NPtr n = nmk(NTerm::Kind::Prod, {push(*s, -1), push(*t, 0)});
        Dnf d = dnf(*n);
        // One equation per selection of a joinand from every meet.
        vector<size_t> idx(d.size(), 0);
        vector<vector<Word>> meets;
        for (auto & m : d)
            meets.emplace_back(m.begin(), m.end());
        for (;;) {
            set<Word> js;
            for (size_t i = 0; i < meets.size(); ++i)
                js.insert(meets[i][idx[i]]);
            if (seen.insert(js).second) {
                IntensionalEquation ie;
                ie.joinands.assign(js.begin(), js.end());
                ie.length = len;
                for (auto & v : vars) {
                    bool used = false;
                    for (auto & w : ie.joinands)
                        for (auto & f : w)
                            used = used || f.var == v;
                    if (used)
                        ie.vars.push_back(v);
                }
                out.push_back(std::move(ie));
            }
            size_t k = 0;
            while (k < idx.size() && ++idx[k] == meets[k].size())
                idx[k++] = 0;
            if (k == idx.size())
                break;
        }
    }
    return out;
}

vector<IntensionalEquation> normalize(const string & text)
{
    return to_intensional(parse(text));
}

set<Word> final_subwords(const IntensionalEquation & e)
{
    set<Word> fs{Word{}};
    for (auto & w : e.joinands)
        for (size_t i = 0; i < w.size(); ++i)
            fs.insert(Word(w.begin() + i, w.end()));
    return fs;
}

string DeltaPoint::str() const
{
    if (toks.empty())
        return "1";
    string s;
    for (size_t i = 0; i < toks.size(); ++i) {
        auto & t = toks[i];
        if (t.kind == DToken::Kind::Up)
            s += "+";
        else if (t.kind == DToken::Kind::Down)
            s += "-";
        else {
            s += t.var;
            if (t.m != 0)
                s += exp_str(t.m);
            if (i + 1 < toks.size())
                s += " ";
        }
    }
    return s;
}

bool DeltaPoint::plain() const
{
    for (auto & t : toks)
        if (t.kind != DToken::Kind::Fac)
            return false;
    return true;
}

DeltaPoint as_point(const Word & w)
{
    DeltaPoint p;
    for (auto & f : w)
        p.toks.push_back(DToken{DToken::Kind::Fac, f.var, f.m});
    return p;
}

vector<DeltaPoint> delta_epsilon(const IntensionalEquation & e)
{
    set<DeltaPoint> out{DeltaPoint{}};
    set<Word> fs = final_subwords(e);
    for (auto & w : fs) {
        if (w.empty())
            continue;
        // (x, m, v) with x^(m) v in FS
        const string & x = w[0].var;
        int64_t m = w[0].m;
        DeltaPoint v = as_point(Word(w.begin() + 1, w.end()));
        out.insert(v);
        int64_t top = std::abs(m);
        DToken::Kind deco = m >= 0 ? DToken::Kind::Down : DToken::Kind::Up;
        int64_t sign = m >= 0 ? 1 : -1;
        for (int64_t j = 0; j <= top; ++j) {
            // decorations for levels j..top; level 0 is never decorated
            int64_t levels = top - j + 1;
            for (int64_t mask = 0; mask < (int64_t(1) << levels); ++mask) {
                if (j == 0 && (mask & 1))
                    continue;
                DeltaPoint p;
                for (int64_t k = j; k <= top; ++k) {
                    if (mask >> (k - j) & 1)
                        p.toks.push_back(DToken{deco, {}, 0});
                    p.toks.push_back(DToken{DToken::Kind::Fac, x, sign * k});
                }
                p.toks.insert(p.toks.end(), v.toks.begin(), v.toks.end());
                out.insert(std::move(p));
            }
        }
    }
    return vector<DeltaPoint>(out.begin(), out.end());
}

int64_t delta_size_bound(int64_t len)
{
    const int64_t cap = std::numeric_limits<int64_t>::max();
    if (len >= 62)
        return cap;
    __int128 b = (__int128(1) << len);
    for (int i = 0; i < 4; ++i) {
        b *= len;
        if (b > cap)
            return cap;
    }
    return static_cast<int64_t>(b);
}

}
