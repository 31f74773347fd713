#include "lpg/decide.hh"
#include "lpg/oracle.hh"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace lpg;

namespace {

// --complete with a universe this large is unlikely to finish
constexpr size_t large_delta = 40;

int run_decide(const std::string & theory, std::optional<Int> n, std::optional<Int> n_override, bool complete,
               std::uint64_t budget, unsigned jobs, bool force, const std::string & equation)
{
    DecideOptions opt;
    opt.complete = complete;
    opt.budget = budget;
    opt.jobs = jobs;
    opt.force = force;
    if (complete)
        for (auto & eq : normalize(equation))
            if (delta_epsilon(eq).size() > large_delta)
                std::cerr << "warning: " << delta_epsilon(eq).size() << " syntactic points in " << eq.str()
                          << ", exhaustive search may not finish\n";
    Verdict v;
    if (theory == "dlp") {
        v = decide_dlp(equation, n_override ? n_override : n, opt);
    } else {
        if (! n)
            throw ConfigError("--n is required for --theory " + theory);
        v = theory == "fnz" ? decide_fnz(equation, *n, opt) : decide_lpn(equation, *n, opt);
    }
    std::cout << to_json(v).dump() << '\n';
    return exit_code(v);
}

int run_verify(const std::string & path, const std::string & equation)
{
    std::ifstream in(path);
    if (! in)
        throw ConfigError("cannot read " + path);
    Json j = Json::parse(in);
    // accept a whole verdict as well as a bare witness
    Witness w = witness_from_json(j.contains("witness") ? j["witness"] : j);
    bool ok = verify_witness(equation, w);
    std::cout << Json{{"equation", equation}, {"verified", ok}}.dump() << '\n';
    return ok ? 0 : 1;
}

int run_oracle(const std::string & theory, Int n, std::uint64_t budget, std::uint64_t seed,
               const std::string & equation)
{
    Rng rng(seed);
    auto w = theory == "fnz" ? search_counterexample_fnz(equation, n, budget, rng)
                             : search_counterexample_lex(equation, n, budget, rng);
    Json out{{"theory", theory}, {"n", n}, {"equation", equation}, {"seed", seed}};
    out["verdict"] = w ? "fails" : "none";
    if (w)
        out["witness"] = to_json(*w);
    std::cout << out.dump() << '\n';
    return w ? 1 : 2;
}

}

int main(int argc, char ** argv)
{
    CLI::App app{"decide equations of periodic lattice-ordered pregroups"};
    app.require_subcommand(1);

    std::string theory, equation, path;
    std::optional<Int> n, n_override;
    Int on = 1;
    bool complete = false, force = false;
    std::uint64_t budget = 0, obudget = 10000, seed = 0;
    unsigned jobs = 1;
    if (const char * s = std::getenv("LPG_SEED"))
        seed = std::strtoull(s, nullptr, 10);

    auto * dec = app.add_subcommand("decide", "decide an equation, prints a verdict as JSON");
    dec->add_option("--theory", theory)->required()->check(CLI::IsMember({"dlp", "lpn", "fnz"}));
    dec->add_option("--n", n)->check(CLI::PositiveNumber);
    dec->add_option("--n-override", n_override, "n to use instead of the exact DLP bound")->check(CLI::PositiveNumber);
    dec->add_flag("--complete", complete, "exhaustive mode, the only mode that can report valid");
    dec->add_option("--budget", budget, "enumeration node limit, 0 for none");
    dec->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    dec->add_flag("--force", force, "allow a huge DLP n");
    dec->add_option("EQUATION", equation)->required();

    auto * ver = app.add_subcommand("verify", "recheck a witness against an equation");
    ver->add_option("WITNESS", path)->required();
    ver->add_option("EQUATION", equation)->required();

    auto * nor = app.add_subcommand("normalize", "print the intensional forms of an equation");
    nor->add_option("EQUATION", equation)->required();

    auto * ora = app.add_subcommand("oracle", "random counterexample search");
    ora->add_option("--theory", theory)->required()->check(CLI::IsMember({"fnz", "lex"}));
    ora->add_option("--n", on)->required()->check(CLI::PositiveNumber);
    ora->add_option("--budget", obudget);
    ora->add_option("--seed", seed, "overrides LPG_SEED");
    ora->add_option("EQUATION", equation)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*dec)
            return run_decide(theory, n, n_override, complete, budget, jobs, force, equation);
        if (*ver)
            return run_verify(path, equation);
        if (*nor) {
            for (auto & eq : normalize(equation))
                std::cout << eq.str() << '\n';
            return 0;
        }
        return run_oracle(theory, on, obudget, seed, equation);
    } catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << '\n';
    } catch (const Json::exception & e) {
        std::cerr << "bad witness file: " << e.what() << '\n';
    } catch (const std::invalid_argument & e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 3;
}
