// piforge <identities|series|congruences|seq> [flags]
#include "piforge/commands.hpp"
#include "piforge/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Shared {
    std::string format = "text";
    std::string out;
    std::string cache;
    unsigned workers = piforge::default_workers();
    bool no_timings = false;
    bool strict = false;
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("-o,--out", s.out, "Write the report to a file instead of stdout");
    cmd->add_option("--cache", s.cache, "Sequence cache file");
    cmd->add_option("-j,--workers", s.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timings", s.no_timings, "Omit the timings envelope from JSON output");
    cmd->add_flag("--strict-conjectures", s.strict, "Conjecture failures also set the exit code");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"piforge: exact checks for 1/pi series, identities and supercongruences"};
    app.require_subcommand(1);
    piforge::RunConfig cfg;
    Shared shared;
    long n_max = -1;

    auto* ident = app.add_subcommand("identities", "Binomial identities, recurrences and s_n properties");
    ident->add_option("--id", cfg.ids, "2.1..2.5, 3.1, REC_2_1, REC_2_5, REC_3_1 or s");
    ident->add_flag("--all", cfg.all, "Every identity, recurrence and the s_n checks");
    ident->add_option("--n-max", n_max, "Largest n (default 300)");
    ident->add_option("--pmax", cfg.p_max, "Largest prime for the s_{p-1} check");
    add_shared(ident, shared);

    auto* series = app.add_subcommand("series", "Certified partial sums of 1/pi series");
    series->add_option("--id", cfg.ids, "Registry id, 1.10 or L3.2");
    series->add_option("--suite", cfg.suite, "proved, conjecture or all");
    series->add_flag("--all", cfg.all, "Every registered series");
    series->add_option("--digits", cfg.digits, "Decimal digits to certify");
    series->add_option("--max-terms", cfg.max_terms, "Term budget per series");
    series->add_option("--m", cfg.m, "Moduli for L3.2 (repeatable)")->allow_extra_args(false);
    add_shared(series, shared);

    auto* cong = app.add_subcommand("congruences", "Supercongruences over a range of primes");
    cong->add_option("--id", cfg.ids, "Case id, group id or scan5.9");
    cong->add_option("--suite", cfg.suite, "proved, conjecture or all");
    cong->add_flag("--all", cfg.all, "Every registered case");
    cong->add_option("--pmin", cfg.p_min, "Smallest prime");
    cong->add_option("--pmax", cfg.p_max, "Largest prime");
    add_shared(cong, shared);

    auto* seq = app.add_subcommand("seq", "Exact sequence terms");
    seq->add_option("--id", cfg.ids, "binom, T, P, P+, s, E or a tag name")->expected(1);
    seq->add_option("--n", cfg.n, "Single index");
    seq->add_option("--n-max", n_max, "Print terms 0..n-max (default 10)");
    std::string x, b, c, a;
    auto* ox = seq->add_option("--x", x, "Parameter x of P and P+");
    auto* ob = seq->add_option("--b", b, "Parameter b of T (or BINOM_LINEAR)");
    auto* oc = seq->add_option("--c", c, "Parameter c of T");
    auto* oa = seq->add_option("--a", a, "Parameter a of BINOM_LINEAR");
    add_shared(seq, shared);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (n_max >= 0) cfg.n_max = n_max;
    else if (cfg.command == "seq") cfg.n_max = -1;
    if (*ox) cfg.params["x"] = x;
    if (*ob) cfg.params["b"] = b;
    if (*oc) cfg.params["c"] = c;
    if (*oa) cfg.params["a"] = a;
    cfg.workers = shared.workers;
    cfg.format = *piforge::format_from_name(shared.format);
    cfg.cache_path = shared.cache;
    cfg.strict_conjectures = shared.strict;

    piforge::Report rep;
    try {
        rep = piforge::run_command(cfg);
    } catch (const piforge::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const piforge::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";

    const std::string text = piforge::render(rep, cfg.format, !shared.no_timings);
    if (shared.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(shared.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << shared.out << "\n";
            return 2;
        }
        f << text;
    }
    return rep.exit_code;
}
