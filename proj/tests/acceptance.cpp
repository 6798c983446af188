// Acceptance criteria runner: one PASS/FAIL line per criterion.
#include "oracles.hpp"
#include "piforge/commands.hpp"
#include "piforge/congruence.hpp"
#include "piforge/identities.hpp"
#include "piforge/parallel.hpp"
#include "piforge/series.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace piforge;

namespace {

struct Outcome_ {
    bool ok = false;
    std::string note;
};

Outcome_ identities_hold(unsigned workers) {
    std::ostringstream note;
    for (const auto& info : identity_catalog()) {
        for (const auto& v : verify_identity(info.tag, 300, workers)) {
            if (!v.equal) return {false, info.id + " differs at n=" + std::to_string(v.n)};
        }
    }
    auto side = [](IdentityTag t, Side s, long n) { return identity_side(t, s, n); };
    const bool anchors = side(IdentityTag::Id2_1, Side::Lhs, 0) == 1 && side(IdentityTag::Id2_1, Side::Lhs, 1) == 8 &&
                         side(IdentityTag::Id2_5, Side::Lhs, 0) == 1 && side(IdentityTag::Id2_5, Side::Lhs, 1) / 2 == 12 &&
                         side(IdentityTag::Id3_1, Side::Lhs, 0) == 1 && side(IdentityTag::Id3_1, Side::Lhs, 1) == 40;
    if (!anchors) return {false, "base anchors differ"};
    return {true, "6 identities, n = 0..300"};
}

Outcome_ recurrences_hold(unsigned workers) {
    for (const auto& info : recurrence_catalog()) {
        for (auto side : {Side::Lhs, Side::Rhs}) {
            const auto v = verify_recurrence(info.tag, side, 302, workers);
            for (const auto& r : v) {
                if (!r.holds) return {false, info.id + " residual at n=" + std::to_string(r.n)};
            }
        }
    }
    return {true, "3 recurrences x 2 realizations, n = 0..300"};
}

Outcome_ proved_series(unsigned workers) {
    std::vector<const SeriesSpec*> specs;
    for (const auto& s : series_registry()) {
        if (s.status == Status::Proved) specs.push_back(&s);
    }
    std::vector<ConvergenceReport> out(specs.size());
    parallel_for(specs.size(), workers, [&](std::size_t i) { out[i] = check_convergence(*specs[i], {30, 2000}); });
    long max_n = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (out[i].outcome != Outcome::Pass) return {false, specs[i]->id + " " + outcome_name(out[i].outcome)};
        max_n = std::max(max_n, out[i].terms);
    }
    // spot-check listed targets against the Machin oracle
    const std::vector<std::pair<std::string, mpq_class>> rational = {{"1.1", 2}, {"1.12", mpq_class(9, 2)}};
    for (const auto& [id, a] : rational) {
        const std::string want = oracle::over_pi_scaled(a, 25).get_str();
        std::string got = target_value(find_series(id).target, 30);
        got.erase(std::remove(got.begin(), got.end(), '.'), got.end());
        while (!got.empty() && got.front() == '0') got.erase(got.begin());
        if (got.substr(0, want.size() - 1) != want.substr(0, want.size() - 1)) return {false, id + " target mismatch"};
    }
    return {specs.size() == 17, std::to_string(specs.size()) + " series, max N = " + std::to_string(max_n)};
}

Outcome_ check_110() {
    const auto r = check_1_10(25);
    return {r.outcome == Outcome::Pass && r.cross_checks_ok(), "N = " + std::to_string(r.terms) + ", bound " + r.error_bound};
}

Outcome_ lemma_32() {
    for (long m : {256L, 16L, -8L, 5L, -5L}) {
        const auto r = check_lemma_3_2(m, 20);
        if (r.outcome != Outcome::Pass) return {false, "m=" + std::to_string(m) + " " + outcome_name(r.outcome)};
    }
    for (long m : {4L, -4L, 3L}) {
        try {
            check_lemma_3_2(m, 20);
            return {false, "m=" + std::to_string(m) + " accepted"};
        } catch (const DomainError&) {
        }
    }
    return {true, "m = 256, 16, -8, 5, -5 pass; |m| <= 4 rejected"};
}

Outcome_ congruence_groups(const std::vector<std::string>& groups, long p_max, unsigned workers) {
    std::vector<const CongruenceCase*> cases;
    for (const auto& g : groups) {
        for (const auto* c : select_cases(g)) cases.push_back(c);
    }
    const auto v = run_cases(cases, 3, p_max, workers);
    std::ostringstream fails;
    int n_fail = 0;
    int n_pass = 0;
    int n_excl = 0;
    for (const auto& x : v) {
        if (x.result == VerdictResult::Pass) ++n_pass;
        if (x.result == VerdictResult::Excluded) ++n_excl;
        if (x.result == VerdictResult::Fail || x.result == VerdictResult::Inconclusive) {
            ++n_fail;
            fails << " " << x.case_id << "@p=" << x.p << (x.exact_recheck ? " (FINDING, exact recheck)" : "");
        }
    }
    std::string note = std::to_string(n_pass) + " pass, " + std::to_string(n_excl) + " excluded, " +
                       std::to_string(n_fail) + " fail" + fails.str();
    return {n_fail == 0, note};
}

Outcome_ s_properties(unsigned workers) {
    const auto r = verify_s_properties(300, 300, workers);
    const std::vector<long> listed = {-1, 40, 696, 23408, 969496, 44602560};
    for (std::size_t n = 0; n < listed.size(); ++n) {
        if (r.rows[n].value != listed[n]) return {false, "s_" + std::to_string(n) + " differs"};
    }
    return {r.ok, "n = 1..300, primes <= 300"};
}

Outcome_ oracle_equivalence() {
    std::mt19937_64 rng(oracle::kSeed + 90);
    const auto& reg = congruence_registry();
    std::vector<long> primes;
    for (long p = 3; p <= 50; ++p) {
        if (oracle::is_prime_slow(p)) primes.push_back(p);
    }
    for (int i = 0; i < 200;) {
        const auto& c = reg[rng() % reg.size()];
        const long p = primes[rng() % primes.size()];
        if (c.lhs.base % p == 0) continue;  // excluded before any reduction
        ++i;
        const auto fast = lhs_sum_mod(c.lhs, p, c.exponent);
        const auto slow = reduce_mod(lhs_sum_exact(c.lhs, p), ipow(ExactInt(p), static_cast<unsigned long>(c.exponent)));
        if (fast != slow) return {false, c.id + " p=" + std::to_string(p)};
    }
    const std::vector<SequenceId> ids = {
        SequenceId::central_binom(),      SequenceId::trinomial(38, 441), SequenceId::trinomial(7, 81),
        SequenceId::poly_p(-192),         SequenceId::poly_p_plus(-7),    SequenceId::of(SeqTag::ConvSq),
        SequenceId::of(SeqTag::Conv23),   SequenceId::of(SeqTag::Conv42), SequenceId::of(SeqTag::Conv63),
        SequenceId::of(SeqTag::DombLike), SequenceId::of(SeqTag::SeqS),   SequenceId::of(SeqTag::EulerNum),
    };
    for (int i = 0; i < 500; ++i) {
        const auto& id = ids[rng() % ids.size()];
        const long n = static_cast<long>(rng() % 80);
        const ExactInt m(static_cast<unsigned long>(rng() % 100000 + 2));
        if (sequence_term_mod(id, n, m) != reduce_mod(sequence_term(id, n), m)) {
            return {false, id.key() + " n=" + std::to_string(n)};
        }
    }
    return {true, "200 congruence sums, 500 sequence terms"};
}

Outcome_ determinism() {
    RunConfig c;
    c.command = "congruences";
    c.suite = "proved";
    c.p_max = 200;
    c.format = Format::Json;
    c.workers = 1;
    const std::string one = render(run_command(c), Format::Json, false);
    TermStore::global().clear();
    c.workers = 8;
    const std::string eight = render(run_command(c), Format::Json, false);
    return {one == eight, std::to_string(one.size()) + " bytes"};
}

}  // namespace

int main() {
    const unsigned workers = default_workers();
    struct Criterion {
        int number;
        const char* name;
        std::function<Outcome_()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "identities exact for n <= 300", [&] { return identities_hold(workers); }},
        {2, "recurrences exact for both realizations", [&] { return recurrences_hold(workers); }},
        {3, "proved series certified to 1e-30", [&] { return proved_series(workers); }},
        {4, "1.10 combination and 2F1 cross-checks", [] { return check_110(); }},
        {5, "L3.2 central binomial series", [] { return lemma_32(); }},
        {6, "proved congruences, p <= 1000", [&] { return congruence_groups({"1.5", "1.6", "1.7", "1.8"}, 1000, workers); }},
        {7, "conjectural congruences, p <= 300", [&] {
             return congruence_groups({"C4.1", "C4.4", "C5.2", "C5.3", "C5.4", "C5.5", "C5.6", "C5.7", "C5.8"}, 300,
                                      workers);
         }},
        {8, "s_n properties", [&] { return s_properties(workers); }},
        {9, "modular/exact oracle equivalence", [] { return oracle_equivalence(); }},
        {10, "determinism across worker counts", [] { return determinism(); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome_ r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d: %s (%.1fs) %s\n", r.ok ? "PASS" : "FAIL", c.number, c.name, s, r.note.c_str());
        std::fflush(stdout);
        failed += r.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
