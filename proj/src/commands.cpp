#include "piforge/commands.hpp"

#include "piforge/cache.hpp"
#include "piforge/congruence.hpp"
#include "piforge/identities.hpp"
#include "piforge/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace piforge {

using nlohmann::ordered_json;

namespace {

constexpr const char* kScanId = "scan5.9";
constexpr const char* kCheck110 = "1.10";
constexpr const char* kLemma32 = "L3.2";
constexpr long kSeqDefaultCount = 10;

bool theorem(Status s) { return s == Status::Proved || s == Status::Quoted; }

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

struct SeqAlias {
    const char* name;
    SeqTag tag;
};
constexpr SeqAlias kSeqAliases[] = {
    {"binom", SeqTag::CentralBinom}, {"T", SeqTag::TrinomialT}, {"P", SeqTag::PolyP},
    {"P+", SeqTag::PolyPPlus},       {"s", SeqTag::SeqS},       {"E", SeqTag::EulerNum},
};

std::vector<std::string> param_names(SeqTag tag) {
    switch (tag) {
        case SeqTag::BinomLinear: return {"a", "b"};
        case SeqTag::TrinomialT: return {"b", "c"};
        case SeqTag::PolyP:
        case SeqTag::PolyPPlus: return {"x"};
        default: return {};
    }
}

SequenceId resolve_sequence(const RunConfig& c) {
    if (c.ids.size() != 1) throw UsageError("seq needs exactly one --id");
    std::optional<SeqTag> tag;
    for (const auto& a : kSeqAliases) {
        if (c.ids[0] == a.name) tag = a.tag;
    }
    if (!tag) tag = tag_from_name(c.ids[0]);
    if (!tag) throw UsageError("unknown sequence id: " + c.ids[0]);
    SequenceId id{*tag, {}};
    const auto names = param_names(*tag);
    for (const auto& [k, v] : c.params) {
        if (std::find(names.begin(), names.end(), k) == names.end()) {
            throw UsageError(tag_name(*tag) + " takes no parameter --" + k);
        }
    }
    for (const auto& k : names) {
        auto it = c.params.find(k);
        if (it == c.params.end()) throw UsageError(tag_name(*tag) + " needs --" + k);
        try {
            id.params.push_back(parse_rat(it->second));
        } catch (const std::exception&) {
            throw UsageError("--" + k + ": not a rational number: " + it->second);
        }
    }
    try {
        validate(id);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return id;
}

struct IdentitySelection {
    std::vector<IdentityTag> identities;
    std::vector<RecurrenceTag> recurrences;
    bool s = false;
};

IdentitySelection resolve_identities(const RunConfig& c) {
    IdentitySelection sel;
    if (c.all) {
        for (const auto& i : identity_catalog()) sel.identities.push_back(i.tag);
        for (const auto& r : recurrence_catalog()) sel.recurrences.push_back(r.tag);
        sel.s = true;
        return sel;
    }
    if (c.ids.empty()) throw UsageError("identities needs --id or --all");
    for (const auto& id : c.ids) {
        if (auto t = identity_from_id(id)) {
            if (std::find(sel.identities.begin(), sel.identities.end(), *t) == sel.identities.end()) {
                sel.identities.push_back(*t);
            }
        } else if (auto r = recurrence_from_id(id)) {
            if (std::find(sel.recurrences.begin(), sel.recurrences.end(), *r) == sel.recurrences.end()) {
                sel.recurrences.push_back(*r);
            }
        } else if (id == "s") {
            sel.s = true;
        } else {
            throw UsageError("unknown identity id: " + id);
        }
    }
    return sel;
}

struct SeriesSelection {
    std::vector<const SeriesSpec*> series;
    bool check_1_10 = false;
    std::vector<ExactInt> lemma_m;
};

std::optional<Suite> parse_suite(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto v = suite_from_name(s);
    if (!v) throw UsageError("unknown suite: " + s + " (expected proved, conjecture or all)");
    return v;
}

bool in_suite(Suite suite, Status s) {
    if (suite == Suite::All) return true;
    return (suite == Suite::Proved) == (s == Status::Proved);
}

SeriesSelection resolve_series(const RunConfig& c) {
    SeriesSelection sel;
    std::set<std::string> seen;
    auto add = [&](const SeriesSpec& s) {
        if (seen.insert(s.id).second) sel.series.push_back(&s);
    };
    if (auto suite = parse_suite(c.suite)) {
        for (const auto& s : series_registry()) {
            if (in_suite(*suite, s.status)) add(s);
        }
    } else if (c.all) {
        for (const auto& s : series_registry()) add(s);
    } else if (c.ids.empty()) {
        throw UsageError("series needs --id, --suite or --all");
    }
    for (const auto& id : c.ids) {
        if (id == kCheck110) {
            sel.check_1_10 = true;
        } else if (id == kLemma32) {
            const std::vector<std::string> ms =
                c.m.empty() ? std::vector<std::string>{"256", "16", "-8", "5"} : c.m;
            for (const auto& t : ms) {
                ExactInt m;
                try {
                    m = parse_int(t);
                } catch (const std::exception&) {
                    throw UsageError("--m: not an integer: " + t);
                }
                if (abs(m) <= 4) throw UsageError("--m " + t + ": L3.2 needs |m| > 4");
                if (!m.fits_slong_p()) throw UsageError("--m " + t + ": out of range");
                sel.lemma_m.push_back(m);
            }
        } else {
            bool found = false;
            for (const auto& s : series_registry()) {
                if (s.id == id) {
                    add(s);
                    found = true;
                }
            }
            if (!found) throw UsageError("unknown series id: " + id);
        }
    }
    if (!c.m.empty() && sel.lemma_m.empty()) throw UsageError("--m only applies to --id L3.2");
    return sel;
}

struct CongruenceSelection {
    std::vector<const CongruenceCase*> cases;
    bool scan = false;
};

CongruenceSelection resolve_congruences(const RunConfig& c) {
    CongruenceSelection sel;
    std::set<std::string> seen;
    auto add = [&](const CongruenceCase* k) {
        if (seen.insert(k->id).second) sel.cases.push_back(k);
    };
    if (auto suite = parse_suite(c.suite)) {
        for (const auto& k : congruence_registry()) {
            if (in_suite(*suite, k.status)) add(&k);
        }
    } else if (c.all) {
        for (const auto& k : congruence_registry()) add(&k);
    } else if (c.ids.empty()) {
        throw UsageError("congruences needs --id, --suite or --all");
    }
    for (const auto& id : c.ids) {
        if (id == kScanId) {
            sel.scan = true;
            continue;
        }
        const auto hits = select_cases(id);
        if (hits.empty()) throw UsageError("unknown congruence id: " + id);
        for (const auto* k : hits) add(k);
    }
    return sel;
}

ordered_json series_detail(const ConvergenceReport& r) {
    ordered_json d;
    d["digits"] = r.digits;
    d["terms"] = r.terms;
    d["residual"] = r.residual;
    d["tail_bound"] = r.tail_bound;
    d["bound_kind"] = r.bound_kind;
    d["q"] = r.q;
    d["partial_sum"] = r.partial_sum;
    d["target"] = r.target;
    return d;
}

Report base_report(const RunConfig& c) {
    Report r;
    r.config = config_echo(c);
    return r;
}

}  // namespace

ordered_json config_echo(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["ids"] = c.ids;
    j["all"] = c.all;
    j["suite"] = c.suite;
    if (c.command == "identities") {
        j["n_max"] = c.n_max;
        j["p_max"] = c.p_max;
    } else if (c.command == "series") {
        j["digits"] = c.digits;
        j["max_terms"] = c.max_terms;
        j["m"] = c.m;
    } else if (c.command == "congruences") {
        j["p_min"] = c.p_min;
        j["p_max"] = c.p_max;
    } else if (c.command == "seq") {
        j["n"] = c.n;
        j["n_max"] = c.n_max;
        ordered_json p = ordered_json::object();
        for (const auto& [k, v] : c.params) p[k] = v;
        j["params"] = p;
    }
    j["strict_conjectures"] = c.strict_conjectures;
    return j;
}

void validate_config(const RunConfig& c) {
    if (c.workers == 0) throw UsageError("--workers must be >= 1");
    if (c.command == "identities") {
        if (c.n_max < 0) throw UsageError("--n-max must be >= 0");
        if (c.p_max < 3) throw UsageError("--pmax must be >= 3");
        resolve_identities(c);
    } else if (c.command == "series") {
        if (c.digits < 1) throw UsageError("--digits must be >= 1");
        if (c.digits > precision_ceiling()) {
            throw UsageError("--digits exceeds the precision ceiling " + std::to_string(precision_ceiling()) +
                             " (PIFORGE_MAX_DIGITS)");
        }
        if (c.max_terms < 1) throw UsageError("--max-terms must be >= 1");
        resolve_series(c);
    } else if (c.command == "congruences") {
        if (c.p_min < 3 || c.p_min > c.p_max || c.p_max > kPrimeCeiling) {
            throw UsageError("prime range must satisfy 3 <= pmin <= pmax <= " + std::to_string(kPrimeCeiling));
        }
        const auto sel = resolve_congruences(c);
        if (sel.scan && c.p_max < 5) throw UsageError("scan5.9 needs --pmax >= 5");
    } else if (c.command == "seq") {
        if (c.n < -1) throw UsageError("--n must be >= 0");
        if (c.n_max < -1) throw UsageError("--n-max must be >= 0");
        resolve_sequence(c);
    } else {
        throw UsageError("unknown command: " + c.command);
    }
}

Report cmd_identities(const RunConfig& c) {
    const auto sel = resolve_identities(c);
    Report rep = base_report(c);
    const long n_max = c.n_max;
    bool failed = false;

    for (IdentityTag tag : sel.identities) {
        const IdentityInfo& info = identity_info(tag);
        for (const auto& v : verify_identity(tag, n_max, c.workers)) {
            ReportItem it{info.id, v.n, "identity", info.status, pass_fail(v.equal)};
            it.detail["lhs"] = to_string(v.lhs);
            it.detail["rhs"] = to_string(v.rhs);
            failed |= !v.equal && theorem(info.status);
            rep.items.push_back(std::move(it));
        }
    }
    // Recurrence rows cover u(0..n_max); with n_max < 2 only base cases exist.
    for (RecurrenceTag tag : sel.recurrences) {
        if (n_max < 2) break;
        const RecurrenceInfo& info = recurrence_info(tag);
        const Status status = identity_info(info.identity).status;
        for (Side side : {Side::Lhs, Side::Rhs}) {
            const std::string id = info.id + (side == Side::Lhs ? ":lhs" : ":rhs");
            for (const auto& v : verify_recurrence(tag, side, n_max, c.workers)) {
                ReportItem it{id, v.n, "recurrence", status, pass_fail(v.holds)};
                it.detail["residual"] = to_string(v.residual);
                failed |= !v.holds && theorem(status);
                rep.items.push_back(std::move(it));
            }
        }
        const InductionCheck ic = induction_cross_check(tag, n_max, c.workers);
        ReportItem it{info.id + ":induction", n_max, "recurrence", status, pass_fail(ic.implied() && ic.consistent())};
        it.detail["bases_equal"] = ic.bases_equal;
        it.detail["lhs_recurrence"] = ic.lhs_recurrence;
        it.detail["rhs_recurrence"] = ic.rhs_recurrence;
        it.detail["direct_equal"] = ic.direct_equal;
        failed |= !(ic.implied() && ic.consistent());
        rep.items.push_back(std::move(it));
    }
    if (sel.s) {
        const SReport sr = verify_s_properties(std::max<long>(n_max, 1), c.p_max, c.workers);
        for (const auto& row : sr.rows) {
            if (row.n > n_max) continue;
            const bool ok = row.integral && (row.n == 0 || row.divisible_by_8);
            ReportItem it{"s:n", row.n, "sequence", Status::Proved, pass_fail(ok)};
            it.detail["value"] = to_string(row.value);
            it.detail["integral"] = row.integral;
            it.detail["divisible_by_8"] = row.divisible_by_8;
            failed |= !ok;
            rep.items.push_back(std::move(it));
        }
        for (const auto& row : sr.primes) {
            if (n_max == 0) break;  // base cases only
            ReportItem it{"s:p", row.p, "sequence", Status::Proved, pass_fail(row.holds)};
            it.detail["residue"] = to_string(row.residue);
            it.detail["expected"] = to_string(row.expected);
            failed |= !row.holds;
            rep.items.push_back(std::move(it));
        }
    }
    rep.exit_code = failed ? 1 : 0;
    rep.sort_items();
    return rep;
}

Report cmd_series(const RunConfig& c) {
    const auto sel = resolve_series(c);
    Report rep = base_report(c);
    const PrecisionBudget budget{c.digits, c.max_terms};
    std::vector<ConvergenceReport> results(sel.series.size());
    parallel_for(sel.series.size(), c.workers,
                 [&](std::size_t i) { results[i] = check_convergence(*sel.series[i], budget); });
    bool failed = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const SeriesSpec& s = *sel.series[i];
        const ConvergenceReport& r = results[i];
        ReportItem it{s.id, 0, "series", s.status, outcome_name(r.outcome)};
        it.detail = series_detail(r);
        const bool ok = r.outcome == Outcome::Pass;
        if (!ok && (theorem(s.status) || c.strict_conjectures)) failed = true;
        if (r.outcome == Outcome::Fail && s.status == Status::Conjecture) it.detail["flag"] = "FINDING";
        rep.items.push_back(std::move(it));
    }
    if (sel.check_1_10) {
        const Check110Report r = check_1_10(c.digits, std::max<long>(c.max_terms, 4000));
        const bool ok = r.outcome == Outcome::Pass && r.cross_checks_ok();
        ReportItem it{kCheck110, 0, "series", Status::Proved, ok ? "pass" : outcome_name(r.outcome)};
        if (r.outcome == Outcome::Pass && !r.cross_checks_ok()) it.result = "fail";
        it.detail["digits"] = r.digits;
        it.detail["terms"] = r.terms;
        it.detail["combination"] = r.combination;
        it.detail["target"] = r.target;
        it.detail["residual"] = r.residual;
        it.detail["error_bound"] = r.error_bound;
        it.detail["f1_first_mismatch"] = r.f1_first_mismatch;
        it.detail["f2_first_mismatch"] = r.f2_first_mismatch;
        failed |= !ok;
        rep.items.push_back(std::move(it));
    }
    std::vector<Lemma32Report> lemma(sel.lemma_m.size());
    parallel_for(lemma.size(), c.workers, [&](std::size_t i) {
        lemma[i] = check_lemma_3_2(sel.lemma_m[i], c.digits, std::max<long>(c.max_terms, 4000));
    });
    for (const auto& r : lemma) {
        ReportItem it{kLemma32, r.m.get_si(), "series", Status::Proved, outcome_name(r.outcome)};
        it.detail["m"] = to_string(r.m);
        it.detail["plain"] = series_detail(r.plain);
        it.detail["weighted"] = series_detail(r.weighted);
        failed |= r.outcome != Outcome::Pass;
        rep.items.push_back(std::move(it));
    }
    rep.exit_code = failed ? 1 : 0;
    rep.sort_items();
    return rep;
}

Report cmd_congruences(const RunConfig& c) {
    const auto sel = resolve_congruences(c);
    Report rep = base_report(c);
    bool failed = false;
    for (const auto& v : run_cases(sel.cases, c.p_min, c.p_max, c.workers)) {
        ReportItem it{v.case_id, v.p, "congruence", v.status, verdict_name(v.result)};
        it.detail["modulus"] = "p^" + std::to_string(v.exponent);
        if (v.result != VerdictResult::Excluded) {
            it.detail["lhs"] = v.lhs;
            it.detail["rhs"] = v.rhs;
        }
        if (!v.branch.empty()) it.detail["branch"] = v.branch;
        if (!v.note.empty()) it.detail["note"] = v.note;
        if (v.result == VerdictResult::Fail) {
            it.detail["exact_recheck"] = v.exact_recheck;
            if (v.status == Status::Conjecture && v.exact_recheck) it.detail["flag"] = "FINDING";
            if (theorem(v.status) || c.strict_conjectures) failed = true;
        }
        rep.items.push_back(std::move(it));
    }
    if (sel.scan) {
        for (const auto& r : scan_5_9(c.p_max, c.workers)) {
            if (r.p < c.p_min) continue;
            const std::string id = std::string(kScanId) + ":T(" + std::to_string(r.b) + "," + std::to_string(r.c) +
                                   ")/" + to_string(r.m);
            ReportItem it{id, r.p, "diagnostic", Status::Diagnostic, r.excluded ? "excluded" : "diagnostic"};
            it.detail["d"] = r.d;
            if (!r.excluded) it.detail["residue"] = to_string(r.residue);
            it.detail["symbol"] = r.symbol;
            if (r.rep.found) {
                it.detail["x"] = to_string(r.rep.x);
                it.detail["y"] = to_string(r.rep.y);
            }
            rep.items.push_back(std::move(it));
        }
    }
    rep.exit_code = failed ? 1 : 0;
    rep.sort_items();
    return rep;
}

Report cmd_seq(const RunConfig& c) {
    const SequenceId id = resolve_sequence(c);
    Report rep = base_report(c);
    long lo = 0;
    long hi = kSeqDefaultCount;
    if (c.n >= 0) {
        lo = hi = c.n;
    } else if (c.n_max >= 0) {
        hi = c.n_max;
    }
    for (long n = lo; n <= hi; ++n) {
        ReportItem it{id.key(), n, "sequence", Status::Diagnostic, "value"};
        const ExactRat v = sequence_term(id, n);
        it.detail["value"] = to_string(v);
        if (id.tag == SeqTag::SeqS) {
            it.detail["integral"] = is_integer(v);
            // n-th root trace toward 64; reported, never asserted.
            if (n >= 1 && v > 0) it.detail["nth_root"] = std::exp2(log2_abs(v) / static_cast<double>(n));
        }
        rep.items.push_back(std::move(it));
    }
    rep.sort_items();
    return rep;
}

Report run_command(const RunConfig& c) {
    validate_config(c);
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<SequenceCache> cache;
    if (!c.cache_path.empty()) {
        cache.emplace(c.cache_path);
        cache->load(TermStore::global());
    }
    Report rep;
    if (c.command == "identities") rep = cmd_identities(c);
    else if (c.command == "series") rep = cmd_series(c);
    else if (c.command == "congruences") rep = cmd_congruences(c);
    else rep = cmd_seq(c);
    if (cache) {
        cache->save(TermStore::global());
        rep.warnings = cache->warnings();
        rep.cache = c.cache_path;
    }
    rep.workers = c.workers;
    rep.timestamp = utc_timestamp();
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace piforge
