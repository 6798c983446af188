#include "piforge/congruence.hpp"

#include "json_util.hpp"
#include "piforge/modular.hpp"
#include "piforge/parallel.hpp"
#include "piforge/sequences.hpp"
#include "registry_data.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace piforge {

namespace mod = modular;

namespace {

ExactInt prime_power(long p, int e) { return ipow(ExactInt(p), static_cast<unsigned long>(e)); }

bool divides(long p, const ExactInt& v) { return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

std::shared_ptr<const TermStore::Table> prefix(const SequenceId& id, long n_max) {
    return TermStore::global().table(id, n_max);
}

ExactRat exact_rhs_closed(const std::vector<Monomial>& terms, long p) {
    ExactRat sum = 0;
    for (const auto& m : terms) {
        ExactRat t = m.coef * ExactRat(prime_power(p, m.p_power));
        for (const auto& s : m.symbols) t *= s.eval(p);
        if (m.euler) t *= ExactRat(euler_number(p - 3));
        sum += t;
    }
    return sum;
}

std::string residue_text(const ExactInt& v) { return to_string(v); }

void collect_sequences(const SumSpec& s, std::map<std::string, SequenceId>& out) {
    for (const auto& f : s.factors) out.emplace(f.seq.key(), f.seq);
}

}  // namespace

int legendre(const ExactInt& a, long p) {
    if (p < 3 || p % 2 == 0) throw DomainError("legendre needs an odd prime, got " + std::to_string(p));
    return mod::legendre(a, static_cast<mod::u64>(p));
}

QuadFormRep quadform_rep(const ExactInt& target, long d) { return quadform_rep(target, 1, d); }

QuadFormRep quadform_rep(const ExactInt& target, long a, long d) {
    if (target < 1 || a < 1 || d < 1) throw DomainError("quadform_rep needs target, a, d >= 1");
    QuadFormRep r;
    r.target = target;
    r.a = a;
    r.d = d;
    for (ExactInt y = 0; d * y * y <= target; ++y) {
        const ExactInt rest = target - d * y * y;
        if (!divides(a, rest)) continue;
        const ExactInt q = rest / a;
        if (mpz_perfect_square_p(q.get_mpz_t())) {
            mpz_sqrt(r.x.get_mpz_t(), q.get_mpz_t());
            r.y = y;
            r.found = true;
            return r;
        }
    }
    return r;
}

Symbol Symbol::parse(const std::string& text) {
    std::string t = text;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    const auto slash = t.find('/');
    if (slash == std::string::npos) throw DomainError("bad symbol: " + text);
    const std::string top = t.substr(0, slash);
    const std::string bottom = t.substr(slash + 1);
    Symbol s;
    s.text = "(" + t + ")";
    if (bottom == "p") {
        s.a = parse_int(top);
    } else if (top == "p") {
        s.q = std::stol(bottom);
        if (s.q < 3 || !mod::is_prime(static_cast<mod::u64>(s.q))) throw DomainError("bad symbol modulus: " + text);
    } else {
        throw DomainError("bad symbol: " + text);
    }
    return s;
}

int Symbol::eval(long p) const {
    if (q != 0) return p == q ? 0 : legendre(ExactInt(p), q);
    return legendre(a, p);
}

std::string verdict_name(VerdictResult r) {
    switch (r) {
        case VerdictResult::Pass: return "pass";
        case VerdictResult::Fail: return "fail";
        case VerdictResult::Excluded: return "excluded";
        case VerdictResult::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<ExactInt> lhs_sum_mod(const SumSpec& s, long p, int e) {
    const ExactInt M = prime_power(p, e);
    if (!M.fits_ulong_p() || M >= ExactInt(1) << 63) throw DomainError("modulus p^e exceeds 63 bits");
    const mod::u64 m = M.get_ui();
    if (divides(p, s.base)) return std::nullopt;
    const auto base_red = reduce_mod_u64(ExactRat(s.base), m);
    const mod::u64 inv = mod::inverse(*base_red, m);

    std::vector<std::vector<mod::u64>> red(s.factors.size());
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
        const auto t = prefix(s.factors[i].seq, p - 1);
        red[i].resize(static_cast<std::size_t>(p));
        for (long k = 0; k < p; ++k) {
            const auto r = reduce_mod_u64((*t)[static_cast<std::size_t>(k)], m);
            if (!r) return std::nullopt;
            red[i][static_cast<std::size_t>(k)] = *r;
        }
    }
    const mod::u64 wa = *reduce_mod_u64(ExactRat(s.weight_a), m);
    const mod::u64 wb = *reduce_mod_u64(ExactRat(s.weight_b), m);
    mod::u64 acc = 0;
    mod::u64 inv_pow = 1 % m;
    for (long k = 0; k < p; ++k) {
        mod::u64 t = mod::add(mod::mul(wa, static_cast<mod::u64>(k) % m, m), wb, m);
        for (std::size_t i = 0; i < red.size(); ++i) {
            for (int j = 0; j < s.factors[i].power; ++j) t = mod::mul(t, red[i][static_cast<std::size_t>(k)], m);
        }
        acc = mod::add(acc, mod::mul(t, inv_pow, m), m);
        inv_pow = mod::mul(inv_pow, inv, m);
    }
    return ExactInt(static_cast<unsigned long>(acc));
}

ExactRat lhs_sum_exact(const SumSpec& s, long p) {
    ExactRat sum = 0;
    ExactInt base_pow = 1;
    for (long k = 0; k < p; ++k) {
        ExactRat t = ExactRat(s.weight_a * k + s.weight_b);
        for (const auto& f : s.factors) {
            const ExactRat v = sequence_term(f.seq, k);
            for (int j = 0; j < f.power; ++j) t *= v;
        }
        sum += t / ExactRat(base_pow);
        base_pow *= s.base;
    }
    return sum;
}

std::string exclusion_reason(const CongruenceCase& c, long p) {
    if (p < c.min_prime) return "hypothesis: p >= " + std::to_string(c.min_prime);
    if (std::find(c.excluded.begin(), c.excluded.end(), p) != c.excluded.end()) {
        return "hypothesis: p != " + std::to_string(p);
    }
    if (divides(p, c.lhs.base)) return "p divides the base";
    return {};
}

std::vector<const Branch*> matching_branches(const RhsRule& r, long p) {
    std::vector<const Branch*> out;
    for (const auto& b : r.branches) {
        bool all = true;
        for (const auto& [sym, want] : b.when) {
            if (sym.eval(p) != want) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(&b);
    }
    return out;
}

RhsValue rhs_eval(const CongruenceCase& c, long p, bool exact) {
    RhsValue out;
    out.exponent = c.exponent;
    switch (c.rhs.kind) {
        case RhsRule::Kind::Closed:
            out.branch = "closed";
            out.value = exact_rhs_closed(c.rhs.terms, p);
            return out;
        case RhsRule::Kind::Paired: {
            const int sign = c.rhs.multiplier ? c.rhs.multiplier->eval(p) : 1;
            out.branch = c.rhs.multiplier ? "paired " + c.rhs.multiplier->text : "paired";
            if (divides(p, c.rhs.other.base)) {
                out.note = "p divides the base of the paired sum";
                return out;
            }
            if (exact) {
                out.value = ExactRat(sign) * lhs_sum_exact(c.rhs.other, p);
            } else {
                const auto r = lhs_sum_mod(c.rhs.other, p, c.exponent);
                if (!r) {
                    out.note = "paired sum has a denominator divisible by p";
                    return out;
                }
                out.value = ExactRat(sign * *r);
            }
            return out;
        }
        case RhsRule::Kind::Table: {
            const auto hits = matching_branches(c.rhs, p);
            if (hits.empty()) {
                out.note = "no branch applies (p divides a symbol modulus)";
                return out;
            }
            if (hits.size() > 1) {
                out.fail = true;
                out.note = "branch conditions overlap";
                return out;
            }
            const Branch& b = *hits.front();
            out.branch = b.label;
            if (b.zero) {
                out.value = ExactRat(0);
                if (std::find(b.relaxed_primes.begin(), b.relaxed_primes.end(), p) != b.relaxed_primes.end()) {
                    out.exponent = 1;
                    out.note = "relaxed to mod p at p=" + std::to_string(p);
                }
                return out;
            }
            const ExactInt target = ExactInt(b.rep_mult) * p;
            const QuadFormRep rep = quadform_rep(target, b.rep_a, b.rep_d);
            if (!rep.found) {
                out.fail = true;
                out.note = "no representation " + to_string(target) + " = " + std::to_string(b.rep_a) + "x^2+" +
                           std::to_string(b.rep_d) + "y^2";
                return out;
            }
            out.branch += " x=" + to_string(rep.x) + " y=" + to_string(rep.y);
            ExactInt v = b.x2 * rep.x * rep.x + b.pc * p;
            if (b.sign) v *= b.sign->eval(p);
            out.value = ExactRat(v);
            return out;
        }
    }
    return out;
}

Verdict check_case(const CongruenceCase& c, long p) {
    Verdict v;
    v.case_id = c.id;
    v.status = c.status;
    v.p = p;
    v.exponent = c.exponent;
    if (p < 3 || p % 2 == 0 || !mod::is_prime(static_cast<mod::u64>(p))) {
        throw DomainError("check_case needs an odd prime, got " + std::to_string(p));
    }
    if (auto why = exclusion_reason(c, p); !why.empty()) {
        v.note = why;
        return v;
    }
    const auto lhs = lhs_sum_mod(c.lhs, p, c.exponent);
    if (!lhs) {
        v.note = "lhs denominator divisible by p";
        return v;
    }
    const RhsValue rhs = rhs_eval(c, p, false);
    v.branch = rhs.branch;
    v.note = rhs.note;
    if (rhs.fail) {
        v.result = VerdictResult::Fail;
        v.lhs = residue_text(*lhs);
        return v;
    }
    if (!rhs.value) return v;

    v.exponent = rhs.exponent;
    const ExactInt M = prime_power(p, rhs.exponent);
    const ExactInt l = *lhs % M;
    const auto r = reduce_mod(*rhs.value, M);
    if (!r) {
        v.note = "rhs denominator divisible by p";
        return v;
    }
    v.lhs = residue_text(l);
    v.rhs = residue_text(*r);
    if (rhs.exponent < c.exponent) {
        v.note += "; lhs mod p^" + std::to_string(c.exponent) + " = " + residue_text(*lhs);
    }
    if (l == *r) {
        v.result = VerdictResult::Pass;
        return v;
    }
    v.result = VerdictResult::Fail;
    const auto l2 = reduce_mod(lhs_sum_exact(c.lhs, p), M);
    const RhsValue rhs2 = rhs_eval(c, p, true);
    const auto r2 = rhs2.value ? reduce_mod(*rhs2.value, M) : std::nullopt;
    if (l2 && r2 && *l2 == l && *r2 == *r) {
        v.exact_recheck = true;
        v.note += v.note.empty() ? "confirmed by exact path" : "; confirmed by exact path";
    } else {
        v.note += v.note.empty() ? "modular and exact paths disagree" : "; modular and exact paths disagree";
    }
    return v;
}

std::optional<Suite> suite_from_name(const std::string& name) {
    if (name == "proved") return Suite::Proved;
    if (name == "conjecture") return Suite::Conjecture;
    if (name == "all") return Suite::All;
    return std::nullopt;
}

std::vector<Verdict> run_cases(const std::vector<const CongruenceCase*>& cases_in, long p_min, long p_max,
                               unsigned workers) {
    if (p_min < 3 || p_min > p_max) throw DomainError("need 3 <= p_min <= p_max");
    if (p_max > kPrimeCeiling) throw DomainError("p_max exceeds ceiling " + std::to_string(kPrimeCeiling));
    std::vector<const CongruenceCase*> cases = cases_in;
    std::sort(cases.begin(), cases.end(), [](auto* a, auto* b) { return a->id < b->id; });
    cases.erase(std::unique(cases.begin(), cases.end()), cases.end());

    std::vector<long> primes;
    for (auto q : mod::primes_up_to(static_cast<std::uint32_t>(p_max))) {
        if (q >= static_cast<std::uint32_t>(p_min) && q != 2) primes.push_back(static_cast<long>(q));
    }

    // Build the shared tables once so that workers only read snapshots.
    std::map<std::string, SequenceId> seqs;
    for (const auto* c : cases) {
        collect_sequences(c->lhs, seqs);
        if (c->rhs.kind == RhsRule::Kind::Paired) collect_sequences(c->rhs.other, seqs);
    }
    std::vector<SequenceId> ids;
    for (auto& [k, id] : seqs) ids.push_back(id);
    if (!primes.empty()) {
        for (const auto& id : ids) TermStore::global().table(id, primes.back() - 1, workers);
    }

    std::vector<Verdict> out(cases.size() * primes.size());
    parallel_for(out.size(), workers, [&](std::size_t i) {
        out[i] = check_case(*cases[i / primes.size()], primes[i % primes.size()]);
    });
    return out;
}

std::vector<Verdict> run_suite(Suite suite, long p_min, long p_max, unsigned workers) {
    std::vector<const CongruenceCase*> cases;
    for (const auto& c : congruence_registry()) {
        const bool proved = c.status == Status::Proved;
        if (suite == Suite::All || (suite == Suite::Proved) == proved) cases.push_back(&c);
    }
    return run_cases(cases, p_min, p_max, workers);
}

const std::vector<ScanTuple>& scan_5_9_tuples() {
    static const std::vector<ScanTuple> t = {
        {5, 4, 4, 10}, {6, 1, 192, 6}, {3, -4, 36, 13}, {5, 4, 196, 30},
        {7, 1, 196, 30}, {7, 28, 196, 21}, {11, 49, 484, 42},
    };
    return t;
}

std::vector<ScanRow> scan_5_9(long p_max, unsigned workers) {
    if (p_max < 5) throw DomainError("scan needs p_max >= 5");
    if (p_max > kPrimeCeiling) throw DomainError("p_max exceeds ceiling " + std::to_string(kPrimeCeiling));
    std::vector<long> primes;
    for (auto q : mod::primes_up_to(static_cast<std::uint32_t>(p_max))) {
        if (q != 2) primes.push_back(static_cast<long>(q));
    }
    const auto& tuples = scan_5_9_tuples();
    std::vector<ScanRow> rows(tuples.size() * primes.size());
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        const ScanTuple& t = tuples[i / primes.size()];
        ScanRow& r = rows[i];
        r.b = t.b;
        r.c = t.c;
        r.m = t.m;
        r.d = t.d;
        r.p = primes[i % primes.size()];
        r.symbol = legendre(ExactInt(-t.d), r.p);
        r.rep = quadform_rep(ExactInt(r.p), t.d);
        if (divides(r.p, t.m)) {
            r.excluded = true;
            return;
        }
        SumSpec s;
        s.weight_a = 0;
        s.weight_b = 1;
        s.base = t.m;
        s.factors = {{SequenceId::central_binom(), 1}, {SequenceId::trinomial(t.b, t.c), 2}};
        const auto v = lhs_sum_mod(s, r.p, 2);
        if (!v) {
            r.excluded = true;
            return;
        }
        r.residue = *v;
    });
    return rows;
}

namespace {

SumSpec parse_sum(const nlohmann::json& j) {
    SumSpec s;
    s.weight_a = detail::json_int(j.at("weight").at(0));
    s.weight_b = detail::json_int(j.at("weight").at(1));
    s.base = detail::json_int(j.at("base"));
    if (s.base == 0) throw DomainError("base must be nonzero");
    for (const auto& f : j.at("factors")) s.factors.push_back(detail::json_factor(f));
    return s;
}

RhsRule parse_rhs(const nlohmann::json& j) {
    RhsRule r;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "closed") {
        r.kind = RhsRule::Kind::Closed;
        for (const auto& t : j.value("terms", nlohmann::json::array())) {
            Monomial m;
            m.coef = detail::json_rat(t.at("coef"));
            m.p_power = t.value("p_power", 0);
            for (const auto& s : t.value("symbols", nlohmann::json::array())) {
                m.symbols.push_back(Symbol::parse(s.get<std::string>()));
            }
            m.euler = t.value("euler", false);
            r.terms.push_back(std::move(m));
        }
    } else if (kind == "table") {
        r.kind = RhsRule::Kind::Table;
        for (const auto& b : j.at("branches")) {
            Branch br;
            br.label = b.at("label").get<std::string>();
            for (const auto& [sym, want] : b.at("when").items()) {
                br.when.emplace_back(Symbol::parse(sym), want.get<int>());
            }
            br.zero = b.value("zero", false);
            if (!br.zero) {
                const auto& rep = b.at("rep");
                br.rep_mult = rep.at(0).get<long>();
                br.rep_a = rep.at(1).get<long>();
                br.rep_d = rep.at(2).get<long>();
                br.x2 = detail::json_int(b.at("x2"));
                br.pc = detail::json_int(b.at("p"));
                if (b.contains("sign")) br.sign = Symbol::parse(b.at("sign").get<std::string>());
            }
            for (const auto& q : b.value("relaxed_primes", nlohmann::json::array())) br.relaxed_primes.push_back(q.get<long>());
            r.branches.push_back(std::move(br));
        }
    } else if (kind == "paired") {
        r.kind = RhsRule::Kind::Paired;
        r.other = parse_sum(j.at("sum"));
        if (j.contains("multiplier")) r.multiplier = Symbol::parse(j.at("multiplier").get<std::string>());
    } else {
        throw DomainError("unknown rhs kind: " + kind);
    }
    return r;
}

}  // namespace

std::vector<CongruenceCase> parse_congruence_registry(const std::string& json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    std::vector<CongruenceCase> out;
    std::set<std::string> seen;
    for (const auto& e : doc.at("cases")) {
        CongruenceCase c;
        c.id = e.at("id").get<std::string>();
        if (!seen.insert(c.id).second) throw DomainError("duplicate case id " + c.id);
        c.group = e.value("group", c.id);
        c.status = status_from_name(e.at("status").get<std::string>());
        c.exponent = e.at("exponent").get<int>();
        if (c.exponent < 1 || c.exponent > 4) throw DomainError(c.id + ": exponent must be in 1..4");
        c.min_prime = e.value("min_prime", 3L);
        for (const auto& q : e.value("excluded", nlohmann::json::array())) c.excluded.push_back(q.get<long>());
        c.lhs = parse_sum(e.at("lhs"));
        c.rhs = parse_rhs(e.at("rhs"));
        c.formula = e.value("formula", "");
        out.push_back(std::move(c));
    }
    return out;
}

const std::vector<CongruenceCase>& congruence_registry() {
    static const std::vector<CongruenceCase> reg = parse_congruence_registry(data::congruences_json());
    return reg;
}

const CongruenceCase* find_case(const std::string& id) {
    for (const auto& c : congruence_registry()) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

std::vector<const CongruenceCase*> select_cases(const std::string& selector) {
    std::vector<const CongruenceCase*> out;
    for (const auto& c : congruence_registry()) {
        if (c.id == selector || c.group == selector) out.push_back(&c);
    }
    if (!out.empty()) return out;
    for (const auto& c : congruence_registry()) {
        if (c.group.size() > selector.size() && c.group.starts_with(selector) &&
            std::isalpha(static_cast<unsigned char>(c.group[selector.size()]))) {
            out.push_back(&c);
        }
    }
    return out;
}

}  // namespace piforge
