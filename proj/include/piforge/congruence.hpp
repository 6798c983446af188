#pragma once

#include "piforge/exact.hpp"
#include "piforge/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace piforge {

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const ExactInt& a, long p);

struct QuadFormRep {
    ExactInt target;
    long a = 1;  // target = a x^2 + d y^2
    long d = 1;
    ExactInt x;
    ExactInt y;
    bool found = false;
};
/// Nonnegative (x, y) with x^2 + d y^2 = target; exhaustive over y.
QuadFormRep quadform_rep(const ExactInt& target, long d);
/// Same for a x^2 + d y^2.
QuadFormRep quadform_rep(const ExactInt& target, long a, long d);

/// A Legendre-type symbol: (a/p) or (p/q) for a fixed odd prime q.
struct Symbol {
    ExactInt a;    // numerator of (a/p)
    long q = 0;    // nonzero for (p/q)
    std::string text;

    static Symbol parse(const std::string& text);
    int eval(long p) const;
};

/// sum_{k=0}^{p-1} (a k + b) prod f_i(k)^e_i / m^k
struct SumSpec {
    ExactInt weight_a;
    ExactInt weight_b;
    std::vector<SeriesFactor> factors;
    ExactInt base;
};

/// coef * p^p_power * prod symbols * (E_{p-3} if euler)
struct Monomial {
    ExactRat coef{1};
    int p_power = 0;
    std::vector<Symbol> symbols;
    bool euler = false;
};

struct Branch {
    std::string label;
    std::vector<std::pair<Symbol, int>> when;  // all must hold
    bool zero = false;
    // Non-zero branches: mult*p = rep_a x^2 + rep_d y^2, value = sign * (x2 x^2 + pc p).
    long rep_mult = 1;
    long rep_a = 1;
    long rep_d = 1;
    ExactInt x2;
    ExactInt pc;
    std::optional<Symbol> sign;
    // Zero branches at these primes are only asserted mod p.
    std::vector<long> relaxed_primes;
};

struct RhsRule {
    enum class Kind { Closed, Table, Paired };
    Kind kind = Kind::Closed;
    std::vector<Monomial> terms;      // Closed; empty means zero
    std::vector<Branch> branches;     // Table
    SumSpec other;                    // Paired: lhs == multiplier * other
    std::optional<Symbol> multiplier;
};

struct CongruenceCase {
    std::string id;     // "C5.3i-a"
    std::string group;  // "C5.3i"; selecting a group selects all its cases
    Status status = Status::Conjecture;
    int exponent = 1;
    long min_prime = 3;
    std::vector<long> excluded;
    SumSpec lhs;
    RhsRule rhs;
    std::string formula;
};

enum class VerdictResult { Pass, Fail, Excluded, Inconclusive };
std::string verdict_name(VerdictResult r);

struct Verdict {
    std::string case_id;
    Status status = Status::Conjecture;
    long p = 0;
    VerdictResult result = VerdictResult::Excluded;
    int exponent = 0;         // exponent actually asserted (relaxed primes use 1)
    std::string lhs;          // residue mod p^exponent
    std::string rhs;
    std::string branch;
    std::string note;
    bool exact_recheck = false;  // a fail was confirmed by the exact path
};

/// Residue mod p^e through machine arithmetic on reduced exact table entries.
/// nullopt when p divides the base or a denominator.
std::optional<ExactInt> lhs_sum_mod(const SumSpec& s, long p, int e);
/// The exact rational sum.
ExactRat lhs_sum_exact(const SumSpec& s, long p);

/// Why (case, p) is outside the hypotheses, or empty when admissible.
std::string exclusion_reason(const CongruenceCase& c, long p);

/// Branches of a table rule whose conditions hold at p.
std::vector<const Branch*> matching_branches(const RhsRule& r, long p);

struct RhsValue {
    std::optional<ExactRat> value;  // nullopt: no residue (see note)
    int exponent = 0;
    std::string branch;
    std::string note;
    bool fail = false;  // the rule itself cannot be met (missing representation)
};
/// Paired rules evaluate the other sum; `exact` picks the exact path for it.
RhsValue rhs_eval(const CongruenceCase& c, long p, bool exact = false);

Verdict check_case(const CongruenceCase& c, long p);

enum class Suite { Proved, Conjecture, All };
std::optional<Suite> suite_from_name(const std::string& name);

/// Verdicts for every case x odd prime in [p_min, p_max], ordered by (case id, p).
std::vector<Verdict> run_cases(const std::vector<const CongruenceCase*>& cases, long p_min, long p_max,
                               unsigned workers = 1);
std::vector<Verdict> run_suite(Suite suite, long p_min, long p_max, unsigned workers = 1);

struct ScanRow {
    long b = 0, c = 0;
    ExactInt m;
    long d = 0;
    long p = 0;
    bool excluded = false;
    ExactInt residue;  // sum mod p^2
    int symbol = 0;    // (-d/p)
    QuadFormRep rep;   // p = x^2 + d y^2
};
struct ScanTuple {
    long b, c;
    ExactInt m;
    long d;
};
const std::vector<ScanTuple>& scan_5_9_tuples();
std::vector<ScanRow> scan_5_9(long p_max, unsigned workers = 1);

const std::vector<CongruenceCase>& congruence_registry();
std::vector<CongruenceCase> parse_congruence_registry(const std::string& json_text);
const CongruenceCase* find_case(const std::string& id);
/// Cases whose id or group equals `selector`; "C5.3" also selects "C5.3i" and "C5.3ii".
std::vector<const CongruenceCase*> select_cases(const std::string& selector);

/// Default prime ceiling for congruence runs.
constexpr long kPrimeCeiling = 10000;

}  // namespace piforge
