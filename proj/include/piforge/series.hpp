#pragma once

#include "piforge/bigfloat.hpp"
#include "piforge/exact.hpp"
#include "piforge/sequences.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace piforge {

enum class Status { Proved, Conjecture, Quoted, Diagnostic };
std::string status_name(Status s);
Status status_from_name(const std::string& name);

/// scale * (sum_i c_i sqrt(d_i)) / pi, every d_i squarefree.
struct TargetConstant {
    ExactRat scale{1};
    std::vector<std::pair<ExactRat, long>> radicals{{ExactRat(1), 1}};

    static TargetConstant simple(const ExactRat& r, long d) { return {r, {{ExactRat(1), d}}}; }
    BigFloat evaluate(mpfr_prec_t bits) const;
    void validate() const;
};

struct SeriesFactor {
    SequenceId seq;
    int power = 1;
};

struct SeriesSpec {
    std::string id;
    Status status = Status::Proved;
    ExactInt weight_a;  // summand weight a*n + b
    ExactInt weight_b;
    std::vector<SeriesFactor> factors;
    ExactInt base;  // term divides by base^n
    TargetConstant target;
    std::string formula;  // LaTeX of the equation, for audit
};

ExactRat series_term(const SeriesSpec& s, long n);
ExactRat partial_sum(const SeriesSpec& s, long N);

std::string target_value(const TargetConstant& t, long digits);

struct PrecisionBudget {
    long digits = 30;
    long max_terms = 2000;
};

/// PIFORGE_MAX_DIGITS, default 1000.
long precision_ceiling();
void validate(const PrecisionBudget& b);

enum class Outcome { Pass, Fail, Inconclusive };
std::string outcome_name(Outcome o);

struct ConvergenceReport {
    Outcome outcome = Outcome::Inconclusive;
    long digits = 0;
    long terms = -1;          // N of the reported partial sum
    std::string residual;     // |S_N - target|
    std::string tail_bound;   // bound on |S_inf - S_N|, empty if none established
    double q = 0;             // geometric ratio used by the bound
    std::string bound_kind;   // "ratio", "block" or "none"
    std::string partial_sum;  // S_N to digits+5 significant digits
    std::string target;
};

/// Geometric tail estimate over a stream of terms given as log2|t_n|.
///
/// Primary rule: the last 16 ratios |t(n+1)/t(n)| are all at most r and
/// q = 1.05 r <= 0.99; then tail <= |t(N+1)| / (1 - q). Oscillating terms
/// (e.g. trinomial coefficients with c < 0) never satisfy that, so a block
/// envelope is tried next: the maxima of three trailing 32-term blocks must
/// decay by a factor rho, and the tail is bounded by the sum of geometric
/// block maxima.
class TailEstimator {
public:
    static constexpr long kWindow = 16;
    static constexpr long kBlock = 32;
    static constexpr double kMargin = 1.05;
    static constexpr double kCap = 0.99;

    void push(double log2_abs_term) { logs_.push_back(log2_abs_term); }
    long size() const { return static_cast<long>(logs_.size()); }

    struct Bound {
        bool ok = false;
        double log2_bound = 0;  // log2 of the tail bound after index N
        double q = 0;
        std::string kind = "none";
    };
    /// Bound on sum_{n>N} |t_n|, where terms 0..N+1 have been pushed.
    Bound bound_after(long N) const;

private:
    std::vector<double> logs_;
};

using TermFn = std::function<ExactRat(long)>;

/// Sums `term` until |S_N - target| + tail < 10^-digits or the budget runs out.
ConvergenceReport certify_sum(const TermFn& term, const BigFloat& target, const PrecisionBudget& budget);

ConvergenceReport check_convergence(const SeriesSpec& s, const PrecisionBudget& budget);

/// Exact partial sum through term N of 2F1(a, b; c; z).
ExactRat eval_2F1(const ExactRat& a, const ExactRat& b, const ExactRat& c, const ExactRat& z, long N);

struct Check110Report {
    Outcome outcome = Outcome::Inconclusive;
    long digits = 0;
    long terms = 0;
    std::string combination;
    std::string target;
    std::string residual;
    std::string error_bound;
    // F1 partial sums equal the binomial series partial sums, F2 partial sums
    // equal -36 times the k-weighted ones; -1 when every index matched.
    long f1_first_mismatch = -1;
    long f2_first_mismatch = -1;
    bool cross_checks_ok() const { return f1_first_mismatch < 0 && f2_first_mismatch < 0; }
};
Check110Report check_1_10(long digits, long max_terms = 4000);

struct Lemma32Report {
    ExactInt m;
    Outcome outcome = Outcome::Inconclusive;
    ConvergenceReport plain;     // sum binom(2k,k)/m^k
    ConvergenceReport weighted;  // sum k binom(2k,k)/m^k
};
Lemma32Report check_lemma_3_2(const ExactInt& m, long digits, long max_terms = 4000);

/// Built-in registry, parsed from the embedded data file.
const std::vector<SeriesSpec>& series_registry();
const SeriesSpec& find_series(const std::string& id);
/// Parses a registry document (same format as data/series.json).
std::vector<SeriesSpec> parse_series_registry(const std::string& json_text);

}  // namespace piforge
