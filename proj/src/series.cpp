#include "piforge/series.hpp"

#include "registry_data.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace piforge {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

bool squarefree(long d) {
    if (d < 1) return false;
    for (long f = 2; f * f <= d; ++f) {
        if (d % (f * f) == 0) return false;
    }
    return true;
}

// 2^x as a BigFloat, rounded up slightly so it stays an upper bound.
BigFloat pow2(double x, mpfr_prec_t bits) {
    const double fl = std::floor(x);
    BigFloat r(bits);
    mpfr_set_d(r.get(), std::exp2(x - fl) * (1 + 1e-12), MPFR_RNDU);
    mpfr_mul_2si(r.get(), r.get(), static_cast<long>(fl), MPFR_RNDU);
    return r;
}

// log2(2^a + 2^b)
double log2_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log2(1 + std::exp2(std::min(a, b) - hi));
}

// Fetches sequence prefixes from the shared TermStore in doubling chunks.
class FactorCursor {
public:
    explicit FactorCursor(SequenceId id) : id_(std::move(id)) {}

    const ExactRat& at(long n) {
        if (!table_ || static_cast<long>(table_->size()) <= n) {
            table_ = TermStore::global().table(id_, std::max<long>(2 * n, 64));
        }
        return (*table_)[static_cast<std::size_t>(n)];
    }

private:
    SequenceId id_;
    std::shared_ptr<const TermStore::Table> table_;
};

TermFn streaming_terms(const SeriesSpec& s) {
    struct State {
        std::vector<FactorCursor> cursors;
        long last = -1;
        ExactInt base_pow = 1;
    };
    auto st = std::make_shared<State>();
    for (const auto& f : s.factors) st->cursors.emplace_back(f.seq);
    return [st, &s](long n) -> ExactRat {
        if (n == st->last + 1) {
            if (n > 0) st->base_pow *= s.base;
        } else {
            st->base_pow = ipow(s.base, static_cast<unsigned long>(n));
        }
        st->last = n;
        ExactRat t = ExactRat(s.weight_a * n + s.weight_b);
        for (std::size_t i = 0; i < s.factors.size(); ++i) {
            const ExactRat& v = st->cursors[i].at(n);
            for (int j = 0; j < s.factors[i].power; ++j) t *= v;
        }
        t /= ExactRat(st->base_pow);
        return t;
    };
}

}  // namespace

std::string status_name(Status s) {
    switch (s) {
        case Status::Proved: return "proved";
        case Status::Conjecture: return "conjecture";
        case Status::Quoted: return "quoted";
        case Status::Diagnostic: return "diagnostic";
    }
    return "?";
}

Status status_from_name(const std::string& name) {
    if (name == "proved") return Status::Proved;
    if (name == "conjecture") return Status::Conjecture;
    if (name == "quoted") return Status::Quoted;
    if (name == "diagnostic") return Status::Diagnostic;
    throw DomainError("unknown status: " + name);
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

void TargetConstant::validate() const {
    if (radicals.empty()) throw DomainError("target needs at least one radical");
    for (const auto& [c, d] : radicals) {
        if (!squarefree(d)) throw DomainError("radicand " + std::to_string(d) + " is not squarefree");
    }
}

BigFloat TargetConstant::evaluate(mpfr_prec_t bits) const {
    BigFloat sum(bits);
    for (const auto& [c, d] : radicals) {
        sum = sum + BigFloat(c, bits) * BigFloat::sqrt(ExactRat(d), bits);
    }
    return BigFloat(scale, bits) * sum / BigFloat::pi(bits);
}

std::string target_value(const TargetConstant& t, long digits) {
    if (digits < 1) throw DomainError("digits must be >= 1");
    return t.evaluate(bits_for_digits(digits)).to_fixed(digits);
}

ExactRat series_term(const SeriesSpec& s, long n) {
    if (n < 0) throw DomainError("series index must be >= 0");
    ExactRat t = ExactRat(s.weight_a * n + s.weight_b);
    for (const auto& f : s.factors) {
        const ExactRat v = sequence_term(f.seq, n);
        for (int j = 0; j < f.power; ++j) t *= v;
    }
    return t / ExactRat(ipow(s.base, static_cast<unsigned long>(n)));
}

ExactRat partial_sum(const SeriesSpec& s, long N) {
    if (N < 0) throw DomainError("N must be >= 0");
    auto term = streaming_terms(s);
    ExactRat sum = 0;
    for (long n = 0; n <= N; ++n) sum += term(n);
    return sum;
}

long precision_ceiling() {
    if (const char* env = std::getenv("PIFORGE_MAX_DIGITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return v;
    }
    return 1000;
}

void validate(const PrecisionBudget& b) {
    if (b.digits < 1) throw DomainError("digits must be >= 1");
    if (b.digits > precision_ceiling()) {
        throw DomainError("digits " + std::to_string(b.digits) + " exceeds ceiling " +
                          std::to_string(precision_ceiling()));
    }
    if (b.max_terms < 1) throw DomainError("max_terms must be >= 1");
}

TailEstimator::Bound TailEstimator::bound_after(long N) const {
    Bound out;
    const long last = N + 1;  // index of t(N+1)
    if (last >= size()) return out;
    const double t_next = logs_[static_cast<std::size_t>(last)];
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    if (last >= kWindow) {
        double rmax = 0;
        bool ok = true;
        for (long n = last - kWindow; n < last; ++n) {
            const double a = logs_[static_cast<std::size_t>(n)];
            const double b = logs_[static_cast<std::size_t>(n + 1)];
            if (a == kNegInf || b == kNegInf) {
                ok = false;
                break;
            }
            rmax = std::max(rmax, std::exp2(b - a));
        }
        const double q = kMargin * rmax;
        if (ok && q <= kCap) {
            out.ok = true;
            out.q = q;
            out.kind = "ratio";
            out.log2_bound = t_next - std::log2(1 - q);
            return out;
        }
    }

    if (last + 1 >= 3 * kBlock) {
        double m[3];
        for (int b = 0; b < 3; ++b) {
            const long hi = last - (2 - b) * kBlock;  // inclusive
            double mx = kNegInf;
            for (long n = hi - kBlock + 1; n <= hi; ++n) mx = std::max(mx, logs_[static_cast<std::size_t>(n)]);
            m[b] = mx;
        }
        if (m[0] == kNegInf || m[1] == kNegInf || m[2] == kNegInf) return out;
        const double rho = kMargin * std::exp2(std::max(m[1] - m[0], m[2] - m[1]));
        if (rho > kCap) return out;
        out.ok = true;
        out.q = rho;
        out.kind = "block";
        const double future = m[2] + std::log2(static_cast<double>(kBlock)) + std::log2(rho) - std::log2(1 - rho);
        out.log2_bound = log2_add(t_next, future);
    }
    return out;
}

ConvergenceReport certify_sum(const TermFn& term, const BigFloat& target, const PrecisionBudget& budget) {
    validate(budget);
    const mpfr_prec_t bits = bits_for_digits(budget.digits);
    const BigFloat eps = BigFloat::pow10(-budget.digits, bits);
    const double log2_eps = -static_cast<double>(budget.digits) * kLog2Of10;
    // Past this the partial sums are frozen at working precision; a residual
    // still above eps is a real disagreement.
    const double log2_frozen = log2_eps - 10 * kLog2Of10;

    ConvergenceReport rep;
    rep.digits = budget.digits;
    rep.target = target.to_fixed(budget.digits);
    rep.bound_kind = "none";

    TailEstimator est;
    ExactRat sum = 0;
    ExactRat t = term(0);
    est.push(log2_abs(t));

    auto residual_of = [&](const ExactRat& s) { return (BigFloat(s, bits) - target).abs(); };

    for (long N = 0; N < budget.max_terms; ++N) {
        sum += t;
        const ExactRat next = term(N + 1);
        est.push(log2_abs(next));
        t = next;

        const auto b = est.bound_after(N);
        const bool last_round = N + 1 == budget.max_terms;
        if (!(b.ok && b.log2_bound < log2_eps - 1) && !last_round) continue;

        const BigFloat res = residual_of(sum);
        rep.terms = N;
        rep.residual = res.to_sci();
        rep.partial_sum = BigFloat(sum, bits).to_fixed(budget.digits + 5);
        rep.bound_kind = b.kind;
        rep.q = b.q;
        rep.tail_bound.clear();
        if (!b.ok) break;

        const BigFloat tail = pow2(b.log2_bound, bits);
        rep.tail_bound = tail.to_sci();
        if (res + tail < eps) {
            rep.outcome = Outcome::Pass;
            return rep;
        }
        if (res > tail + eps && (b.log2_bound < log2_frozen || last_round)) {
            rep.outcome = Outcome::Fail;
            return rep;
        }
    }
    rep.outcome = Outcome::Inconclusive;
    return rep;
}

ConvergenceReport check_convergence(const SeriesSpec& s, const PrecisionBudget& budget) {
    validate(budget);
    return certify_sum(streaming_terms(s), s.target.evaluate(bits_for_digits(budget.digits)), budget);
}

ExactRat eval_2F1(const ExactRat& a, const ExactRat& b, const ExactRat& c, const ExactRat& z, long N) {
    if (is_integer(c) && c <= 0) throw DomainError("2F1: c must not be a nonpositive integer");
    if (abs(z) >= 1) throw DomainError("2F1: |z| must be < 1");
    if (N < 0) throw DomainError("2F1: N must be >= 0");
    ExactRat term = 1;
    ExactRat sum = 1;
    for (long n = 1; n <= N; ++n) {
        term *= (a + (n - 1)) * (b + (n - 1)) * z / (ExactRat(n) * (c + (n - 1)));
        if (term == 0) break;
        sum += term;
    }
    return sum;
}

Check110Report check_1_10(long digits, long max_terms) {
    validate(PrecisionBudget{digits, max_terms});
    const mpfr_prec_t bits = bits_for_digits(digits);
    const double log2_eps = -static_cast<double>(digits) * kLog2Of10;
    const ExactRat z(-1, 8);
    const ExactRat a1(1, 3), b1(2, 3), c1(1);
    const ExactRat a2(4, 3), b2(5, 3), c2(2);
    const ExactRat base(-216);

    Check110Report rep;
    rep.digits = digits;
    const TargetConstant tc = TargetConstant::simple(ExactRat(4, 3), 3);
    const BigFloat target = tc.evaluate(bits);
    rep.target = target.to_fixed(digits);

    // Hypergeometric terms by their ratio; binomial-series terms directly.
    ExactRat h1 = 1, h2 = 1;
    ExactRat f1 = 0, f2 = 0;
    ExactRat binom_sum = 0, weighted_sum = 0;
    ExactRat base_pow = 1;
    auto binom_term = [&](long k) -> ExactRat {
        return ExactRat(binomial(2 * k, k) * binomial(3 * k, k)) / base_pow;
    };
    ExactRat w = binom_term(0);  // w_k = binom(2k,k) binom(3k,k) / (-216)^k

    TailEstimator e1, e2;
    e1.push(log2_abs(h1));
    e2.push(log2_abs(h2));

    for (long N = 0; N < max_terms; ++N) {
        f1 += h1;
        f2 += h2;
        binom_sum += w;
        if (rep.f1_first_mismatch < 0 && f1 != binom_sum) rep.f1_first_mismatch = N;

        const ExactRat nh1 = h1 * (a1 + N) * (b1 + N) * z / (ExactRat(N + 1) * (c1 + N));
        const ExactRat nh2 = h2 * (a2 + N) * (b2 + N) * z / (ExactRat(N + 1) * (c2 + N));
        base_pow *= base;
        const ExactRat nw = binom_term(N + 1);

        // F2 through N pairs with the weighted binomial sum through N+1.
        weighted_sum += ExactRat(N + 1) * nw;
        if (rep.f2_first_mismatch < 0 && f2 != ExactRat(-36) * weighted_sum) rep.f2_first_mismatch = N;

        h1 = nh1;
        h2 = nh2;
        w = nw;
        e1.push(log2_abs(h1));
        e2.push(log2_abs(h2));

        const auto b1b = e1.bound_after(N);
        const auto b2b = e2.bound_after(N);
        const bool last_round = N + 1 == max_terms;
        if (!(b1b.ok && b2b.ok && std::max(b1b.log2_bound, b2b.log2_bound) < log2_eps - 6) && !last_round) continue;

        const ExactRat comb = f1 * f1 - f1 * f2 / 4;
        rep.terms = N;
        rep.combination = BigFloat(comb, bits).to_fixed(digits + 5);
        const BigFloat res = (BigFloat(comb, bits) - target).abs();
        rep.residual = res.to_sci();
        if (!(b1b.ok && b2b.ok)) break;

        // |F1^2 - F1 F2/4 - (S1^2 - S1 S2/4)| with |F_i - S_i| <= d_i.
        const BigFloat d1 = pow2(b1b.log2_bound, bits);
        const BigFloat d2 = pow2(b2b.log2_bound, bits);
        const BigFloat s1 = BigFloat(f1, bits).abs();
        const BigFloat s2 = BigFloat(f2, bits).abs();
        const BigFloat two(ExactRat(2), bits), four(ExactRat(4), bits);
        const BigFloat err = d1 * (two * s1 + d1) + (s1 * d2 + s2 * d1 + d1 * d2) / four;
        rep.error_bound = err.to_sci();
        const BigFloat eps = BigFloat::pow10(-digits, bits);
        if (res + err < eps) {
            rep.outcome = rep.cross_checks_ok() ? Outcome::Pass : Outcome::Fail;
            return rep;
        }
        if (res > err + eps) {
            rep.outcome = Outcome::Fail;
            return rep;
        }
    }
    rep.outcome = Outcome::Inconclusive;
    return rep;
}

Lemma32Report check_lemma_3_2(const ExactInt& m, long digits, long max_terms) {
    if (abs(m) <= 4) throw DomainError("L3.2 needs |m| > 4, got " + to_string(m));
    const PrecisionBudget budget{digits, max_terms};
    validate(budget);
    const mpfr_prec_t bits = bits_for_digits(digits);
    const ExactRat ratio = ExactRat(m) / ExactRat(m - 4);
    const BigFloat root = BigFloat::sqrt(ratio, bits);
    const BigFloat weighted_target = BigFloat(ExactRat(2) / ExactRat(m - 4), bits) * root;

    auto make_terms = [&m](bool weighted) {
        auto pow = std::make_shared<ExactInt>(1);
        auto last = std::make_shared<long>(-1);
        return TermFn([m, weighted, pow, last](long k) -> ExactRat {
            if (k == *last + 1) {
                if (k > 0) *pow *= m;
            } else {
                *pow = ipow(m, static_cast<unsigned long>(k));
            }
            *last = k;
            ExactRat t = ExactRat(binomial(2 * k, k)) / ExactRat(*pow);
            return weighted ? t * k : t;
        });
    };

    Lemma32Report rep;
    rep.m = m;
    rep.plain = certify_sum(make_terms(false), root, budget);
    rep.weighted = certify_sum(make_terms(true), weighted_target, budget);
    if (rep.plain.outcome == Outcome::Pass && rep.weighted.outcome == Outcome::Pass) {
        rep.outcome = Outcome::Pass;
    } else if (rep.plain.outcome == Outcome::Fail || rep.weighted.outcome == Outcome::Fail) {
        rep.outcome = Outcome::Fail;
    } else {
        rep.outcome = Outcome::Inconclusive;
    }
    return rep;
}


std::vector<SeriesSpec> parse_series_registry(const std::string& json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    std::vector<SeriesSpec> out;
    for (const auto& e : doc.at("series")) {
        SeriesSpec s;
        s.id = e.at("id").get<std::string>();
        s.status = status_from_name(e.at("status").get<std::string>());
        s.weight_a = detail::json_int(e.at("weight").at(0));
        s.weight_b = detail::json_int(e.at("weight").at(1));
        s.base = detail::json_int(e.at("base"));
        if (s.base == 0) throw DomainError(s.id + ": base must be nonzero");
        for (const auto& f : e.at("factors")) s.factors.push_back(detail::json_factor(f));
        const auto& t = e.at("target");
        s.target.scale = detail::json_rat(t.at("scale"));
        s.target.radicals.clear();
        for (const auto& r : t.at("radicals")) {
            s.target.radicals.emplace_back(detail::json_rat(r.at(0)), r.at(1).get<long>());
        }
        s.target.validate();
        s.formula = e.value("formula", "");
        out.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (out[i].id == out[j].id) throw DomainError("duplicate series id " + out[i].id);
        }
    }
    return out;
}

const std::vector<SeriesSpec>& series_registry() {
    static const std::vector<SeriesSpec> reg = parse_series_registry(data::series_json());
    return reg;
}

const SeriesSpec& find_series(const std::string& id) {
    for (const auto& s : series_registry()) {
        if (s.id == id) return s;
    }
    throw DomainError("unknown series id: " + id);
}

}  // namespace piforge
