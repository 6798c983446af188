#include "piforge/identities.hpp"

#include "piforge/modular.hpp"
#include "piforge/parallel.hpp"
#include "piforge/sequences.hpp"

#include <stdexcept>

namespace piforge {

namespace {

// Prefix tables from the shared store; each call returns a snapshot long enough for n.
const ExactRat& central_at(long k, const std::shared_ptr<const TermStore::Table>& t) {
    return (*t)[static_cast<std::size_t>(k)];
}

std::shared_ptr<const TermStore::Table> table(const SequenceId& id, long n) {
    return TermStore::global().table(id, n);
}

// sum_k A(k) binom(k, n-k) m^(n-k), the shape shared by the identity left sides.
template <class A>
ExactRat binomial_transform(long n, long m, A&& a) {
    ExactRat sum = 0;
    for (long k = (n + 1) / 2; k <= n; ++k) {  // binom(k, n-k) = 0 for k < n-k
        const long j = n - k;
        ExactInt w = binomial(k, j) * ipow(ExactInt(m < 0 ? -m : m), static_cast<unsigned long>(j));
        if (m < 0 && j % 2 == 1) w = -w;
        sum += a(k) * ExactRat(w);
    }
    return sum;
}

ExactRat quarter_binom(long k, bool three) {
    return binomial(three ? ExactRat(-3, 4) : ExactRat(-1, 4), k);
}

ExactRat lhs_2_5_sum(long n) {
    const auto c2 = table(SequenceId::central_binom(), n);
    const auto b42 = table(SequenceId::binom_linear(4, 2), n);
    return binomial_transform(n, -64, [&](long k) -> ExactRat {
        const ExactRat& c = central_at(k, c2);
        return (*b42)[static_cast<std::size_t>(k)] * c * c;
    });
}

ExactRat lhs_3_1(long n) {
    ExactRat sum = 0;
    for (long k = 0; k <= n; ++k) {
        const ExactRat a = quarter_binom(k, false);
        const ExactRat b = quarter_binom(n - k, true);
        sum += a * a * b * b;
    }
    return sum * ExactRat(ipow(ExactInt(64), static_cast<unsigned long>(n)));
}

ExactRat rhs_3_1(long n) {
    const auto c2 = table(SequenceId::central_binom(), n);
    ExactRat sum = 0;
    for (long k = 0; k <= n; ++k) {
        const ExactRat& c = central_at(k, c2);
        sum += c * c * c * central_at(n - k, c2) * ExactRat(ipow(ExactInt(16), static_cast<unsigned long>(n - k)));
    }
    return sum;
}

// The two sequences whose recurrence is certified; for REC_2_5 the left one is
// the sum divided by binom(2n, n) and the right one is P_n(4).
ExactRat recurrence_sequence(RecurrenceTag tag, Side side, long n) {
    switch (tag) {
        case RecurrenceTag::Rec2_1: return identity_side(IdentityTag::Id2_1, side, n);
        case RecurrenceTag::Rec2_5:
            if (side == Side::Lhs) return lhs_2_5_sum(n) / ExactRat(binomial(2 * n, n));
            return sequence_term(SequenceId::poly_p(4), n);
        case RecurrenceTag::Rec3_1: return identity_side(IdentityTag::Id3_1, side, n);
    }
    throw std::logic_error("bad recurrence tag");
}

std::vector<ExactRat> recurrence_values(RecurrenceTag tag, Side side, long n_max, unsigned workers) {
    std::vector<ExactRat> u(static_cast<std::size_t>(n_max + 1));
    parallel_for(u.size(), workers, [&](std::size_t i) { u[i] = recurrence_sequence(tag, side, static_cast<long>(i)); });
    return u;
}

std::vector<RecurrenceVerdict> check_recurrence(RecurrenceTag tag, const std::vector<ExactRat>& u) {
    std::vector<RecurrenceVerdict> out;
    for (long n = 0; n + 2 < static_cast<long>(u.size()); ++n) {
        const auto c = recurrence_coeffs(tag, n);
        RecurrenceVerdict v;
        v.n = n;
        v.residual = ExactRat(c.c2) * u[n + 2] - ExactRat(c.c1) * u[n + 1] - ExactRat(c.c0) * u[n];
        v.holds = v.residual == 0;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
    static const std::vector<IdentityInfo> cat = {
        {IdentityTag::Id2_1, "2.1", Status::Proved, "sum_k binom(2k,k)^3 binom(k,n-k) (-16)^(n-k)",
         "sum_k binom(2k,k)^2 binom(2(n-k),n-k)^2", RecurrenceTag::Rec2_1},
        {IdentityTag::Id2_2, "2.2", Status::Quoted, "sum_k binom(2k,k)^2 binom(3k,k) binom(k,n-k) (-27)^(n-k)",
         "sum_k binom(2k,k) binom(3k,k) binom(2(n-k),n-k) binom(3(n-k),n-k)", std::nullopt},
        {IdentityTag::Id2_3, "2.3", Status::Quoted, "sum_k binom(4k,2k) binom(2k,k)^2 binom(k,n-k) (-64)^(n-k)",
         "sum_k binom(4k,2k) binom(2k,k) binom(4(n-k),2(n-k)) binom(2(n-k),n-k)", std::nullopt},
        {IdentityTag::Id2_4, "2.4", Status::Quoted,
         "sum_k binom(6k,3k) binom(3k,k) binom(2k,k) binom(k,n-k) (-432)^(n-k)",
         "sum_k binom(6k,3k) binom(3k,k) binom(6(n-k),3(n-k)) binom(3(n-k),n-k)", std::nullopt},
        {IdentityTag::Id2_5, "2.5", Status::Proved, "binom(2n,n) P_n(4)",
         "sum_k binom(4k,2k) binom(2k,k)^2 binom(k,n-k) (-64)^(n-k)", RecurrenceTag::Rec2_5},
        {IdentityTag::Id3_1, "3.1", Status::Proved, "64^n sum_k binom(-1/4,k)^2 binom(-3/4,n-k)^2",
         "sum_k binom(2k,k)^3 binom(2(n-k),n-k) 16^(n-k)", RecurrenceTag::Rec3_1},
    };
    return cat;
}

const std::vector<RecurrenceInfo>& recurrence_catalog() {
    static const std::vector<RecurrenceInfo> cat = {
        {RecurrenceTag::Rec2_1, "REC_2_1", "(n+2)^3 u(n+2) = 8(2n+3)(2n^2+6n+5) u(n+1) - 256(n+1)^3 u(n)",
         IdentityTag::Id2_1},
        {RecurrenceTag::Rec2_5, "REC_2_5", "(n+2)^2 u(n+2) = 4(8n^2+24n+19) u(n+1) - 256(n+1)^2 u(n)",
         IdentityTag::Id2_5},
        {RecurrenceTag::Rec3_1, "REC_3_1", "(n+2)^3 u(n+2) = 8(2n+3)(8n^2+24n+21) u(n+1) - 4096(n+1)^3 u(n)",
         IdentityTag::Id3_1},
    };
    return cat;
}

const IdentityInfo& identity_info(IdentityTag tag) {
    for (const auto& i : identity_catalog()) {
        if (i.tag == tag) return i;
    }
    throw std::logic_error("bad identity tag");
}

const RecurrenceInfo& recurrence_info(RecurrenceTag tag) {
    for (const auto& r : recurrence_catalog()) {
        if (r.tag == tag) return r;
    }
    throw std::logic_error("bad recurrence tag");
}

std::optional<IdentityTag> identity_from_id(const std::string& id) {
    for (const auto& i : identity_catalog()) {
        if (i.id == id || "ID_" + i.id.substr(0, 1) + "_" + i.id.substr(2) == id) return i.tag;
    }
    return std::nullopt;
}

std::optional<RecurrenceTag> recurrence_from_id(const std::string& id) {
    for (const auto& r : recurrence_catalog()) {
        if (r.id == id) return r.tag;
    }
    return std::nullopt;
}

ExactRat identity_side(IdentityTag tag, Side side, long n) {
    if (n < 0) throw DomainError("n must be >= 0");
    const auto c2 = table(SequenceId::central_binom(), n);
    switch (tag) {
        case IdentityTag::Id2_1:
            if (side == Side::Rhs) return sequence_term(SequenceId::of(SeqTag::ConvSq), n);
            return binomial_transform(n, -16, [&](long k) -> ExactRat {
                const ExactRat& c = central_at(k, c2);
                return c * c * c;
            });
        case IdentityTag::Id2_2: {
            if (side == Side::Rhs) return sequence_term(SequenceId::of(SeqTag::Conv23), n);
            const auto b31 = table(SequenceId::binom_linear(3, 1), n);
            return binomial_transform(n, -27, [&](long k) -> ExactRat {
                const ExactRat& c = central_at(k, c2);
                return c * c * (*b31)[static_cast<std::size_t>(k)];
            });
        }
        case IdentityTag::Id2_3:
            if (side == Side::Rhs) return sequence_term(SequenceId::of(SeqTag::Conv42), n);
            return lhs_2_5_sum(n);
        case IdentityTag::Id2_4: {
            if (side == Side::Rhs) return sequence_term(SequenceId::of(SeqTag::Conv63), n);
            const auto b63 = table(SequenceId::binom_linear(6, 3), n);
            const auto b31 = table(SequenceId::binom_linear(3, 1), n);
            return binomial_transform(n, -432, [&](long k) -> ExactRat {
                const auto i = static_cast<std::size_t>(k);
                return (*b63)[i] * (*b31)[i] * central_at(k, c2);
            });
        }
        case IdentityTag::Id2_5:
            if (side == Side::Lhs) return central_at(n, c2) * sequence_term(SequenceId::poly_p(4), n);
            return lhs_2_5_sum(n);
        case IdentityTag::Id3_1:
            return side == Side::Lhs ? lhs_3_1(n) : rhs_3_1(n);
    }
    throw std::logic_error("bad identity tag");
}

std::vector<IdentityVerdict> verify_identity(IdentityTag tag, long n_max, unsigned workers) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    std::vector<IdentityVerdict> out(static_cast<std::size_t>(n_max + 1));
    parallel_for(out.size(), workers, [&](std::size_t i) {
        const long n = static_cast<long>(i);
        IdentityVerdict& v = out[i];
        v.n = n;
        v.lhs = identity_side(tag, Side::Lhs, n);
        v.rhs = identity_side(tag, Side::Rhs, n);
        v.equal = v.lhs == v.rhs;
    });
    return out;
}

RecurrenceCoeffs recurrence_coeffs(RecurrenceTag tag, long n) {
    const ExactInt N(n);
    switch (tag) {
        case RecurrenceTag::Rec2_1:
            return {ipow(N + 2, 3), 8 * (2 * N + 3) * (2 * N * N + 6 * N + 5), -256 * ipow(N + 1, 3)};
        case RecurrenceTag::Rec2_5:
            return {ipow(N + 2, 2), 4 * (8 * N * N + 24 * N + 19), -256 * ipow(N + 1, 2)};
        case RecurrenceTag::Rec3_1:
            return {ipow(N + 2, 3), 8 * (2 * N + 3) * (8 * N * N + 24 * N + 21), -4096 * ipow(N + 1, 3)};
    }
    throw std::logic_error("bad recurrence tag");
}

std::vector<RecurrenceVerdict> verify_recurrence(RecurrenceTag tag, Side side, long n_max, unsigned workers) {
    if (n_max < 2) throw DomainError("n_max must be >= 2");
    return check_recurrence(tag, recurrence_values(tag, side, n_max, workers));
}

InductionCheck induction_cross_check(RecurrenceTag tag, long n_max, unsigned workers) {
    if (n_max < 2) throw DomainError("n_max must be >= 2");
    const auto u = recurrence_values(tag, Side::Lhs, n_max, workers);
    const auto v = recurrence_values(tag, Side::Rhs, n_max, workers);
    InductionCheck c;
    c.n_max = n_max;
    c.bases_equal = u[0] == v[0] && u[1] == v[1];
    auto all_hold = [](const std::vector<RecurrenceVerdict>& vs) {
        for (const auto& x : vs) {
            if (!x.holds) return false;
        }
        return true;
    };
    c.lhs_recurrence = all_hold(check_recurrence(tag, u));
    c.rhs_recurrence = all_hold(check_recurrence(tag, v));
    c.direct_equal = u == v;
    return c;
}

SReport verify_s_properties(long n_max, long p_max, unsigned workers) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (p_max < 3) throw DomainError("p_max must be >= 3");
    SReport rep;
    rep.rows.resize(static_cast<std::size_t>(n_max + 1));
    parallel_for(rep.rows.size(), workers, [&](std::size_t i) {
        const SDivision d = s_division(static_cast<long>(i));
        SRow& r = rep.rows[i];
        r.n = static_cast<long>(i);
        r.value = d.value;
        r.integral = d.divisible;
        r.divisible_by_8 = d.divisible && mpz_divisible_ui_p(d.value.get_num().get_mpz_t(), 8) != 0;
    });
    const auto primes = modular::primes_up_to(static_cast<std::uint32_t>(p_max));
    rep.primes.resize(primes.size());
    parallel_for(primes.size(), workers, [&](std::size_t i) {
        const long p = static_cast<long>(primes[i]);
        const SDivision d = s_division(p - 1);
        SPrimeRow& r = rep.primes[i];
        r.p = p;
        r.expected = (p + 1) / 6;
        if (d.divisible) {
            ExactInt res;
            mpz_fdiv_r_ui(res.get_mpz_t(), d.value.get_num().get_mpz_t(), static_cast<unsigned long>(p));
            r.residue = res;
            r.holds = res == r.expected;
        }
    });
    rep.ok = true;
    for (const auto& r : rep.rows) {
        if (!r.integral || (r.n >= 1 && !r.divisible_by_8)) rep.ok = false;
    }
    for (const auto& r : rep.primes) {
        if (!r.holds) rep.ok = false;
    }
    return rep;
}

}  // namespace piforge
