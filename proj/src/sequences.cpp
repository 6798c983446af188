#include "piforge/sequences.hpp"

#include "growing_table.hpp"
#include "piforge/modular.hpp"
#include "piforge/parallel.hpp"

#include <algorithm>
#include <array>

namespace piforge {

namespace {

using detail::GrowingTable;
namespace mod = modular;

// ---- memoized building blocks -------------------------------------------

const ExactInt& central(long k) {
    static GrowingTable<ExactInt> table;
    return table.at(static_cast<std::size_t>(k), [](std::size_t n, auto& t) -> ExactInt {
        if (n == 0) return 1;
        // binom(2n,n) = binom(2n-2,n-1) * 2(2n-1) / n
        ExactInt v = t.published(n - 1) * (2 * (2 * n - 1));
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), n);
        return v;
    });
}

enum class Family { Sq, B23, B42, B63 };

// Convolution factor f(k) for the Conv* sequences.
const ExactInt& conv_factor(Family f, long k) {
    static std::array<GrowingTable<ExactInt>, 4> tables;
    auto& t = tables[static_cast<std::size_t>(f)];
    return t.at(static_cast<std::size_t>(k), [f](std::size_t n, auto&) -> ExactInt {
        const long m = static_cast<long>(n);
        switch (f) {
            case Family::Sq: return central(m) * central(m);
            case Family::B23: return central(m) * binomial(3 * m, m);
            case Family::B42: return binomial(4 * m, 2 * m) * central(m);
            case Family::B63: return binomial(6 * m, 3 * m) * binomial(3 * m, m);
        }
        return 0;
    });
}

// binom(-1/4,k)^2 and binom(-3/4,k)^2.
const ExactRat& quarter_factor(bool three_quarters, long k) {
    static std::array<GrowingTable<ExactRat>, 2> tables;
    auto& t = tables[three_quarters ? 1 : 0];
    return t.at(static_cast<std::size_t>(k), [three_quarters](std::size_t n, auto&) -> ExactRat {
        const ExactRat b = binomial(three_quarters ? make_rat(-3, 4) : make_rat(-1, 4), static_cast<long>(n));
        return b * b;
    });
}

const ExactInt& euler_even(long m) {
    // E_{2m} from sum_{k=0}^{m} binom(2m,2k) E_{2k} = 0, E_0 = 1.
    static GrowingTable<ExactInt> table;
    return table.at(static_cast<std::size_t>(m), [](std::size_t idx, auto& t) -> ExactInt {
        if (idx == 0) return 1;
        const long mm = static_cast<long>(idx);
        ExactInt acc = 0;
        ExactInt b = 1;  // binom(2m, 0)
        for (long k = 0; k < mm; ++k) {
            acc += b * t.published(static_cast<std::size_t>(k));
            // binom(2m, 2k+2) from binom(2m, 2k)
            b *= (2 * mm - 2 * k) * (2 * mm - 2 * k - 1);
            mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>((2 * k + 1) * (2 * k + 2)));
        }
        return -acc;
    });
}

Family family_of(SeqTag tag) {
    switch (tag) {
        case SeqTag::ConvSq: return Family::Sq;
        case SeqTag::Conv23: return Family::B23;
        case SeqTag::Conv42: return Family::B42;
        default: return Family::B63;
    }
}

ExactInt conv(Family f, long n) {
    ExactInt acc = 0;
    for (long k = 0; k < n - k; ++k) acc += conv_factor(f, k) * conv_factor(f, n - k);
    acc *= 2;
    if (n % 2 == 0) acc += conv_factor(f, n / 2) * conv_factor(f, n / 2);
    return acc;
}

template <class Num>
Num poly_p(long n, const Num& x) {
    Num acc = 0;
    Num xp = 1;  // x^(n-k)
    for (long k = n; k >= 0; --k) {
        acc += conv_factor(Family::Sq, k) * central(n - k) * xp;
        xp *= x;
    }
    return acc;
}

template <class Num>
Num poly_p_plus(long n, const Num& x) {
    Num acc = 0;
    const long k0 = (n + 1) / 2;
    Num xp = (2 * k0 - n == 0) ? Num(1) : Num(x);
    for (long k = k0; k <= n; ++k) {
        const ExactInt b = binomial(n, k);
        acc += b * b * binomial(2 * k, n) * xp;
        xp *= x;
        xp *= x;
    }
    return acc;
}

template <class Num>
Num trinomial(long n, const Num& b, const Num& c) {
    // sum_k binom(n,2k) binom(2k,k) b^(n-2k) c^k
    std::vector<Num> bpow(static_cast<std::size_t>(n + 1));
    bpow[0] = 1;
    for (long i = 1; i <= n; ++i) bpow[i] = bpow[i - 1] * b;
    Num acc = 0;
    Num cp = 1;
    for (long k = 0; 2 * k <= n; ++k) {
        acc += binomial(n, 2 * k) * central(k) * bpow[n - 2 * k] * cp;
        cp *= c;
    }
    return acc;
}

ExactInt domb_like(long n) {
    ExactInt acc = 0;
    for (long k = 0; k <= n; ++k) {
        const ExactInt b = binomial(n, k);
        acc += b * b * central(k);
    }
    return acc;
}

ExactRat conv_quarter(long n) {
    ExactRat acc = 0;
    for (long k = 0; k <= n; ++k) acc += quarter_factor(false, k) * quarter_factor(true, n - k);
    return acc;
}

bool all_integral(const SequenceId& id) {
    return std::all_of(id.params.begin(), id.params.end(), [](const ExactRat& p) { return is_integer(p); });
}

// ---- modular evaluation ---------------------------------------------------

mod::u64 red(const ExactInt& v, mod::u64 m) {
    ExactInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), ExactInt(static_cast<unsigned long>(m)).get_mpz_t());
    return r.get_ui();
}

mod::u64 conv_mod(Family f, long n, mod::u64 m) {
    mod::u64 acc = 0;
    for (long k = 0; k <= n; ++k) {
        acc = mod::add(acc, mod::mul(red(conv_factor(f, k), m), red(conv_factor(f, n - k), m), m), m);
    }
    return acc;
}

// Integer-parameter sequences evaluated with machine residues. The building
// blocks are reduced exact binomials; all sums and products run mod m.
std::optional<mod::u64> term_mod_fast(const SequenceId& id, long n, mod::u64 m) {
    auto p = [&](std::size_t i) { return red(id.params[i].get_num(), m); };
    switch (id.tag) {
        case SeqTag::CentralBinom: return red(central(n), m);
        case SeqTag::BinomLinear: {
            const long a = id.params[0].get_num().get_si();
            const long b = id.params[1].get_num().get_si();
            return red(binomial(a * n, b * n), m);
        }
        case SeqTag::TrinomialT: {
            const mod::u64 b = p(0);
            const mod::u64 c = p(1);
            mod::u64 acc = 0;
            mod::u64 cp = 1 % m;
            for (long k = 0; 2 * k <= n; ++k) {
                const mod::u64 t = mod::mul(mod::mul(red(binomial(n, 2 * k), m), red(central(k), m), m),
                                            mod::mul(mod::pow(b, static_cast<mod::u64>(n - 2 * k), m), cp, m), m);
                acc = mod::add(acc, t, m);
                cp = mod::mul(cp, c, m);
            }
            return acc;
        }
        case SeqTag::PolyP: {
            const mod::u64 x = p(0);
            mod::u64 acc = 0;
            for (long k = 0; k <= n; ++k) {
                const mod::u64 t = mod::mul(mod::mul(red(conv_factor(Family::Sq, k), m), red(central(n - k), m), m),
                                            mod::pow(x, static_cast<mod::u64>(n - k), m), m);
                acc = mod::add(acc, t, m);
            }
            return acc;
        }
        case SeqTag::PolyPPlus: {
            const mod::u64 x = p(0);
            mod::u64 acc = 0;
            for (long k = (n + 1) / 2; k <= n; ++k) {
                const mod::u64 b = red(binomial(n, k), m);
                const mod::u64 t = mod::mul(mod::mul(mod::mul(b, b, m), red(binomial(2 * k, n), m), m),
                                            mod::pow(x, static_cast<mod::u64>(2 * k - n), m), m);
                acc = mod::add(acc, t, m);
            }
            return acc;
        }
        case SeqTag::ConvSq:
        case SeqTag::Conv23:
        case SeqTag::Conv42:
        case SeqTag::Conv63: return conv_mod(family_of(id.tag), n, m);
        case SeqTag::DombLike: {
            mod::u64 acc = 0;
            for (long k = 0; k <= n; ++k) {
                const mod::u64 b = red(binomial(n, k), m);
                acc = mod::add(acc, mod::mul(mod::mul(b, b, m), red(central(k), m), m), m);
            }
            return acc;
        }
        case SeqTag::SeqS: {
            const mod::u64 num = conv_mod(Family::B63, n, m);
            const mod::u64 den =
                mod::mul(mod::from_signed(2 * n - 1, m), red(binomial(3 * n, n), m), m);
            const mod::u64 inv = mod::inverse(den, m);
            if (inv == 0) return std::nullopt;  // caller falls back to the exact quotient
            return mod::mul(num, inv, m);
        }
        case SeqTag::EulerNum: return euler_number_mod(n, m);
        case SeqTag::ConvQuarter: return std::nullopt;
    }
    return std::nullopt;
}

// Three-term recurrences used to extend whole tables in linear time:
//   (n+1) T_{n+1} = (2n+1) b T_n - n (b^2 - 4c) T_{n-1}
//   (n+1)^2 a_{n+1} = (10n^2 + 10n + 3) a_n - 9 n^2 a_{n-1}   (DOMB_LIKE)
bool has_recurrence(const SequenceId& id) {
    return (id.tag == SeqTag::TrinomialT && all_integral(id)) || id.tag == SeqTag::DombLike;
}

ExactRat next_by_recurrence(const SequenceId& id, const std::vector<ExactRat>& t, long n) {
    if (n < 2) return sequence_term(id, n);
    const ExactInt& u1 = t[static_cast<std::size_t>(n - 1)].get_num();
    const ExactInt& u2 = t[static_cast<std::size_t>(n - 2)].get_num();
    const long m = n - 1;
    ExactInt v;
    if (id.tag == SeqTag::TrinomialT) {
        const ExactInt& b = id.params[0].get_num();
        const ExactInt& c = id.params[1].get_num();
        v = ExactInt(2 * m + 1) * b * u1 - ExactInt(m) * (b * b - 4 * c) * u2;
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n));
    } else {
        v = ExactInt(10 * m * m + 10 * m + 3) * u1 - ExactInt(9 * m * m) * u2;
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n * n));
    }
    return ExactRat(v);
}

}  // namespace

// ---- SequenceId -----------------------------------------------------------

std::size_t arity(SeqTag tag) {
    switch (tag) {
        case SeqTag::BinomLinear:
        case SeqTag::TrinomialT: return 2;
        case SeqTag::PolyP:
        case SeqTag::PolyPPlus: return 1;
        default: return 0;
    }
}

namespace {
constexpr std::array<std::pair<SeqTag, const char*>, 13> kTagNames{{
    {SeqTag::CentralBinom, "CENTRAL_BINOM"},
    {SeqTag::BinomLinear, "BINOM_LINEAR"},
    {SeqTag::TrinomialT, "TRINOMIAL_T"},
    {SeqTag::PolyP, "POLY_P"},
    {SeqTag::PolyPPlus, "POLY_P_PLUS"},
    {SeqTag::ConvSq, "CONV_SQ"},
    {SeqTag::Conv23, "CONV_23"},
    {SeqTag::Conv42, "CONV_42"},
    {SeqTag::Conv63, "CONV_63"},
    {SeqTag::ConvQuarter, "CONV_QUARTER"},
    {SeqTag::DombLike, "DOMB_LIKE"},
    {SeqTag::SeqS, "SEQ_S"},
    {SeqTag::EulerNum, "EULER_NUM"},
}};
}  // namespace

std::string tag_name(SeqTag tag) {
    for (const auto& [t, name] : kTagNames) {
        if (t == tag) return name;
    }
    return "?";
}

std::optional<SeqTag> tag_from_name(const std::string& name) {
    for (const auto& [t, n] : kTagNames) {
        if (name == n) return t;
    }
    return std::nullopt;
}

std::string SequenceId::key() const {
    std::string k = tag_name(tag);
    if (!params.empty()) {
        k += "(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) k += ",";
            k += to_string(params[i]);
        }
        k += ")";
    }
    return k;
}

void validate(const SequenceId& id) {
    if (id.params.size() != arity(id.tag)) {
        throw DomainError(tag_name(id.tag) + " expects " + std::to_string(arity(id.tag)) + " parameter(s), got " +
                          std::to_string(id.params.size()));
    }
    if (id.tag == SeqTag::BinomLinear) {
        if (!all_integral(id) || id.params[1] < 0 || id.params[0] < id.params[1]) {
            throw DomainError("BINOM_LINEAR(a,b) needs integers a >= b >= 0");
        }
    }
}

// ---- exact terms ------------------------------------------------------------

ExactInt euler_number(long n) {
    if (n < 0) throw DomainError("euler_number: n must be nonnegative");
    if (n % 2 == 1) return 0;
    return euler_even(n / 2);
}

std::uint64_t euler_number_mod(long n, std::uint64_t m) {
    if (n < 0) throw DomainError("euler_number_mod: n must be nonnegative");
    if (m < 2) throw DomainError("modulus must be >= 2");
    if (n % 2 == 1) return 0;
    // Pascal rows mod m; e[j] holds E_{2j} mod m.
    std::vector<mod::u64> row{1 % m};
    std::vector<mod::u64> e{1 % m};
    for (long r = 1; r <= n; ++r) {
        std::vector<mod::u64> next(static_cast<std::size_t>(r + 1));
        next[0] = next[static_cast<std::size_t>(r)] = 1 % m;
        for (long i = 1; i < r; ++i) next[i] = mod::add(row[i - 1], row[i], m);
        row = std::move(next);
        if (r % 2 == 0) {
            mod::u64 acc = 0;
            for (long k = 0; k < r / 2; ++k) acc = mod::add(acc, mod::mul(row[2 * k], e[k], m), m);
            e.push_back(mod::sub(0, acc, m));
        }
    }
    return e.back();
}

SDivision s_division(long n) {
    if (n < 0) throw DomainError("s_n: n must be nonnegative");
    SDivision d;
    d.numerator = conv(Family::B63, n);
    d.denominator = (2 * n - 1) * binomial(3 * n, n);
    d.divisible = mpz_divisible_p(d.numerator.get_mpz_t(), d.denominator.get_mpz_t()) != 0;
    d.value = make_rat(d.numerator, d.denominator);
    return d;
}

ExactRat sequence_term(const SequenceId& id, long n) {
    validate(id);
    if (n < 0) throw DomainError("sequence index must be nonnegative");
    const bool integral = all_integral(id);
    switch (id.tag) {
        case SeqTag::CentralBinom: return ExactRat(central(n));
        case SeqTag::BinomLinear: {
            const long a = id.params[0].get_num().get_si();
            const long b = id.params[1].get_num().get_si();
            return ExactRat(binomial(a * n, b * n));
        }
        case SeqTag::TrinomialT:
            if (integral) return ExactRat(trinomial<ExactInt>(n, id.params[0].get_num(), id.params[1].get_num()));
            return trinomial<ExactRat>(n, id.params[0], id.params[1]);
        case SeqTag::PolyP:
            if (integral) return ExactRat(poly_p<ExactInt>(n, id.params[0].get_num()));
            return poly_p<ExactRat>(n, id.params[0]);
        case SeqTag::PolyPPlus:
            if (integral) return ExactRat(poly_p_plus<ExactInt>(n, id.params[0].get_num()));
            return poly_p_plus<ExactRat>(n, id.params[0]);
        case SeqTag::ConvSq:
        case SeqTag::Conv23:
        case SeqTag::Conv42:
        case SeqTag::Conv63: return ExactRat(conv(family_of(id.tag), n));
        case SeqTag::ConvQuarter: return conv_quarter(n);
        case SeqTag::DombLike: return ExactRat(domb_like(n));
        case SeqTag::SeqS: return s_division(n).value;
        case SeqTag::EulerNum: return ExactRat(euler_number(n));
    }
    return 0;
}

std::optional<ExactInt> sequence_term_mod(const SequenceId& id, long n, const ExactInt& modulus) {
    validate(id);
    if (modulus < 2) throw DomainError("modulus must be >= 2");
    if (n < 0) throw DomainError("sequence index must be nonnegative");
    const bool fits = modulus.fits_ulong_p() && modulus.get_ui() < (std::uint64_t{1} << 63);
    if (fits && all_integral(id)) {
        if (auto r = term_mod_fast(id, n, modulus.get_ui())) return ExactInt(static_cast<unsigned long>(*r));
    }
    return reduce_mod(sequence_term(id, n), modulus);
}

// ---- TermStore --------------------------------------------------------------

TermStore& TermStore::global() {
    static TermStore store;
    return store;
}

TermStore::Entry& TermStore::entry(const std::string& key) {
    std::lock_guard lock(mu_);
    auto& slot = entries_[key];
    if (!slot) slot = std::make_unique<Entry>();
    return *slot;
}

std::shared_ptr<const TermStore::Table> TermStore::table(const SequenceId& id, long n_max, unsigned workers) {
    validate(id);
    Entry& e = entry(id.key());
    std::lock_guard lock(e.mu);
    const long have = static_cast<long>(e.table->size());
    if (have > n_max) return e.table;
    auto grown = std::make_shared<Table>(*e.table);
    grown->resize(static_cast<std::size_t>(n_max + 1));
    std::vector<bool> seeded(static_cast<std::size_t>(n_max + 1 - have));
    for (long n = have; n <= n_max; ++n) {
        auto it = e.seeded.find(n);
        if (it != e.seeded.end()) {
            (*grown)[static_cast<std::size_t>(n)] = it->second;
            seeded[static_cast<std::size_t>(n - have)] = true;
        }
    }
    if (has_recurrence(id)) {
        for (long n = have; n <= n_max; ++n) {
            if (!seeded[static_cast<std::size_t>(n - have)]) (*grown)[static_cast<std::size_t>(n)] = next_by_recurrence(id, *grown, n);
        }
    } else {
        parallel_for(seeded.size(), workers, [&](std::size_t i) {
            if (!seeded[i]) (*grown)[have + i] = sequence_term(id, have + static_cast<long>(i));
        });
    }
    e.was_seeded.insert(e.was_seeded.end(), seeded.begin(), seeded.end());
    e.table = std::move(grown);
    return e.table;
}

void TermStore::seed(const std::string& key, long n, const ExactRat& value) {
    Entry& e = entry(key);
    std::lock_guard lock(e.mu);
    e.seeded[n] = value;
}

std::vector<TermStore::Record> TermStore::fresh_records() const {
    std::vector<Record> out;
    std::lock_guard lock(mu_);
    std::vector<std::string> keys;
    for (const auto& [k, _] : entries_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
        Entry& e = *entries_.at(k);
        std::lock_guard elock(e.mu);
        for (std::size_t n = 0; n < e.table->size(); ++n) {
            if (!e.was_seeded[n]) out.push_back({k, static_cast<long>(n), (*e.table)[n]});
        }
    }
    return out;
}

void TermStore::clear() {
    std::lock_guard lock(mu_);
    entries_.clear();
}

}  // namespace piforge
