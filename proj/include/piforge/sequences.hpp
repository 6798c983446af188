#pragma once

#include "piforge/exact.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace piforge {

/// Integer/rational sequences used by the series and congruence registries.
enum class SeqTag {
    CentralBinom,  // binom(2n, n)
    BinomLinear,   // binom(a n, b n); params a, b
    TrinomialT,    // T_n(b, c), coefficient of x^n in (x^2 + b x + c)^n; params b, c
    PolyP,         // sum_k binom(2k,k)^2 binom(2(n-k),n-k) x^(n-k); param x
    PolyPPlus,     // sum_k binom(n,k)^2 binom(2k,n) x^(2k-n); param x
    ConvSq,        // sum_k binom(2k,k)^2 binom(2(n-k),n-k)^2
    Conv23,        // same shape with binom(2k,k) binom(3k,k)
    Conv42,        // ... binom(4k,2k) binom(2k,k)
    Conv63,        // ... binom(6k,3k) binom(3k,k)
    ConvQuarter,   // sum_k binom(-1/4,k)^2 binom(-3/4,n-k)^2
    DombLike,      // sum_k binom(n,k)^2 binom(2k,k)
    SeqS,          // Conv63(n) / ((2n-1) binom(3n,n))
    EulerNum,      // E_n (zero for odd n)
};

struct SequenceId {
    SeqTag tag = SeqTag::CentralBinom;
    std::vector<ExactRat> params;

    static SequenceId central_binom() { return {SeqTag::CentralBinom, {}}; }
    static SequenceId binom_linear(long a, long b) { return {SeqTag::BinomLinear, {ExactRat(a), ExactRat(b)}}; }
    static SequenceId trinomial(const ExactRat& b, const ExactRat& c) { return {SeqTag::TrinomialT, {b, c}}; }
    static SequenceId poly_p(const ExactRat& x) { return {SeqTag::PolyP, {x}}; }
    static SequenceId poly_p_plus(const ExactRat& x) { return {SeqTag::PolyPPlus, {x}}; }
    static SequenceId of(SeqTag tag) { return {tag, {}}; }

    /// Stable textual key, e.g. "TRINOMIAL_T(38,441)". Used for caches and reports.
    std::string key() const;

    bool operator==(const SequenceId& other) const = default;
};

std::size_t arity(SeqTag tag);
std::string tag_name(SeqTag tag);
std::optional<SeqTag> tag_from_name(const std::string& name);

/// Throws DomainError unless params match the tag (count, integrality, signs).
void validate(const SequenceId& id);

/// Exact term by the direct defining sum. Building-block binomials are memoized.
ExactRat sequence_term(const SequenceId& id, long n);

/// Term reduced modulo `modulus`. Uses machine arithmetic when the modulus fits
/// in 63 bits and falls back to exact reduction otherwise. nullopt signals that
/// the value's denominator is not invertible ("excluded"), never a wrong residue.
std::optional<ExactInt> sequence_term_mod(const SequenceId& id, long n, const ExactInt& modulus);

/// Euler number E_n (secant numbers with alternating sign; odd n gives 0).
ExactInt euler_number(long n);

/// E_n mod m by running the defining recurrence over residues.
std::uint64_t euler_number_mod(long n, std::uint64_t m);

/// The division behind s_n, kept explicit so a non-integral quotient is a
/// reportable finding instead of an exception.
struct SDivision {
    ExactInt numerator;    // Conv63(n)
    ExactInt denominator;  // (2n-1) binom(3n, n)
    bool divisible = false;
    ExactRat value;        // numerator / denominator, exact
};
SDivision s_division(long n);

/// Run-wide memo of whole prefixes [0, n_max] of sequences. Tables are
/// immutable once published; extending one publishes a fresh snapshot.
class TermStore {
public:
    using Table = std::vector<ExactRat>;

    static TermStore& global();

    /// Missing terms are computed independently on up to `workers` threads.
    std::shared_ptr<const Table> table(const SequenceId& id, long n_max, unsigned workers = 1);

    /// Pre-loads known values (from the on-disk cache). Only consulted while
    /// building tables; seeded values are used verbatim.
    void seed(const std::string& key, long n, const ExactRat& value);

    struct Record {
        std::string key;
        long n;
        ExactRat value;
    };
    /// Values computed during this run that were not seeded, ordered by (key, n).
    std::vector<Record> fresh_records() const;

    void clear();

private:
    struct Entry {
        std::mutex mu;
        std::shared_ptr<const Table> table = std::make_shared<Table>();
        std::map<long, ExactRat> seeded;
        std::vector<bool> was_seeded;
    };
    Entry& entry(const std::string& key);

    mutable std::mutex mu_;
    std::unordered_map<std::string, std::unique_ptr<Entry>> entries_;
};

}  // namespace piforge
