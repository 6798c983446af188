#pragma once

#include "piforge/exact.hpp"
#include "piforge/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace piforge {

enum class IdentityTag { Id2_1, Id2_2, Id2_3, Id2_4, Id2_5, Id3_1 };
enum class RecurrenceTag { Rec2_1, Rec2_5, Rec3_1 };
enum class Side { Lhs, Rhs };

struct IdentityInfo {
    IdentityTag tag;
    std::string id;  // "2.1", ...
    Status status;
    std::string lhs_text;
    std::string rhs_text;
    std::optional<RecurrenceTag> recurrence;
};

struct RecurrenceInfo {
    RecurrenceTag tag;
    std::string id;  // "REC_2_1", ...
    std::string text;
    IdentityTag identity;  // the identity whose two sides realize it
};

const std::vector<IdentityInfo>& identity_catalog();
const std::vector<RecurrenceInfo>& recurrence_catalog();
const IdentityInfo& identity_info(IdentityTag tag);
const RecurrenceInfo& recurrence_info(RecurrenceTag tag);
std::optional<IdentityTag> identity_from_id(const std::string& id);
std::optional<RecurrenceTag> recurrence_from_id(const std::string& id);

/// Each side by its own defining finite sum.
ExactRat identity_side(IdentityTag tag, Side side, long n);

struct IdentityVerdict {
    long n = 0;
    bool equal = false;
    ExactRat lhs;
    ExactRat rhs;
};
std::vector<IdentityVerdict> verify_identity(IdentityTag tag, long n_max, unsigned workers = 1);

/// Order-2 recurrence c2(n) u(n+2) = c1(n) u(n+1) + c0(n) u(n).
struct RecurrenceCoeffs {
    ExactInt c2, c1, c0;
};
RecurrenceCoeffs recurrence_coeffs(RecurrenceTag tag, long n);

struct RecurrenceVerdict {
    long n = 0;  // checks u(n), u(n+1), u(n+2)
    bool holds = false;
    ExactRat residual;  // c2 u(n+2) - c1 u(n+1) - c0 u(n)
};
std::vector<RecurrenceVerdict> verify_recurrence(RecurrenceTag tag, Side side, long n_max, unsigned workers = 1);

/// Base cases plus both recurrences imply equality through n_max; that
/// implication is compared against direct per-n comparison.
struct InductionCheck {
    long n_max = 0;
    bool bases_equal = false;
    bool lhs_recurrence = false;
    bool rhs_recurrence = false;
    bool direct_equal = false;
    bool implied() const { return bases_equal && lhs_recurrence && rhs_recurrence; }
    bool consistent() const { return !implied() || direct_equal; }
};
InductionCheck induction_cross_check(RecurrenceTag tag, long n_max, unsigned workers = 1);

struct SRow {
    long n = 0;
    ExactRat value;
    bool integral = false;
    bool divisible_by_8 = false;  // meaningful for n >= 1
};
struct SPrimeRow {
    long p = 0;
    ExactInt residue;   // s_{p-1} mod p
    ExactInt expected;  // floor((p+1)/6)
    bool holds = false;
};
struct SReport {
    std::vector<SRow> rows;  // n = 0..n_max
    std::vector<SPrimeRow> primes;
    bool ok = false;
};
SReport verify_s_properties(long n_max, long p_max, unsigned workers = 1);

}  // namespace piforge
