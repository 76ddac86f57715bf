#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ordfrag {

/// Default largest exponent accepted by ordinal arithmetic.
inline constexpr std::uint32_t kDefaultExponentBound = 8;

/// One Cantor normal form term: omega^exponent * coefficient.
struct Term {
    std::uint32_t exponent = 0;
    std::uint64_t coefficient = 1;

    friend bool operator==(const Term&, const Term&) = default;
};

/*
 * Ordinal below omega^omega in Cantor normal form.
 *
 * Terms are stored with strictly decreasing exponents and positive
 * coefficients; the empty sequence is 0. The representation is canonical,
 * so structural equality is ordinal equality and the lexicographic order on
 * terms is the ordinal order.
 */
class Ordinal {
public:
    Ordinal() = default;

    /// Builds from terms; throws DomainError unless the terms are canonical.
    explicit Ordinal(std::vector<Term> terms);

    static Ordinal finite(std::uint64_t n);
    static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1);
    static Ordinal omega() { return omega_power(1); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent == 0); }

    /// The coefficient of omega^0, i.e. the finite tail.
    std::uint64_t finite_part() const;
    /// This ordinal with its finite tail removed.
    Ordinal limit_part() const;

    friend bool operator==(const Ordinal&, const Ordinal&) = default;
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

private:
    std::vector<Term> terms_;
};

enum class OrdinalKind { zero, successor, limit };

struct Classification {
    OrdinalKind kind = OrdinalKind::zero;
    std::optional<Ordinal> predecessor;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

/// Ordinal sum a + b; throws RangeError if an exponent exceeds the bound.
Ordinal add(const Ordinal& a, const Ordinal& b,
            std::uint32_t exponent_bound = kDefaultExponentBound);

Classification classify(const Ordinal& a);

/// (beta + omega^e)[i] = beta + omega^(e-1) * i. Throws DomainError for non-limits.
Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t i);

/// Leading exponent; degree(0) = 0.
std::uint32_t degree(const Ordinal& a);

Ordinal successor(const Ordinal& a);

/// Text form such as "w^2*3+w*2+5"; zero renders as "0".
std::string render(const Ordinal& a);

/// Inverse of render. Throws DomainError on malformed input.
Ordinal parse_ordinal(std::string_view text);

}  // namespace ordfrag
