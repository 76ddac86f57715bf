#include "ordfrag/ordinal.hpp"

#include <charconv>
#include <string>

#include "ordfrag/errors.hpp"

namespace ordfrag {

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient == 0) {
            throw DomainError("ordinal term with zero coefficient");
        }
        if (i > 0 && terms_[i].exponent >= terms_[i - 1].exponent) {
            throw DomainError("ordinal exponents must strictly decrease");
        }
    }
}

Ordinal Ordinal::finite(std::uint64_t n) {
    if (n == 0) return {};
    return Ordinal({Term{0, n}});
}

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient) {
    if (coefficient == 0) return {};
    return Ordinal({Term{exponent, coefficient}});
}

std::uint64_t Ordinal::finite_part() const {
    if (!terms_.empty() && terms_.back().exponent == 0) return terms_.back().coefficient;
    return 0;
}

Ordinal Ordinal::limit_part() const {
    Ordinal out = *this;
    if (!out.terms_.empty() && out.terms_.back().exponent == 0) out.terms_.pop_back();
    return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i].exponent != y[i].exponent) return x[i].exponent <=> y[i].exponent;
        if (x[i].coefficient != y[i].coefficient) return x[i].coefficient <=> y[i].coefficient;
    }
    return x.size() <=> y.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b, std::uint32_t exponent_bound) {
    if (degree(a) > exponent_bound || degree(b) > exponent_bound) {
        throw RangeError("ordinal exponent exceeds bound " + std::to_string(exponent_bound));
    }
    if (b.is_zero()) return a;
    const auto lead = b.terms().front();
    std::vector<Term> out;
    for (const auto& t : a.terms()) {
        if (t.exponent > lead.exponent) {
            out.push_back(t);
        } else {
            if (t.exponent == lead.exponent) {
                out.push_back(Term{lead.exponent, t.coefficient + lead.coefficient});
            }
            break;
        }
    }
    std::size_t start = 0;
    if (!out.empty() && out.back().exponent == lead.exponent) start = 1;
    for (std::size_t i = start; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
    return Ordinal(std::move(out));
}

Classification classify(const Ordinal& a) {
    if (a.is_zero()) return {OrdinalKind::zero, std::nullopt};
    const auto& last = a.terms().back();
    if (last.exponent != 0) return {OrdinalKind::limit, std::nullopt};
    auto terms = a.terms();
    if (--terms.back().coefficient == 0) terms.pop_back();
    return {OrdinalKind::successor, Ordinal(std::move(terms))};
}

Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t i) {
    if (classify(a).kind != OrdinalKind::limit) {
        throw DomainError("fundamental sequence requested for non-limit " + render(a));
    }
    auto terms = a.terms();
    const auto e = terms.back().exponent;
    if (--terms.back().coefficient == 0) terms.pop_back();
    return add(Ordinal(std::move(terms)), Ordinal::omega_power(e - 1, i), degree(a));
}

std::uint32_t degree(const Ordinal& a) {
    return a.is_zero() ? 0 : a.terms().front().exponent;
}

Ordinal successor(const Ordinal& a) { return add(a, Ordinal::finite(1), degree(a)); }

std::string render(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += '+';
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent != 1) out += '^' + std::to_string(t.exponent);
        if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
    }
    return out;
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::string_view whole) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw DomainError("malformed ordinal '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
    if (text == "0") return {};
    std::vector<Term> terms;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto plus = text.find('+', pos);
        if (plus == std::string_view::npos) plus = text.size();
        auto piece = text.substr(pos, plus - pos);
        Term term;
        if (!piece.empty() && piece.front() == 'w') {
            piece.remove_prefix(1);
            term.exponent = 1;
            if (!piece.empty() && piece.front() == '^') {
                auto star = piece.find('*');
                term.exponent = parse_number<std::uint32_t>(piece.substr(1, star == std::string_view::npos ? std::string_view::npos : star - 1), text);
                piece = star == std::string_view::npos ? std::string_view{} : piece.substr(star);
            }
            if (!piece.empty()) {
                if (piece.front() != '*') throw DomainError("malformed ordinal '" + std::string(text) + "'");
                term.coefficient = parse_number<std::uint64_t>(piece.substr(1), text);
            }
            // "w^0" is not part of the grammar; finite terms are bare numbers.
            if (term.exponent == 0) throw DomainError("malformed ordinal '" + std::string(text) + "'");
        } else {
            term.exponent = 0;
            term.coefficient = parse_number<std::uint64_t>(piece, text);
        }
        terms.push_back(term);
        pos = plus + 1;
    }
    for (const auto& t : terms) {
        if (t.coefficient == 0) throw DomainError("malformed ordinal '" + std::string(text) + "'");
    }
    return Ordinal(std::move(terms));
}

}  // namespace ordfrag
