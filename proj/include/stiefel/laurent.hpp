#pragma once

// Laurent polynomials over Q. Division is only defined by single terms, which
// is all the Ricci formulas need when every metric coefficient is a variable.

#include "stiefel/errors.hpp"
#include "stiefel/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace stiefel {

class LaurentPoly {
public:
    static constexpr std::size_t kMaxVars = 8;
    using Exponents = std::array<int, kMaxVars>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_[Exponents{}] = c;
    }

    static LaurentPoly variable(std::size_t index) {
        if (index >= kMaxVars) throw DomainError("too many Laurent variables");
        Exponents e{};
        e[index] = 1;
        LaurentPoly p;
        p.terms_[e] = 1;
        return p;
    }

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Componentwise minimum exponent over all terms (zero for the zero polynomial).
    Exponents min_exponents() const {
        Exponents lo{};
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < kMaxVars; ++i) lo[i] = first ? e[i] : std::min(lo[i], e[i]);
            first = false;
        }
        return lo;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly{} - a; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e{};
                for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend LaurentPoly operator/(const LaurentPoly& a, const LaurentPoly& b) {
        if (b.terms_.size() != 1) throw DomainError("Laurent division needs a single-term divisor");
        const auto& [eb, cb] = *b.terms_.begin();
        LaurentPoly out;
        for (const auto& [ea, ca] : a.terms_) {
            Exponents e{};
            for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = ea[i] - eb[i];
            out.add_term(e, ca / cb);
        }
        return out;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Exponents, Rational> terms_;
};

}  // namespace stiefel
