#pragma once

// Exact multivariate polynomials over Q. Terms are kept sorted in descending
// lexicographic order of the exponent vector (variable 0 most significant), so
// two equal polynomials over the same variable list are stored identically.

#include "stiefel/errors.hpp"
#include "stiefel/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace stiefel::poly {

inline constexpr std::size_t kMaxVars = 8;
using Exponent = std::uint16_t;

class Monomial {
public:
    Monomial() = default;

    static Monomial variable(std::size_t index, Exponent power = 1) {
        check_index(index);
        Monomial m;
        m.e_[index] = power;
        return m;
    }

    Exponent operator[](std::size_t i) const { return e_[i]; }
    Exponent& operator[](std::size_t i) { return e_[i]; }

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e_) d += x;
        return d;
    }

    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// True when the two monomials share no variable.
    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            const unsigned s = unsigned(a.e_[i]) + b.e_[i];
            if (s > 0xFFFFu) throw DomainError("monomial exponent overflow");
            m.e_[i] = static_cast<Exponent>(s);
        }
        return m;
    }

    /// a / b, requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.e_[i] = static_cast<Exponent>(a.e_[i] - b.e_[i]);
        return m;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.e_[i] = std::max(a.e_[i], b.e_[i]);
        return m;
    }

    // lexicographic, variable 0 most significant
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    static void check_index(std::size_t i) {
        if (i >= kMaxVars) throw DomainError("variable index exceeds the supported maximum of 8");
    }
    std::array<Exponent, kMaxVars> e_{};
};

struct Term {
    Monomial mono;
    Rational coeff;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
        if (vars_.size() > kMaxVars) throw DomainError("at most 8 variables are supported");
    }

    /// Builds a canonical polynomial: sorted, like terms combined, zeros dropped.
    static Polynomial from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
        Polynomial p(std::move(vars));
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    static Polynomial constant(std::vector<std::string> vars, const Rational& c) {
        Polynomial p(std::move(vars));
        if (c != 0) p.terms_.push_back({Monomial{}, c});
        return p;
    }

    static Polynomial variable(std::vector<std::string> vars, const std::string& name, Exponent power = 1) {
        Polynomial p(std::move(vars));
        p.terms_.push_back({Monomial::variable(p.index_of(name), power), Rational(1)});
        return p;
    }

    /// Dense univariate polynomial in `name`; coeffs[i] multiplies name^i.
    static Polynomial univariate(std::vector<std::string> vars, const std::string& name,
                                 const std::vector<Rational>& coeffs) {
        Polynomial p(std::move(vars));
        const std::size_t idx = p.index_of(name);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) p.terms_.push_back({Monomial::variable(idx, static_cast<Exponent>(i)), coeffs[i]});
        p.canonicalize();
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw DomainError("unknown variable '" + name + "'");
    }

    bool has_var(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    /// Leading term under lex with variable 0 most significant.
    const Term& leading_term() const {
        if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
        return terms_.front();
    }

    Rational constant_term() const {
        if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
        return 0;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
        return d;
    }
    unsigned degree_in(const std::string& name) const { return degree_in(index_of(name)); }

    /// True when the polynomial involves variable `var`.
    bool involves(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.mono[var]) return true;
        return false;
    }

    /// Indices of the variables that actually occur.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (involves(i)) out.push_back(i);
        return out;
    }

    // arithmetic ------------------------------------------------------------

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, Rational(1)); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, Rational(-1)); }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_compatible(a, b);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coeff * y.coeff});
        return from_terms(a.vars_, std::move(out));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        if (c == 0) return Polynomial(a.vars_);
        Polynomial r = a;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    /// Multiplies by a single term.
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        Polynomial r(vars_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
        return r;  // multiplication by a monomial preserves lex order
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(vars_, 1);
        Polynomial base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.vars_ != b.vars_) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }

    // calculus / substitution -------------------------------------------------

    Polynomial derivative(std::size_t var) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (!t.mono[var]) continue;
            Monomial m = t.mono;
            const Exponent e = m[var];
            m[var] = static_cast<Exponent>(e - 1);
            out.push_back({m, t.coeff * e});
        }
        return from_terms(vars_, std::move(out));
    }

    /// Coefficient of var^k as a polynomial in the remaining variables (same ring).
    Polynomial coefficient(std::size_t var, Exponent k) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.mono[var] != k) continue;
            Monomial m = t.mono;
            m[var] = 0;
            out.push_back({m, t.coeff});
        }
        return from_terms(vars_, std::move(out));
    }

    /// Replaces variable `var` by the polynomial `value` (same ring).
    Polynomial substitute(std::size_t var, const Polynomial& value) const {
        check_compatible(*this, value);
        const unsigned d = degree_in(var);
        std::vector<Polynomial> powers{constant(vars_, 1)};
        for (unsigned i = 1; i <= d; ++i) powers.push_back(powers.back() * value);
        Polynomial out(vars_);
        for (unsigned k = 0; k <= d; ++k) {
            Polynomial c = coefficient(var, static_cast<Exponent>(k));
            if (!c.is_zero()) out += c * powers[k];
        }
        return out;
    }

    Polynomial substitute(std::size_t var, const Rational& value) const {
        return substitute(var, constant(vars_, value));
    }

    /// Exact value at a point given for every variable.
    Rational eval(std::span<const Rational> point) const {
        if (point.size() != vars_.size()) throw DomainError("evaluation point does not bind every variable");
        return eval_as<Rational>(point);
    }

    Rational eval(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> v;
        for (const auto& name : vars_) {
            auto it = point.find(name);
            if (it == point.end()) throw DomainError("variable '" + name + "' is unbound");
            v.push_back(it->second);
        }
        return eval(std::span<const Rational>(v));
    }

    /// Evaluation in any ring T constructible from a Rational coefficient.
    template <class T, class FromRational>
    T eval_with(std::span<const T> point, FromRational&& conv) const {
        T sum = conv(Rational(0));
        std::vector<std::vector<T>> powers(vars_.size());
        for (const auto& t : terms_) {
            T v = conv(t.coeff);
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                const Exponent e = t.mono[i];
                if (!e) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(T(1));
                while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
                v = v * pw[e];
            }
            sum = sum + v;
        }
        return sum;
    }

    template <class T>
    T eval_as(std::span<const T> point) const {
        if constexpr (std::is_same_v<T, Rational>) {
            return eval_with<T>(point, [](const Rational& q) { return q; });
        } else if constexpr (std::is_same_v<T, long double>) {
            return eval_with<T>(point, [](const Rational& q) { return to_long_double(q); });
        } else {
            return eval_with<T>(point, [](const Rational& q) { return static_cast<T>(q.get_d()); });
        }
    }

    // normalization ---------------------------------------------------------

    /// Scalar multiple with coprime integer coefficients and positive leading coefficient.
    Polynomial content_normalized() const {
        if (terms_.empty()) return *this;
        Integer num_gcd = 0, den_lcm = 1;
        for (const auto& t : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (terms_.front().coeff < 0) scale = -scale;
        return *this * scale;
    }

    /// Monic under lex.
    Polynomial monic() const {
        if (terms_.empty()) return *this;
        return *this * Rational(1 / terms_.front().coeff);
    }

    bool has_integer_coefficients() const {
        for (const auto& t : terms_)
            if (t.coeff.get_den() != 1) return false;
        return true;
    }

    /// Re-embeds the polynomial into a ring with a different variable list. Every variable that
    /// occurs must be present in `new_vars`.
    Polynomial with_vars(const std::vector<std::string>& new_vars) const {
        std::vector<int> map(vars_.size(), -1);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            for (std::size_t j = 0; j < new_vars.size(); ++j)
                if (new_vars[j] == vars_[i]) map[i] = static_cast<int>(j);
            if (map[i] < 0 && involves(i))
                throw DomainError("variable '" + vars_[i] + "' missing from the target ring");
        }
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m;
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (t.mono[i]) m[static_cast<std::size_t>(map[i])] = t.mono[i];
            out.push_back({m, t.coeff});
        }
        return from_terms(new_vars, std::move(out));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            const bool neg = c < 0;
            if (neg) c = -c;
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            first = false;
            bool need_star = false;
            if (c != 1 || t.mono.is_one()) {
                os << c.get_str();
                need_star = true;
            }
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (!t.mono[i]) continue;
                if (need_star) os << '*';
                os << vars_[i];
                if (t.mono[i] > 1) os << '^' << t.mono[i];
                need_star = true;
            }
        }
        return os.str();
    }

private:
    static void check_compatible(const Polynomial& a, const Polynomial& b) {
        if (a.vars_ != b.vars_) throw DomainError("polynomials live in different rings");
    }

    static Polynomial combine(const Polynomial& a, const Polynomial& b, const Rational& sb) {
        check_compatible(a, b);
        Polynomial r(a.vars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
                r.terms_.push_back({b.terms_[j].mono, sb * b.terms_[j].coeff});
                ++j;
            } else {
                Rational c = a.terms_[i].coeff + sb * b.terms_[j].coeff;
                if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
        terms_ = std::move(out);
    }

    std::vector<std::string> vars_;
    std::vector<Term> terms_;
};

/// Quotient p / q when q divides p exactly; throws DivisibilityError otherwise.
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) throw DivisibilityError("division by the zero polynomial");
    if (p.vars() != q.vars()) throw DomainError("polynomials live in different rings");
    const Term& lq = q.leading_term();
    Polynomial rem = p;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading_term();
        if (!lq.mono.divides(lr.mono)) throw DivisibilityError("polynomial is not an exact multiple");
        const Monomial m = lr.mono / lq.mono;
        const Rational c = lr.coeff / lq.coeff;
        quot.push_back({m, c});
        rem -= q.times_term(m, c);
    }
    return Polynomial::from_terms(p.vars(), std::move(quot));
}

inline bool divides(const Polynomial& q, const Polynomial& p) {
    try {
        exact_divide(p, q);
        return true;
    } catch (const DivisibilityError&) {
        return false;
    }
}

/// True when a = c * b for some nonzero rational c.
inline bool equal_up_to_scalar(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.content_normalized() == b.content_normalized();
}

}  // namespace stiefel::poly
