#pragma once

// Univariate polynomials with integer coefficients, used for eliminants.
// Most operations only care about a polynomial up to a positive scalar, so
// quotients and gcds come back as primitive integer polynomials.

#include "stiefel/errors.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/rational.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace stiefel::poly {

class UPoly {
public:
    UPoly() = default;
    /// c[i] multiplies x^i.
    explicit UPoly(std::vector<Integer> c) : c_(std::move(c)) { trim(); }

    static UPoly from_ints(std::initializer_list<long> c) {
        std::vector<Integer> v;
        for (long x : c) v.emplace_back(x);
        return UPoly(std::move(v));
    }

    /// Positive integer multiple of a rational coefficient vector (denominators cleared).
    static UPoly from_rationals(const std::vector<Rational>& c) {
        Integer l = 1;
        for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<Integer> v;
        v.reserve(c.size());
        for (const auto& q : c) v.push_back(q.get_num() * (l / q.get_den()));
        return UPoly(std::move(v));
    }

    /// Requires `p` to involve only `var`; the result is a positive multiple of p.
    static UPoly from_polynomial(const Polynomial& p, std::size_t var) {
        std::vector<Rational> c(p.degree_in(var) + 1u);
        for (const auto& t : p.terms()) {
            for (std::size_t i = 0; i < p.vars().size(); ++i)
                if (i != var && t.mono[i]) throw DomainError("polynomial is not univariate in " + p.vars()[var]);
            c[t.mono[var]] = t.coeff;
        }
        return from_rationals(c);
    }

    Polynomial to_polynomial(const std::vector<std::string>& vars, const std::string& name) const {
        std::vector<Rational> c;
        for (const auto& z : c_) c.emplace_back(z);
        return Polynomial::univariate(vars, name, c);
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(int i) const { return (i < 0 || i > degree()) ? Integer(0) : c_[static_cast<std::size_t>(i)]; }
    const Integer& lc() const { return c_.back(); }

    Integer content() const {
        Integer g = 0;
        for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        return g;
    }

    /// Divides by the (positive) content; sign pattern unchanged.
    UPoly primitive_part() const {
        if (c_.empty()) return *this;
        const Integer g = content();
        UPoly r = *this;
        if (g != 1)
            for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        return r;
    }

    /// Primitive with positive leading coefficient.
    UPoly normalized() const {
        UPoly r = primitive_part();
        if (!r.c_.empty() && r.lc() < 0)
            for (auto& x : r.c_) x = -x;
        return r;
    }

    UPoly derivative() const {
        std::vector<Integer> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return UPoly(std::move(d));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a) {
        UPoly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly&, const UPoly&) = default;

    /// Exact value at a rational point.
    Rational eval(const Rational& x) const {
        Rational v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + Rational(*it);
        return v;
    }

    /// Sign of p(num/den) with den > 0, computed with integers only.
    int sign_at(const Rational& x) const {
        if (c_.empty()) return 0;
        const Integer& p = x.get_num();
        const Integer& q = x.get_den();
        Integer v = c_.back();
        Integer qp = 1;
        for (int i = degree() - 1; i >= 0; --i) {
            qp *= q;
            v = v * p + c_[static_cast<std::size_t>(i)] * qp;
        }
        return sgn(v);
    }

    template <class T>
    T eval_float(T x) const {
        T v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + static_cast<T>(to_long_double(*it));
        return v;
    }

    std::string to_string(const std::string& var = "x") const {
        std::vector<std::string> vars{var};
        return to_polynomial(vars, var).to_string();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

/// Positive multiple of the remainder of a by b.
inline UPoly positive_pseudo_remainder(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
    std::vector<Integer> r = a.coeffs();
    const int db = b.degree();
    const Integer lb = b.lc();
    const Integer alb = abs(lb);
    const int slb = sgn(lb);
    const auto& bc = b.coeffs();
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        const int dr = static_cast<int>(r.size()) - 1;
        const Integer lr = r.back() * slb;
        const int shift = dr - db;
        for (auto& x : r) x *= alb;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + shift)] -= lr * bc[static_cast<std::size_t>(i)];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return UPoly(std::move(r)).primitive_part();
}

/// Quotient and remainder over Q.
inline std::pair<std::vector<Rational>, std::vector<Rational>> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    std::vector<Rational> r;
    for (const auto& x : a.coeffs()) r.emplace_back(x);
    const int db = b.degree();
    std::vector<Rational> q(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)));
    const Rational lb(b.lc());
    while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
        const int shift = static_cast<int>(r.size()) - 1 - db;
        const Rational f = r.back() / lb;
        q[static_cast<std::size_t>(shift)] = f;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + shift)] -= f * Rational(b.coeff(i));
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return {q, r};
}

/// Primitive quotient a / b; throws DivisibilityError when b does not divide a.
inline UPoly exact_quotient(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) throw DivisibilityError("univariate polynomial is not an exact multiple");
    return UPoly::from_rationals(q).primitive_part();
}

inline bool divides(const UPoly& b, const UPoly& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.empty();
}

/// Primitive gcd with positive leading coefficient.
inline UPoly gcd(UPoly a, UPoly b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        UPoly r = positive_pseudo_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.normalized();
}

inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.normalized();
    const UPoly g = gcd(p, p.derivative());
    return exact_quotient(p, g).normalized();
}

/// Coefficient of x^d has sign (-1)^d for every nonzero term, so p(-t) has no sign changes
/// and every real root is positive.
inline bool alternating_sign_check(const UPoly& p) {
    if (p.is_zero()) return false;
    for (int d = 0; d <= p.degree(); ++d) {
        const int s = sgn(p.coeff(d));
        if (s == 0) continue;
        if (s != ((d % 2 == 0) ? 1 : -1)) return false;
    }
    return true;
}

class SturmSequence {
public:
    explicit SturmSequence(const UPoly& p) {
        if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
        seq_.push_back(p.primitive_part());
        UPoly d = seq_.back().derivative();
        if (d.is_zero()) return;
        seq_.push_back(d.primitive_part());
        for (;;) {
            UPoly r = positive_pseudo_remainder(seq_[seq_.size() - 2], seq_.back());
            if (r.is_zero()) break;
            seq_.push_back(-r);
        }
    }

    int variations_at(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& s : seq_) {
            const int v = s.sign_at(x);
            if (v == 0) continue;
            if (last != 0 && v != last) ++count;
            last = v;
        }
        return count;
    }

    /// Number of distinct real roots in (lo, hi].
    int count(const Rational& lo, const Rational& hi) const { return variations_at(lo) - variations_at(hi); }

    const std::vector<UPoly>& polys() const { return seq_; }

private:
    std::vector<UPoly> seq_;
};

/// Exactly one root of `poly` lies in (lo, hi].
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    UPoly poly;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

/// Integer bound B with every real root in [-B, B]: 1 + max |a_i / a_n|.
inline Rational root_bound(const UPoly& p) {
    if (p.degree() < 1) return 1;
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational q(abs(p.coeff(i)), abs(p.lc()));
        q.canonicalize();
        if (q > m) m = q;
    }
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
    return Rational(c + 1);
}

/// Disjoint intervals isolating every real root of p in (lo, hi]; p is made squarefree first.
inline std::vector<IsolatingInterval> sturm_isolate(const UPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw DomainError("cannot isolate roots of the zero polynomial");
    if (!(lo < hi)) throw DomainError("empty isolation domain");
    const UPoly sf = squarefree_part(p);
    std::vector<IsolatingInterval> out;
    if (sf.degree() < 1) return out;
    const SturmSequence sturm(sf);

    struct Pending {
        Rational lo, hi;
        int count;
    };
    std::vector<Pending> stack{{lo, hi, sturm.count(lo, hi)}};
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        if (cur.count == 0) continue;
        if (cur.count == 1) {
            out.push_back({cur.lo, cur.hi, sf});
            continue;
        }
        const Rational mid = (cur.lo + cur.hi) / 2;
        const int left = sturm.count(cur.lo, mid);
        stack.push_back({mid, cur.hi, cur.count - left});
        stack.push_back({cur.lo, mid, left});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return out;
}

/// Every positive real root.
inline std::vector<IsolatingInterval> isolate_positive(const UPoly& p) {
    return sturm_isolate(p, Rational(0), root_bound(p));
}

/// Bisects until the interval is narrower than `width`.
inline IsolatingInterval refine(IsolatingInterval iv, const Rational& width) {
    const SturmSequence sturm(iv.poly);
    while (iv.hi - iv.lo >= width) {
        const int shi = iv.poly.sign_at(iv.hi);
        if (shi == 0) {
            // root sits at hi: any (hi - w, hi] inside the interval still isolates it
            iv.lo = iv.hi - width / 2;
            break;
        }
        const int slo = iv.poly.sign_at(iv.lo);
        const Rational mid = iv.midpoint();
        bool left;
        if (slo != 0 && slo != shi)
            left = iv.poly.sign_at(mid) != slo;
        else
            left = sturm.count(iv.lo, mid) == 1;
        if (left)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

}  // namespace stiefel::poly
