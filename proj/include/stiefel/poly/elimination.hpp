#pragma once

// Elimination of variables from polynomial systems: lexicographic Groebner
// bases (via a degree-ordered basis and FGLM when the ideal is
// zero-dimensional), saturation by a product of variables, and chains of
// Sylvester resultants as a fallback.

#include "stiefel/errors.hpp"
#include "stiefel/poly/groebner.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/poly/quotient.hpp"
#include "stiefel/poly/univariate.hpp"
#include "stiefel/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace stiefel::poly {

/// Divides out the largest monomial dividing every term.
inline Polynomial strip_monomial_factor(const Polynomial& p) {
    if (p.is_zero()) return p;
    Monomial g = p.terms().front().mono;
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) g[i] = std::min(g[i], t.mono[i]);
    if (g.is_one()) return p;
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back({t.mono / g, t.coeff});
    return Polynomial::from_terms(p.vars(), std::move(terms));
}

/// Determinant by fraction-free (Bareiss) elimination; entries live in a common ring.
inline Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> m, const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(vars, 1);
    bool negate = false;
    Polynomial prev = Polynomial::constant(vars, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return Polynomial(vars);
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = Polynomial(vars);
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Sylvester resultant of a and b with respect to `var`.
inline Polynomial resultant(const Polynomial& a, const Polynomial& b, const std::string& var) {
    if (a.vars() != b.vars()) throw DomainError("polynomials live in different rings");
    const std::size_t v = a.index_of(var);
    const unsigned da = a.degree_in(v), db = b.degree_in(v);
    const auto& vars = a.vars();
    if (da == 0 && db == 0) throw DomainError("resultant: neither polynomial involves " + var);
    if (da == 0) return a.pow(db);
    if (db == 0) return b.pow(da);
    const std::size_t n = da + db;
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial(vars)));
    for (std::size_t r = 0; r < db; ++r)
        for (unsigned k = 0; k <= da; ++k) m[r][r + da - k] = a.coefficient(v, static_cast<Exponent>(k));
    for (std::size_t r = 0; r < da; ++r)
        for (unsigned k = 0; k <= db; ++k) m[db + r][r + db - k] = b.coefficient(v, static_cast<Exponent>(k));
    return bareiss_determinant(std::move(m), vars);
}

namespace detail {

inline Polynomial resultant_chain(std::vector<Polynomial> gens, const std::vector<std::size_t>& order, std::size_t kv) {
    const auto vars = gens.front().vars();
    const std::string& keep = vars[kv];
    for (std::size_t v : order) {
        std::vector<Polynomial> with, without;
        for (const auto& g : gens) (g.involves(v) ? with : without).push_back(g);
        if (with.empty()) continue;
        if (with.size() == 1) throw DegenerateSystemError("cannot eliminate " + vars[v] + ": only one equation involves it");
        // pivot on the lowest positive degree in v
        std::stable_sort(with.begin(), with.end(), [&](const Polynomial& x, const Polynomial& y) {
            return x.degree_in(v) < y.degree_in(v);
        });
        // one resultant per extra equation; pairs sharing a factor in v are skipped
        std::size_t need = with.size() - 1;
        for (std::size_t i = 0; i < with.size() && need > 0; ++i)
            for (std::size_t j = i + 1; j < with.size() && need > 0; ++j) {
                Polynomial r = resultant(with[i], with[j], vars[v]);
                if (r.is_zero()) continue;
                without.push_back(strip_monomial_factor(r).content_normalized());
                --need;
            }
        if (need > 0) throw DegenerateSystemError("identically zero resultant eliminating " + vars[v]);
        gens = std::move(without);
    }
    std::vector<Polynomial> uni;
    for (const auto& g : gens)
        if (!g.is_constant()) uni.push_back(g);
    if (uni.empty()) throw DegenerateSystemError("elimination left no equation in " + keep);
    UPoly acc = UPoly::from_polynomial(uni.front(), kv);
    for (std::size_t i = 1; i < uni.size(); ++i) acc = gcd(acc, UPoly::from_polynomial(uni[i], kv));
    if (acc.degree() < 1) throw DegenerateSystemError("elimination left no equation in " + keep);
    return acc.normalized().to_polynomial(vars, keep);
}

}  // namespace detail

/// Univariate polynomial in `keep` vanishing on every solution of `gens` with nonzero
/// coordinates, obtained by successive resultants. May carry extraneous factors. Variables
/// are eliminated in ring order; other orders are tried when a resultant vanishes identically.
inline Polynomial eliminate_resultant(std::vector<Polynomial> gens, const std::string& keep) {
    if (gens.empty()) throw DomainError("elimination of an empty generator list");
    const std::size_t kv = gens.front().index_of(keep);
    for (auto& g : gens) g = strip_monomial_factor(g).content_normalized();
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < gens.front().vars().size(); ++v)
        if (v != kv) order.push_back(v);
    std::string last;
    do {
        try {
            return detail::resultant_chain(gens, order, kv);
        } catch (const DegenerateSystemError& e) {
            last = e.what();
        }
    } while (std::next_permutation(order.begin(), order.end()));
    throw DegenerateSystemError(last);
}

/// Reduced Groebner basis for any order. For lex, a degree-ordered basis is computed first and
/// converted by FGLM when the ideal is zero-dimensional; otherwise Buchberger runs directly.
inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                              const GroebnerOptions& options = {}, GroebnerStats* stats = nullptr) {
    if (order.kind != MonomialOrder::Kind::Lex) return buchberger(gens, order, options, stats);
    const MonomialOrder deg = MonomialOrder::grevlex(order.ranking);
    const auto g = buchberger(gens, deg, options, stats);
    try {
        return QuotientAlgebra::from_groebner(g, deg).lex_basis();
    } catch (const DegenerateSystemError&) {
        return buchberger(gens, order, options, stats);
    }
}

/// The quotient algebra of (gens) : product^inf, i.e. the system with every solution on the
/// zero locus of `product` removed. `ranking` fixes the variable order (last = eliminated-to).
/// When the ideal itself is not zero-dimensional, one variable factor of `product` at a time,
/// starting from the last ranked, is inverted through an auxiliary variable; the full
/// relation z * product - 1 is the last resort.
inline QuotientAlgebra saturated_quotient(const std::vector<Polynomial>& gens, const std::vector<std::string>& ranking,
                                          const Polynomial& product, const GroebnerOptions& options = {},
                                          GroebnerStats* stats = nullptr) {
    if (gens.empty()) throw DomainError("saturation of an empty generator list");
    std::vector<Polynomial> base;
    for (const auto& g : gens) base.push_back(g.with_vars(ranking));
    const Polynomial prod = product.with_vars(ranking);

    const auto attempt = [&](const std::vector<Polynomial>& sys, const std::vector<std::string>& vars) {
        const MonomialOrder deg = MonomialOrder::grevlex(vars);
        const auto basis = buchberger(sys, deg, options, stats);
        return QuotientAlgebra::from_groebner(basis, deg).localize(prod.with_vars(vars));
    };

    try {
        return attempt(base, ranking).restrict_to(ranking);
    } catch (const DegenerateSystemError&) {
    }
    std::vector<std::string> zvars{"z"};
    zvars.insert(zvars.end(), ranking.begin(), ranking.end());
    std::vector<Polynomial> lifted;
    for (const auto& g : base) lifted.push_back(g.with_vars(zvars));
    const Polynomial z = Polynomial::variable(zvars, "z");
    const Polynomial one = Polynomial::constant(zvars, 1);
    for (std::size_t v = ranking.size(); v-- > 0;) {
        if (!prod.involves(v)) continue;
        auto sys = lifted;
        sys.push_back(z * Polynomial::variable(zvars, ranking[v]) - one);
        try {
            return attempt(sys, zvars).restrict_to(ranking);
        } catch (const DegenerateSystemError&) {
        }
    }
    auto sys = lifted;
    sys.push_back(z * prod.with_vars(zvars) - one);
    return attempt(sys, zvars).restrict_to(ranking);
}

/// Content-normalized generator of the elimination ideal in `var`.
inline Polynomial eliminant(const QuotientAlgebra& algebra, const std::string& var) {
    return algebra.minimal_polynomial(var).content_normalized();
}

}  // namespace stiefel::poly
