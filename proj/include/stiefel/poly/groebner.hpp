#pragma once

// Buchberger's algorithm over Q with the sugar selection strategy and the
// Gebauer-Moeller installation of both Buchberger criteria. Internally the
// polynomials are kept fraction-free (primitive integer coefficients).

#include "stiefel/errors.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace stiefel::poly {

struct MonomialOrder {
    enum class Kind { Lex, GRevLex };

    Kind kind = Kind::Lex;
    /// Variables from most to least significant.
    std::vector<std::string> ranking;

    static MonomialOrder lex(std::vector<std::string> ranking) { return {Kind::Lex, std::move(ranking)}; }
    static MonomialOrder grevlex(std::vector<std::string> ranking) { return {Kind::GRevLex, std::move(ranking)}; }
};

struct GroebnerOptions {
    std::size_t max_pair_reductions = 200000;
};

struct GroebnerStats {
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t max_basis_size = 0;
};

namespace detail {

struct ZTerm {
    Monomial mono;
    Integer coeff;
};
using ZPoly = std::vector<ZTerm>;

class OrderCompare {
public:
    OrderCompare(MonomialOrder::Kind kind, std::size_t nvars) : kind_(kind), nvars_(nvars) {}

    /// a > b in the active order.
    bool greater(const Monomial& a, const Monomial& b) const {
        if (kind_ == MonomialOrder::Kind::Lex) return a > b;
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (std::size_t i = nvars_; i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }

private:
    MonomialOrder::Kind kind_;
    std::size_t nvars_;
};

inline Integer content(const ZPoly& p) {
    Integer g = 0;
    for (const auto& t : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void make_primitive(ZPoly& p) {
    if (p.empty()) return;
    Integer g = content(p);
    if (p.front().coeff < 0) g = -g;
    if (g != 1)
        for (auto& t : p) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
}

/// a * p[from:] - b * m * q[qfrom:], merged in descending order.
inline ZPoly axpy(const Integer& a, const ZPoly& p, std::size_t from, const Integer& b, const Monomial& m,
                  const ZPoly& q, std::size_t qfrom, const OrderCompare& cmp) {
    ZPoly out;
    out.reserve(p.size() - from + q.size() - qfrom);
    std::size_t i = from, j = qfrom;
    Monomial mq = j < q.size() ? q[j].mono * m : Monomial{};
    while (i < p.size() || j < q.size()) {
        if (j == q.size() || (i < p.size() && cmp.greater(p[i].mono, mq))) {
            out.push_back({p[i].mono, a == 1 ? p[i].coeff : Integer(a * p[i].coeff)});
            ++i;
        } else if (i == p.size() || cmp.greater(mq, p[i].mono)) {
            out.push_back({mq, Integer(-b * q[j].coeff)});
            if (++j < q.size()) mq = q[j].mono * m;
        } else {
            Integer c = a * p[i].coeff - b * q[j].coeff;
            if (c != 0) out.push_back({p[i].mono, std::move(c)});
            ++i;
            if (++j < q.size()) mq = q[j].mono * m;
        }
    }
    return out;
}

/// Full reduction of p modulo the polynomials in `basis` (all with nonzero leading term).
/// Returns a primitive positive multiple of a normal form.
inline ZPoly reduce(ZPoly p, const std::vector<const ZPoly*>& basis, const OrderCompare& cmp) {
    ZPoly rest;
    std::size_t head = 0;
    unsigned since_content = 0;
    while (head < p.size()) {
        const ZTerm& lt = p[head];
        const ZPoly* red = nullptr;
        for (const ZPoly* g : basis) {
            if (g->front().mono.divides(lt.mono) && (!red || g->size() < red->size())) red = g;
        }
        if (!red) {
            rest.push_back(p[head]);
            ++head;
            continue;
        }
        Integer a = red->front().coeff, b = lt.coeff, d;
        mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
        if (a < 0) {
            a = -a;
            b = -b;
        }
        const Monomial m = lt.mono / red->front().mono;
        p = axpy(a, p, head + 1, b, m, *red, 1, cmp);
        head = 0;
        if (a != 1)
            for (auto& t : rest) t.coeff *= a;
        if (++since_content >= 8) {
            since_content = 0;
            Integer g = content(p);
            for (const auto& t : rest) {
                if (g == 1) break;
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
            }
            if (g > 1) {
                for (auto& t : p) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
                for (auto& t : rest) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
            }
        }
    }
    make_primitive(rest);
    return rest;
}

inline ZPoly spoly(const ZPoly& f, const ZPoly& g, const OrderCompare& cmp) {
    const Monomial l = Monomial::lcm(f.front().mono, g.front().mono);
    Integer a = g.front().coeff, b = f.front().coeff, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
    // a * (l/lm f) * f - b * (l/lm g) * g
    const Monomial mf = l / f.front().mono;
    ZPoly fm;
    fm.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) fm.push_back({f[i].mono * mf, f[i].coeff});
    ZPoly s = axpy(a, fm, 0, b, l / g.front().mono, g, 1, cmp);
    make_primitive(s);
    return s;
}

inline ZPoly to_z(const Polynomial& p, const MonomialOrder& order, const OrderCompare& cmp) {
    const Polynomial q = p.with_vars(order.ranking).content_normalized();
    ZPoly z;
    z.reserve(q.size());
    for (const auto& t : q.terms()) z.push_back({t.mono, t.coeff.get_num()});
    std::sort(z.begin(), z.end(), [&](const ZTerm& x, const ZTerm& y) { return cmp.greater(x.mono, y.mono); });
    make_primitive(z);
    return z;
}

inline Polynomial from_z(const ZPoly& z, const std::vector<std::string>& vars) {
    std::vector<Term> terms;
    terms.reserve(z.size());
    for (const auto& t : z) terms.push_back({t.mono, Rational(t.coeff)});
    return Polynomial::from_terms(vars, std::move(terms)).content_normalized();
}

}  // namespace detail

/// Reduced Gröbner basis of the ideal generated by `gens`, in the ring whose variables are
/// `order.ranking`. Each element is content-normalized over the integers; the result is sorted by
/// increasing leading monomial, so elimination polynomials come first under lex.
inline std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                          const GroebnerOptions& options = {}, GroebnerStats* stats = nullptr) {
    using namespace detail;
    if (gens.empty()) throw DomainError("Gröbner basis of an empty generator list");
    const OrderCompare cmp(order.kind, order.ranking.size());

    struct Entry {
        ZPoly p;
        unsigned sugar = 0;
    };
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned sugar;
    };
    std::vector<Entry> polys;
    std::vector<std::size_t> basis;
    std::vector<Pair> pairs;
    GroebnerStats local;

    const auto lm = [&](std::size_t i) -> const Monomial& { return polys[i].p.front().mono; };
    const auto make_pair = [&](std::size_t i, std::size_t j) {
        const Monomial l = Monomial::lcm(lm(i), lm(j));
        const unsigned si = polys[i].sugar + l.degree() - lm(i).degree();
        const unsigned sj = polys[j].sugar + l.degree() - lm(j).degree();
        return Pair{i, j, l, std::max(si, sj)};
    };

    const auto install = [&](std::size_t h) {
        std::vector<Pair> fresh;
        for (std::size_t g : basis) fresh.push_back(make_pair(g, h));
        std::vector<Pair> kept;
        for (std::size_t idx = 0; idx < fresh.size(); ++idx) {
            const Pair& p = fresh[idx];
            bool keep = lm(p.i).coprime(lm(h));
            if (!keep) {
                keep = true;
                for (std::size_t k = idx + 1; k < fresh.size() && keep; ++k)
                    if (fresh[k].lcm.divides(p.lcm)) keep = false;
                for (std::size_t k = 0; k < kept.size() && keep; ++k)
                    if (kept[k].lcm.divides(p.lcm)) keep = false;
            }
            if (keep) kept.push_back(p);
        }
        std::erase_if(pairs, [&](const Pair& p) {
            return lm(h).divides(p.lcm) && Monomial::lcm(lm(p.i), lm(h)) != p.lcm &&
                   Monomial::lcm(lm(p.j), lm(h)) != p.lcm;
        });
        for (const Pair& p : kept)
            if (!lm(p.i).coprime(lm(h))) pairs.push_back(p);
        std::erase_if(basis, [&](std::size_t g) { return lm(h).divides(lm(g)); });
        basis.push_back(h);
        local.max_basis_size = std::max(local.max_basis_size, basis.size());
    };

    const auto reducers = [&]() {
        std::vector<const ZPoly*> out;
        out.reserve(basis.size());
        for (std::size_t g : basis) out.push_back(&polys[g].p);
        return out;
    };

    for (const auto& g : gens) {
        ZPoly z = reduce(to_z(g, order, cmp), reducers(), cmp);
        if (z.empty()) continue;
        unsigned sugar = 0;
        for (const auto& t : z) sugar = std::max(sugar, t.mono.degree());
        polys.push_back({std::move(z), sugar});
        install(polys.size() - 1);
    }

    while (!pairs.empty()) {
        auto best = pairs.begin();
        for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
            if (it->sugar < best->sugar || (it->sugar == best->sugar && cmp.greater(best->lcm, it->lcm))) best = it;
        }
        const Pair pr = *best;
        pairs.erase(best);
        if (++local.pairs_reduced > options.max_pair_reductions) {
            if (stats) *stats = local;
            throw EliminationOverflow("Buchberger exceeded " + std::to_string(options.max_pair_reductions) +
                                      " pair reductions");
        }
        ZPoly h = reduce(spoly(polys[pr.i].p, polys[pr.j].p, cmp), reducers(), cmp);
        if (h.empty()) {
            ++local.zero_reductions;
            continue;
        }
        polys.push_back({std::move(h), pr.sugar});
        install(polys.size() - 1);
    }

    // interreduce the minimal basis; leading terms survive because no leading monomial divides another
    std::vector<ZPoly> reduced;
    for (std::size_t g : basis) reduced.push_back(polys[g].p);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        std::vector<const ZPoly*> others;
        for (std::size_t o = 0; o < reduced.size(); ++o)
            if (o != k) others.push_back(&reduced[o]);
        reduced[k] = reduce(reduced[k], others, cmp);
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const ZPoly& a, const ZPoly& b) { return cmp.greater(b.front().mono, a.front().mono); });

    if (stats) *stats = local;
    std::vector<Polynomial> out;
    out.reserve(reduced.size());
    for (const auto& z : reduced) out.push_back(detail::from_z(z, order.ranking));
    return out;
}

/// Scalar multiple of the normal form of p modulo `basis`, in the ring of `order`.
inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
    using namespace detail;
    const OrderCompare cmp(order.kind, order.ranking.size());
    std::vector<ZPoly> zs;
    for (const auto& b : basis)
        if (!b.is_zero()) zs.push_back(to_z(b, order, cmp));
    std::vector<const ZPoly*> ptrs;
    for (const auto& z : zs) ptrs.push_back(&z);
    return from_z(reduce(to_z(p, order, cmp), ptrs, cmp), order.ranking);
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
    using namespace detail;
    const OrderCompare cmp(order.kind, order.ranking.size());
    return from_z(spoly(to_z(f, order, cmp), to_z(g, order, cmp), cmp), order.ranking);
}

/// Leading monomial of p under `order` (p must live in the order's ring).
inline Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
    using namespace detail;
    const OrderCompare cmp(order.kind, order.ranking.size());
    const ZPoly z = to_z(p, order, cmp);
    if (z.empty()) throw DomainError("zero polynomial has no leading monomial");
    return z.front().mono;
}

/// Basis elements that involve no variable other than `var`.
inline std::vector<Polynomial> elements_in(const std::vector<Polynomial>& basis, const std::string& var) {
    std::vector<Polynomial> out;
    for (const auto& p : basis) {
        const std::size_t v = p.index_of(var);
        bool only = true;
        for (std::size_t i = 0; i < p.vars().size(); ++i)
            if (i != v && p.involves(i)) only = false;
        if (only && !p.is_constant()) out.push_back(p);
    }
    return out;
}

/// Generators of the ideal (gens, z * product - 1) in the ring with `z` prepended as the
/// highest-ranked variable. Adjoining this relation removes the zero locus of `product`.
inline std::vector<Polynomial> saturated_ideal(const std::vector<Polynomial>& gens, const Polynomial& product,
                                               const std::string& z = "z") {
    if (gens.empty()) throw DomainError("saturation of an empty generator list");
    std::vector<std::string> vars{z};
    for (const auto& v : product.vars()) vars.push_back(v);
    std::vector<Polynomial> out;
    for (const auto& g : gens) out.push_back(g.with_vars(vars));
    const Polynomial p = product.with_vars(vars);
    out.push_back(Polynomial::variable(vars, z) * p - Polynomial::constant(vars, 1));
    return out;
}

}  // namespace stiefel::poly
