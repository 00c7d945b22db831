#pragma once

// Finite-dimensional quotient algebras Q[x]/I given by a Groebner basis of a
// zero-dimensional ideal, with exact multiplication matrices. Supports
// localization at a polynomial (the saturation I : p^inf) and FGLM conversion
// to the reduced lexicographic basis.

#include "stiefel/errors.hpp"
#include "stiefel/poly/groebner.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stiefel::poly {

using Vector = std::vector<Rational>;

namespace detail {

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Incrementally built echelon basis of a subspace of Q^d. Each stored row remembers how it
/// was assembled from the inserted vectors, so dependencies can be reported in those terms.
class Echelon {
public:
    explicit Echelon(std::size_t dim, bool track = false) : dim_(dim), track_(track) {}

    std::size_t rank() const { return rows_.size(); }

    /// Coordinates of v in terms of the stored rows, with the residual left in v.
    Vector reduce(Vector& v) const {
        Vector coords(rows_.size());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational a = v[pivots_[k]];
            if (a == 0) continue;
            coords[k] = a;
            for (std::size_t i = 0; i < dim_; ++i)
                if (rows_[k][i] != 0) v[i] -= a * rows_[k][i];
        }
        return coords;
    }

    /// Coordinates of v in terms of the inserted vectors, or nullopt when v is independent.
    std::optional<Vector> express(Vector v) const {
        const Vector coords = reduce(v);
        if (!is_zero(v)) return std::nullopt;
        Vector out(inserted_);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (coords[k] == 0) continue;
            for (std::size_t j = 0; j < inserted_; ++j)
                if (transform_[k][j] != 0) out[j] += coords[k] * transform_[k][j];
        }
        return out;
    }

    /// Adds v; returns false (and stores nothing) when v is already in the span.
    bool insert(Vector v) {
        const Vector coords = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0) ++p;
        if (p == dim_) return false;
        const Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        if (track_) {
            // row = (inserted - sum coords_k row_k) / pivot value
            Vector t(inserted_ + 1);
            t[inserted_] = inv;
            for (std::size_t k = 0; k < rows_.size(); ++k) {
                if (coords[k] == 0) continue;
                for (std::size_t j = 0; j < transform_[k].size(); ++j) t[j] -= inv * coords[k] * transform_[k][j];
            }
            for (auto& row : transform_) row.resize(inserted_ + 1);
            transform_.push_back(std::move(t));
        }
        ++inserted_;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    const std::vector<Vector>& rows() const { return rows_; }

private:
    std::size_t dim_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Vector> transform_;
};

/// Solves A x = b for square invertible A given by columns.
inline Vector solve(const std::vector<Vector>& columns, const Vector& b) {
    const std::size_t n = b.size();
    std::vector<Vector> a(n, Vector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j][i];
        a[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw DegenerateSystemError("singular linear system in quotient algebra");
        std::swap(a[p], a[c]);
        const Rational inv = 1 / a[c][c];
        for (std::size_t j = c; j <= n; ++j) a[c][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t j = c; j <= n; ++j)
                if (a[c][j] != 0) a[r][j] -= f * a[c][j];
        }
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

}  // namespace detail

class QuotientAlgebra {
public:
    /// Builds Q[vars]/I from a Groebner basis of I w.r.t. `order` (vars = order.ranking).
    /// Throws DegenerateSystemError when I is not zero-dimensional.
    static QuotientAlgebra from_groebner(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
        const std::size_t nv = order.ranking.size();
        const detail::OrderCompare cmp(order.kind, nv);
        std::vector<Polynomial> gb;
        std::vector<Monomial> lms;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            gb.push_back(g.with_vars(order.ranking));
            lms.push_back(leading_monomial(gb.back(), order));
        }
        QuotientAlgebra q;
        q.vars_ = order.ranking;
        for (std::size_t i = 0; i < nv; ++i) {
            bool pure = false;
            for (const auto& m : lms)
                if (m[i] > 0 && m.degree() == m[i]) pure = true;
            if (!pure) throw DegenerateSystemError("ideal is not zero-dimensional");
        }
        const auto standard = [&](const Monomial& m) {
            for (const auto& l : lms)
                if (l.divides(m)) return false;
            return true;
        };
        std::vector<Monomial> stdmons;
        std::map<Monomial, std::size_t> index;
        std::vector<Monomial> frontier;
        if (standard(Monomial{})) frontier.push_back(Monomial{});
        while (!frontier.empty()) {
            std::vector<Monomial> next;
            for (const auto& m : frontier) {
                if (index.contains(m)) continue;
                index.emplace(m, stdmons.size());
                stdmons.push_back(m);
                for (std::size_t i = 0; i < nv; ++i) {
                    const Monomial mm = m * Monomial::variable(i);
                    if (standard(mm) && !index.contains(mm)) next.push_back(mm);
                }
            }
            frontier = std::move(next);
        }
        const std::size_t d = stdmons.size();
        q.unit_.assign(d, Rational(0));
        if (d > 0) q.unit_[index.at(Monomial{})] = 1;

        // exact normal form over Q, coordinates in the standard monomials
        std::vector<std::pair<Monomial, std::vector<Term>>> reducers;
        for (std::size_t k = 0; k < gb.size(); ++k) {
            std::vector<Term> terms;
            Rational lc;
            for (const auto& t : gb[k].terms())
                if (t.mono == lms[k]) lc = t.coeff;
            for (const auto& t : gb[k].terms())
                if (t.mono != lms[k]) terms.push_back({t.mono, -t.coeff / lc});
            reducers.emplace_back(lms[k], std::move(terms));
        }
        const auto greater = [&](const Monomial& a, const Monomial& b) { return cmp.greater(a, b); };
        const auto normal_form = [&](const Monomial& start) {
            std::map<Monomial, Rational, decltype(greater)> p(greater);
            p.emplace(start, Rational(1));
            Vector out(d);
            while (!p.empty()) {
                auto it = p.begin();
                const Monomial m = it->first;
                const Rational c = it->second;
                p.erase(it);
                if (c == 0) continue;
                if (auto s = index.find(m); s != index.end()) {
                    out[s->second] += c;
                    continue;
                }
                const auto* red = &reducers.front();
                for (const auto& r : reducers)
                    if (r.first.divides(m)) {
                        red = &r;
                        break;
                    }
                const Monomial f = m / red->first;
                for (const auto& t : red->second) p[t.mono * f] += c * t.coeff;
            }
            return out;
        };
        q.mult_.assign(nv, std::vector<Vector>(d));
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Monomial m = stdmons[j] * Monomial::variable(i);
                if (auto s = index.find(m); s != index.end()) {
                    q.mult_[i][j].assign(d, Rational(0));
                    q.mult_[i][j][s->second] = 1;
                } else {
                    q.mult_[i][j] = normal_form(m);
                }
            }
        return q;
    }

    std::size_t dimension() const { return unit_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const Vector& unit() const { return unit_; }

    /// x_var * v
    Vector multiply(std::size_t var, const Vector& v) const {
        const std::size_t d = dimension();
        Vector out(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (v[j] == 0) continue;
            const Vector& col = mult_[var][j];
            for (std::size_t i = 0; i < d; ++i)
                if (col[i] != 0) out[i] += v[j] * col[i];
        }
        return out;
    }

    /// p * v, with p a polynomial in (a subset of) the algebra's variables.
    Vector multiply(const Polynomial& p, const Vector& v) const {
        const Polynomial q = p.with_vars(vars_);
        Vector out(dimension());
        for (const auto& t : q.terms()) {
            Vector w = v;
            for (std::size_t i = 0; i < vars_.size(); ++i)
                for (Exponent e = 0; e < t.mono[i]; ++e) w = multiply(i, w);
            for (std::size_t k = 0; k < w.size(); ++k) out[k] += t.coeff * w[k];
        }
        return out;
    }

    /// Q[x]/(I : p^inf), the summand of this algebra on which p acts invertibly.
    QuotientAlgebra localize(const Polynomial& p) const {
        const std::size_t d = dimension();
        std::vector<Vector> span;
        for (std::size_t j = 0; j < d; ++j) {
            Vector e(d);
            e[j] = 1;
            span.push_back(std::move(e));
        }
        unsigned steps = 0;
        while (true) {
            detail::Echelon next(d);
            for (const auto& v : span) next.insert(multiply(p, v));
            const bool stable = next.rank() == span.size();
            span = next.rows();
            ++steps;
            if (stable) break;
        }
        const std::size_t r = span.size();
        detail::Echelon basis(d);
        for (const auto& v : span) basis.insert(v);
        const auto coords = [&](Vector v) {
            Vector c = basis.reduce(v);
            if (!detail::is_zero(v)) throw Error("localized subspace is not invariant");
            return c;
        };
        QuotientAlgebra out;
        out.vars_ = vars_;
        out.mult_.assign(vars_.size(), std::vector<Vector>(r));
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t k = 0; k < r; ++k) out.mult_[i][k] = coords(multiply(i, basis.rows()[k]));
        if (r == 0) return out;
        // p^steps annihilates the complementary summand, so the unit e of the summand solves
        // P^steps e = p^steps * 1 with P the restriction of p.
        std::vector<Vector> pcols(r);
        for (std::size_t k = 0; k < r; ++k) pcols[k] = coords(multiply(p, basis.rows()[k]));
        Vector u = unit_;
        for (unsigned s = 0; s < steps; ++s) u = multiply(p, u);
        Vector e = coords(u);
        for (unsigned s = 0; s < steps; ++s) e = detail::solve(pcols, e);
        out.unit_ = std::move(e);
        return out;
    }

    /// The subalgebra generated by the listed variables, which must generate the whole algebra
    /// (as after localizing at a product that makes the dropped variables polynomial in them).
    QuotientAlgebra restrict_to(const std::vector<std::string>& keep) const {
        QuotientAlgebra out;
        out.vars_ = keep;
        out.unit_ = unit_;
        for (const auto& v : keep) out.mult_.push_back(mult_[index_of(v)]);
        if (out.generated_dimension() != dimension())
            throw DegenerateSystemError("listed variables do not generate the quotient algebra");
        return out;
    }

    /// Monic generator of the elimination ideal in `var`, as a polynomial over the algebra's ring.
    Polynomial minimal_polynomial(const std::string& var) const {
        const std::size_t v = index_of(var);
        if (dimension() == 0) return Polynomial::constant(vars_, 1);
        detail::Echelon krylov(dimension(), true);
        Vector cur = unit_;
        while (true) {
            if (auto dep = krylov.express(cur)) {
                std::vector<Rational> c(dep->size() + 1);
                for (std::size_t k = 0; k < dep->size(); ++k) c[k] = -(*dep)[k];
                c.back() = 1;
                return Polynomial::univariate(vars_, var, c);
            }
            krylov.insert(cur);
            cur = multiply(v, cur);
        }
    }

    /// Reduced Groebner basis of the defining ideal for lex with the algebra's variables
    /// ranked as given (first most significant), sorted by increasing leading monomial and
    /// content-normalized over the integers.
    std::vector<Polynomial> lex_basis() const {
        const std::size_t nv = vars_.size();
        if (dimension() == 0) return {Polynomial::constant(vars_, 1)};
        detail::Echelon ech(dimension(), true);
        std::vector<Monomial> staircase;
        std::map<Monomial, Vector> vec;
        std::vector<Monomial> leads;
        std::vector<Polynomial> out;
        std::set<Monomial> candidates{Monomial{}};
        while (!candidates.empty()) {
            const Monomial m = *candidates.begin();
            candidates.erase(candidates.begin());
            bool skip = false;
            for (const auto& l : leads)
                if (l.divides(m)) skip = true;
            if (skip) continue;
            Vector v;
            if (m.is_one()) {
                v = unit_;
            } else {
                for (std::size_t i = 0; i < nv; ++i) {
                    if (m[i] == 0) continue;
                    const auto it = vec.find(m / Monomial::variable(i));
                    if (it == vec.end()) continue;
                    v = multiply(i, it->second);
                    break;
                }
            }
            if (auto dep = ech.express(v)) {
                std::vector<Term> terms{{m, Rational(1)}};
                for (std::size_t k = 0; k < dep->size(); ++k)
                    if ((*dep)[k] != 0) terms.push_back({staircase[k], -(*dep)[k]});
                out.push_back(Polynomial::from_terms(vars_, std::move(terms)).content_normalized());
                leads.push_back(m);
                continue;
            }
            ech.insert(v);
            staircase.push_back(m);
            vec.emplace(m, std::move(v));
            for (std::size_t i = 0; i < nv; ++i) candidates.insert(m * Monomial::variable(i));
        }
        return out;
    }

private:
    std::size_t generated_dimension() const {
        if (dimension() == 0) return 0;
        detail::Echelon span(dimension());
        std::vector<Vector> frontier{unit_};
        span.insert(unit_);
        while (!frontier.empty()) {
            std::vector<Vector> next;
            for (const auto& v : frontier)
                for (std::size_t i = 0; i < vars_.size(); ++i) {
                    Vector w = multiply(i, v);
                    if (span.insert(w)) next.push_back(std::move(w));
                }
            frontier = std::move(next);
        }
        return span.rank();
    }

    std::size_t index_of(const std::string& var) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == var) return i;
        throw DomainError("unknown variable " + var);
    }

    std::vector<std::string> vars_;
    Vector unit_;
    std::vector<std::vector<Vector>> mult_;  // mult_[var][column]
};

}  // namespace stiefel::poly
