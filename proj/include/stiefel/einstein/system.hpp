#pragma once

// Polynomial form of the Einstein equations r_1 = ... = r_q for three-block
// decompositions, normalized by x23 = 1.

#include "stiefel/errors.hpp"
#include "stiefel/laurent.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/ricci.hpp"
#include "stiefel/so_algebra.hpp"
#include "stiefel/triples.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stiefel {

struct EinsteinSystem {
    BlockDecomposition decomp;
    /// Module whose coefficient is fixed to 1.
    ModuleLabel normalized = ModuleLabel::off_diag(2, 3);
    /// Free modules in variable order (most significant first; x13 last).
    std::vector<ModuleLabel> free{};
    std::vector<std::string> vars{};
    /// Component pairs (a, b) whose difference r_a - r_b produced each polynomial.
    std::vector<std::pair<ModuleLabel, ModuleLabel>> chain{};
    std::vector<poly::Polynomial> polys{};

    poly::Polynomial variable_product() const {
        poly::Polynomial p = poly::Polynomial::constant(vars, 1);
        for (const auto& v : vars) p *= poly::Polynomial::variable(vars, v);
        return p;
    }
};

/// Supported shapes: three blocks with k2 >= 2 (the so(k1) summand is present iff k1 >= 2).
inline void require_supported(const BlockDecomposition& decomp) {
    if (decomp.block_count() != 3 || decomp.k(2) < 2)
        throw NotImplementedError("Einstein systems are implemented for three blocks with k2 >= 2, got " +
                                  decomp.to_string());
}

namespace detail {

/// Numerator of a Laurent polynomial after multiplying by the smallest monomial clearing all
/// negative exponents.
inline poly::Polynomial clear_denominators(const LaurentPoly& p, const std::vector<std::string>& vars) {
    const auto lo = p.min_exponents();
    std::vector<poly::Term> terms;
    for (const auto& [e, c] : p.terms()) {
        poly::Monomial m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const int shift = lo[i] < 0 ? -lo[i] : 0;
            m[i] = static_cast<poly::Exponent>(e[i] + shift);
        }
        terms.push_back({m, c});
    }
    return poly::Polynomial::from_terms(vars, std::move(terms));
}

}  // namespace detail

inline EinsteinSystem build_system(const BlockDecomposition& decomp) {
    require_supported(decomp);
    EinsteinSystem sys{decomp};
    const auto L1 = ModuleLabel::diag(1), L2 = ModuleLabel::diag(2);
    const auto L12 = ModuleLabel::off_diag(1, 2), L13 = ModuleLabel::off_diag(1, 3), L23 = ModuleLabel::off_diag(2, 3);
    const bool has1 = decomp.k(1) >= 2;
    if (has1) sys.free.push_back(L1);
    sys.free.insert(sys.free.end(), {L2, L12, L13});
    for (const auto& l : sys.free) sys.vars.push_back(l.coefficient_name());

    InvariantMetric<LaurentPoly> metric{decomp, {}};
    for (std::size_t i = 0; i < sys.free.size(); ++i) metric.coeffs.emplace(sys.free[i], LaurentPoly::variable(i));
    metric.coeffs.emplace(L23, LaurentPoly(Rational(1)));
    const auto r = ricci_general(triples_closed_form(decomp), metric);

    if (has1) sys.chain.emplace_back(L1, L2);
    sys.chain.emplace_back(L2, L12);
    sys.chain.emplace_back(L12, L23);
    sys.chain.emplace_back(L13, L23);
    for (const auto& [a, b] : sys.chain) {
        const LaurentPoly diff = r.values.at(a) - r.values.at(b);
        sys.polys.push_back(detail::clear_denominators(diff, sys.vars).content_normalized());
    }
    return sys;
}

}  // namespace stiefel
