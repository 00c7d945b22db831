#pragma once

// Ricci components of a diagonal invariant metric: the general structure-constant
// formula and the closed forms for the three-block Stiefel decompositions.
// Works over any scalar type with field operations (Rational, double, long double,
// or LaurentPoly for symbolic evaluation).

#include "stiefel/laurent.hpp"
#include "stiefel/rational.hpp"
#include "stiefel/so_algebra.hpp"
#include "stiefel/triples.hpp"

#include <map>
#include <optional>
#include <string>

namespace stiefel {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_positive(const Rational& q) { return q > 0; }
};

template <>
struct ScalarTraits<double> {
    static double from_rational(const Rational& q) { return q.get_d(); }
    static bool is_positive(double v) { return v > 0.0; }
};

template <>
struct ScalarTraits<long double> {
    static long double from_rational(const Rational& q) { return to_long_double(q); }
    static bool is_positive(long double v) { return v > 0.0L; }
};

template <>
struct ScalarTraits<LaurentPoly> {
    static LaurentPoly from_rational(const Rational& q) { return LaurentPoly(q); }
    // symbolic coefficients are positive by construction
    static bool is_positive(const LaurentPoly&) { return true; }
};

template <class Scalar>
struct InvariantMetric {
    BlockDecomposition decomp;
    std::map<ModuleLabel, Scalar> coeffs;

    const Scalar& at(const ModuleLabel& l) const {
        auto it = coeffs.find(l);
        if (it == coeffs.end()) throw DomainError("metric has no coefficient for module " + l.name());
        return it->second;
    }

    /// Every module of the decomposition carries exactly one positive coefficient.
    void validate() const {
        const auto d = dims(decomp);
        if (d.size() != coeffs.size()) throw DomainError("metric coefficients do not match the module list");
        for (const auto& [label, x] : coeffs) {
            if (!d.contains(label)) throw DomainError("module " + label.name() + " is not part of the decomposition");
            if (!ScalarTraits<Scalar>::is_positive(x))
                throw DomainError("metric coefficient x" + label.name() + " must be positive");
        }
    }
};

template <class Scalar>
struct RicciComponents {
    std::map<ModuleLabel, Scalar> values;
    std::optional<Scalar> einstein_constant_candidate;
};

namespace detail {

template <class Scalar>
RicciComponents<Scalar> with_mean(std::map<ModuleLabel, Scalar> values) {
    RicciComponents<Scalar> out;
    Scalar sum = ScalarTraits<Scalar>::from_rational(0);
    for (const auto& [l, v] : values) sum = sum + v;
    out.einstein_constant_candidate =
        sum * ScalarTraits<Scalar>::from_rational(make_rational(1, static_cast<long>(values.size())));
    out.values = std::move(values);
    return out;
}

}  // namespace detail

/// r_k = 1/(2x_k) + 1/(4d_k) sum_{i,j} x_k/(x_j x_i) [k;ji] - 1/(2d_k) sum_{i,j} x_j/(x_k x_i) [j;ki],
/// with i and j running over ordered pairs of module labels.
template <class Scalar>
RicciComponents<Scalar> ricci_general(const TripleTable& triples, const InvariantMetric<Scalar>& metric) {
    if (!(triples.decomposition() == metric.decomp))
        throw DomainError("metric and triple table use different decompositions");
    metric.validate();
    using T = ScalarTraits<Scalar>;
    const auto& d = triples.dims();

    std::map<ModuleLabel, Scalar> values;
    for (const auto& [k, dk] : d) {
        const Scalar& xk = metric.at(k);
        Scalar first = T::from_rational(0);
        Scalar second = T::from_rational(0);
        for (const auto& [i, di] : d) {
            const Scalar& xi = metric.at(i);
            for (const auto& [j, dj] : d) {
                const Scalar& xj = metric.at(j);
                // [k;ji] and [j;ki] are the same unordered triple
                const Rational t = triples.at(k, j, i);
                if (t == 0) continue;
                const Scalar ts = T::from_rational(t);
                first = first + ts * xk / (xj * xi);
                second = second + ts * xj / (xk * xi);
            }
        }
        values.emplace(k, T::from_rational(make_rational(1, 2)) / xk + T::from_rational(make_rational(1, 4 * dk)) * first -
                              T::from_rational(make_rational(1, 2 * dk)) * second);
    }
    return detail::with_mean(std::move(values));
}

/// Closed-form components for (k1, k2, k3) with k2 >= 2: the five-module form when k1 >= 2,
/// the four-module form (no so(k1) summand) when k1 = 1.
template <class Scalar>
RicciComponents<Scalar> ricci_specialized(const BlockDecomposition& decomp, const InvariantMetric<Scalar>& metric) {
    if (decomp.block_count() != 3 || decomp.k(2) < 2)
        throw NotImplementedError("closed-form Ricci components need three blocks with k2 >= 2");
    if (!(decomp == metric.decomp)) throw DomainError("metric uses a different decomposition");
    metric.validate();
    using T = ScalarTraits<Scalar>;
    const auto c = [](const Rational& q) { return T::from_rational(q); };
    const long n = decomp.n(), k1 = decomp.k(1), k2 = decomp.k(2), k3 = decomp.k(3);
    const Rational q = make_rational(1, 4 * (n - 2));  // 1/(4(n-2))

    const auto L1 = ModuleLabel::diag(1), L2 = ModuleLabel::diag(2);
    const auto L12 = ModuleLabel::off_diag(1, 2), L13 = ModuleLabel::off_diag(1, 3), L23 = ModuleLabel::off_diag(2, 3);
    const Scalar& x2 = metric.at(L2);
    const Scalar& x12 = metric.at(L12);
    const Scalar& x13 = metric.at(L13);
    const Scalar& x23 = metric.at(L23);
    const Scalar half = c(make_rational(1, 2));

    std::map<ModuleLabel, Scalar> r;
    if (k1 >= 2) {
        const Scalar& x1 = metric.at(L1);
        r.emplace(L1, c(q * (k1 - 2)) / x1 + c(q) * (c(k2) * x1 / (x12 * x12) + c(k3) * x1 / (x13 * x13)));
        r.emplace(L2, c(q * (k2 - 2)) / x2 + c(q) * (c(k1) * x2 / (x12 * x12) + c(k3) * x2 / (x23 * x23)));
        r.emplace(L12, half / x12 + c(q * k3) * (x12 / (x13 * x23) - x13 / (x12 * x23) - x23 / (x12 * x13)) -
                           c(q) * (c(k1 - 1) * x1 / (x12 * x12) + c(k2 - 1) * x2 / (x12 * x12)));
        r.emplace(L13, half / x13 + c(q * k2) * (x13 / (x12 * x23) - x12 / (x13 * x23) - x23 / (x12 * x13)) -
                           c(q) * (c(k1 - 1) * x1 / (x13 * x13)));
    } else {
        r.emplace(L2, c(q * (k2 - 2)) / x2 + c(q) * (x2 / (x12 * x12) + c(k3) * x2 / (x23 * x23)));
        r.emplace(L12, half / x12 + c(q * k3) * (x12 / (x13 * x23) - x13 / (x12 * x23) - x23 / (x12 * x13)) -
                           c(q) * (c(k2 - 1) * x2 / (x12 * x12)));
        r.emplace(L13, half / x13 + c(q * k2) * (x13 / (x12 * x23) - x12 / (x13 * x23) - x23 / (x12 * x13)));
    }
    r.emplace(L23, half / x23 + c(q * k1) * (x23 / (x13 * x12) - x13 / (x12 * x23) - x12 / (x23 * x13)) -
                       c(q) * (c(k2 - 1) * x2 / (x23 * x23)));
    return detail::with_mean(std::move(r));
}

/// max_k |r_k - lambda| / |lambda| with lambda the component mean.
template <class Scalar>
Scalar einstein_residual(const RicciComponents<Scalar>& r) {
    const Scalar lambda = *r.einstein_constant_candidate;
    Scalar worst = ScalarTraits<Scalar>::from_rational(0);
    for (const auto& [l, v] : r.values) {
        Scalar dev = v - lambda;
        if (dev < 0) dev = -dev;
        if (dev > worst) worst = dev;
    }
    Scalar scale = lambda < 0 ? Scalar(-lambda) : lambda;
    return worst / scale;
}

}  // namespace stiefel
