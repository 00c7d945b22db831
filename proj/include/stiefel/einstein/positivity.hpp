#pragma once

// Sign and root-location checks for the (1,3,n-4) family, assembled from the
// fixture coefficient formulas at each n.

#include "stiefel/einstein/fixtures.hpp"
#include "stiefel/errors.hpp"
#include "stiefel/poly/univariate.hpp"
#include "stiefel/rational.hpp"

#include <optional>
#include <vector>

namespace stiefel {

struct PositivityRow {
    long n = 0;
    poly::UPoly h1, h2, h3;
    Rational h1_at_0, h1_at_1, h1_at_2;
    bool h2_alternating = false;
    bool h3_alternating = false;
    /// Isolating intervals of the roots of h1 in (0,1) and (1,2), when exactly one lies there.
    std::optional<poly::IsolatingInterval> alpha13, beta13;
    /// Positive roots of h1 outside the two brackets.
    int extra_positive_roots = 0;

    bool signs_ok() const { return sign(h1_at_0) > 0 && sign(h1_at_1) < 0 && sign(h1_at_2) > 0; }
};

inline PositivityRow positivity_row(const fixtures::Family& family, long n) {
    if (n < family.min_n) throw DomainError("the (1,3,n-4) family needs n >= " + std::to_string(family.min_n));
    PositivityRow r;
    r.n = n;
    r.h1 = family.polynomial("h1").at(n);
    r.h2 = family.polynomial("h2").at(n);
    r.h3 = family.polynomial("h3").at(n);
    r.h1_at_0 = r.h1.eval(Rational(0));
    r.h1_at_1 = r.h1.eval(Rational(1));
    r.h1_at_2 = r.h1.eval(Rational(2));
    r.h2_alternating = poly::alternating_sign_check(r.h2);
    r.h3_alternating = poly::alternating_sign_check(r.h3);
    const auto lo = poly::sturm_isolate(r.h1, Rational(0), Rational(1));
    const auto hi = poly::sturm_isolate(r.h1, Rational(1), Rational(2));
    if (lo.size() == 1) r.alpha13 = lo.front();
    if (hi.size() == 1) r.beta13 = hi.front();
    const auto all = poly::isolate_positive(r.h1);
    r.extra_positive_roots = static_cast<int>(all.size() - lo.size() - hi.size());
    return r;
}

inline std::vector<PositivityRow> positivity_report(const fixtures::Family& family, long n_lo, long n_hi) {
    if (n_lo > n_hi) throw DomainError("empty n range");
    std::vector<PositivityRow> out;
    for (long n = n_lo; n <= n_hi; ++n) out.push_back(positivity_row(family, n));
    return out;
}

}  // namespace stiefel
