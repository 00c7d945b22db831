#pragma once

// Solving the Einstein system: elimination to x13, the x13 = 1 (Jensen) branch
// and the branch of the cofactor h(x13), back-substitution, Newton polishing
// in long double, and certification against the general Ricci formula.

#include "stiefel/einstein/system.hpp"
#include "stiefel/errors.hpp"
#include "stiefel/poly/elimination.hpp"
#include "stiefel/poly/univariate.hpp"
#include "stiefel/ricci.hpp"
#include "stiefel/triples.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <future>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stiefel {

enum class Strategy { Groebner, Resultant, Auto };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Groebner: return "groebner";
        case Strategy::Resultant: return "resultant";
        case Strategy::Auto: return "auto";
    }
    return "auto";
}

inline Strategy parse_strategy(const std::string& s) {
    if (s == "groebner") return Strategy::Groebner;
    if (s == "resultant") return Strategy::Resultant;
    if (s == "auto") return Strategy::Auto;
    throw DomainError("unknown elimination strategy '" + s + "'");
}

enum class Classification { Jensen, New };

inline std::string to_string(Classification c) { return c == Classification::Jensen ? "jensen" : "new"; }

/// Isolating data for one algebraic coordinate.
struct RootInterval {
    std::string var;
    Rational lo;
    Rational hi;
};

struct EinsteinSolution {
    BlockDecomposition decomp;
    /// Every module coefficient, x23 = 1 included.
    std::map<ModuleLabel, long double> coords{};
    long double lambda = 0;
    long double residual = 0;
    /// "jensen" for the x13 = 1 branch, "h" for roots of the cofactor.
    std::string branch{};
    Classification classification = Classification::New;
    std::vector<RootInterval> intervals{};
    std::optional<std::string> exact{};

    long double at(const ModuleLabel& l) const { return coords.at(l); }
};

struct SolveOptions {
    Strategy strategy = Strategy::Auto;
    poly::GroebnerOptions groebner;
    long double tolerance = 1e-10L;
    long double jensen_tolerance = 1e-8L;
    long double dedup_tolerance = 1e-8L;
};

struct Certification {
    bool accepted = false;
    std::string reason;
    EinsteinSolution solution;
};

struct SolveReport {
    EinsteinSystem system;
    Strategy strategy_used = Strategy::Groebner;
    /// Eliminant in x13 (content-normalized); may carry extraneous factors under resultants.
    poly::UPoly eliminant{};
    /// Multiplicity of the factor x13 - 1 in the eliminant.
    int jensen_multiplicity = 0;
    /// Eliminant with every factor x13 - 1 removed.
    poly::UPoly cofactor{};
    /// Eliminant in x2 of the system restricted to x13 = 1 (squarefree part).
    poly::UPoly jensen_eliminant{};
    std::vector<EinsteinSolution> solutions{};
    /// Candidates that failed positivity or certification.
    std::vector<std::string> rejected{};
};

/// Roots t of (n-1) t^2 - 2(n-2) t + (k1 + k2 - 2) = 0, smaller first: the common value of the
/// non-unit coefficients of a Jensen metric (x13 = x23 = 1).
inline std::pair<long double, long double> jensen_values(const BlockDecomposition& d) {
    require_supported(d);
    const long double n = d.n(), c = d.k(1) + d.k(2) - 2;
    const long double disc = (n - 2) * (n - 2) - (n - 1) * c;
    const long double s = std::sqrt(disc);
    return {(n - 2 - s) / (n - 1), (n - 2 + s) / (n - 1)};
}

inline Classification classify(const BlockDecomposition& d, const std::map<ModuleLabel, long double>& coords,
                               long double tol) {
    const auto x13 = coords.at(ModuleLabel::off_diag(1, 3));
    if (std::fabs(x13 - 1) > tol) return Classification::New;
    const auto [lo, hi] = jensen_values(d);
    for (long double t : {lo, hi}) {
        bool all = true;
        for (const auto& [l, v] : coords) {
            if (l == ModuleLabel::off_diag(1, 3) || l == ModuleLabel::off_diag(2, 3)) continue;
            if (std::fabs(v - t) > tol) all = false;
        }
        if (all) return Classification::Jensen;
    }
    return Classification::New;
}

/// Checks positivity and the Einstein property at `coords` (x23 defaults to 1).
inline Certification certify(const BlockDecomposition& decomp, std::map<ModuleLabel, long double> coords,
                             long double tol = 1e-10L, long double jensen_tol = 1e-8L) {
    require_supported(decomp);
    Certification out{false, {}, EinsteinSolution{decomp}};
    coords.try_emplace(ModuleLabel::off_diag(2, 3), 1.0L);
    out.solution.coords = coords;
    for (const auto& [l, d] : dims(decomp)) {
        auto it = coords.find(l);
        if (it == coords.end()) {
            out.reason = "missing coordinate " + l.coefficient_name();
            return out;
        }
        if (!(it->second > 0)) {
            out.reason = "nonpositive coordinate " + l.coefficient_name();
            return out;
        }
    }
    if (coords.size() != dims(decomp).size()) {
        out.reason = "coordinates name modules outside the decomposition";
        return out;
    }
    InvariantMetric<long double> metric{decomp, coords};
    const auto r = ricci_general(triples_closed_form(decomp), metric);
    out.solution.lambda = *r.einstein_constant_candidate;
    out.solution.residual = einstein_residual(r);
    out.solution.classification = classify(decomp, coords, jensen_tol);
    if (!(out.solution.residual <= tol)) {
        out.reason = "Einstein residual " + std::to_string(static_cast<double>(out.solution.residual)) +
                     " exceeds tolerance";
        return out;
    }
    out.accepted = true;
    return out;
}

namespace detail {

using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// Gauss-Newton iteration on f(x) = 0 (square or overdetermined), in long double.
inline std::optional<std::vector<long double>> newton(const std::vector<poly::Polynomial>& f, std::vector<long double> x,
                                                      int max_iter = 80) {
    const std::size_t m = f.size(), nv = x.size();
    std::vector<std::vector<poly::Polynomial>> jac(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < nv; ++j) jac[i].push_back(f[i].derivative(j));
    for (int it = 0; it < max_iter; ++it) {
        const std::span<const long double> pt(x);
        LVec fx(static_cast<Eigen::Index>(m));
        LMat jx(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nv));
        for (std::size_t i = 0; i < m; ++i) {
            fx(static_cast<Eigen::Index>(i)) = f[i].eval_as<long double>(pt);
            for (std::size_t j = 0; j < nv; ++j)
                jx(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jac[i][j].eval_as<long double>(pt);
        }
        const LVec step = jx.colPivHouseholderQr().solve(fx);
        long double size = 0, scale = 1;
        for (std::size_t j = 0; j < nv; ++j) {
            x[j] -= step(static_cast<Eigen::Index>(j));
            size = std::max(size, std::fabs(step(static_cast<Eigen::Index>(j))));
            scale = std::max(scale, std::fabs(x[j]));
        }
        if (!std::isfinite(size) || scale > 1e12L) return std::nullopt;
        if (size <= 1e-18L * scale) return x;
    }
    return x;
}

/// Sixteen starting points spread log-uniformly over [1/16, 4] per coordinate (rank-1 lattice).
inline std::vector<std::vector<long double>> start_grid(std::size_t nv) {
    static constexpr int kGen[] = {1, 5, 13, 7, 11, 3, 9, 15};
    std::vector<std::vector<long double>> out;
    for (int k = 0; k < 16; ++k) {
        std::vector<long double> p;
        for (std::size_t j = 0; j < nv; ++j) {
            const long double u = (((k * kGen[j % 8]) % 16) + 0.5L) / 16;
            p.push_back(std::exp2(-4 + 6 * u));
        }
        out.push_back(std::move(p));
    }
    return out;
}

struct Candidate {
    std::vector<long double> x;  // in system variable order
    std::vector<RootInterval> intervals;
    std::string branch;
    std::optional<std::string> exact;
};

inline std::string sqrt_form(const poly::UPoly& q, bool plus) {
    // a t^2 + b t + c with integer coefficients
    const Integer a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    Integer disc = b * b - 4 * a * c;
    Integer s = 1, rest = disc;
    for (Integer p = 2; p * p <= rest; ++p)
        while (rest % (p * p) == 0) {
            rest /= p * p;
            s *= p;
        }
    Integer num = -b, den = 2 * a, g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), s.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    if (g == 0) g = 1;
    num /= g;
    s /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
        plus = !plus;
    }
    if (rest == 1) {
        Rational v(num + (plus ? s : Integer(-s)), den);
        v.canonicalize();
        return v.get_str();
    }
    std::string root = "sqrt(" + rest.get_str() + ")";
    if (s != 1) root = s.get_str() + "*" + root;
    std::string body = (num == 0 ? (plus ? "" : "-") : num.get_str() + (plus ? " + " : " - ")) + root;
    return den == 1 ? body : "(" + body + ")/" + den.get_str();
}

/// Value of each variable from lex-basis elements c(t) v + w(t) at the rational point t0, where
/// t is the last variable. Nullopt when some variable has no such element.
inline std::optional<std::vector<long double>> shape_values(const std::vector<poly::Polynomial>& lex,
                                                           const std::vector<std::string>& vars,
                                                           const Rational& t0) {
    const std::size_t nv = vars.size(), t = nv - 1;
    std::vector<long double> out(nv);
    out[t] = to_long_double(t0);
    for (std::size_t v = 0; v < t; ++v) {
        bool found = false;
        for (const auto& g : lex) {
            const auto gv = g.with_vars(vars);
            if (gv.degree_in(v) != 1) continue;
            bool only = true;
            for (std::size_t i = 0; i < t; ++i)
                if (i != v && gv.involves(i)) only = false;
            if (!only) continue;
            const Rational c = gv.coefficient(v, 1).substitute(t, t0).constant_term();
            if (c == 0) continue;
            const Rational w = gv.coefficient(v, 0).substitute(t, t0).constant_term();
            out[v] = to_long_double(-w / c);
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    return out;
}

/// Points of `polys` (variables `vars`, last one fixed at t0) reached by Newton from the grid.
inline std::vector<std::vector<long double>> grid_solutions(const std::vector<poly::Polynomial>& polys,
                                                           const std::vector<std::string>& vars,
                                                           const Rational& t0) {
    const std::size_t t = vars.size() - 1;
    std::vector<std::string> rest(vars.begin(), vars.end() - 1);
    std::vector<poly::Polynomial> sub;
    for (const auto& p : polys) {
        auto r = p.with_vars(vars).substitute(t, t0).with_vars(rest);
        if (!r.is_zero()) sub.push_back(std::move(r));
    }
    std::vector<std::vector<long double>> out;
    for (const auto& start : start_grid(rest.size())) {
        auto x = newton(sub, start);
        if (!x) continue;
        bool ok = true;
        long double res = 0;
        for (const auto& p : sub) res = std::max(res, std::fabs(p.eval_as<long double>(std::span<const long double>(*x))));
        for (long double v : *x) ok = ok && v > 0 && std::isfinite(v);
        if (!ok || res > 1e-9L) continue;
        x->push_back(to_long_double(t0));
        out.push_back(std::move(*x));
    }
    return out;
}

/// Isolating interval narrowed below 2^-80.
inline poly::IsolatingInterval refined(const poly::IsolatingInterval& iv) {
    return poly::refine(iv, Rational(1, Integer(1) << 80));
}

inline poly::UPoly divide_out_linear(poly::UPoly p, const Integer& root, int& count) {
    const poly::UPoly lin(std::vector<Integer>{-root, Integer(1)});
    count = 0;
    while (p.degree() >= 1 && poly::divides(lin, p)) {
        p = poly::exact_quotient(p, lin);
        ++count;
    }
    return p;
}

}  // namespace detail

namespace detail {

/// Jensen branch: the system with x13 = 1 substituted, in the remaining variables (x2 last).
struct JensenBranch {
    std::vector<std::string> vars;
    std::vector<poly::Polynomial> polys;
};

inline JensenBranch jensen_branch(const EinsteinSystem& sys) {
    JensenBranch b;
    const std::size_t t = sys.vars.size() - 1;  // x13
    // move x2 to the end so that the branch eliminates to x2
    for (std::size_t i = 0; i < t; ++i)
        if (sys.vars[i] != "x2") b.vars.push_back(sys.vars[i]);
    b.vars.push_back("x2");
    for (const auto& p : sys.polys) {
        auto r = p.substitute(t, Rational(1)).with_vars(b.vars);
        if (!r.is_zero()) b.polys.push_back(r.content_normalized());
    }
    return b;
}

inline poly::Polynomial product_of(const std::vector<std::string>& vars) {
    auto p = poly::Polynomial::constant(vars, 1);
    for (const auto& v : vars) p *= poly::Polynomial::variable(vars, v);
    return p;
}

/// Reorders a point given in `from` variable order into `to` order.
inline std::vector<long double> reorder(const std::vector<long double>& x, const std::vector<std::string>& from,
                                        const std::vector<std::string>& to) {
    std::vector<long double> out(to.size());
    for (std::size_t i = 0; i < to.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j)
            if (from[j] == to[i]) out[i] = x[j];
    return out;
}

inline void solve_groebner(const EinsteinSystem& sys, const SolveOptions& opt, SolveReport& rep,
                           std::vector<Candidate>& cands) {
    const std::size_t t = sys.vars.size() - 1;
    const auto algebra = poly::saturated_quotient(sys.polys, sys.vars, sys.variable_product(), opt.groebner);
    rep.eliminant = poly::UPoly::from_polynomial(poly::eliminant(algebra, "x13"), t).normalized();
    rep.cofactor = divide_out_linear(rep.eliminant, 1, rep.jensen_multiplicity).normalized();

    // h-branch: localize away from x13 = 1, where the lex basis is usually in shape position
    const auto one = poly::Polynomial::constant(sys.vars, 1);
    const auto local = rep.jensen_multiplicity > 0
                           ? algebra.localize(poly::Polynomial::variable(sys.vars, "x13") - one)
                           : algebra;
    const auto lex = local.lex_basis();
    if (rep.cofactor.degree() >= 1) {
        for (const auto& coarse : poly::isolate_positive(rep.cofactor)) {
            const auto iv = refined(coarse);
            const Rational t0 = iv.midpoint();
            const RootInterval ri{"x13", iv.lo, iv.hi};
            if (auto x = shape_values(lex, sys.vars, t0)) {
                cands.push_back({*x, {ri}, "h", std::nullopt});
            } else {
                for (auto& x : grid_solutions(sys.polys, sys.vars, t0)) cands.push_back({x, {ri}, "h", std::nullopt});
            }
        }
    }

    if (rep.jensen_multiplicity == 0) return;
    const auto jb = jensen_branch(sys);
    const auto ja = poly::saturated_quotient(jb.polys, jb.vars, product_of(jb.vars), opt.groebner);
    const std::size_t last = jb.vars.size() - 1;
    rep.jensen_eliminant = poly::squarefree_part(poly::UPoly::from_polynomial(poly::eliminant(ja, "x2"), last)).normalized();
    const auto jlex = ja.lex_basis();
    auto roots = poly::isolate_positive(rep.jensen_eliminant);
    for (auto& r : roots) r = refined(r);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const Rational t0 = roots[k].midpoint();
        std::optional<std::string> exact;
        if (rep.jensen_eliminant.degree() == 2 && roots.size() == 2) exact = sqrt_form(rep.jensen_eliminant, k == 1);
        std::vector<std::vector<long double>> pts;
        if (auto x = shape_values(jlex, jb.vars, t0))
            pts.push_back(*x);
        else
            pts = grid_solutions(jb.polys, jb.vars, t0);
        for (auto& x : pts) {
            auto full = reorder(x, jb.vars, std::vector<std::string>(sys.vars.begin(), sys.vars.end() - 1));
            full.push_back(1.0L);
            cands.push_back({full, {RootInterval{"x2", roots[k].lo, roots[k].hi}}, "jensen", exact});
        }
    }
}

inline void solve_resultant(const EinsteinSystem& sys, const SolveOptions&, SolveReport& rep,
                            std::vector<Candidate>& cands) {
    const std::size_t t = sys.vars.size() - 1;
    rep.eliminant = poly::UPoly::from_polynomial(poly::eliminate_resultant(sys.polys, "x13"), t).normalized();
    rep.cofactor = divide_out_linear(poly::squarefree_part(rep.eliminant), 1, rep.jensen_multiplicity).normalized();
    if (rep.jensen_multiplicity == 0) {
        int dummy = 0;
        divide_out_linear(rep.eliminant, 1, dummy);
        rep.jensen_multiplicity = dummy;
    }
    if (rep.cofactor.degree() >= 1)
        for (const auto& coarse : poly::isolate_positive(rep.cofactor)) {
            const auto iv = refined(coarse);
            const Rational t0 = iv.midpoint();
            for (auto& x : grid_solutions(sys.polys, sys.vars, t0))
                cands.push_back({x, {RootInterval{"x13", iv.lo, iv.hi}}, "h", std::nullopt});
        }
    if (rep.jensen_multiplicity == 0) return;
    const auto jb = jensen_branch(sys);
    const std::size_t last = jb.vars.size() - 1;
    rep.jensen_eliminant =
        poly::squarefree_part(poly::UPoly::from_polynomial(poly::eliminate_resultant(jb.polys, "x2"), last)).normalized();
    auto roots = poly::isolate_positive(rep.jensen_eliminant);
    for (auto& r : roots) r = refined(r);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const Rational t0 = roots[k].midpoint();
        std::optional<std::string> exact;
        if (rep.jensen_eliminant.degree() == 2 && roots.size() == 2) exact = sqrt_form(rep.jensen_eliminant, k == 1);
        for (auto& x : grid_solutions(jb.polys, jb.vars, t0)) {
            auto full = reorder(x, jb.vars, std::vector<std::string>(sys.vars.begin(), sys.vars.end() - 1));
            full.push_back(1.0L);
            cands.push_back({full, {RootInterval{"x2", roots[k].lo, roots[k].hi}}, "jensen", exact});
        }
    }
}

}  // namespace detail

/// Eliminant in `var` of the solutions with x13 != 1 and every coordinate nonzero (Groebner
/// path only), content-normalized.
inline poly::UPoly branch_eliminant(const EinsteinSystem& sys, const std::string& var,
                                    const poly::GroebnerOptions& options = {}) {
    const auto algebra = poly::saturated_quotient(sys.polys, sys.vars, sys.variable_product(), options);
    const auto one = poly::Polynomial::constant(sys.vars, 1);
    const auto local = algebra.localize(poly::Polynomial::variable(sys.vars, "x13") - one);
    const auto idx = sys.vars.size();
    std::size_t v = idx;
    for (std::size_t i = 0; i < sys.vars.size(); ++i)
        if (sys.vars[i] == var) v = i;
    if (v == idx) throw DomainError("system has no variable " + var);
    return poly::UPoly::from_polynomial(poly::eliminant(local, var), v).normalized();
}

inline SolveReport solve(const EinsteinSystem& sys, const SolveOptions& opt = {}) {
    SolveReport rep{sys};
    std::vector<detail::Candidate> cands;
    if (opt.strategy == Strategy::Resultant) {
        rep.strategy_used = Strategy::Resultant;
        detail::solve_resultant(sys, opt, rep, cands);
    } else {
        try {
            rep.strategy_used = Strategy::Groebner;
            detail::solve_groebner(sys, opt, rep, cands);
        } catch (const EliminationOverflow&) {
            if (opt.strategy == Strategy::Groebner) throw;
            cands.clear();
            rep = SolveReport{sys};
            rep.strategy_used = Strategy::Resultant;
            detail::solve_resultant(sys, opt, rep, cands);
        }
    }

    for (auto& c : cands) {
        auto x = detail::newton(sys.polys, c.x);
        if (!x) {
            rep.rejected.push_back(c.branch + ": Newton polishing diverged");
            continue;
        }
        std::map<ModuleLabel, long double> coords;
        for (std::size_t i = 0; i < sys.free.size(); ++i) coords.emplace(sys.free[i], (*x)[i]);
        auto cert = certify(sys.decomp, coords, opt.tolerance, opt.jensen_tolerance);
        if (!cert.accepted) {
            rep.rejected.push_back(c.branch + ": " + cert.reason);
            continue;
        }
        cert.solution.branch = c.branch;
        cert.solution.intervals = c.intervals;
        cert.solution.exact = c.exact;
        bool dup = false;
        for (const auto& s : rep.solutions) {
            long double diff = 0;
            for (const auto& [l, v] : s.coords) diff = std::max(diff, std::fabs(v - cert.solution.coords.at(l)));
            if (diff <= opt.dedup_tolerance) dup = true;
        }
        if (!dup) rep.solutions.push_back(std::move(cert.solution));
    }
    const auto key = [&](const EinsteinSolution& s) {
        std::vector<long double> k{s.at(ModuleLabel::off_diag(1, 3))};
        for (const auto& l : sys.free) k.push_back(s.at(l));
        return k;
    };
    std::sort(rep.solutions.begin(), rep.solutions.end(),
              [&](const EinsteinSolution& a, const EinsteinSolution& b) { return key(a) < key(b); });
    return rep;
}

/// Solves the (k1, k2, n - k1 - k2) systems for every n in [n_lo, n_hi], one task per n;
/// results are ordered by n.
inline std::vector<SolveReport> sweep(int k1, int k2, long n_lo, long n_hi, const SolveOptions& opt = {}) {
    if (n_lo > n_hi) throw DomainError("empty n range");
    if (n_lo - k1 - k2 < 1) throw DomainError("n too small for the requested blocks");
    std::vector<std::future<SolveReport>> jobs;
    for (long n = n_lo; n <= n_hi; ++n) {
        const BlockDecomposition d({k1, k2, static_cast<int>(n - k1 - k2)});
        jobs.push_back(std::async(std::launch::async, [d, opt] { return solve(build_system(d), opt); }));
    }
    std::vector<SolveReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace stiefel
