// Acceptance suite: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; "--criterion N" runs one. The exit status is nonzero when any
// selected criterion fails.

#include "stiefel/einstein/fixtures.hpp"
#include "stiefel/einstein/positivity.hpp"
#include "stiefel/einstein/solver.hpp"
#include "stiefel/einstein/system.hpp"
#include "stiefel/poly/univariate.hpp"
#include "stiefel/ricci.hpp"
#include "stiefel/so_algebra.hpp"
#include "stiefel/triples.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace stiefel;

namespace {

// Pinned limits.
constexpr double kTriplesSeconds = 10;
constexpr double kJensenSeconds = 1;
constexpr double kCase2Seconds = 5 * 60;
constexpr double kCase1Seconds = 30 * 60;
constexpr long double kJensenResidual = 1e-12L;
constexpr long double kTableTolerance = 1e-5L;
constexpr long double kCertifyTolerance = 1e-10L;

const auto D1 = ModuleLabel::diag(1);
const auto D2 = ModuleLabel::diag(2);
const auto O12 = ModuleLabel::off_diag(1, 2);
const auto O13 = ModuleLabel::off_diag(1, 3);
const auto O23 = ModuleLabel::off_diag(2, 3);

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (!detail.empty()) detail += "; ";
        detail += why;
        pass = false;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(long double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_time(Outcome& o, double elapsed, double limit) {
    if (elapsed > limit) o.fail("took " + fmt(elapsed) + " s, limit " + fmt(limit) + " s");
}

fixtures::Family family() { return fixtures::load_family(STIEFEL_DATA_DIR); }

Outcome triple_oracle() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int shapes = 0;
    for (int k1 = 1; k1 <= 4; ++k1)
        for (int k2 = k1; k2 <= 4; ++k2)
            for (int k3 = 1; k3 <= 4; ++k3) {
                if (k1 + k2 + k3 < 4 || k1 + k2 + k3 > 12) continue;
                const BlockDecomposition d({k1, k2, k3});
                ++shapes;
                if (!(triples_bruteforce(d) == triples_closed_form(d))) o.fail("mismatch at " + d.to_string());
            }
    const double dt = seconds_since(t0);
    check_time(o, dt, kTriplesSeconds);
    o.note(std::to_string(shapes) + " shapes, " + fmt(dt, 3) + " s");
    return o;
}

long double jensen_residual(const BlockDecomposition& d, long double t) {
    InvariantMetric<long double> m{d, {}};
    for (const auto& [l, dim] : dims(d)) m.coeffs[l] = (l == O13 || l == O23) ? 1.0L : t;
    return einstein_residual(ricci_general(triples_closed_form(d), m));
}

Outcome jensen_certification() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    long double worst = 0;
    for (int n = 6; n <= 20; ++n) {
        const long double N = n, s = std::sqrt(N * N - 6 * N + 6);
        for (long double t : {(N - 2 - s) / (N - 1), (N - 2 + s) / (N - 1)}) {
            const long double r = jensen_residual(BlockDecomposition({1, 3, n - 4}), t);
            worst = std::max(worst, r);
            if (!(r < kJensenResidual)) o.fail("n = " + std::to_string(n) + " residual " + fmt(r));
        }
    }
    for (const auto& k : std::vector<std::vector<int>>{{1, 4, 2}, {2, 3, 2}})
        for (long double t : {(5 - std::sqrt(7.0L)) / 6, (5 + std::sqrt(7.0L)) / 6}) {
            const long double r = jensen_residual(BlockDecomposition(k), t);
            worst = std::max(worst, r);
            if (!(r < kJensenResidual)) o.fail(BlockDecomposition(k).to_string() + " residual " + fmt(r));
        }
    const double dt = seconds_since(t0);
    check_time(o, dt, kJensenSeconds);
    o.note("worst residual " + fmt(worst, 3) + ", " + fmt(dt, 3) + " s");
    return o;
}

Outcome exact_eliminant(const std::vector<int>& blocks, double limit, bool require_equal) {
    Outcome o;
    const auto fx = fixtures::find_case(fixtures::load_eliminants(STIEFEL_DATA_DIR), blocks);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = solve(build_system(BlockDecomposition(blocks)));
    const double dt = seconds_since(t0);
    const auto h = fx.coefficients;
    const poly::UPoly target = poly::UPoly::from_ints({-1, 1}) * h;
    if (require_equal) {
        if (!(rep.eliminant == target.normalized())) o.fail("eliminant differs from (x13 - 1) h up to scalar");
        if (!(rep.cofactor.coeffs() == h.coeffs())) o.fail("content-normalized cofactor coefficients differ");
    } else if (!poly::divides(target, rep.eliminant)) {
        o.fail("eliminant not divisible by (x13 - 1) h");
    }
    check_time(o, dt, limit);
    o.note("degree " + std::to_string(rep.eliminant.degree()) + ", leading " + rep.cofactor.lc().get_str() + ", " +
           to_string(rep.strategy_used) + ", " + fmt(dt, 3) + " s");
    return o;
}

void expect_point(Outcome& o, const SolveReport& rep, const std::map<ModuleLabel, long double>& target,
                  const std::string& name) {
    for (const auto& s : rep.solutions) {
        bool all = true;
        for (const auto& [l, v] : target) all = all && std::fabs(s.at(l) - v) <= kTableTolerance;
        if (all) return;
    }
    o.fail("no solution near " + name);
}

Outcome new_metrics() {
    Outcome o;
    const auto c2 = solve(build_system(BlockDecomposition({1, 4, 2})));
    expect_point(o, c2, {{O13, 0.253386L}, {O12, 1.01652L}, {D2, 0.245146L}}, "(0.253386, 1.01652, 0.245146)");
    expect_point(o, c2, {{O13, 1.16137L}, {O12, 0.669071L}, {D2, 0.291175L}}, "(1.16137, 0.669071, 0.291175)");
    const auto c1 = solve(build_system(BlockDecomposition({2, 3, 2})));
    expect_point(o, c1, {{O13, 1.13934L}, {O12, 0.620201L}, {D1, 0.831771L}, {D2, 0.149407L}},
                 "(1.13934, 0.620201, 0.831771, 0.149407)");
    expect_point(o, c1, {{O13, 0.350124L}, {O12, 1.03223L}, {D1, 0.455639L}, {D2, 0.121264L}},
                 "(0.350124, 1.03223, 0.455639, 0.121264)");
    o.note(std::to_string(c2.solutions.size()) + " solutions for 1,4,2 and " + std::to_string(c1.solutions.size()) +
           " for 2,3,2");
    return o;
}

/// Sorted h-branch solutions per n for the (1,3,n-4) family.
std::map<long, std::vector<EinsteinSolution>> family_sweep(long lo, long hi, std::map<long, SolveReport>* reports = nullptr) {
    std::map<long, std::vector<EinsteinSolution>> out;
    for (auto& rep : sweep(1, 3, lo, hi)) {
        const long n = rep.system.decomp.n();
        for (const auto& s : rep.solutions)
            if (s.branch == "h") out[n].push_back(s);
        if (reports) reports->emplace(n, std::move(rep));
    }
    return out;
}

Outcome family_sweep_check() {
    Outcome o;
    std::map<long, SolveReport> reps;
    const auto h = family_sweep(6, 30, &reps);
    const auto fam = family();
    for (long n = 6; n <= 30; ++n) {
        const auto& rep = reps.at(n);
        const std::string at = " at n = " + std::to_string(n);
        int jensen = 0;
        for (const auto& s : rep.solutions) {
            const bool unit = s.branch == "jensen";
            if (unit != (s.classification == Classification::Jensen)) o.fail("branch/classification mismatch" + at);
            jensen += unit;
            if (!certify(rep.system.decomp, s.coords, kCertifyTolerance).accepted) o.fail("uncertified solution" + at);
        }
        if (jensen != 2) o.fail(std::to_string(jensen) + " Jensen solutions" + at);
        const auto it = h.find(n);
        const std::size_t count = it == h.end() ? 0 : it->second.size();
        if (count != 2) {
            o.fail(std::to_string(count) + " h-branch solutions" + at);
        } else {
            const long double a = it->second[0].at(O13), b = it->second[1].at(O13);
            if (!(0 < a && a < 1 && 1 < b && b < 2)) o.fail("x13 roots " + fmt(a) + ", " + fmt(b) + at);
        }
        const auto row = positivity_row(fam, n);
        if (!row.signs_ok()) o.fail("sign pattern of h1 at 0, 1, 2" + at);
        if (!(rep.cofactor == row.h1.normalized())) o.fail("computed cofactor differs from h1" + at);
    }
    o.note("n = 6..30");
    return o;
}

struct Bound {
    std::string name;
    ModuleLabel label;
    int which;  // 0 = alpha (smaller x13), 1 = beta
    long n_min;
    std::function<long double(long double)> lower, upper;
    std::string lower_text, upper_text;
};

Outcome asymptotic_brackets() {
    Outcome o;
    const std::vector<Bound> bounds{
        {"alpha13", O13, 0, 9, [](long double n) { return 1 - 2 / n - 6 / (n * n); },
         [](long double n) { return 1 - 2 / n - 7 / (2 * n * n); }, "1-2/n-6/n^2", "1-2/n-7/(2n^2)"},
        {"beta13", O13, 1, 9, [](long double n) { return 1 + 50 / (63 * n * n); },
         [](long double n) { return 1 + 3 / (n * n); }, "1+50/(63n^2)", "1+3/n^2"},
        {"alpha12", O12, 0, 7, [](long double n) { return 2 - 2 / n - 6 / (n * n); },
         [](long double n) { return 2 - 4 / n - 31 / (4 * n * n); }, "2-2/n-6/n^2", "2-4/n-31/(4n^2)"},
        {"beta12", O12, 1, 7, [](long double n) { return 5 / (3 * n) + 815 / (162 * n * n); },
         [](long double n) { return 5 / (3 * n) + 10 / (n * n); }, "5/(3n)+815/(162n^2)", "5/(3n)+10/n^2"},
        {"alpha2", D2, 0, 16, [](long double n) { return 1 / (2 * n) + 13 / (8 * n * n); },
         [](long double n) { return 1 / (2 * n) + 11 / (5 * n * n); }, "1/(2n)+13/(8n^2)", "1/(2n)+11/(5n^2)"},
        {"beta2", D2, 1, 16, [](long double n) { return 5 / (9 * n) + 23 / (20 * n * n); },
         [](long double n) { return 5 / (9 * n) + 10 / (n * n); }, "5/(9n)+23/(20n^2)", "5/(9n)+10/n^2"},
    };
    const auto h = family_sweep(7, 30);
    for (const auto& b : bounds) {
        std::vector<long> low_fail, high_fail;
        for (long n = b.n_min; n <= 30; ++n) {
            const auto it = h.find(n);
            if (it == h.end() || it->second.size() != 2) {
                o.fail(b.name + ": missing h-branch solutions at n = " + std::to_string(n));
                continue;
            }
            const long double v = it->second[static_cast<std::size_t>(b.which)].at(b.label);
            const long double N = n;
            if (!(b.lower(N) < v)) low_fail.push_back(n);
            if (!(v < b.upper(N))) high_fail.push_back(n);
        }
        const auto range = [](const std::vector<long>& v) {
            return v.size() == 1 ? std::to_string(v.front())
                                 : std::to_string(v.front()) + ".." + std::to_string(v.back());
        };
        if (!low_fail.empty()) {
            std::string why = b.name + " > " + b.lower_text + " fails for n = " + range(low_fail);
            const long double N = static_cast<long double>(low_fail.front());
            if (b.lower(N) >= b.upper(N)) why += " (lower bound exceeds upper bound " + b.upper_text + ")";
            o.fail(why);
        }
        if (!high_fail.empty()) o.fail(b.name + " < " + b.upper_text + " fails for n = " + range(high_fail));
        if (low_fail.empty() && high_fail.empty())
            o.note(b.name + " ok for n = " + std::to_string(b.n_min) + "..30");
    }
    return o;
}

Outcome alternating_certificates() {
    Outcome o;
    const auto fam = family();
    for (long n = 6; n <= 50; ++n) {
        if (!poly::alternating_sign_check(fam.polynomial("h2").at(n))) o.fail("h2 at n = " + std::to_string(n));
        if (!poly::alternating_sign_check(fam.polynomial("h3").at(n))) o.fail("h3 at n = " + std::to_string(n));
    }
    o.note("n = 6..50");
    return o;
}

Outcome property_suites() {
    Outcome o;
    // antisymmetry and Jacobi on basis elements
    for (int n = 3; n <= 8; ++n) {
        const auto basis = so_basis(n);
        for (const auto& x : basis)
            for (const auto& y : basis) {
                const auto a = bracket(x, y), b = bracket(y, x);
                if (a.is_zero() != b.is_zero() || (!a.is_zero() && (a.element != b.element || a.sign != -b.sign)))
                    o.fail("antisymmetry at n = " + std::to_string(n));
            }
        for (const auto& x : basis)
            for (const auto& y : basis)
                for (const auto& z : basis) {
                    std::map<BasisElement, long> sum;
                    const auto term = [&](const BasisElement& p, const BasisElement& q, const BasisElement& r) {
                        const auto inner = bracket(q, r);
                        if (inner.is_zero()) return;
                        const auto outer = bracket(p, inner.element);
                        if (!outer.is_zero()) sum[outer.element] += inner.sign * outer.sign;
                    };
                    term(x, y, z);
                    term(y, z, x);
                    term(z, x, y);
                    for (const auto& [e, c] : sum)
                        if (c != 0) o.fail("Jacobi at n = " + std::to_string(n));
                }
    }
    // Ricci: scaling covariance and specialized = general on random rational metrics
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> u(1, 40);
    const auto rnd = [&] {
        Rational q(u(rng), u(rng));
        q.canonicalize();
        return q;
    };
    int metrics = 0;
    for (int k1 = 1; k1 <= 3; ++k1)
        for (int k2 = 2; k2 <= 4; ++k2)
            for (int k3 = 1; k3 <= 4; ++k3) {
                const BlockDecomposition d({k1, k2, k3});
                const auto t = triples_closed_form(d);
                for (int trial = 0; trial < 50; ++trial, ++metrics) {
                    InvariantMetric<Rational> m{d, {}};
                    for (const auto& [l, dim] : dims(d)) m.coeffs[l] = rnd();
                    const auto r = ricci_general(t, m);
                    if (r.values != ricci_specialized(d, m).values) o.fail("specialized != general at " + d.to_string());
                    const Rational s = rnd();
                    auto scaled = m;
                    for (auto& [l, v] : scaled.coeffs) v *= s;
                    const auto rs = ricci_general(t, scaled);
                    for (const auto& [l, v] : r.values)
                        if (rs.values.at(l) != v / s) o.fail("scaling at " + d.to_string());
                }
            }
    // Sturm counts on products of known rational linear factors
    std::uniform_int_distribution<int> deg(1, 7), num(-40, 40), den(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<Rational> roots;
        poly::UPoly p = poly::UPoly::from_ints({1});
        for (int i = 0, d = deg(rng); i < d; ++i) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            roots.insert(r);
            p = p * poly::UPoly(std::vector<Integer>{-r.get_num(), r.get_den()});
        }
        if (poly::sturm_isolate(p, Rational(-50), Rational(50)).size() != roots.size()) o.fail("Sturm count");
    }
    o.note("Jacobi and antisymmetry n <= 8, " + std::to_string(metrics) + " random metrics, 200 Sturm products");
    return o;
}

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "triple oracle equivalence", triple_oracle},
        {2, "Jensen certification", jensen_certification},
        {3, "exact eliminant (1,4,2)", [] { return exact_eliminant({1, 4, 2}, kCase2Seconds, true); }},
        {4, "exact eliminant (2,3,2) [slow]", [] { return exact_eliminant({2, 3, 2}, kCase1Seconds, false); }},
        {5, "new-metric reproduction", new_metrics},
        {6, "(1,3,n-4) sweep", family_sweep_check},
        {7, "asymptotic brackets", asymptotic_brackets},
        {8, "alternating-sign certificates", alternating_certificates},
        {9, "property suites", property_suites},
    };
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
    bool ok = true;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("criterion %d %s: %s (%s)\n", c.id, c.title.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
